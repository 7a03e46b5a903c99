// Small stabilizer tableau simulator used to verify logical-level
// measurement schedules (CNOT, state transfer) on a handful of qubits.
// Tracks stabilizer generators with phases mod 4; measurements branch on
// the recorded outcome, so a caller can enumerate all outcome histories.

#ifndef CODECRAFT_PAULI_SIM_HPP
#define CODECRAFT_PAULI_SIM_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace codecraft {

// Pauli operator on up to 64 qubits: i^phase * X^x * Z^z (qubit-wise).
struct Pauli {
    std::uint64_t x = 0, z = 0;
    unsigned phase = 0;   // exponent of i, mod 4

    static Pauli X(unsigned q) { return {1ull << q, 0, 0}; }
    static Pauli Z(unsigned q) { return {0, 1ull << q, 0}; }
    static Pauli Y(unsigned q) { return {1ull << q, 1ull << q, 1}; }

    Pauli operator*(const Pauli& o) const {
        Pauli r;
        r.x = x ^ o.x;
        r.z = z ^ o.z;
        unsigned ph = phase + o.phase;
        // i^? from reordering: for each qubit, multiplying (X^a Z^b)(X^c Z^d)
        // commutes Z^b past X^c, contributing (-1)^(b & c).
        ph += 2 * std::popcount(z & o.x);
        r.phase = ph & 3;
        return r;
    }

    bool anticommutes(const Pauli& o) const {
        return (std::popcount(x & o.z) + std::popcount(z & o.x)) & 1;
    }

    bool same_axes(const Pauli& o) const { return x == o.x && z == o.z; }
};

// Pure stabilizer state on n qubits: exactly n independent generators.
class StabilizerState {
public:
    explicit StabilizerState(unsigned n) : n_(n) {
        if (n > 64) throw std::invalid_argument("StabilizerState: too many qubits");
        // |0...0>: stabilized by Z_q.
        for (unsigned q = 0; q < n; ++q) gens_.push_back(Pauli::Z(q));
    }

    unsigned qubits() const { return n_; }

    // Reset the state to the one stabilized by the given generators.
    static StabilizerState from_generators(unsigned n, const std::vector<Pauli>& gens) {
        StabilizerState s(n);
        if (gens.size() != n)
            throw std::invalid_argument("from_generators: need exactly n generators");
        s.gens_ = gens;
        for (std::size_t i = 0; i < gens.size(); ++i)
            for (std::size_t j = i + 1; j < gens.size(); ++j)
                if (gens[i].anticommutes(gens[j]))
                    throw std::invalid_argument("from_generators: generators must commute");
        return s;
    }

    void apply_pauli(const Pauli& u) {
        for (Pauli& g : gens_)
            if (g.anticommutes(u)) g.phase = (g.phase + 2) & 3;
    }

    // Measure a +1-phase Pauli observable. If the outcome is forced the
    // deterministic result is returned; otherwise `branch` selects the
    // recorded outcome (false -> +1 eigenvalue, i.e. outcome bit 0).
    bool measure(const Pauli& obs, bool branch) {
        if (obs.phase != 0)
            throw std::invalid_argument("measure: observable must carry phase +1");
        std::size_t pivot = gens_.size();
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].anticommutes(obs)) { pivot = i; break; }
        if (pivot == gens_.size()) {
            auto val = deterministic_value(obs);
            if (!val)
                throw std::logic_error("measure: commuting observable outside the group");
            return *val;
        }
        for (std::size_t i = 0; i < gens_.size(); ++i)
            if (i != pivot && gens_[i].anticommutes(obs))
                gens_[i] = gens_[i] * gens_[pivot];
        Pauli p = obs;
        p.phase = branch ? 2 : 0;
        gens_[pivot] = p;
        return branch;
    }

    // Whether signed operator obs (phase 0 or 2) is in the stabilizer group.
    bool contains(const Pauli& obs) const {
        Pauli target = obs;
        auto val = deterministic_value({target.x, target.z, 0});
        if (!val) return false;
        return (*val ? 2u : 0u) == (target.phase & 3);
    }

private:
    // Outcome bit of a commuting observable: expand obs over the group and
    // compare phases. nullopt if obs is not a product of generators.
    std::optional<bool> deterministic_value(const Pauli& obs) const {
        std::vector<Pauli> work = gens_;
        Pauli acc{0, 0, 0};
        std::uint64_t wanted_x = obs.x, wanted_z = obs.z;
        // Symplectic Gaussian elimination over (x|z) bit pairs.
        std::size_t row = 0;
        for (unsigned bit = 0; bit < 2 * n_; ++bit) {
            bool use_x = bit < n_;
            std::uint64_t mask = 1ull << (use_x ? bit : bit - n_);
            auto has = [&](const Pauli& p) { return ((use_x ? p.x : p.z) & mask) != 0; };
            std::size_t piv = row;
            while (piv < work.size() && !has(work[piv])) ++piv;
            if (piv == work.size()) continue;
            std::swap(work[row], work[piv]);
            for (std::size_t i = 0; i < work.size(); ++i)
                if (i != row && has(work[i])) work[i] = work[i] * work[row];
            bool want = (use_x ? wanted_x : wanted_z) & mask;
            if (want) {
                acc = acc * work[row];
                wanted_x ^= work[row].x;
                wanted_z ^= work[row].z;
            }
            ++row;
        }
        if (wanted_x != 0 || wanted_z != 0) return std::nullopt;
        unsigned ph = acc.phase & 3;
        if (ph != 0 && ph != 2)
            throw std::logic_error("deterministic_value: non-real phase");
        return ph == 2;
    }

    unsigned n_;
    std::vector<Pauli> gens_;
};

} // namespace codecraft

#endif
