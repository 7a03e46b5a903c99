// Logical-level measurement schedules: CNOT and state transfer assembled
// from joint Pauli measurements, plus single-logical measurement plans.
// Every plan can be replayed on the stabilizer simulator to confirm its
// Heisenberg action, including the outcome-dependent Pauli frame.

#ifndef CODECRAFT_SCHEDULE_HPP
#define CODECRAFT_SCHEDULE_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "codecraft/pauli_sim.hpp"

namespace codecraft {

enum class StepKind { init_plus, joint_measure, single_measure, pauli_frame };

struct ScheduleStep {
    StepKind kind = StepKind::single_measure;
    std::vector<std::string> operands;   // logical qubit ids
    char basis = 'Z';                    // measurement basis, X or Z
    int rounds = 1;                      // d_T repetitions for fault tolerance
};

// Flip `pauli` on logical `on` iff the parity of the listed measurement
// outcomes is odd. Measurement steps are indexed in schedule order.
struct CorrectionRule {
    char pauli = 'X';
    std::string on;
    std::vector<std::size_t> outcome_of;
};

struct Schedule {
    std::string kind;   // "cnot", "transfer" or "measure"
    std::vector<ScheduleStep> steps;
    std::vector<CorrectionRule> corrections;

    std::size_t measurement_count() const {
        std::size_t c = 0;
        for (const auto& s : steps)
            if (s.kind == StepKind::joint_measure || s.kind == StepKind::single_measure) ++c;
        return c;
    }
};

// Which joint measurements the deformed-code inventory supports between
// blocks, with the fault-tolerance rounds of each coupling.
struct LogicalNetwork {
    struct Coupling {
        std::string a, b;
        bool xx = false, zz = false;
        int d_t = 1;
    };
    std::vector<std::string> blocks;
    std::vector<Coupling> couplings;

    const Coupling* find(const std::string& a, const std::string& b) const {
        for (const auto& c : couplings)
            if ((c.a == a && c.b == b) || (c.a == b && c.b == a)) return &c;
        return nullptr;
    }

    const Coupling& require(const std::string& a, const std::string& b, char type) const {
        const Coupling* c = find(a, b);
        bool ok = c && (type == 'X' ? c->xx : c->zz);
        if (!ok)
            throw std::invalid_argument(std::string("plan: no ") + type + type +
                                        " joint measurement available between '" + a +
                                        "' and '" + b + "'");
        return *c;
    }

    void require_block(const std::string& b) const {
        if (std::find(blocks.begin(), blocks.end(), b) == blocks.end())
            throw std::invalid_argument("plan: unknown logical qubit '" + b + "'");
    }
};

// CNOT(control, target) via an ancilla logical: init a |+>, measure Z_c Z_a,
// measure X_a X_t, measure Z_a, then the Pauli frame
//   Z on control iff the XX outcome is odd,
//   X on target iff ZZ outcome + final Z_a outcome is odd.
inline Schedule plan_cnot(const LogicalNetwork& net, const std::string& control,
                          const std::string& target, const std::string& ancilla) {
    for (const auto& q : {control, target, ancilla}) net.require_block(q);
    const auto& zz = net.require(control, ancilla, 'Z');
    const auto& xx = net.require(ancilla, target, 'X');
    Schedule s;
    s.kind = "cnot";
    s.steps.push_back({StepKind::init_plus, {ancilla}, 'X', 1});
    s.steps.push_back({StepKind::joint_measure, {control, ancilla}, 'Z', zz.d_t});
    s.steps.push_back({StepKind::joint_measure, {ancilla, target}, 'X', xx.d_t});
    s.steps.push_back({StepKind::single_measure, {ancilla}, 'Z', 1});
    s.steps.push_back({StepKind::pauli_frame, {}, 'X', 1});
    s.corrections.push_back({'Z', control, {1}});
    s.corrections.push_back({'X', target, {0, 2}});
    return s;
}

// State transfer source -> destination by one-bit teleportation: init the
// destination in |+>, measure Z_s Z_t, measure X_s, then
//   X on destination iff the ZZ outcome is odd,
//   Z on destination iff the X_s outcome is odd.
inline Schedule plan_transfer(const LogicalNetwork& net, const std::string& src,
                              const std::string& dst) {
    net.require_block(src);
    net.require_block(dst);
    const auto& zz = net.require(src, dst, 'Z');
    Schedule s;
    s.kind = "transfer";
    s.steps.push_back({StepKind::init_plus, {dst}, 'X', 1});
    s.steps.push_back({StepKind::joint_measure, {src, dst}, 'Z', zz.d_t});
    s.steps.push_back({StepKind::single_measure, {src}, 'X', 1});
    s.steps.push_back({StepKind::pauli_frame, {}, 'X', 1});
    s.corrections.push_back({'X', dst, {0}});
    s.corrections.push_back({'Z', dst, {1}});
    return s;
}

inline Schedule plan_measure(const LogicalNetwork& net, const std::string& q, char basis,
                             int rounds) {
    net.require_block(q);
    if (basis != 'X' && basis != 'Z')
        throw std::invalid_argument("plan: measurement basis must be X or Z");
    if (rounds < 1) throw std::invalid_argument("plan: rounds must be >= 1");
    Schedule s;
    s.kind = "measure";
    s.steps.push_back({StepKind::single_measure, {q}, basis, rounds});
    return s;
}

namespace detail {

// Execute a schedule on the simulator under a fixed outcome history.
// Returns the recorded outcomes (one per measurement step).
inline std::vector<bool> run_schedule(StabilizerState& state, const Schedule& sched,
                                      const std::map<std::string, unsigned>& qubit_of,
                                      std::uint64_t branch_bits) {
    std::vector<bool> outcomes;
    auto pauli_on = [&](char basis, const std::vector<std::string>& ops) {
        Pauli p;
        for (const auto& q : ops) {
            unsigned idx = qubit_of.at(q);
            p = p * (basis == 'X' ? Pauli::X(idx) : Pauli::Z(idx));
        }
        return p;
    };
    for (const auto& step : sched.steps) {
        switch (step.kind) {
            case StepKind::init_plus: {
                unsigned q = qubit_of.at(step.operands.at(0));
                // Reset to |+>: measure X and correct the sign away.
                bool m = state.measure(Pauli::X(q), false);
                if (m) state.apply_pauli(Pauli::Z(q));
                break;
            }
            case StepKind::joint_measure:
            case StepKind::single_measure: {
                bool branch = (branch_bits >> outcomes.size()) & 1;
                bool m = state.measure(pauli_on(step.basis, step.operands), branch);
                outcomes.push_back(m);
                break;
            }
            case StepKind::pauli_frame: {
                for (const auto& rule : sched.corrections) {
                    bool parity = false;
                    for (std::size_t idx : rule.outcome_of) parity ^= outcomes.at(idx);
                    if (parity)
                        state.apply_pauli(rule.pauli == 'X'
                                              ? Pauli::X(qubit_of.at(rule.on))
                                              : Pauli::Z(qubit_of.at(rule.on)));
                }
                break;
            }
        }
    }
    return outcomes;
}

} // namespace detail

// Choi-state verification of a planned CNOT: entangle both data logicals
// with reference qubits, run the schedule over every measurement-outcome
// branch, and require that each of the 16 two-qubit Pauli inputs is mapped
// to its CNOT conjugate, exactly, up to the announced Pauli frame.
inline bool verify_cnot_schedule(const Schedule& sched, const std::string& control,
                                 const std::string& target, const std::string& ancilla,
                                 std::string* diagnostic = nullptr) {
    // Qubits: 0,1 references for control/target; 2 control; 3 target; 4 ancilla.
    std::map<std::string, unsigned> qubit_of{{control, 2}, {target, 3}, {ancilla, 4}};
    const unsigned rc = 0, rt = 1, c = 2, t = 3, a = 4;
    std::size_t nmeas = sched.measurement_count();
    for (std::uint64_t bits = 0; bits < (1ull << nmeas); ++bits) {
        std::vector<Pauli> gens = {
            Pauli::X(rc) * Pauli::X(c), Pauli::Z(rc) * Pauli::Z(c),
            Pauli::X(rt) * Pauli::X(t), Pauli::Z(rt) * Pauli::Z(t),
            Pauli::Z(a)};
        StabilizerState st = StabilizerState::from_generators(5, gens);
        detail::run_schedule(st, sched, qubit_of, bits);
        // Conjugation by CNOT(c -> t): X_c -> X_c X_t, Z_t -> Z_c Z_t. The
        // image is rebuilt factor by factor so relative phases are exact.
        auto image = [&](const Pauli& p) {
            bool xc = p.x >> c & 1, zc = p.z >> c & 1, xt = p.x >> t & 1, zt = p.z >> t & 1;
            Pauli acc{0, 0, 0};
            if (xc) acc = acc * (Pauli::X(c) * Pauli::X(t));
            if (zc) acc = acc * Pauli::Z(c);
            if (xt) acc = acc * Pauli::X(t);
            if (zt) acc = acc * (Pauli::Z(c) * Pauli::Z(t));
            Pauli ref{0, 0, 0};
            if (xc) ref = ref * Pauli::X(c);
            if (zc) ref = ref * Pauli::Z(c);
            if (xt) ref = ref * Pauli::X(t);
            if (zt) ref = ref * Pauli::Z(t);
            acc.phase = (acc.phase + 4 - ref.phase + p.phase) & 3;
            return acc;
        };
        for (unsigned mask = 0; mask < 16; ++mask) {
            Pauli in{0, 0, 0};
            if (mask & 1) in = in * Pauli::X(c);
            if (mask & 2) in = in * Pauli::Z(c);
            if (mask & 4) in = in * Pauli::X(t);
            if (mask & 8) in = in * Pauli::Z(t);
            Pauli img = image(in);
            // Reference copy of `in` with qubits c,t replaced by rc,rt.
            Pauli refp{0, 0, 0};
            if (mask & 1) refp = refp * Pauli::X(rc);
            if (mask & 2) refp = refp * Pauli::Z(rc);
            if (mask & 4) refp = refp * Pauli::X(rt);
            if (mask & 8) refp = refp * Pauli::Z(rt);
            Pauli expected = refp * img;   // canonical phase-0 forms: transpose and P^2 signs cancel
            if (!st.contains(expected)) {
                if (diagnostic)
                    *diagnostic = "branch " + std::to_string(bits) + ", Pauli mask " +
                                  std::to_string(mask) + " not mapped to its CNOT image";
                return false;
            }
        }
    }
    return true;
}

// Choi verification of a planned transfer: the channel must act as the
// identity from source to destination for all four Pauli inputs.
inline bool verify_transfer_schedule(const Schedule& sched, const std::string& src,
                                     const std::string& dst, std::string* diagnostic = nullptr) {
    std::map<std::string, unsigned> qubit_of{{src, 1}, {dst, 2}};
    const unsigned r = 0, s = 1, d = 2;
    std::size_t nmeas = sched.measurement_count();
    for (std::uint64_t bits = 0; bits < (1ull << nmeas); ++bits) {
        std::vector<Pauli> gens = {Pauli::X(r) * Pauli::X(s), Pauli::Z(r) * Pauli::Z(s),
                                   Pauli::Z(d)};
        StabilizerState st = StabilizerState::from_generators(3, gens);
        detail::run_schedule(st, sched, qubit_of, bits);
        for (unsigned mask = 1; mask < 4; ++mask) {
            Pauli refp{0, 0, 0}, out{0, 0, 0};
            if (mask & 1) { refp = refp * Pauli::X(r); out = out * Pauli::X(d); }
            if (mask & 2) { refp = refp * Pauli::Z(r); out = out * Pauli::Z(d); }
            Pauli expected = refp * out;
            if (!st.contains(expected)) {
                if (diagnostic)
                    *diagnostic = "branch " + std::to_string(bits) + ", Pauli mask " +
                                  std::to_string(mask) + " not transferred";
                return false;
            }
        }
    }
    return true;
}

} // namespace codecraft

#endif
