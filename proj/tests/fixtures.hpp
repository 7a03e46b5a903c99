// Shared test fixtures: small CSS codes with known parameters and the
// bundled planar BB configurations.

#ifndef CODECRAFT_TESTS_FIXTURES_HPP
#define CODECRAFT_TESTS_FIXTURES_HPP

#include <string>

#include "codecraft/bb.hpp"
#include "codecraft/craft.hpp"
#include "codecraft/json_io.hpp"

#ifndef CODECRAFT_CODES_DIR
#define CODECRAFT_CODES_DIR "codes"
#endif

namespace fixtures {

inline std::string codes_dir() { return CODECRAFT_CODES_DIR; }

inline codecraft::CodeConfig load_config(const std::string& name) {
    return codecraft::config_from_json(codecraft::load_json(codes_dir() + "/" + name + ".json"));
}

// Steane [[7,1,3]]: the Hamming-code check matrix on both sides.
inline codecraft::CssCode steane() {
    codecraft::CssCode c;
    c.h_x = codecraft::BitMatrix(3, 7);
    const int rows[3][7] = {{1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}};
    for (int r = 0; r < 3; ++r)
        for (int q = 0; q < 7; ++q)
            if (rows[r][q]) c.h_x.set(r, q, true);
    c.h_z = c.h_x;
    for (int q = 0; q < 7; ++q) c.qubit_coords.push_back({2 * q + 1, 0});
    for (int r = 0; r < 3; ++r) {
        c.xstab_coords.push_back({2 * r, 0});
        c.zstab_coords.push_back({2 * r, 2});
    }
    return c;
}

// Classical repetition code as a CSS fixture: Z checks chain n qubits,
// no X checks. One logical pair: X-type logical of weight n, Z of weight 1.
inline codecraft::CssCode repetition(std::size_t n) {
    codecraft::CssCode c;
    c.h_x = codecraft::BitMatrix(0, n);
    c.h_z = codecraft::BitMatrix(n - 1, n);
    for (std::size_t r = 0; r + 1 < n; ++r) {
        c.h_z.set(r, r, true);
        c.h_z.set(r, r + 1, true);
    }
    for (std::size_t q = 0; q < n; ++q) c.qubit_coords.push_back({int(2 * q + 1), 0});
    for (std::size_t r = 0; r + 1 < n; ++r) c.zstab_coords.push_back({int(2 * r), 0});
    return c;
}

// Planar surface-code patches from the generic builder.
inline codecraft::PlanarBBSpec surface_spec(int which_distance) {
    codecraft::PlanarBBSpec s;
    s.name = which_distance == 3 ? "surface3" : "surface2";
    s.tmpl.tile_size = 1;
    s.tmpl.x_offsets = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    s.tmpl.z_offsets = {{1, 2}, {1, 0}, {2, 1}, {0, 1}};
    if (which_distance == 3) {
        s.region_x = {0, 0, 2, 3};
        s.region_z = {-2, 0, 3, 2};
    } else {
        s.region_x = {0, 0, 1, 2};
        s.region_z = {-2, 0, 2, 1};
    }
    return s;
}

} // namespace fixtures

#endif
