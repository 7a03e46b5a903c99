// SVG rendering of code lattices: one edge glyph per qubit, one circle per
// stabilizer anchor. X stabilizers red, Z blue, coinciding anchors black;
// lattice elements inside the bounding box that the code does not use are
// drawn light gray.

#ifndef CODECRAFT_SVG_HPP
#define CODECRAFT_SVG_HPP

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "codecraft/bb.hpp"
#include "codecraft/craft.hpp"

namespace codecraft {

namespace detail {

struct SvgCanvas {
    std::ostringstream body;
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    double scale = 16.0;

    void fit(const std::vector<Coord>& coords) {
        for (Coord c : coords) {
            min_x = std::min(min_x, c.x);
            min_y = std::min(min_y, c.y);
            max_x = std::max(max_x, c.x);
            max_y = std::max(max_y, c.y);
        }
    }
    double px(int x) const { return (x - min_x + 1) * scale; }
    double py(int y) const { return (max_y - y + 1) * scale; }

    void edge(Coord q, const std::string& cls, const std::string& color) {
        bool horizontal = q.x & 1;
        double x0 = px(q.x - (horizontal ? 1 : 0)), y0 = py(q.y - (horizontal ? 0 : 1));
        double x1 = px(q.x + (horizontal ? 1 : 0)), y1 = py(q.y + (horizontal ? 0 : 1));
        body << "  <line class=\"" << cls << "\" x1=\"" << x0 << "\" y1=\"" << y0
             << "\" x2=\"" << x1 << "\" y2=\"" << y1 << "\" stroke=\"" << color
             << "\" stroke-width=\"2\"/>\n";
    }
    void circle(Coord s, const std::string& cls, const std::string& color) {
        body << "  <circle class=\"" << cls << "\" cx=\"" << px(s.x) << "\" cy=\"" << py(s.y)
             << "\" r=\"" << scale * 0.28 << "\" fill=\"none\" stroke=\"" << color
             << "\" stroke-width=\"2\"/>\n";
    }
    std::string finish() const {
        std::ostringstream out;
        double w = (max_x - min_x + 2) * scale, h = (max_y - min_y + 2) * scale;
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
            << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
            << body.str() << "</svg>\n";
        return out.str();
    }
};

inline std::string render_lattice(const std::vector<Coord>& qubits,
                                  const std::vector<Coord>& xstabs,
                                  const std::vector<Coord>& zstabs) {
    if (qubits.empty()) throw std::invalid_argument("render_svg: empty code");
    SvgCanvas canvas;
    canvas.fit(qubits);
    canvas.fit(xstabs);
    canvas.fit(zstabs);

    std::set<std::pair<int, int>> used_edges, xset, zset;
    for (Coord q : qubits) used_edges.insert({q.x, q.y});
    for (Coord s : xstabs) xset.insert({s.x, s.y});
    for (Coord s : zstabs) zset.insert({s.x, s.y});

    // Unused lattice elements inside the bounding box, light gray.
    for (int y = canvas.min_y; y <= canvas.max_y; ++y) {
        for (int x = canvas.min_x; x <= canvas.max_x; ++x) {
            Coord c{x, y};
            if (is_edge(c) && !used_edges.count({x, y}))
                canvas.edge(c, "unused", "#d8d8d8");
            if (is_site(c) && !xset.count({x, y}) && !zset.count({x, y}))
                canvas.circle(c, "unused", "#d8d8d8");
        }
    }
    for (Coord q : qubits) canvas.edge(q, "qubit", "#333333");
    for (Coord s : xstabs) {
        bool both = zset.count({s.x, s.y});
        canvas.circle(s, "xstab", both ? "#000000" : "#d02020");
    }
    for (Coord s : zstabs) {
        if (xset.count({s.x, s.y}))
            canvas.circle(s, "zstab", "#000000");   // drawn black at shared anchors
        else
            canvas.circle(s, "zstab", "#2040d0");
    }
    return canvas.finish();
}

} // namespace detail

inline std::string render_svg(const CssCode& code) {
    if (code.qubit_coords.empty())
        throw std::invalid_argument("render_svg: code has no coordinates");
    return detail::render_lattice(code.qubit_coords, code.xstab_coords, code.zstab_coords);
}

inline std::string render_svg(const DeformedCode& def) {
    if (def.qubit_coords.empty())
        throw std::invalid_argument("render_svg: deformed code has no coordinates");
    return detail::render_lattice(def.qubit_coords, def.xstab_coords, def.zstab_coords);
}

} // namespace codecraft

#endif
