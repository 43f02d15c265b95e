#pragma once

#include "newton.hpp"
#include "topology.hpp"

#include <algorithm>
#include <string>

namespace hessweave {

namespace detail {

inline const char* svg_palette(std::size_t k) {
    static const char* colors[] = {"#1b6ca8", "#c0392b", "#1e8449", "#7d3c98",
                                   "#b7950b", "#148f77", "#a04000", "#5d6d7e"};
    return colors[k % (sizeof(colors) / sizeof(colors[0]))];
}

}  // namespace detail

// One filled path per 2-cell, plus every lattice point of the ambient polygon
// as a small circle. Integer pixel coordinates keep the output byte-stable.
inline std::string subdivision_svg(const Subdivision& sub) {
    const long S = 48;  // pixels per lattice unit
    long minx = 0, maxx = 1, miny = 0, maxy = 1;
    bool first = true;
    for (const auto& v : sub.polygon.vertices) {
        if (first || v.x < minx) minx = v.x;
        if (first || v.x > maxx) maxx = v.x;
        if (first || v.y < miny) miny = v.y;
        if (first || v.y > maxy) maxy = v.y;
        first = false;
    }
    auto px = [&](long x) { return (x - minx + 1) * S; };
    auto py = [&](long y) { return (maxy - y + 1) * S; };
    const long W = (maxx - minx + 2) * S, H = (maxy - miny + 2) * S;
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
         "\" height=\"" + std::to_string(H) + "\" viewBox=\"0 0 " + std::to_string(W) + " " +
         std::to_string(H) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    std::size_t k = 0;
    for (const Cell* c : sub.cells_of_dim(2)) {
        s += "<path d=\"";
        const auto& vs = c->polygon.vertices;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            s += (i == 0 ? "M" : " L");
            s += std::to_string(px(vs[i].x)) + " " + std::to_string(py(vs[i].y));
        }
        s += " Z\" fill=\"";
        s += detail::svg_palette(k++);
        s += "\" fill-opacity=\"0.35\" stroke=\"#333333\" stroke-width=\"2\"/>\n";
    }
    if (sub.polygon.dim() >= 0)
        for (const auto& p : lattice_points_of(sub.polygon))
            s += "<circle cx=\"" + std::to_string(px(p.x)) + "\" cy=\"" + std::to_string(py(p.y)) +
                 "\" r=\"4\" fill=\"#111111\"/>\n";
    s += "</svg>\n";
    return s;
}

// Sign-change cells drawn as per-cell diagonal strokes in grid coordinates,
// one path per component, colored from a fixed palette. The coordinate axes
// of the log-log window sit at index n.
inline std::string curve_svg(const ComponentCensus& cen) {
    const long n = cen.resolution;
    const long N = 2 * n;  // cells per axis in the global grid
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"820\" height=\"820\" viewBox=\"0 0 " +
         std::to_string(N) + " " + std::to_string(N) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    s += "<line x1=\"" + std::to_string(n) + "\" y1=\"0\" x2=\"" + std::to_string(n) +
         "\" y2=\"" + std::to_string(N) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"0\" y1=\"" + std::to_string(n) + "\" x2=\"" + std::to_string(N) +
         "\" y2=\"" + std::to_string(n) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    for (std::size_t k = 0; k < cen.components.size(); ++k) {
        const auto& comp = cen.components[k];
        s += "<path d=\"";
        for (const auto& [cx, cy] : comp.cells)
            s += "M" + std::to_string(cx) + " " + std::to_string(N - cy) + "l1 -1";
        s += "\" stroke=\"";
        s += detail::svg_palette(k);
        s += "\" stroke-width=\"1.5\" fill=\"none\"";
        if (!comp.compact) s += " stroke-dasharray=\"3 2\"";
        s += "/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace hessweave
