#include "besovlab/regions.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace besovlab {

namespace {

struct Quadrant {
    double a;  // s bound
    double b;  // w bound
    bool closed_a;
    bool closed_b;

    [[nodiscard]] bool contains(double s, double w) const {
        const bool in_s = closed_a ? s <= a : s < a;
        const bool in_w = closed_b ? w <= b : w < b;
        return in_s && in_w;
    }
};

Quadrant ep_region(double p, int d) {
    if (p < 2.0) return {0.0, -d / p + d / 2.0, false, false};
    if (p == 2.0) return {0.0, 0.0, true, true};
    return {-d / 2.0 + d / p, 0.0, false, true};
}

Quadrant rp_region(double p, int d) {
    if (p <= 2.0) return {-d / 2.0, -d / p, false, false};
    return {-d + d / p, -d / 2.0, false, false};
}

Quadrant rpp_region(double p, int d) { return {-d / 2.0, -d / p, false, false}; }

}  // namespace

RegionVerdict classify_point(const BesovParams& params) {
    params.validate();
    const double s = params.s, w = params.w, p = params.p;
    const int d = params.d;

    const Quadrant ep = ep_region(p, d);
    const Quadrant rp = rp_region(p, d);
    const Quadrant rpp = rpp_region(p, d);

    RegionVerdict v;
    v.in_E_p = ep.contains(s, w);
    v.in_R_p = rp.contains(s, w);
    v.in_R_p_p = rpp.contains(s, w);
    v.in_gaussian_region = v.in_R_p_p;

    v.margin_E_p = quadrant_margin(s, w, ep.a, ep.b);
    v.margin_R_p = quadrant_margin(s, w, rp.a, rp.b);
    v.margin_R_p_p = quadrant_margin(s, w, rpp.a, rpp.b);

    v.boundary_E_p = (s == ep.a && w <= ep.b) || (w == ep.b && s <= ep.a);
    v.boundary_R_p = (s == rp.a && w <= rp.b) || (w == rp.b && s <= rp.a);
    v.boundary_R_p_p = (s == rpp.a && w <= rpp.b) || (w == rpp.b && s <= rpp.a);

    // For p > 2 the containment formula keeps the s-boundary open while the
    // embedding criterion admits equality there.
    v.embedding_boundary_discrepancy = (p > 2.0 && s == ep.a && w <= ep.b);
    return v;
}

bool besov_embeds(const BesovParams& a, const BesovParams& b) {
    a.validate();
    b.validate();
    require(a.d == b.d, "besov_embeds: dimension mismatch");
    const double d = a.d;
    if (a.p > b.p) {
        return a.s > b.s && (a.w - b.w) > d * (1.0 / b.p - 1.0 / a.p);
    }
    return (a.s - b.s) >= d * (1.0 / a.p - 1.0 / b.p) && a.w >= b.w;
}

double ep_s_boundary(double x, int d) { return 0.5 * d * std::min(2.0 * x - 1.0, 0.0); }
double ep_w_boundary(double x, int d) { return 0.5 * d * std::min(1.0 - 2.0 * x, 0.0); }
double rp_s_boundary(double x, int d) { return 0.5 * d * std::min(2.0 * x - 2.0, -1.0); }
double rp_w_boundary(double x, int d) { return 0.5 * d * std::min(-2.0 * x, -1.0); }
double rpp_s_boundary(double /*x*/, int d) { return -0.5 * d; }
double rpp_w_boundary(double x, int d) { return -d * x; }

namespace {

bool plane_in_ep(TriebelPlane plane, double p, double y, int d) {
    const Quadrant ep = ep_region(p, d);
    if (plane == TriebelPlane::S) return ep.closed_a ? y <= ep.a : y < ep.a;
    return ep.closed_b ? y <= ep.b : y < ep.b;
}

}  // namespace

TriebelGrid triebel_grid(TriebelPlane plane, double p_min, double p_max, double lo, double hi,
                         int d, std::size_t resolution) {
    require(p_min > 1.0 && p_max > p_min, "triebel_grid: need 1 < p_min < p_max");
    require(hi > lo, "triebel_grid: empty window");
    require(resolution >= 2, "triebel_grid: resolution >= 2 per axis");

    TriebelGrid grid;
    grid.plane = plane;
    grid.d = d;
    grid.nx = resolution;
    grid.ny = resolution;
    const double x_lo = 1.0 / p_max, x_hi = 1.0 / p_min;
    const double y_step = (hi - lo) / static_cast<double>(resolution - 1);
    grid.cells.reserve(resolution * resolution);
    for (std::size_t iy = 0; iy < resolution; ++iy) {
        const double y = lo + y_step * static_cast<double>(iy);
        for (std::size_t ix = 0; ix < resolution; ++ix) {
            const double x = x_lo + (x_hi - x_lo) * static_cast<double>(ix) /
                                        static_cast<double>(resolution - 1);
            const double p = 1.0 / x;
            TriebelCell cell;
            cell.one_over_p = x;
            cell.ordinate = y;
            cell.in_E_p = plane_in_ep(plane, p, y, d);
            if (plane == TriebelPlane::S) {
                cell.in_R_p = y < rp_s_boundary(x, d);
                cell.in_R_p_p = y < rpp_s_boundary(x, d);
                cell.boundary = std::abs(y - ep_s_boundary(x, d)) <= 0.5 * y_step ||
                                std::abs(y - rp_s_boundary(x, d)) <= 0.5 * y_step ||
                                std::abs(y - rpp_s_boundary(x, d)) <= 0.5 * y_step;
            } else {
                cell.in_R_p = y < rp_w_boundary(x, d);
                cell.in_R_p_p = y < rpp_w_boundary(x, d);
                cell.boundary = std::abs(y - ep_w_boundary(x, d)) <= 0.5 * y_step ||
                                std::abs(y - rp_w_boundary(x, d)) <= 0.5 * y_step ||
                                std::abs(y - rpp_w_boundary(x, d)) <= 0.5 * y_step;
            }
            grid.cells.push_back(cell);
        }
    }
    return grid;
}

void write_triebel_csv(const TriebelGrid& grid, std::ostream& out) {
    out << "one_over_p,s_or_w,in_Ep,in_Rp,in_Rpp,boundary\n";
    char buf[128];
    for (const auto& c : grid.cells) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%d,%d,%d,%d\n", c.one_over_p, c.ordinate,
                      c.in_E_p ? 1 : 0, c.in_R_p ? 1 : 0, c.in_R_p_p ? 1 : 0,
                      c.boundary ? 1 : 0);
        out << buf;
    }
}

namespace {

struct SvgMapper {
    double x0, y0, width, height;  // view box of the panel
    double data_y_lo, data_y_hi;
    [[nodiscard]] double px(double x) const { return x0 + x * width; }
    [[nodiscard]] double py(double y) const {
        return y0 + (data_y_hi - y) / (data_y_hi - data_y_lo) * height;
    }
};

void svg_polyline(std::ostringstream& svg, const SvgMapper& map, double (*f)(double, int), int d,
                  const char* color) {
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (int i = 0; i <= 200; ++i) {
        const double x = i / 200.0;
        svg << map.px(x) << ',' << map.py(f(x, d)) << ' ';
    }
    svg << "\"/>\n";
}

void svg_region_fill(std::ostringstream& svg, const SvgMapper& map, double (*top)(double, int),
                     int d, const char* color, bool below) {
    svg << "<polygon fill=\"" << color << "\" fill-opacity=\"0.25\" stroke=\"none\" points=\"";
    for (int i = 0; i <= 200; ++i) {
        const double x = i / 200.0;
        svg << map.px(x) << ',' << map.py(top(x, d)) << ' ';
    }
    const double edge = below ? map.data_y_lo : map.data_y_hi;
    svg << map.px(1.0) << ',' << map.py(edge) << ' ' << map.px(0.0) << ',' << map.py(edge);
    svg << "\"/>\n";
}

void svg_panel(std::ostringstream& svg, const SvgMapper& map, int d, TriebelPlane plane,
               const char* title) {
    auto ep = plane == TriebelPlane::S ? ep_s_boundary : ep_w_boundary;
    auto rp = plane == TriebelPlane::S ? rp_s_boundary : rp_w_boundary;
    auto rpp = plane == TriebelPlane::S ? rpp_s_boundary : rpp_w_boundary;
    svg << "<rect x=\"" << map.x0 << "\" y=\"" << map.y0 << "\" width=\"" << map.width
        << "\" height=\"" << map.height << "\" fill=\"white\" stroke=\"black\"/>\n";
    svg_region_fill(svg, map, ep, d, "#d62728", false);  // complement of E_p above
    svg_region_fill(svg, map, rp, d, "#2ca02c", true);   // R_p below
    svg_polyline(svg, map, ep, d, "#d62728");
    svg_polyline(svg, map, rp, d, "#2ca02c");
    svg_polyline(svg, map, rpp, d, "#1f77b4");
    // axis at the ordinate origin
    svg << "<line stroke=\"#888\" stroke-dasharray=\"3 3\" x1=\"" << map.px(0.0) << "\" y1=\""
        << map.py(0.0) << "\" x2=\"" << map.px(1.0) << "\" y2=\"" << map.py(0.0) << "\"/>\n";
    svg << "<text x=\"" << map.x0 + 6 << "\" y=\"" << map.y0 + 16 << "\" font-size=\"12\">"
        << title << "</text>\n";
}

}  // namespace

std::string triebel_svg(double p_min, double p_max, int d, std::size_t resolution) {
    (void)resolution;
    require(p_min > 1.0 && p_max > p_min, "triebel_svg: need 1 < p_min < p_max");
    std::ostringstream svg;
    const double lo = -3.0 * d, hi = 3.0 * d;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"320\" "
           "viewBox=\"0 0 640 320\">\n";
    SvgMapper left{20, 20, 280, 280, lo, hi};
    SvgMapper right{340, 20, 280, 280, lo, hi};
    svg_panel(svg, left, d, TriebelPlane::S, "s vs 1/p");
    svg_panel(svg, right, d, TriebelPlane::W, "w vs 1/p");
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace besovlab
