#include "cable/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace cable {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kDiagonal = std::sqrt(2.0);

// Physical value at a fractional index: geometric between positive finite
// neighbours, linear next to the zero column, step next to a rigid entry.
double axis_value(const std::vector<double>& axis, double t) {
    const auto last = static_cast<double>(axis.size() - 1);
    t = std::clamp(t, 0.0, last);
    const auto i = static_cast<std::size_t>(std::min(std::floor(t), last - 1.0));
    const double f = t - i;
    const double a = axis[i];
    const double b = axis[std::min(i + 1, axis.size() - 1)];
    if (f == 0.0) return a;
    if (std::isinf(b)) return f < 1.0 ? a : b;
    if (a <= 0.0) return a + f * (b - a);
    return a * std::pow(b / a, f);
}

double segment_distance(std::pair<double, double> p, std::pair<double, double> a, std::pair<double, double> b) {
    const double dx = b.first - a.first, dy = b.second - a.second;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.first - a.first) * dx + (p.second - a.second) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double ex = a.first + t * dx - p.first, ey = a.second + t * dy - p.second;
    return std::sqrt(ex * ex + ey * ey);
}

double distance_to_lines(std::pair<double, double> p, const std::vector<Polyline>& lines) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& l : lines) {
        const auto& v = l.index_points;
        if (v.size() == 1) best = std::min(best, segment_distance(p, v[0], v[0]));
        for (std::size_t k = 0; k + 1 < v.size(); ++k) best = std::min(best, segment_distance(p, v[k], v[k + 1]));
    }
    return best;
}

struct Segment {
    long e0, e1;
    std::pair<double, double> p0, p1;
};

std::vector<Polyline> contour(const SweepGrid& g, std::size_t o, double target) {
    const std::size_t nk = g.kr.size(), ns = g.ks.size();
    // Edge ids: horizontal (i,j)-(i+1,j) -> 2*(i*ns+j); vertical (i,j)-(i,j+1) -> 2*(i*ns+j)+1.
    auto hid = [&](std::size_t i, std::size_t j) { return static_cast<long>(2 * (i * ns + j)); };
    auto vid = [&](std::size_t i, std::size_t j) { return static_cast<long>(2 * (i * ns + j) + 1); };
    auto lerp = [&](double fa, double fb) { return (target - fa) / (fb - fa); };

    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < nk; ++i) {
        for (std::size_t j = 0; j + 1 < ns; ++j) {
            const double f00 = g.at(o, i, j), f10 = g.at(o, i + 1, j);
            const double f01 = g.at(o, i, j + 1), f11 = g.at(o, i + 1, j + 1);
            if (std::isnan(f00) || std::isnan(f10) || std::isnan(f01) || std::isnan(f11)) continue;
            struct Cross {
                long id;
                std::pair<double, double> p;
            };
            std::vector<Cross> c;
            const double di = static_cast<double>(i), dj = static_cast<double>(j);
            auto crosses = [&](double a, double b) { return (a < target) != (b < target); };
            // Order around the cell: bottom, right, top, left.
            if (crosses(f00, f10)) c.push_back({hid(i, j), {di + lerp(f00, f10), dj}});
            if (crosses(f10, f11)) c.push_back({vid(i + 1, j), {di + 1, dj + lerp(f10, f11)}});
            if (crosses(f01, f11)) c.push_back({hid(i, j + 1), {di + lerp(f01, f11), dj + 1}});
            if (crosses(f00, f01)) c.push_back({vid(i, j), {di, dj + lerp(f00, f01)}});
            if (c.size() == 2) {
                segs.push_back({c[0].id, c[1].id, c[0].p, c[1].p});
            } else if (c.size() == 4) {
                const double centre = 0.25 * (f00 + f10 + f01 + f11);
                const bool low_corner_matches_centre = (f00 < target) == (centre < target);
                if (low_corner_matches_centre) {
                    segs.push_back({c[0].id, c[1].id, c[0].p, c[1].p});
                    segs.push_back({c[2].id, c[3].id, c[2].p, c[3].p});
                } else {
                    segs.push_back({c[0].id, c[3].id, c[0].p, c[3].p});
                    segs.push_back({c[1].id, c[2].id, c[1].p, c[2].p});
                }
            }
        }
    }

    std::multimap<long, std::size_t> by_edge;
    for (std::size_t s = 0; s < segs.size(); ++s) {
        by_edge.emplace(segs[s].e0, s);
        by_edge.emplace(segs[s].e1, s);
    }
    std::vector<bool> used(segs.size(), false);
    auto next_unused = [&](long edge, std::size_t from) -> long {
        auto range = by_edge.equal_range(edge);
        for (auto it = range.first; it != range.second; ++it) {
            if (it->second != from && !used[it->second]) return static_cast<long>(it->second);
        }
        return -1;
    };

    std::vector<Polyline> lines;
    // Start from open ends first so chains are not split.
    std::vector<std::size_t> order(segs.size());
    for (std::size_t s = 0; s < segs.size(); ++s) order[s] = s;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        auto open = [&](std::size_t s) { return by_edge.count(segs[s].e0) == 1 || by_edge.count(segs[s].e1) == 1; };
        return open(a) && !open(b);
    });
    for (std::size_t start : order) {
        if (used[start]) continue;
        used[start] = true;
        std::vector<std::pair<double, double>> pts;
        long edge;
        if (by_edge.count(segs[start].e1) == 1) {
            pts = {segs[start].p1, segs[start].p0};
            edge = segs[start].e0;
        } else {
            pts = {segs[start].p0, segs[start].p1};
            edge = segs[start].e1;
        }
        std::size_t cur = start;
        for (long nxt; (nxt = next_unused(edge, cur)) >= 0;) {
            cur = static_cast<std::size_t>(nxt);
            used[cur] = true;
            const Segment& s = segs[cur];
            if (s.e0 == edge) {
                pts.push_back(s.p1);
                edge = s.e1;
            } else {
                pts.push_back(s.p0);
                edge = s.e0;
            }
        }
        Polyline line;
        line.index_points = std::move(pts);
        for (const auto& p : line.index_points) {
            line.points.emplace_back(axis_value(g.kr, p.first), axis_value(g.ks, p.second));
        }
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace

BoundaryStiffness scenario_boundary(Scenario s, double Kr, double Ks) {
    if (s == Scenario::tied) return {Kr, Kr, Ks, Ks};
    return {Kr, kRigid, kRigid, Ks};
}

std::vector<double> AxisSpec::values() const {
    if (points < 2 || !(hi_exp > lo_exp)) throw std::invalid_argument("axis: need at least two points and hi > lo");
    std::vector<double> v;
    if (include_zero) v.push_back(0.0);
    for (int k = 0; k < points; ++k) v.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * k / (points - 1)));
    if (include_rigid) v.push_back(kRigid);
    return v;
}

std::size_t SweepGrid::missing() const {
    return static_cast<std::size_t>(std::count_if(data.begin(), data.end(), [](double x) { return std::isnan(x); }));
}

SweepGrid sweep_frequencies(const KnownCable& cable, const SweepFixed& fixed, const SweepSpec& spec,
                            pso::Execution execution) {
    if (spec.orders.empty()) throw std::invalid_argument("sweep: at least one order required");
    SweepGrid g;
    g.kr = spec.kr.values();
    g.ks = spec.ks.values();
    g.orders = spec.orders;
    std::sort(g.orders.begin(), g.orders.end());
    if (g.orders.front() < 1) throw std::invalid_argument("sweep: orders start at 1");
    g.data.assign(g.orders.size() * g.kr.size() * g.ks.size(), kNaN);
    const int top = g.orders.back();

    const long total = static_cast<long>(g.kr.size() * g.ks.size());
    auto solve_point = [&](long idx) {
        const std::size_t i = static_cast<std::size_t>(idx) / g.ks.size();
        const std::size_t j = static_cast<std::size_t>(idx) % g.ks.size();
        ParameterVector p{fixed.H, fixed.EI, fixed.EA, 0, 0, 0, 0};
        const auto bc = scenario_boundary(spec.scenario, g.kr[i], g.ks[j]);
        p.Kr1 = bc.Kr1;
        p.Kr2 = bc.Kr2;
        p.Ks1 = bc.Ks1;
        p.Ks2 = bc.Ks2;
        try {
            const auto f = forward_frequencies(p, cable, top);
            for (std::size_t o = 0; o < g.orders.size(); ++o) g.at(o, i, j) = f[g.orders[o] - 1];
        } catch (const std::exception&) {
            // left as NaN
        }
    };
    if (execution == pso::Execution::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long idx = 0; idx < total; ++idx) solve_point(idx);
    } else {
        for (long idx = 0; idx < total; ++idx) solve_point(idx);
    }
    return g;
}

const char* to_string(IntersectionKind k) {
    switch (k) {
        case IntersectionKind::none: return "none";
        case IntersectionKind::unique: return "unique";
        case IntersectionKind::overlap: return "overlap";
    }
    return "none";
}

IsolineSet extract_isolines(const SweepGrid& sweep, const MeasuredFrequencies& targets) {
    targets.validate();
    IsolineSet out;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        const auto it = std::find(sweep.orders.begin(), sweep.orders.end(), targets.orders[k]);
        if (it == sweep.orders.end()) {
            throw std::invalid_argument("isolines: order " + std::to_string(targets.orders[k]) + " not in sweep");
        }
        OrderIsolines iso;
        iso.order = targets.orders[k];
        iso.target = targets.values[k];
        iso.lines = contour(sweep, static_cast<std::size_t>(it - sweep.orders.begin()), iso.target);
        iso.attained = !iso.lines.empty();
        out.per_order.push_back(std::move(iso));
    }

    const bool all_attained =
        std::all_of(out.per_order.begin(), out.per_order.end(), [](const OrderIsolines& o) { return o.attained; });
    if (!all_attained) return out;
    for (std::size_t i = 0; i + 1 < sweep.kr.size(); ++i) {
        for (std::size_t j = 0; j + 1 < sweep.ks.size(); ++j) {
            const std::pair<double, double> centre{i + 0.5, j + 0.5};
            const bool common = std::all_of(out.per_order.begin(), out.per_order.end(), [&](const OrderIsolines& o) {
                return distance_to_lines(centre, o.lines) <= kDiagonal;
            });
            if (common) out.common_cells.emplace_back(i, j);
        }
    }
    if (out.common_cells.empty()) return out;
    double extent = 0.0;
    for (const auto& a : out.common_cells) {
        for (const auto& b : out.common_cells) {
            const double di = double(a.first) - double(b.first), dj = double(a.second) - double(b.second);
            extent = std::max(extent, std::sqrt(di * di + dj * dj));
        }
    }
    out.common_extent = extent / kDiagonal;
    out.diagnostic = out.common_extent <= 3.0 ? IntersectionKind::unique : IntersectionKind::overlap;
    return out;
}

RangeRecommendation recommend_search_range(const SweepGrid& sweep, const IsolineSet& isolines) {
    auto positive_bounds = [](const std::vector<double>& axis) {
        StiffnessRange r{std::numeric_limits<double>::infinity(), 0.0};
        for (double v : axis) {
            if (v > 0.0 && std::isfinite(v)) {
                r.lo = std::min(r.lo, v);
                r.hi = std::max(r.hi, v);
            }
        }
        return r;
    };
    const StiffnessRange kr_full = positive_bounds(sweep.kr);
    const StiffnessRange ks_full = positive_bounds(sweep.ks);

    StiffnessRange kr{std::numeric_limits<double>::infinity(), 0.0};
    StiffnessRange ks = kr;
    bool any = false;
    for (const auto& o : isolines.per_order) {
        for (const auto& l : o.lines) {
            for (const auto& [r, s] : l.points) {
                if (r > 0.0 && std::isfinite(r)) {
                    kr.lo = std::min(kr.lo, r);
                    kr.hi = std::max(kr.hi, r);
                    any = true;
                }
                if (s > 0.0 && std::isfinite(s)) {
                    ks.lo = std::min(ks.lo, s);
                    ks.hi = std::max(ks.hi, s);
                    any = true;
                }
            }
        }
    }

    RangeRecommendation rec;
    if (!any) {
        rec.kr = kr_full;
        rec.ks = ks_full;
        rec.warning = true;
        rec.message = "no isoline support on the grid; returning the full sweep range";
        return rec;
    }
    auto widen = [](StiffnessRange support, StiffnessRange full) {
        if (!(support.hi > 0.0)) return full;
        StiffnessRange r;
        r.lo = std::pow(10.0, std::floor(std::log10(support.lo) + 1e-9) - 1.0);
        r.hi = std::pow(10.0, std::ceil(std::log10(support.hi) - 1e-9) + 1.0);
        r.lo = std::max(r.lo, full.lo);
        r.hi = std::min(r.hi, full.hi);
        return r;
    };
    rec.kr = widen(kr, kr_full);
    rec.ks = widen(ks, ks_full);
    if (rec.kr.lo <= kr_full.lo && rec.kr.hi >= kr_full.hi && rec.ks.lo <= ks_full.lo && rec.ks.hi >= ks_full.hi) {
        rec.warning = true;
        rec.message = "isolines span the whole grid; the sweep does not narrow the search range";
    }
    return rec;
}

}  // namespace cable
