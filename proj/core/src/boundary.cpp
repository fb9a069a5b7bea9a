#include "sl2r/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <set>

namespace sl2r {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap_2pi(double a) {
    double w = std::fmod(a, 2.0 * kPi);
    if (w < 0) w += 2.0 * kPi;
    return w;
}

// Signed angular step to the next vertex along the shorter arc, in (-pi, pi].
double angular_step(double from, double to) {
    double d = wrap_2pi(to - from);
    if (d > kPi) d -= 2.0 * kPi;
    return d;
}

// Preprocessed segment. Finite segments are linear from (p1, t1) to (p2, t2)
// with signed span in the position coordinate; span == 0 is a vertical
// segment. Rays extend from (p1, t1) at constant height t1 toward dir * inf.
struct Seg {
    enum Kind { Finite, Ray, AtInfinity } kind = Finite;
    double p1 = 0, t1 = 0, p2 = 0, t2 = 0;
    double span = 0;
    int dir = +1;       // rays only
    int comp = 0;
    int index = 0;      // position in the component walk
};

struct Prepared {
    Model model = Model::Cylinder;
    std::vector<Seg> segs;               // finite-fiber geometry
    std::vector<std::pair<double, double>> inf_blocked;  // intervals on the infinity fiber
    std::vector<double> breakpoints;     // sorted unique vertex positions
};

int ray_direction_leaving(const CurveComponent& comp, size_t finite_idx) {
    // direction of travel when the walk leaves the finite vertex toward infinity
    const auto& v = comp.vertices;
    const size_t n = v.size();
    size_t prev = (finite_idx + n - 1) % n;
    if (!v[prev].at_inf && v[prev].pos != v[finite_idx].pos)
        return v[finite_idx].pos > v[prev].pos ? +1 : -1;
    return +1;
}

int ray_direction_arriving(const CurveComponent& comp, size_t finite_idx) {
    const auto& v = comp.vertices;
    const size_t n = v.size();
    size_t next = (finite_idx + 1) % n;
    if (!v[next].at_inf && v[next].pos != v[finite_idx].pos)
        return v[next].pos < v[finite_idx].pos ? +1 : -1;
    return -1;
}

Prepared prepare(const IdealBoundaryCurve& curve) {
    Prepared out;
    out.model = curve.model;
    std::set<double> bps;
    for (int ci = 0; ci < static_cast<int>(curve.components.size()); ++ci) {
        const auto& comp = curve.components[ci];
        const size_t n = comp.vertices.size();
        if (n < 2) throw InvalidCurveError("component with fewer than two vertices");
        const size_t nseg = comp.closed ? n : n - 1;
        for (size_t i = 0; i < nseg; ++i) {
            const CurveVertex& a = comp.vertices[i];
            const CurveVertex& b = comp.vertices[(i + 1) % n];
            Seg s;
            s.comp = ci;
            s.index = static_cast<int>(i);
            if (curve.model == Model::Cylinder) {
                if (a.at_inf || b.at_inf)
                    throw InvalidCurveError("cylinder curves have no infinity sentinel");
                s.p1 = wrap_2pi(a.pos);
                s.p2 = wrap_2pi(b.pos);
                s.t1 = a.t;
                s.t2 = b.t;
                s.span = angular_step(s.p1, s.p2);
                if (std::abs(std::abs(s.span) - kPi) < 1e-12)
                    throw InvalidCurveError("segment spans half the circle; resample the curve");
                out.segs.push_back(s);
                bps.insert(s.p1);
            } else {
                if (a.at_inf && b.at_inf) {
                    s.kind = Seg::AtInfinity;
                    s.t1 = a.t;
                    s.t2 = b.t;
                    out.inf_blocked.push_back({std::min(a.t, b.t), std::max(a.t, b.t)});
                    out.segs.push_back(s);
                } else if (b.at_inf) {
                    s.kind = Seg::Ray;
                    s.p1 = a.pos;
                    s.t1 = a.t;
                    s.dir = ray_direction_leaving(comp, i);
                    out.segs.push_back(s);
                    bps.insert(a.pos);
                    out.inf_blocked.push_back({b.t, b.t});
                } else if (a.at_inf) {
                    s.kind = Seg::Ray;
                    s.p1 = b.pos;
                    s.t1 = b.t;
                    s.dir = ray_direction_arriving(comp, (i + 1) % n);
                    out.segs.push_back(s);
                    bps.insert(b.pos);
                    out.inf_blocked.push_back({a.t, a.t});
                } else {
                    s.p1 = a.pos;
                    s.p2 = b.pos;
                    s.t1 = a.t;
                    s.t2 = b.t;
                    s.span = b.pos - a.pos;
                    out.segs.push_back(s);
                    bps.insert(a.pos);
                    bps.insert(b.pos);
                }
            }
        }
        if (!comp.closed) {
            // open end vertices still block their own fiber point
            const auto& last = comp.vertices.back();
            if (!last.at_inf) bps.insert(curve.model == Model::Cylinder ? wrap_2pi(last.pos) : last.pos);
            if (curve.model == Model::Cylinder) bps.insert(wrap_2pi(comp.vertices.front().pos));
        }
    }
    out.breakpoints.assign(bps.begin(), bps.end());
    return out;
}

// Fiber offset of position p inside a segment, in units of the position
// coordinate; in [0, |span|] when the fiber meets the segment.
bool seg_offset(const Prepared& prep, const Seg& s, double p, double& off) {
    if (s.kind == Seg::Ray) {
        if (s.dir > 0 ? p >= s.p1 : p <= s.p1) {
            off = std::abs(p - s.p1);
            return true;
        }
        return false;
    }
    if (s.span == 0.0) return false;  // vertical; handled as covered interval
    if (prep.model == Model::Cylinder) {
        const double raw = s.span > 0 ? wrap_2pi(p - s.p1) : wrap_2pi(s.p1 - p);
        if (raw <= std::abs(s.span)) {
            off = raw;
            return true;
        }
        return false;
    }
    const double lo = std::min(s.p1, s.p2), hi = std::max(s.p1, s.p2);
    if (p < lo || p > hi) return false;
    off = s.span > 0 ? p - s.p1 : s.p1 - p;
    return true;
}

double seg_height_at(const Seg& s, double off) {
    if (s.kind == Seg::Ray) return s.t1;
    return s.t1 + (s.t2 - s.t1) * (off / std::abs(s.span));
}

// All points/intervals of the curve on the fiber over p. Points are
// degenerate intervals. Half-open convention: a crossing at the far endpoint
// of a segment belongs to the next segment.
std::vector<std::pair<double, double>> blocked_on_fiber(const Prepared& prep,
                                                        const IdealBoundaryCurve& curve,
                                                        double p) {
    std::vector<std::pair<double, double>> blocked;
    for (const auto& s : prep.segs) {
        if (s.kind == Seg::AtInfinity) continue;
        if (s.kind != Seg::Ray && s.span == 0.0) {
            const bool same = prep.model == Model::Cylinder
                                  ? wrap_2pi(p - s.p1) == 0.0
                                  : p == s.p1;
            if (same) blocked.push_back({std::min(s.t1, s.t2), std::max(s.t1, s.t2)});
            continue;
        }
        double off;
        if (!seg_offset(prep, s, p, off)) continue;
        if (s.kind != Seg::Ray && off == std::abs(s.span)) continue;  // endpoint of next segment
        const double t = seg_height_at(s, off);
        blocked.push_back({t, t});
    }
    // Open-component end vertices.
    for (const auto& comp : curve.components) {
        if (comp.closed) continue;
        const auto& last = comp.vertices.back();
        if (!last.at_inf) {
            const bool same = prep.model == Model::Cylinder ? wrap_2pi(p - last.pos) == 0.0
                                                            : p == last.pos;
            if (same) blocked.push_back({last.t, last.t});
        }
    }
    std::sort(blocked.begin(), blocked.end());
    // merge touching/overlapping closed pieces
    std::vector<std::pair<double, double>> merged;
    for (const auto& b : blocked) {
        if (!merged.empty() && b.first <= merged.back().second) {
            merged.back().second = std::max(merged.back().second, b.second);
        } else {
            merged.push_back(b);
        }
    }
    return merged;
}

double shortest_gap(const std::vector<std::pair<double, double>>& blocked) {
    if (blocked.size() < 2) return kInf;
    double best = kInf;
    for (size_t i = 0; i + 1 < blocked.size(); ++i)
        best = std::min(best, blocked[i + 1].first - blocked[i].second);
    return best;
}

// Active crossing functions on an open breakpoint interval (a, b); positions
// are given in an unwrapped coordinate containing the interval.
struct ActiveCrossing {
    double t_at_a = 0, t_at_b = 0;
};

std::vector<ActiveCrossing> active_on_interval(const Prepared& prep, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double pmid = prep.model == Model::Cylinder ? wrap_2pi(mid) : mid;
    std::vector<std::pair<double, ActiveCrossing>> act;
    for (const auto& s : prep.segs) {
        if (s.kind == Seg::AtInfinity) continue;
        if (s.kind != Seg::Ray && s.span == 0.0) continue;
        double off;
        if (!seg_offset(prep, s, pmid, off)) continue;
        if (s.kind != Seg::Ray && (off <= 0.0 || off >= std::abs(s.span))) continue;
        const double slope = s.kind == Seg::Ray ? 0.0
                                                : (s.t2 - s.t1) / s.span;
        // off grows with p for span > 0 (and for rays height is constant)
        const double tmid = seg_height_at(s, off);
        ActiveCrossing c;
        c.t_at_a = tmid + slope * (a - mid);
        c.t_at_b = tmid + slope * (b - mid);
        act.push_back({tmid, c});
    }
    std::sort(act.begin(), act.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    std::vector<ActiveCrossing> out;
    out.reserve(act.size());
    for (auto& a2 : act) out.push_back(a2.second);
    return out;
}

// ----------------------------------------------------------------- validate

int orient(double ax, double ay, double bx, double by, double cx, double cy) {
    const double v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

bool on_seg(double ax, double ay, double bx, double by, double px, double py) {
    return std::min(ax, bx) <= px && px <= std::max(ax, bx) && std::min(ay, by) <= py &&
           py <= std::max(ay, by);
}

// Planar segment intersection. Adjacent polyline segments may share exactly
// one endpoint; anything else (proper crossing, T-junction, collinear
// overlap) violates simplicity.
bool segments_conflict(double a1x, double a1y, double a2x, double a2y, double b1x, double b1y,
                       double b2x, double b2y, bool endpoints_may_touch) {
    const int o1 = orient(a1x, a1y, a2x, a2y, b1x, b1y);
    const int o2 = orient(a1x, a1y, a2x, a2y, b2x, b2y);
    const int o3 = orient(b1x, b1y, b2x, b2y, a1x, a1y);
    const int o4 = orient(b1x, b1y, b2x, b2y, a2x, a2y);
    if (o1 != o2 && o3 != o4 && o1 && o2 && o3 && o4) return true;  // proper crossing

    double scale = 1.0;
    for (double v : {a1x, a1y, a2x, a2y, b1x, b1y, b2x, b2y})
        scale = std::max(scale, std::abs(v));
    const double tol = 1e-12 * scale;
    std::vector<std::pair<double, double>> touch_pts;
    auto add_touch = [&](double px, double py, double cx, double cy, double dx, double dy,
                         int o) {
        if (o != 0 || !on_seg(cx, cy, dx, dy, px, py)) return;
        for (const auto& q : touch_pts)
            if (std::abs(q.first - px) <= tol && std::abs(q.second - py) <= tol) return;
        touch_pts.push_back({px, py});
    };
    add_touch(b1x, b1y, a1x, a1y, a2x, a2y, o1);
    add_touch(b2x, b2y, a1x, a1y, a2x, a2y, o2);
    add_touch(a1x, a1y, b1x, b1y, b2x, b2y, o3);
    add_touch(a2x, a2y, b1x, b1y, b2x, b2y, o4);
    if (touch_pts.empty()) return false;
    if (touch_pts.size() > 1) return true;  // collinear overlap or double touch
    const auto& p = touch_pts.front();
    auto near_pt = [&](double x, double y) {
        return std::abs(p.first - x) <= tol && std::abs(p.second - y) <= tol;
    };
    const bool end_a = near_pt(a1x, a1y) || near_pt(a2x, a2y);
    const bool end_b = near_pt(b1x, b1y) || near_pt(b2x, b2y);
    return !(endpoints_may_touch && end_a && end_b);
}

void check_pair(const Prepared& prep, const Seg& s1, const Seg& s2, bool adjacent) {
    auto endpoints = [&prep](const Seg& s, double shift, double& x1, double& y1, double& x2,
                             double& y2) {
        if (s.kind == Seg::Ray) {
            x1 = s.p1 + shift;
            y1 = s.t1;
            x2 = s.p1 + s.dir * 1e9 + shift;
            y2 = s.t1;
            return;
        }
        x1 = s.p1 + shift;
        y1 = s.t1;
        x2 = s.p1 + s.span + shift;
        y2 = s.t2;
        (void)prep;
    };
    double a1x, a1y, a2x, a2y;
    endpoints(s1, 0.0, a1x, a1y, a2x, a2y);
    const int shifts = prep.model == Model::Cylinder ? 3 : 1;
    for (int k = 0; k < shifts; ++k) {
        const double shift =
            prep.model == Model::Cylinder ? (k - 1) * 2.0 * kPi + std::round((a1x - s2.p1) / (2.0 * kPi)) * 2.0 * kPi
                                          : 0.0;
        double b1x, b1y, b2x, b2y;
        endpoints(s2, shift, b1x, b1y, b2x, b2y);
        if (segments_conflict(a1x, a1y, a2x, a2y, b1x, b1y, b2x, b2y, adjacent))
            throw InvalidCurveError("curve is not simple (segments intersect)");
    }
}

} // namespace

void validate_curve(const IdealBoundaryCurve& curve) {
    Prepared prep = prepare(curve);
    // pairwise simplicity, allowing adjacent segments to share their vertex
    for (size_t i = 0; i < prep.segs.size(); ++i) {
        for (size_t j = i + 1; j < prep.segs.size(); ++j) {
            const Seg& s1 = prep.segs[i];
            const Seg& s2 = prep.segs[j];
            if (s1.kind == Seg::AtInfinity || s2.kind == Seg::AtInfinity) continue;
            bool adjacent = false;
            if (s1.comp == s2.comp) {
                const auto& comp = curve.components[s1.comp];
                const int n = static_cast<int>(comp.vertices.size());
                const int di = std::abs(s1.index - s2.index);
                adjacent = di == 1 || (comp.closed && di == n - 1);
            }
            check_pair(prep, s1, s2, adjacent);
        }
    }
}

double height_function(const IdealBoundaryCurve& curve, double p) {
    Prepared prep = prepare(curve);
    const double pp = curve.model == Model::Cylinder ? wrap_2pi(p) : p;
    return shortest_gap(blocked_on_fiber(prep, curve, pp));
}

double height_at_infinity(const IdealBoundaryCurve& curve) {
    if (curve.model != Model::HalfSpace)
        throw WrongModelError("the infinity fiber belongs to the half-space model");
    Prepared prep = prepare(curve);
    auto blocked = prep.inf_blocked;
    std::sort(blocked.begin(), blocked.end());
    std::vector<std::pair<double, double>> merged;
    for (const auto& b : blocked) {
        if (!merged.empty() && b.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, b.second);
        else
            merged.push_back(b);
    }
    return shortest_gap(merged);
}

TallnessReport tallness(const IdealBoundaryCurve& curve, Tau tau) {
    validate_curve(curve);
    Prepared prep = prepare(curve);
    TallnessReport rep;
    rep.threshold = height_threshold(tau);
    rep.inf_height = kInf;

    auto consider = [&rep](double h, double pos) {
        if (h < rep.inf_height) {
            rep.inf_height = h;
            rep.worst_pos = pos;
        }
    };

    const auto& bp = prep.breakpoints;
    if (bp.empty()) {
        rep.tall = false;
        return rep;
    }

    // exact values on the breakpoint fibers
    for (double p : bp) consider(shortest_gap(blocked_on_fiber(prep, curve, p)), p);
    if (curve.model == Model::HalfSpace) {
        consider(height_at_infinity(curve), kInf);
        // constant tails beyond the extreme breakpoints
        for (double probe : {bp.front() - 1.0, bp.back() + 1.0})
            consider(shortest_gap(blocked_on_fiber(prep, curve, probe)), probe);
    }

    // between breakpoints the crossing heights are linear and keep their
    // order, so the infimum of the minimal gap sits at an interval end
    const size_t n = bp.size();
    const size_t intervals = curve.model == Model::Cylinder ? n : n - 1;
    for (size_t i = 0; i < intervals; ++i) {
        const double a = bp[i];
        const double b = i + 1 < n ? bp[i + 1] : bp[0] + 2.0 * kPi;
        if (b - a <= 0) continue;
        auto act = active_on_interval(prep, a, b);
        if (act.size() < 2) continue;
        for (size_t k = 0; k + 1 < act.size(); ++k) {
            consider(act[k + 1].t_at_a - act[k].t_at_a, a);
            consider(act[k + 1].t_at_b - act[k].t_at_b, b);
        }
    }

    rep.tall = rep.inf_height > rep.threshold;
    return rep;
}

bool is_tall(const IdealBoundaryCurve& curve, Tau tau) { return tallness(curve, tau).tall; }

Theorem12Report check_theorem12_hypotheses(const IdealBoundaryCurve& curve, Tau tau) {
    if (curve.model != Model::HalfSpace)
        throw WrongModelError("the vertical-line criterion is checked in half-space coordinates");
    const double threshold = height_threshold(tau);
    Theorem12Report rep;
    rep.touch_extent = kInf;

    std::set<double> candidates;
    for (const auto& comp : curve.components)
        for (const auto& v : comp.vertices)
            if (!v.at_inf) candidates.insert(v.pos);

    for (double x0 : candidates) {
        for (int side : {-1, +1}) {
            for (int ci = 0; ci < static_cast<int>(curve.components.size()); ++ci) {
                const auto& comp = curve.components[ci];
                const int n = static_cast<int>(comp.vertices.size());
                // effective x of a neighbor; an infinity sentinel lies on the
                // side its ray extends to
                auto xof = [&](int i, bool before) -> double {
                    const int idx = (i % n + n) % n;
                    const auto& v = comp.vertices[idx];
                    if (!v.at_inf) return v.pos;
                    const int fin = before ? (idx + 1) % n : (idx + n - 1) % n;
                    const int dir = before ? ray_direction_arriving(comp, fin)
                                           : ray_direction_leaving(comp, fin);
                    return dir > 0 ? kInf : -kInf;
                };
                auto on_line = [&](int i) {
                    const auto& v = comp.vertices[(i % n + n) % n];
                    return !v.at_inf && v.pos == x0;
                };
                for (int i = 0; i < n; ++i) {
                    if (!on_line(i) || on_line(i - 1)) continue;  // start of a run only
                    if (!comp.closed && i == 0) continue;         // no neighbor before
                    int j = i;
                    double tmin = comp.vertices[i].t, tmax = tmin;
                    while (on_line(j + 1) && (comp.closed || j + 1 < n)) {
                        ++j;
                        const double tv = comp.vertices[(j % n + n) % n].t;
                        tmin = std::min(tmin, tv);
                        tmax = std::max(tmax, tv);
                    }
                    if (!comp.closed && (j % n) == n - 1) continue;  // run ends at an open end
                    ++rep.candidates_checked;
                    const double before = xof(i - 1, true), after = xof(j + 1, false);
                    const bool one_sided = side < 0 ? (before < x0 && after < x0)
                                                    : (before > x0 && after > x0);
                    if (!one_sided) continue;
                    const double extent = tmax - tmin;
                    if (extent < threshold && extent < rep.touch_extent) {
                        rep.witness_found = true;
                        rep.line_x = x0;
                        rep.side = side;
                        rep.component = ci;
                        rep.touch_extent = extent;
                        rep.t0 = tmin - 0.5 * (threshold - extent);
                    }
                }
            }
        }
    }
    if (!rep.witness_found) {
        rep.touch_extent = 0;
        rep.note = "no one-sided touch with vertical extent below the threshold";
    } else {
        rep.note = "subarc through the touch set, shrunk into the open slab";
    }
    return rep;
}

Theorem13Result check_theorem13_hypothesis(const IdealBoundaryCurve& curve, Tau tau) {
    validate_curve(curve);
    Prepared prep = prepare(curve);
    const double thr = height_threshold(tau);
    Theorem13Result res;

    const auto& bp = prep.breakpoints;
    if (bp.empty()) return res;
    const bool circular = curve.model == Model::Cylinder;
    const size_t n = bp.size();
    const size_t intervals = circular ? n : n - 1;

    // sub-threshold pieces in the unwrapped coordinate, as closed intervals
    struct Piece { double lo, hi; };
    std::vector<Piece> pieces;
    auto add_piece = [&pieces](double lo, double hi) {
        if (hi <= lo) return;
        pieces.push_back({lo, hi});
    };

    for (size_t i = 0; i < intervals; ++i) {
        const double a = bp[i];
        const double b = i + 1 < n ? bp[i + 1] : bp[0] + 2.0 * kPi;
        if (b - a <= 0) continue;
        auto act = active_on_interval(prep, a, b);
        if (act.size() < 2) continue;  // h = +inf on the whole open interval
        // superlevel set {h >= thr} is the intersection of the per-gap halflines
        double L = a, R = b;
        bool empty = false;
        for (size_t k = 0; k + 1 < act.size() && !empty; ++k) {
            const double ga = act[k + 1].t_at_a - act[k].t_at_a;
            const double gb = act[k + 1].t_at_b - act[k].t_at_b;
            if (ga >= thr && gb >= thr) continue;          // full interval
            if (ga < thr && gb < thr) { empty = true; break; }
            const double cross = a + (thr - ga) / (gb - ga) * (b - a);
            if (ga < thr) L = std::max(L, cross);          // {g >= thr} = [cross, b]
            else R = std::min(R, cross);                   // {g >= thr} = [a, cross]
        }
        if (empty || L > R) {
            add_piece(a, b);
        } else {
            add_piece(a, L);
            add_piece(R, b);
        }
    }

    if (pieces.empty()) return res;

    // stitch pieces across breakpoints where the exact fiber value is below
    std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) { return x.lo < y.lo; });
    auto below_at = [&](double p) {
        const double pp = circular ? wrap_2pi(p) : p;
        return shortest_gap(blocked_on_fiber(prep, curve, pp)) < thr;
    };
    std::vector<Piece> merged;
    for (const auto& pc : pieces) {
        if (!merged.empty() && pc.lo <= merged.back().hi + 1e-15 && below_at(pc.lo)) {
            merged.back().hi = std::max(merged.back().hi, pc.hi);
        } else {
            merged.push_back(pc);
        }
    }
    if (circular && merged.size() > 1) {
        // wrap join: last piece ending at bp[0] + 2pi meets the first at bp[0]
        const double period = 2.0 * kPi;
        if (std::abs(merged.back().hi - (bp[0] + period)) < 1e-12 &&
            std::abs(merged.front().lo - bp[0]) < 1e-12 && below_at(bp[0])) {
            merged.front().lo = merged.back().lo - period;
            merged.pop_back();
        }
    }

    double best_len = 0;
    for (const auto& m : merged) {
        if (m.hi - m.lo > best_len) {
            best_len = m.hi - m.lo;
            res.lo = circular ? wrap_2pi(m.lo) : m.lo;
            res.hi = circular ? wrap_2pi(m.hi) : m.hi;
        }
    }
    res.holds = best_len > 0;
    res.full_circle = circular && best_len >= 2.0 * kPi - 1e-12;
    if (res.full_circle) {
        res.lo = 0;
        res.hi = 2.0 * kPi;
    }
    return res;
}

IdealBoundaryCurve transport_boundary(const IdealBoundaryCurve& curve, TransportDir dir,
                                      Tau tau, int resolution) {
    if (resolution < 1) throw BadParameterError("resolution must be positive");
    const double jump = 2.0 * tau.value * kPi;
    IdealBoundaryCurve out;

    if (dir == TransportDir::HalfToCyl) {
        if (curve.model != Model::HalfSpace) throw WrongModelError("curve is not in half-space coordinates");
        out.model = Model::Cylinder;
        for (const auto& comp : curve.components) {
            CurveComponent oc;
            oc.closed = comp.closed;
            const size_t n = comp.vertices.size();
            const size_t nseg = comp.closed ? n : n - 1;
            for (size_t i = 0; i < nseg; ++i) {
                const CurveVertex& a = comp.vertices[i];
                const CurveVertex& b = comp.vertices[(i + 1) % n];
                if (a.at_inf && b.at_inf) continue;  // handled by the sentinel mapping below
                if (a.at_inf) continue;              // incoming ray: emitted with its finite vertex
                // emit the mapped vertex a
                {
                    const auto th = boundary_to_cylinder(a.pos, a.t, tau);
                    oc.vertices.push_back({th[0], th[1], false});
                }
                if (b.at_inf) {
                    // ray toward infinity: constant height a.t; its image is a
                    // short arc ending on the seam theta = 0
                    const int raydir = ray_direction_leaving(comp, i);
                    for (int k = 1; k < resolution; ++k) {
                        const double x = a.pos + raydir * std::tan(0.5 * kPi * k / resolution);
                        const auto th = boundary_to_cylinder(x, a.t, tau);
                        oc.vertices.push_back({th[0], th[1], false});
                    }
                    // seam image of the run at infinity: a strand reaching
                    // x -> +inf lands at t - 2 tau pi, x -> -inf at t + 2 tau pi
                    size_t k = (i + 1) % n;
                    double t_first = b.t, t_last = b.t;
                    while (comp.vertices[k].at_inf) {
                        t_last = comp.vertices[k].t;
                        k = (k + 1) % n;
                    }
                    const int outdir = ray_direction_arriving(comp, k);
                    oc.vertices.push_back({0.0, t_first - raydir * jump, false});
                    oc.vertices.push_back({0.0, t_last - outdir * jump, false});
                    continue;
                }
                // resample the open span
                for (int k = 1; k < resolution; ++k) {
                    const double u = static_cast<double>(k) / resolution;
                    const double x = a.pos + (b.pos - a.pos) * u;
                    const double t = a.t + (b.t - a.t) * u;
                    const auto th = boundary_to_cylinder(x, t, tau);
                    oc.vertices.push_back({th[0], th[1], false});
                }
            }
            if (!comp.closed && !comp.vertices.back().at_inf) {
                const auto& v = comp.vertices.back();
                const auto th = boundary_to_cylinder(v.pos, v.t, tau);
                oc.vertices.push_back({th[0], th[1], false});
            }
            out.components.push_back(oc);
        }
        return out;
    }

    if (curve.model != Model::Cylinder) throw WrongModelError("curve is not in cylinder coordinates");
    out.model = Model::HalfSpace;
    for (const auto& comp : curve.components) {
        CurveComponent oc;
        oc.closed = comp.closed;
        const size_t n = comp.vertices.size();
        const size_t nseg = comp.closed ? n : n - 1;
        for (size_t i = 0; i < nseg; ++i) {
            const CurveVertex& a = comp.vertices[i];
            const CurveVertex& b = comp.vertices[(i + 1) % n];
            const double th_a = wrap_2pi(a.pos);
            // vertex a itself
            if (th_a == 0.0) {
                // on the seam: becomes the infinity sentinel pair, ordered by
                // the directions of the adjacent strands
                const double span_next = angular_step(0.0, wrap_2pi(b.pos));
                const double t_in = a.t + jump;   // strand arriving from theta -> 2pi
                const double t_out = a.t - jump;  // strand leaving into theta -> 0+
                if (span_next >= 0) {
                    oc.vertices.push_back({0.0, t_in, true});
                    oc.vertices.push_back({0.0, t_out, true});
                } else {
                    oc.vertices.push_back({0.0, t_out, true});
                    oc.vertices.push_back({0.0, t_in, true});
                }
            } else {
                const auto xh = boundary_to_half_space(th_a, a.t, tau);
                oc.vertices.push_back({xh[0], xh[1], false});
            }
            // resample the span, splitting at the seam when crossed
            const double span = angular_step(th_a, wrap_2pi(b.pos));
            if (span == 0.0) continue;
            double prev_u = 0.0;
            for (int k = 1; k < resolution; ++k) {
                const double u = static_cast<double>(k) / resolution;
                const double th = th_a + span * u;
                const double w = wrap_2pi(th);
                // seam crossing between prev_u and u?
                const double thp = th_a + span * prev_u;
                if (std::floor(th / (2.0 * kPi)) != std::floor(thp / (2.0 * kPi)) ||
                    w == 0.0) {
                    const double ucross = span > 0
                                              ? (2.0 * kPi * std::ceil(thp / (2.0 * kPi)) - th_a) / span
                                              : (2.0 * kPi * std::floor(thp / (2.0 * kPi)) - th_a) / span;
                    const double tcross = a.t + (b.t - a.t) * ucross;
                    if (span > 0) {
                        oc.vertices.push_back({0.0, tcross + jump, true});
                        oc.vertices.push_back({0.0, tcross - jump, true});
                    } else {
                        oc.vertices.push_back({0.0, tcross - jump, true});
                        oc.vertices.push_back({0.0, tcross + jump, true});
                    }
                }
                prev_u = u;
                if (w != 0.0) {
                    const double t = a.t + (b.t - a.t) * u;
                    const auto xh = boundary_to_half_space(w, t, tau);
                    oc.vertices.push_back({xh[0], xh[1], false});
                }
            }
        }
        if (!comp.closed) {
            const auto& v = comp.vertices.back();
            const auto xh = boundary_to_half_space(wrap_2pi(v.pos), v.t, tau);
            oc.vertices.push_back({xh[0], xh[1], false});
        }
        out.components.push_back(oc);
    }
    return out;
}

// ------------------------------------------------------------ ideal polygon

namespace {

using cplx = std::complex<double>;

// Moebius map of the closed disk to the closed upper half-plane sending
// a -> 0 and b -> infinity. Returned as the four coefficients of
// (m1 z + m2)/(m3 z + m4).
struct DiskToUHP {
    cplx m1, m2, m3, m4;
    cplx operator()(cplx z) const { return (m1 * z + m2) / (m3 * z + m4); }
};

DiskToUHP normalize_edge(double theta_a, double theta_b) {
    const cplx a = std::polar(1.0, theta_a);
    const cplx b = std::polar(1.0, theta_b);
    for (double off : {0.0, kPi}) {
        const cplx m = std::polar(1.0, 0.5 * (theta_a + theta_b) + off);
        if (std::abs(m - a) < 1e-9 || std::abs(m - b) < 1e-9) continue;
        // M(z) = (z-a)(m-b) / ((z-b)(m-a)) sends a->0, b->inf, m->1
        DiskToUHP M{(m - b), -a * (m - b), (m - a), -b * (m - a)};
        if (M(cplx(0, 0)).imag() > 0) return M;
    }
    throw BadParameterError("degenerate ideal edge");
}

// Horodisk images under the normalization: diameter of the horoball at 0 and
// level of the horoball at infinity, from the image of the deepest point.
double image_diameter_at_zero(const DiskToUHP& M, double theta, double size) {
    const cplx deep = std::polar(1.0 - size, theta);
    const cplx w = M(deep);
    return std::norm(w) / w.imag();
}

double image_level_at_infinity(const DiskToUHP& M, double theta, double size) {
    const cplx deep = std::polar(1.0 - size, theta);
    return M(deep).imag();
}

int vertex_count(const IdealPolygon& poly) {
    return static_cast<int>(poly.theta.size()) + (poly.has_origin ? 1 : 0);
}

// Vertex i of the boundary walk; index 0 is the origin when present.
bool is_origin_vertex(const IdealPolygon& poly, int i) { return poly.has_origin && i == 0; }

double vertex_angle(const IdealPolygon& poly, int i) {
    return poly.theta[poly.has_origin ? i - 1 : i];
}

double vertex_size(const IdealPolygon& poly, int i) {
    return poly.horocycle[poly.has_origin ? i - 1 : i];
}

double edge_or_chord_length(const IdealPolygon& poly, int i, int j) {
    if (is_origin_vertex(poly, i)) return origin_edge_length(vertex_size(poly, j));
    if (is_origin_vertex(poly, j)) return origin_edge_length(vertex_size(poly, i));
    return ideal_edge_length(vertex_angle(poly, i), vertex_size(poly, i), vertex_angle(poly, j),
                             vertex_size(poly, j));
}

// strict cyclic interleaving of ideal points => the geodesics cross
bool arcs_interleave(double a, double b, double c, double d) {
    auto between = [](double lo, double hi, double x) {
        return wrap_2pi(x - lo) < wrap_2pi(hi - lo) && wrap_2pi(x - lo) > 0;
    };
    return between(a, b, c) != between(a, b, d);
}

// Does the radial geodesic from the origin to e^{i theta_k} cross the
// geodesic (theta_a, theta_b)? By the normalization trick the latter is the
// imaginary axis, and a geodesic segment crosses it iff its endpoints lie on
// strictly opposite sides.
bool radius_crosses_chord(double theta_k, double theta_a, double theta_b) {
    const DiskToUHP M = normalize_edge(theta_a, theta_b);
    const double side_origin = M(cplx(0, 0)).real();
    const cplx ek = std::polar(1.0, theta_k);
    if (std::abs(ek - std::polar(1.0, theta_a)) < 1e-15 ||
        std::abs(ek - std::polar(1.0, theta_b)) < 1e-15)
        return false;  // shared ideal endpoint
    const double side_k = M(ek).real();
    return side_origin * side_k < 0;
}

} // namespace

double origin_edge_length(double size) {
    if (!(size > 0 && size < 1)) throw BadParameterError("horocycle size must lie in (0, 1)");
    return std::log((2.0 - size) / size);
}

double ideal_edge_length(double theta_a, double size_a, double theta_b, double size_b) {
    if (!(size_a > 0 && size_a < 1 && size_b > 0 && size_b < 1))
        throw BadParameterError("horocycle sizes must lie in (0, 1)");
    const DiskToUHP M = normalize_edge(theta_a, theta_b);
    const double s0 = image_diameter_at_zero(M, theta_a, size_a);
    const double hinf = image_level_at_infinity(M, theta_b, size_b);
    return std::log(hinf / s0);
}

void validate_polygon(const IdealPolygon& poly) {
    const int m = static_cast<int>(poly.theta.size());
    if (poly.horocycle.size() != poly.theta.size())
        throw BadParameterError("one horocycle size per ideal vertex");
    if (poly.has_origin) {
        if (m < 3 || m % 2 == 0)
            throw BadParameterError("origin polygons need an odd number >= 3 of ideal vertices");
    } else {
        if (m < 4 || m % 2 == 1)
            throw BadParameterError("ideal polygons need an even number >= 4 of vertices");
    }
    if (vertex_count(poly) > 16) throw TooManyVerticesError("at most 16 vertices supported");
    for (double s : poly.horocycle)
        if (!(s > 0 && s < 1)) throw BadParameterError("horocycle size must lie in (0, 1)");
    // strict cyclic order
    for (int i = 0; i < m; ++i) {
        const double gap = wrap_2pi(poly.theta[(i + 1) % m] - poly.theta[i]);
        if (gap <= 1e-12 && m > 1)
            throw BadParameterError("ideal vertices must be distinct and cyclically ordered");
    }
    // pairwise disjoint horoballs
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const double len = ideal_edge_length(poly.theta[i], poly.horocycle[i], poly.theta[j],
                                                 poly.horocycle[j]);
            if (!(len > 1e-12))
                throw OverlappingHorocyclesError("horoballs at vertices " + std::to_string(i) +
                                                 " and " + std::to_string(j) + " are not disjoint");
        }
    }
}

JenkinsSerrinReport jenkins_serrin_check(const IdealPolygon& poly) {
    validate_polygon(poly);
    const int V = vertex_count(poly);

    // labeled boundary edges: index i joins vertex i and i+1; even -> A
    std::vector<double> edge_len(V);
    for (int i = 0; i < V; ++i) edge_len[i] = edge_or_chord_length(poly, i, (i + 1) % V);

    JenkinsSerrinReport rep;
    for (int i = 0; i < V; ++i) (i % 2 == 0 ? rep.alpha : rep.beta) += edge_len[i];
    rep.gamma = rep.alpha + rep.beta;
    rep.balanced = std::abs(rep.alpha - rep.beta) < 1e-9;

    // exhaustive proper inscribed polygons with vertices among the polygon's
    rep.worst_margin = kInf;
    rep.strict = true;
    std::vector<int> sel;
    for (unsigned mask = 0; mask < (1u << V); ++mask) {
        const int count = __builtin_popcount(mask);
        if (count < 3 || count == V) continue;
        sel.clear();
        for (int i = 0; i < V; ++i)
            if (mask & (1u << i)) sel.push_back(i);

        const bool has_origin = poly.has_origin && (mask & 1u);
        // admissibility: the origin may not be interior to an all-ideal P
        if (poly.has_origin && !has_origin) {
            double max_gap = 0;
            for (size_t k = 0; k < sel.size(); ++k) {
                const double g = wrap_2pi(vertex_angle(poly, sel[(k + 1) % sel.size()]) -
                                          vertex_angle(poly, sel[k]));
                max_gap = std::max(max_gap, g);
            }
            if (max_gap <= kPi) continue;
        }
        // admissibility: chords may not cross the polygon boundary
        bool ok = true;
        for (size_t k = 0; k < sel.size() && ok; ++k) {
            const int u = sel[k], w = sel[(k + 1) % sel.size()];
            if ((w - u + V) % V == 1 || (u - w + V) % V == 1) continue;  // boundary edge
            for (int e = 0; e < V && ok; ++e) {
                const int e2 = (e + 1) % V;
                if (e == u || e == w || e2 == u || e2 == w) continue;
                const bool chord_has_origin = is_origin_vertex(poly, u) || is_origin_vertex(poly, w);
                const bool edge_has_origin = is_origin_vertex(poly, e) || is_origin_vertex(poly, e2);
                if (chord_has_origin && edge_has_origin) continue;
                if (chord_has_origin) {
                    const int ideal = is_origin_vertex(poly, u) ? w : u;
                    ok = !radius_crosses_chord(vertex_angle(poly, ideal), vertex_angle(poly, e),
                                               vertex_angle(poly, e2));
                } else if (edge_has_origin) {
                    const int ideal = is_origin_vertex(poly, e) ? e2 : e;
                    ok = !radius_crosses_chord(vertex_angle(poly, ideal), vertex_angle(poly, u),
                                               vertex_angle(poly, w));
                } else {
                    ok = !arcs_interleave(vertex_angle(poly, u), vertex_angle(poly, w),
                                          vertex_angle(poly, e), vertex_angle(poly, e2));
                }
            }
        }
        if (!ok) continue;

        ++rep.inscribed_checked;
        double a = 0, b = 0, g = 0;
        for (size_t k = 0; k < sel.size(); ++k) {
            const int u = sel[k], w = sel[(k + 1) % sel.size()];
            if ((w - u + V) % V == 1) {
                g += edge_len[u];
                (u % 2 == 0 ? a : b) += edge_len[u];
            } else if ((u - w + V) % V == 1) {
                g += edge_len[w];
                (w % 2 == 0 ? a : b) += edge_len[w];
            } else {
                g += edge_or_chord_length(poly, u, w);
            }
        }
        const double margin = g - 2.0 * std::max(a, b);
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            std::string desc;
            for (int v : sel) {
                if (!desc.empty()) desc += ",";
                desc += is_origin_vertex(poly, v) ? "O" : std::to_string(poly.has_origin ? v - 1 : v);
            }
            rep.worst_inscribed = desc;
        }
        if (margin <= 0) rep.strict = false;
    }
    if (rep.inscribed_checked == 0) rep.worst_margin = 0;
    return rep;
}

} // namespace sl2r
