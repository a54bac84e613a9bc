#include "chacon/crossings.hpp"

#include <algorithm>

namespace chacon {

namespace {

std::string tuple_string(const PointTuple& xs) {
    std::string s = "(";
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += xs[i].to_string();
    }
    return s + ")";
}

} // namespace

bool PartialShift::in_g1(int i) const {
    return std::find(g1.begin(), g1.end(), i) != g1.end();
}

std::vector<PartialShift> PartialShift::all(int d) {
    std::vector<PartialShift> out;
    for (int mask = 0; mask < (1 << d); ++mask) {
        PartialShift s;
        s.d = d;
        for (int i = 0; i < d; ++i)
            if (mask & (1 << i)) s.g1.push_back(i);
        out.push_back(std::move(s));
    }
    return out;
}

int min_enclosing_depth(const Transform& t, const PointTuple& xs) {
    const TowerGeometry& g = t.geometry();
    for (int n = 1; n <= g.max_depth(); ++n)
        if (t.in_half_cube(n, xs)) return n;
    throw DepthExhausted("tuple not in any C_n^d up to max_depth");
}

Crossing crossing_at(const Transform& t, const PointTuple& xs, int n, long long j0) {
    const TowerGeometry& g = t.geometry();
    PointTuple at = t.product_apply(xs, j0);
    if (!t.in_half_cube(n, at))
        throw std::invalid_argument("crossing_at: tuple not in C_n^d at j0");
    // An n-crossing has at most h_n/2 elements; anything longer means a
    // geometry bug, not a longer crossing.
    long long cap = g.half_height(n) + 1;

    Crossing c;
    c.depth = n;
    c.start = c.end = j0;
    OrbitCursor fwd(t, at);
    while (fwd.step_forward() && t.in_half_cube(n, fwd.point())) {
        if (++c.end - j0 > cap) throw std::runtime_error("crossing exceeds the separation bound");
    }
    OrbitCursor bwd(t, at);
    while (true) {
        if (!bwd.step_backward()) {
            if (bwd.exhausted()) c.truncated_left = true;
            break;
        }
        if (!t.in_half_cube(n, bwd.point())) break;
        if (j0 - --c.start > cap) throw std::runtime_error("crossing exceeds the separation bound");
    }
    return c;
}

std::vector<Crossing> crossings_in_window(const Transform& t, const PointTuple& xs, int n,
                                          long long j_min, long long j_max) {
    if (j_min > j_max) throw std::invalid_argument("empty window");
    const TowerGeometry& g = t.geometry();
    long long cap = g.half_height(n) + 1;

    // Walk from 0 down toward j_min; the orbit may leave the finite
    // construction on the way, in which case the scan starts where it stops.
    long long j = 0;
    OrbitCursor cur(t, xs);
    while (j > j_min) {
        if (!cur.step_backward()) break;
        --j;
    }
    while (j < j_min) {  // j_min > 0
        if (!cur.step_forward()) throw DepthExhausted("window start unreachable");
        ++j;
    }
    long long scan_start = j;

    std::vector<Crossing> out;
    bool inside = false;
    Crossing open;
    for (; j <= j_max; ++j) {
        bool member = t.in_half_cube(n, cur.point());
        if (member && !inside) {
            open = Crossing{n, j, j, false};
            if (j == scan_start) {
                // may extend to the left of the window; walk back to maximality
                OrbitCursor back(t, cur.point());
                while (true) {
                    if (!back.step_backward()) {
                        if (back.exhausted()) open.truncated_left = true;
                        break;
                    }
                    if (!t.in_half_cube(n, back.point())) break;
                    --open.start;
                }
            }
            inside = true;
        } else if (!member && inside) {
            out.push_back(open);
            inside = false;
        }
        if (inside) open.end = j;
        if (j < j_max && !cur.step_forward()) break;  // top of the deepest tower
    }
    if (inside) {
        // extend the trailing crossing to maximality past j_max
        OrbitCursor fwd(t, cur.point());
        while (fwd.step_forward() && t.in_half_cube(n, fwd.point())) {
            if (++open.end - open.start >= cap)
                throw std::runtime_error("crossing exceeds the separation bound");
        }
        out.push_back(open);
    }
    return out;
}

SeparationReport verify_separation(const Transform& t, const PointTuple& xs, int n,
                                   long long j_min, long long j_max) {
    const TowerGeometry& g = t.geometry();
    SeparationReport rep;
    rep.depth = n;
    rep.crossings = crossings_in_window(t, xs, n, j_min, j_max);
    long long bound = g.half_height(n);
    for (size_t i = 0; i < rep.crossings.size(); ++i) {
        const Crossing& c = rep.crossings[i];
        ++rep.checked;
        if (c.length() > bound) {
            ++rep.failed;
            rep.witnesses.push_back("crossing [" + std::to_string(c.start) + "," +
                                    std::to_string(c.end) + "] longer than " +
                                    std::to_string(bound));
        }
        if (i > 0) {
            ++rep.checked;
            long long gap = c.start - rep.crossings[i - 1].end - 1;
            if (gap < bound) {
                ++rep.failed;
                rep.witnesses.push_back("gap " + std::to_string(gap) + " before j=" +
                                        std::to_string(c.start) + " smaller than " +
                                        std::to_string(bound));
            }
        }
    }
    return rep;
}

void VerifyReport::merge(const VerifyReport& o) {
    checked += o.checked;
    failed += o.failed;
    witnesses.insert(witnesses.end(), o.witnesses.begin(), o.witnesses.end());
}

namespace {

/// Offsets on the 3^-(n+3) grid inside subcolumn `third` of an n-level,
/// spread across the 9 grid cells of that third.
std::vector<TriadicRational> third_offsets(int n, int third, int count) {
    std::vector<TriadicRational> out;
    for (int s = 0; s < count; ++s) {
        int j = count == 1 ? 0 : s * 8 / (count - 1);
        out.push_back(TriadicRational(BigInt((third - 1) * 9 + j), n + 3));
    }
    return out;
}

bool next_tuple(std::vector<std::int64_t>& v, std::int64_t bound) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (++v[i] < bound) return true;
        v[i] = 0;
    }
    return false;
}

} // namespace

VerifyReport verify_bto_sb(const Transform& t, int n, const PartialShift& shift,
                           int offsets_per_third, bool backward) {
    const TowerGeometry& g = t.geometry();
    const int d = shift.d;
    const std::int64_t half = g.half_height(n);
    const long long hop = g.height(n) + 1;
    VerifyReport rep;

    // t_n pattern required per coordinate: the forward direction checks
    // (1 on G1, 2 on G2), the backward one (2 on G1, 3 on G2).
    std::vector<int> pattern(d);
    for (int i = 0; i < d; ++i)
        pattern[i] = (backward ? 2 : 1) + (shift.in_g1(i) ? 0 : 1);

    std::vector<std::vector<TriadicRational>> offs(d);
    for (int i = 0; i < d; ++i) offs[i] = third_offsets(n, pattern[i], offsets_per_third);

    std::vector<std::int64_t> levels(d, 0);
    do {
        for (int s = 0; s < offsets_per_third; ++s) {
            PointTuple x(d);
            for (int i = 0; i < d; ++i)
                x[i] = g.level_left(n, levels[i]) + offs[i][(s + i) % offsets_per_third];
            ++rep.checked;

            if (!backward) {
                // y must land exactly in the shifted box, which settles the
                // equivalence for every n-box at once.
                PointTuple y = t.product_apply(x, hop);
                bool ok = true;
                for (int i = 0; i < d && ok; ++i) {
                    std::int64_t want = levels[i] + (shift.in_g1(i) ? 1 : 0);
                    if (y[i] >= g.support_length(n) || g.locate(n, y[i]).level != want) ok = false;
                }
                if (!ok) {
                    ++rep.failed;
                    rep.witnesses.push_back("forward x=" + tuple_string(x));
                }
            } else {
                // x lies in S(B) for the unique candidate B with G1 levels
                // one lower; with a G1 coordinate on level 0 there is no such
                // B and the preimage must fall outside C_n^d.
                bool candidate = true;
                std::vector<std::int64_t> want(d);
                for (int i = 0; i < d; ++i) {
                    want[i] = levels[i] - (shift.in_g1(i) ? 1 : 0);
                    if (want[i] < 0) candidate = false;
                }
                bool ok = true;
                try {
                    PointTuple z = t.product_apply(x, -hop);
                    if (candidate) {
                        for (int i = 0; i < d && ok; ++i) {
                            if (z[i] >= g.support_length(n) || g.locate(n, z[i]).level != want[i])
                                ok = false;
                        }
                    } else {
                        ok = !t.in_half_cube(n, z);
                    }
                } catch (const DepthExhausted&) {
                    // no preimage at finite depth; consistent only when no
                    // candidate box exists
                    ok = !candidate;
                }
                if (!ok) {
                    ++rep.failed;
                    rep.witnesses.push_back("backward x=" + tuple_string(x));
                }
            }
        }
    } while (next_tuple(levels, half));
    return rep;
}

VerifyReport verify_tower_jump(const Transform& t, int n, int l, int d) {
    if (n < 2 || l < n) throw std::invalid_argument("verify_tower_jump needs 2 <= n <= l");
    const TowerGeometry& g = t.geometry();
    const std::int64_t half = g.half_height(n - 1);
    const long long hop = g.height(l) + 1;
    VerifyReport rep;

    // Descend from each box of C_{n-1}^d to depth l+1 along a subcolumn
    // path; the path fixes the intermediate subcolumns and the last choice
    // fixes t_l, constrained to {1,2}.
    std::vector<std::vector<int>> paths;
    for (int mid : {1, 2, 3})
        for (int last : {1, 2}) {
            std::vector<int> p(l - n + 1, mid);
            p.back() = last;
            paths.push_back(p);
        }

    std::vector<std::int64_t> levels(d, 0);
    do {
        for (size_t pi = 0; pi < paths.size(); ++pi) {
            PointTuple x(d);
            for (int i = 0; i < d; ++i) {
                // stagger paths over coordinates so tuples are not all on
                // the strict diagonal
                const auto& p = paths[(pi + i) % paths.size()];
                std::int64_t lev = levels[i];
                for (int m = n - 1; m < l; ++m) lev = g.child_level(m, lev, p[m - (n - 1)]);
                lev = g.child_level(l, lev, p.back());
                x[i] = g.level_left(l + 1, lev);
            }
            ++rep.checked;
            PointTuple y = t.product_apply(x, hop);
            if (!t.in_half_cube(n, y)) {
                ++rep.failed;
                rep.witnesses.push_back("x=" + tuple_string(x));
            }
        }
    } while (next_tuple(levels, half));
    return rep;
}

VerifyReport verify_long_crossing(const Transform& t, const PointTuple& xs, int n,
                                  long long j_min, long long j_max) {
    if (n < 2) throw std::invalid_argument("verify_long_crossing needs n >= 2");
    const TowerGeometry& g = t.geometry();
    long long run = g.half_height(n - 1);
    VerifyReport rep;

    long long j = 0;
    OrbitCursor cur(t, xs);
    while (j > j_min && cur.step_backward()) --j;
    while (j < j_min) {
        if (!cur.step_forward()) throw DepthExhausted("window start unreachable");
        ++j;
    }
    long long first = j;
    std::vector<bool> lower, upper;
    for (; j <= j_max + run; ++j) {
        lower.push_back(t.in_half_cube(n - 1, cur.point()));
        upper.push_back(t.in_half_cube(n, cur.point()));
        if (j < j_max + run && !cur.step_forward()) break;
    }
    for (size_t i = 0; i < lower.size(); ++i) {
        if (!lower[i] || first + static_cast<long long>(i) > j_max) continue;
        if (i + run >= upper.size()) continue;  // ran out of computed orbit
        ++rep.checked;
        bool ok = true;
        for (long long s = 0; s <= run; ++s) ok = ok && upper[i + s];
        if (!ok) {
            ++rep.failed;
            rep.witnesses.push_back("j=" + std::to_string(first + static_cast<long long>(i)));
        }
    }
    return rep;
}

std::vector<SpecialDepth> find_special_depths(const Transform& t, const PointTuple& xs,
                                              int n_max, long long window) {
    const TowerGeometry& g = t.geometry();
    std::vector<SpecialDepth> out;
    int n0 = min_enclosing_depth(t, xs);
    for (int n = n0; n <= n_max && n + 1 <= g.max_depth(); ++n) {
        Crossing first_n = crossing_at(t, xs, n, 0);
        Crossing first_up = crossing_at(t, xs, n + 1, 0);

        // scan forward for the second n-crossing
        std::optional<Crossing> second;
        long long j = first_n.end + 1;
        OrbitCursor cur(t, t.product_apply(xs, j));
        for (; j <= window; ++j) {
            if (t.in_half_cube(n, cur.point())) {
                Crossing c = crossing_at(t, cur.point(), n, 0);
                c.start += j;
                c.end += j;
                second = c;
                break;
            }
            if (!cur.step_forward()) break;
        }
        if (!second || second->start > first_up.end || second->end > first_up.end) continue;

        SpecialDepth sd;
        sd.depth = n;
        sd.second_crossing = *second;
        sd.pattern_in_12 = true;
        for (const auto& x : xs) {
            int tn = g.subcolumn(n, x);
            sd.t_pattern.push_back(tn);
            if (tn != 1 && tn != 2) sd.pattern_in_12 = false;
        }
        sd.increment_verified = true;
        PointTuple at = t.product_apply(xs, second->start);
        for (long long jj = second->start; jj <= second->end && sd.increment_verified; ++jj) {
            for (size_t i = 0; i < xs.size(); ++i)
                if (g.subcolumn(n, at[i]) != sd.t_pattern[i] + 1) sd.increment_verified = false;
            if (jj < second->end) at = t.product_apply(at, 1);
        }
        out.push_back(sd);
    }
    return out;
}

} // namespace chacon
