#include "chacon/witness.hpp"

#include <cmath>

namespace chacon {

WitnessResult witness_point(const TowerGeometry& g, const WitnessSpec& spec) {
    const ConsistentFamily& f = spec.family;
    if (spec.depth < f.n0) throw std::invalid_argument("witness depth below n0");
    if (!is_initial(g, f.initial)) throw std::invalid_argument("family head is not initial");

    std::int64_t k0 = first_box_in_lower_halfcube(g, f.initial);
    if (k0 < 0)
        throw std::invalid_argument("no box of D_{n0} inside C_{n0-1}^d: "
                                    "the family has no visible seen point");
    WitnessResult out;
    out.certification = f.condition_tau_status();
    out.chain.push_back(f.initial.box_at(k0));
    for (int m = f.n0; m < spec.depth; ++m)
        out.chain.push_back(box_refine(g, out.chain.back(), f.tau_at(m)));
    for (auto level : out.chain.back().levels)
        out.point.push_back(g.level_left(spec.depth, level));
    return out;
}

SeenReport verify_seen_invariance(const Transform& t, const DiagonalMeasure& m,
                                  const WitnessResult& w, long long j_min, long long j_max) {
    const TowerGeometry& g = t.geometry();
    int depth_m = w.chain.back().depth;
    SeenReport rep;

    long long j = 0;
    OrbitCursor cur(t, w.point);
    while (j > j_min && cur.step_backward()) --j;
    rep.skipped_exhausted += j - j_min;
    for (; j <= j_max; ++j) {
        for (int n = m.n0(); n <= depth_m - 1; ++n) {
            ++rep.checked;
            if (!t.in_half_cube(n, cur.point())) continue;
            BoxD b;
            b.depth = n;
            for (const auto& x : cur.point()) b.levels.push_back(g.locate(n, x).level);
            if (!m.diagonal(n).contains(g, b)) {
                ++rep.failed;
                rep.witnesses.push_back("j=" + std::to_string(j) + " n=" + std::to_string(n));
            }
        }
        if (j < j_max && !cur.step_forward()) {
            rep.skipped_exhausted += j_max - j;
            break;
        }
    }
    return rep;
}

HopfTable hopf_experiment(const Transform& t, const DiagonalMeasure& m,
                          const PointTuple& start, int box_depth, long long steps) {
    const TowerGeometry& g = t.geometry();
    HopfTable table;
    table.box_depth = box_depth;
    table.steps = steps;
    table.degenerate = steps <= 0;

    std::map<std::vector<std::int64_t>, long long> counts;
    OrbitCursor cur(t, start);
    for (long long j = 0; j <= steps; ++j) {
        if (t.in_half_cube(box_depth, cur.point())) {
            std::vector<std::int64_t> levels;
            for (const auto& x : cur.point()) levels.push_back(g.locate(box_depth, x).level);
            ++counts[levels];
            ++table.total_visits;
        }
        if (j < steps && !cur.step_forward()) {
            table.partial = true;
            break;
        }
    }

    // rows: every visited box plus the full support of D_m
    DiagonalD dm = m.diagonal(box_depth);
    for (std::int64_t k = 0; k < dm.box_count(g); ++k) {
        auto levels = dm.box_at(k).levels;
        if (!counts.count(levels)) counts[levels] = 0;
    }

    Rational denom = m.halfcube(box_depth);
    for (const auto& [levels, c] : counts) {
        HopfRow row;
        row.levels = levels;
        row.visits = c;
        row.exact_ratio = m.measure_of_box(BoxD{box_depth, levels}) / denom;
        row.empirical_ratio =
            table.total_visits > 0 ? static_cast<double>(c) / table.total_visits : 0.0;
        row.deviation = std::abs(row.empirical_ratio - row.exact_ratio.convert_to<double>());
        if (c > 0 && row.exact_ratio == 0) table.support_mismatch = true;
        table.max_deviation = std::max(table.max_deviation, row.deviation);
        table.rows.push_back(std::move(row));
    }
    if (table.total_visits < 2) table.degenerate = true;
    return table;
}

CrossingCounts crossing_counts(const Transform& t, const DiagonalMeasure& m,
                               const PointTuple& start, int box_depth, int n,
                               long long scan_limit) {
    const TowerGeometry& g = t.geometry();
    if (!t.in_half_cube(n, start))
        throw std::invalid_argument("start is not in C_n^d");

    CrossingCounts out;
    out.first = crossing_at(t, start, n, 0);

    // second crossing
    long long j = out.first.end + 1;
    OrbitCursor cur(t, t.product_apply(start, j));
    std::optional<Crossing> second;
    for (; j <= scan_limit; ++j) {
        if (t.in_half_cube(n, cur.point())) {
            Crossing c = crossing_at(t, cur.point(), n, 0);
            c.start += j;
            c.end += j;
            second = c;
            break;
        }
        if (!cur.step_forward()) break;
    }
    if (!second) throw std::runtime_error("no second n-crossing within the scan window");
    out.second = *second;

    auto count_boxes = [&](const Crossing& c, std::map<std::vector<std::int64_t>, long long>& into,
                           long long& total) {
        PointTuple at = t.product_apply(start, c.start);
        for (long long jj = c.start; jj <= c.end; ++jj) {
            if (t.in_half_cube(box_depth, at)) {
                std::vector<std::int64_t> levels;
                for (const auto& x : at) levels.push_back(g.locate(box_depth, x).level);
                ++into[levels];
                ++total;
            }
            if (jj < c.end) at = t.product_apply(at, 1);
        }
    };
    count_boxes(out.first, out.n_b, out.total_first);
    count_boxes(out.second, out.n_b_prime, out.total_second);

    // partial shift from the t_n pattern at the start
    out.shift.d = static_cast<int>(start.size());
    out.shift_applicable = true;
    for (size_t i = 0; i < start.size(); ++i) {
        int tn = g.subcolumn(n, start[i]);
        if (tn == 1) out.shift.g1.push_back(static_cast<int>(i));
        else if (tn != 2) out.shift_applicable = false;
    }
    if (out.shift_applicable) {
        std::int64_t half = g.half_height(box_depth);
        for (const auto& [levels, count] : out.n_b) {
            // SB must stay an m-box
            std::vector<std::int64_t> shifted = levels;
            bool inside = true;
            for (int i : out.shift.g1)
                if (++shifted[i] >= half) inside = false;
            if (!inside) continue;
            ++out.shift_checked;
            auto it = out.n_b_prime.find(shifted);
            long long prime = it == out.n_b_prime.end() ? 0 : it->second;
            if (prime != count) ++out.shift_failed;
        }
    }
    return out;
}

SupportReport orbit_support_check(const Transform& t, const DiagonalMeasure& m,
                                  const PointTuple& start, long long j_min, long long j_max,
                                  int n_lo, int n_hi) {
    if (m.classify().kind != MeasureKind::WeirdDissipative)
        throw std::invalid_argument("orbit_support_check requires a dissipative measure");
    const TowerGeometry& g = t.geometry();
    SupportReport rep;
    for (int n = n_lo; n <= n_hi; ++n) {
        SupportDepthRow row;
        row.depth = n;
        auto crossings = crossings_in_window(t, start, n, j_min, j_max);
        row.crossings_found = static_cast<long long>(crossings.size());
        for (const auto& c : crossings) {
            if (c.truncated_left) rep.truncated_left = true;
            PointTuple at = t.product_apply(start, c.start);
            for (long long jj = c.start; jj <= c.end; ++jj) {
                BoxD b;
                b.depth = n;
                for (const auto& x : at) b.levels.push_back(g.locate(n, x).level);
                if (m.diagonal(n).contains(g, b)) ++row.visits_on_diagonal;
                else ++row.visits_off_diagonal;
                if (jj < c.end) at = t.product_apply(at, 1);
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace chacon
