#include "chacon/diagonals.hpp"

#include <algorithm>
#include <set>

namespace chacon {

namespace {

void check_box(const TowerGeometry& g, const BoxD& b) {
    if (b.levels.empty()) throw std::invalid_argument("box needs at least one coordinate");
    std::int64_t half = g.half_height(b.depth);
    for (auto l : b.levels)
        if (l < 0 || l >= half) throw std::invalid_argument("box level outside C_n");
}

void check_diagonal(const TowerGeometry& g, const DiagonalD& diag) {
    if (diag.offsets.empty()) throw std::invalid_argument("diagonal needs at least one coordinate");
    std::int64_t mn = *std::min_element(diag.offsets.begin(), diag.offsets.end());
    if (mn != 0) throw std::invalid_argument("diagonal offsets must have min 0");
    if (diag.max_offset() >= g.half_height(diag.depth))
        throw std::invalid_argument("diagonal offset outside C_n");
}

Tau canonical_tau(const Tau& tau) {
    if (is_central(tau)) return Tau(tau.size(), 1);
    return tau;
}

/// One-step descent decomposition of a diagonal: the positions k whose box
/// lies inside C_{depth-1}^d split into intervals on which every coordinate
/// keeps the same subcolumn branch, so the parent diagonal is constant.
struct DescentPiece {
    DiagonalD parent;
    std::int64_t k_lo = 0, k_hi = 0;  // child positions, half-open
    std::int64_t parent_k_lo = 0;     // parent position at k_lo
};

std::vector<DescentPiece> descend_one(const TowerGeometry& g, const DiagonalD& diag) {
    int n = diag.depth;
    if (n < 1) throw std::invalid_argument("cannot descend below depth 0");
    std::int64_t h = g.height(n - 1);
    std::int64_t half = g.half_height(n - 1);
    std::int64_t bc = diag.box_count(g);
    const int d = diag.d();

    // ranges of tower-n levels that descend into C_{n-1}, with their shifts
    const std::int64_t lo[3] = {0, h, 2 * h + 1};
    auto shift_of = [&](std::int64_t v) -> std::int64_t {
        for (std::int64_t s : lo)
            if (v >= s && v < s + half) return s;
        return -1;
    };

    std::set<std::int64_t> cut_set{0, bc};
    for (int i = 0; i < d; ++i)
        for (std::int64_t s : lo)
            for (std::int64_t b : {s - diag.offsets[i], s + half - diag.offsets[i]})
                if (b > 0 && b < bc) cut_set.insert(b);
    std::vector<std::int64_t> cuts(cut_set.begin(), cut_set.end());

    std::vector<DescentPiece> out;
    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        std::int64_t a = cuts[c];
        std::vector<std::int64_t> parents(d);
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) {
            std::int64_t v = diag.offsets[i] + a;
            std::int64_t s = shift_of(v);
            if (s < 0) ok = false;
            else parents[i] = v - s;
        }
        if (!ok) continue;
        DescentPiece p;
        std::int64_t mn = *std::min_element(parents.begin(), parents.end());
        p.parent.depth = n - 1;
        for (auto v : parents) p.parent.offsets.push_back(v - mn);
        p.k_lo = a;
        p.k_hi = cuts[c + 1];
        p.parent_k_lo = mn;
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace

std::int64_t DiagonalD::max_offset() const {
    return *std::max_element(offsets.begin(), offsets.end());
}

std::int64_t DiagonalD::box_count(const TowerGeometry& g) const {
    return g.half_height(depth) - max_offset();
}

BoxD DiagonalD::box_at(std::int64_t k) const {
    BoxD b;
    b.depth = depth;
    for (auto o : offsets) b.levels.push_back(o + k);
    return b;
}

bool DiagonalD::contains(const TowerGeometry& g, const BoxD& b) const {
    if (b.depth != depth || b.d() != d()) return false;
    auto [diag, k] = diagonal_of_box(g, b);
    return diag == *this;
}

std::pair<DiagonalD, std::int64_t> diagonal_of_box(const TowerGeometry& g, const BoxD& b) {
    check_box(g, b);
    std::int64_t mn = *std::min_element(b.levels.begin(), b.levels.end());
    DiagonalD diag;
    diag.depth = b.depth;
    for (auto l : b.levels) diag.offsets.push_back(l - mn);
    return {diag, mn};
}

bool is_central(const Tau& tau) {
    return std::all_of(tau.begin(), tau.end(), [&](int v) { return v == tau[0]; });
}

bool is_corner(const Tau& tau) {
    bool one = false, three = false;
    for (int v : tau) {
        one = one || v == 1;
        three = three || v == 3;
    }
    return one && three;
}

bool is_tau_admissible(const Tau& tau) {
    if (tau.empty()) return false;
    for (int v : tau)
        if (v < 1 || v > 3) return false;
    return is_central(tau) || is_corner(tau);
}

std::vector<Tau> admissible_taus(int d) {
    if (d < 1) throw std::invalid_argument("d must be positive");
    std::vector<Tau> out;
    out.push_back(Tau(d, 1));
    Tau tau(d, 1);
    while (true) {
        int i = 0;
        while (i < d && tau[i] == 3) tau[i++] = 1;
        if (i == d) break;
        ++tau[i];
        if (is_corner(tau)) out.push_back(tau);
    }
    return out;
}

BoxD box_refine(const TowerGeometry& g, const BoxD& b, const Tau& tau) {
    check_box(g, b);
    if (static_cast<int>(tau.size()) != b.d())
        throw std::invalid_argument("tau dimension mismatch");
    BoxD out;
    out.depth = b.depth + 1;
    for (int i = 0; i < b.d(); ++i)
        out.levels.push_back(g.child_level(b.depth, b.levels[i], tau[i]));
    check_box(g, out);  // levels stay below h_{n+1}/2 by construction
    return out;
}

DiagonalD diagonal_refine(const TowerGeometry& g, const DiagonalD& diag, const Tau& tau) {
    check_diagonal(g, diag);
    if (!is_tau_admissible(tau)) throw std::invalid_argument("inadmissible tau");
    if (static_cast<int>(tau.size()) != diag.d())
        throw std::invalid_argument("tau dimension mismatch");
    return diagonal_of_box(g, box_refine(g, diag.box_at(0), canonical_tau(tau))).first;
}

std::vector<DiagonalD> parent_diagonals(const TowerGeometry& g, const DiagonalD& diag) {
    check_diagonal(g, diag);
    std::vector<DiagonalD> out;
    for (const auto& p : descend_one(g, diag))
        if (std::find(out.begin(), out.end(), p.parent) == out.end()) out.push_back(p.parent);
    return out;
}

bool meets_half_cube(const TowerGeometry& g, const DiagonalD& diag, int m) {
    check_diagonal(g, diag);
    if (m > diag.depth) throw std::invalid_argument("m above the diagonal's depth");
    if (m < 0) return false;  // C_m^d empty below the base
    std::vector<DiagonalD> frontier{diag};
    for (int depth = diag.depth; depth > m; --depth) {
        std::vector<DiagonalD> next;
        for (const auto& dd : frontier)
            for (const auto& p : descend_one(g, dd))
                if (std::find(next.begin(), next.end(), p.parent) == next.end())
                    next.push_back(p.parent);
        if (next.empty()) return false;
        frontier = std::move(next);
    }
    return !frontier.empty();
}

std::int64_t boxes_in_lower_halfcube(const TowerGeometry& g, const DiagonalD& diag) {
    std::int64_t count = 0;
    for (const auto& p : descend_one(g, diag)) count += p.k_hi - p.k_lo;
    return count;
}

std::int64_t first_box_in_lower_halfcube(const TowerGeometry& g, const DiagonalD& diag) {
    std::int64_t best = -1;
    for (const auto& p : descend_one(g, diag))
        if (best < 0 || p.k_lo < best) best = p.k_lo;
    return best;
}

InitialReport initial_report(const TowerGeometry& g, const DiagonalD& diag) {
    check_diagonal(g, diag);
    InitialReport rep;
    rep.low_depth_convention = diag.depth <= 2;
    if (diag.depth == 1) {
        rep.initial = true;
        rep.parents_found = static_cast<int>(parent_diagonals(g, diag).size());
        return rep;
    }
    auto parents = parent_diagonals(g, diag);
    rep.parents_found = static_cast<int>(parents.size());
    // The second clause compares against C_{depth-2}^d with C_0^d empty, so
    // at depth 2 a unique parent never blocks initiality.  This keeps
    // single-parent diagonals that are not tau-refinements of their parent
    // (a top-edge configuration) reachable by the parametrization.
    rep.meets_lower_cube = diag.depth >= 3 && meets_half_cube(g, diag, diag.depth - 2);
    if (parents.size() >= 2)
        rep.initial = true;
    else if (parents.size() == 1)
        rep.initial = !rep.meets_lower_cube;
    return rep;
}

bool is_initial(const TowerGeometry& g, const DiagonalD& diag) {
    return initial_report(g, diag).initial;
}

Tau ConsistentFamily::tau_at(int n) const {
    if (n < n0) throw std::invalid_argument("no transition below n0");
    size_t i = static_cast<size_t>(n - n0);
    if (i < taus.size()) return canonical_tau(taus[i]);
    switch (tail) {
        case TailPolicy::AllCentral:
            return Tau(d(), 1);
        case TailPolicy::RepeatPrefix:
            if (taus.empty()) throw std::invalid_argument("RepeatPrefix with an empty block");
            return canonical_tau(taus[i % taus.size()]);
        case TailPolicy::Truncated:
            throw DepthExhausted("truncated tau sequence has no transition at depth " +
                                 std::to_string(n));
    }
    throw std::logic_error("unknown tail policy");
}

CertStatus ConsistentFamily::condition_tau_status() const {
    if (tail == TailPolicy::AllCentral) return CertStatus::Certified;
    if (tail == TailPolicy::Truncated) return CertStatus::Unknown;
    if (taus.empty()) throw std::invalid_argument("RepeatPrefix with an empty block");
    for (int i = 0; i < d(); ++i) {
        bool seen12 = false;
        for (const auto& raw : taus) {
            Tau tau = canonical_tau(raw);
            if (tau[i] == 1 || tau[i] == 2) seen12 = true;
        }
        if (!seen12) return CertStatus::Refuted;
    }
    return CertStatus::Certified;
}

int ConsistentFamily::eventually_central_from() const {
    if (tail == TailPolicy::Truncated)
        throw std::invalid_argument("truncated tail is not classifiable");
    if (tail == TailPolicy::RepeatPrefix) {
        for (const auto& tau : taus)
            if (!is_central(tau)) return -1;
    }
    int n1 = n0;
    for (size_t i = 0; i < taus.size(); ++i)
        if (!is_central(taus[i])) n1 = n0 + static_cast<int>(i) + 1;
    return n1;
}

std::vector<DiagonalD> refine_family(const TowerGeometry& g, const ConsistentFamily& f,
                                     int up_to) {
    check_diagonal(g, f.initial);
    if (f.initial.depth != f.n0) throw std::invalid_argument("initial diagonal depth != n0");
    if (up_to < f.n0) throw std::invalid_argument("up_to below n0");

    std::vector<DiagonalD> chain{f.initial};
    for (int n = f.n0; n < up_to; ++n) {
        DiagonalD next = diagonal_refine(g, chain.back(), f.tau_at(n));
        // re-verify D_{n+1} cap C_n^d subset D_n: every descent piece of the
        // refined diagonal must come back to D_n
        for (const auto& p : descend_one(g, next))
            if (!(p.parent == chain.back()))
                throw std::logic_error("consistency violated: D_{n+1} meets another n-diagonal");
        chain.push_back(std::move(next));
    }
    return chain;
}

} // namespace chacon
