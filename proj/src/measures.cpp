#include "chacon/measures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace chacon {

Rational to_rational(const TriadicRational& t) {
    return Rational(t.numerator(), pow3(t.exponent()));
}

std::string rational_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    auto caret = s.find("3^");
    if (caret != std::string::npos && caret > 0 && s[caret - 1] == '/')
        return to_rational(TriadicRational::parse(s));
    auto slash = s.find('/');
    auto digits = [](const std::string& p) {
        return !p.empty() && p.find_first_not_of("0123456789") == std::string::npos;
    };
    if (slash == std::string::npos) {
        if (!digits(s)) throw std::invalid_argument("cannot parse rational: '" + text + "'");
        return Rational(BigInt(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits(num) || !digits(den) || BigInt(den) == 0)
        throw std::invalid_argument("cannot parse rational: '" + text + "'");
    return Rational(BigInt(num), BigInt(den));
}

DiagonalMeasure::DiagonalMeasure(const TowerGeometry& g, ConsistentFamily family,
                                 TriadicRational scale)
    : geom_(&g), family_(std::move(family)), scale_(std::move(scale)) {
    if (scale_.is_zero()) throw std::invalid_argument("scale must be positive");
    if (family_.initial.depth != family_.n0)
        throw std::invalid_argument("initial diagonal depth != n0");
    if (!is_initial(g, family_.initial))
        throw std::invalid_argument("diagonal is not initial at n0");
    chain_.push_back(family_.initial);
    alpha_.push_back(to_rational(scale_) / family_.initial.box_count(g));
}

void DiagonalMeasure::ensure_depth(int n) const {
    if (n < n0()) throw std::invalid_argument("measure not determined by parameters below n0");
    while (n0() + static_cast<int>(chain_.size()) - 1 < n) {
        int at = n0() + static_cast<int>(chain_.size()) - 1;
        Tau tau = family_.tau_at(at);
        chain_.push_back(diagonal_refine(*geom_, chain_.back(), tau));
        alpha_.push_back(is_central(tau) ? alpha_.back() / 3 : alpha_.back());
    }
}

const DiagonalD& DiagonalMeasure::diagonal(int n) const {
    ensure_depth(n);
    return chain_[n - n0()];
}

Rational DiagonalMeasure::alpha(int n) const {
    ensure_depth(n);
    return alpha_[n - n0()];
}

Rational DiagonalMeasure::measure_of_box(const BoxD& b) const {
    ensure_depth(b.depth);
    if (diagonal(b.depth).contains(*geom_, b)) return alpha(b.depth);
    return Rational(0);
}

Rational DiagonalMeasure::halfcube(int n) const {
    ensure_depth(n);
    return alpha(n) * diagonal(n).box_count(*geom_);
}

Rational DiagonalMeasure::halfcube_below_by_restriction() const {
    return alpha(n0()) * boxes_in_lower_halfcube(*geom_, family_.initial);
}

Classification DiagonalMeasure::classify() const {
    Classification c;
    c.tail = family_.tail;
    int n1 = family_.eventually_central_from();  // throws on truncated tails
    c.depth_examined = family_.n0 + static_cast<int>(family_.taus.size());
    if (n1 >= 0) {
        c.kind = MeasureKind::GraphJoining;
        c.n1 = n1;
        c.depth_examined = std::max(c.depth_examined, n1);
        const DiagonalD& dn1 = diagonal(n1);
        for (int i = 1; i < d(); ++i)
            c.k.push_back(dn1.offsets[i] - dn1.offsets[0]);
        c.alpha = alpha(n1) * pow3(n1);
        return c;
    }
    // corner steps recur forever; conservative iff central steps recur too
    bool central_recurs = false;
    for (const auto& tau : family_.taus)
        if (is_central(tau)) central_recurs = true;
    c.kind = central_recurs ? MeasureKind::WeirdConservative : MeasureKind::WeirdDissipative;
    return c;
}

std::pair<std::int64_t, Rational> DiagonalMeasure::compatible_level_count(int n) const {
    std::int64_t count = diagonal(n).box_count(*geom_);
    return {count, Rational(count, geom_->half_height(n))};
}

std::vector<Rational> DiagonalMeasure::marginal_first(int n) const {
    ensure_depth(n);
    const DiagonalD& dn = diagonal(n);
    std::vector<Rational> out(geom_->half_height(n), Rational(0));
    Rational a = alpha(n);
    std::int64_t bc = dn.box_count(*geom_);
    for (std::int64_t k = 0; k < bc; ++k) out[dn.offsets[0] + k] = a;
    return out;
}

MeasureReport verify_graph_identity(const DiagonalMeasure& m, int n) {
    Classification c = m.classify();
    if (c.kind != MeasureKind::GraphJoining)
        throw std::invalid_argument("graph identity requires a graph joining");
    if (n < c.n1) throw std::invalid_argument("depth below n1");
    const TowerGeometry& g = m.geometry();
    std::int64_t half = g.half_height(n);
    for (auto k : c.k)
        if ((k < 0 ? -k : k) >= half) throw std::invalid_argument("h_n/2 must exceed |k_i|");

    MeasureReport rep;
    Rational mu_level(1, pow3(n));  // mu of one tower-n level
    std::vector<std::int64_t> levels(m.d(), 0);
    while (true) {
        // mu(A_1 cap T^{-k_2}A_2 cap ...) by level arithmetic: the shifted
        // levels coincide with A_1 or leave nothing
        bool on_graph = true;
        for (size_t i = 1; i < levels.size(); ++i)
            if (levels[i] - levels[0] != c.k[i - 1]) on_graph = false;
        Rational want = on_graph ? c.alpha * mu_level : Rational(0);
        Rational got = m.measure_of_box(BoxD{n, levels});
        ++rep.checked;
        if (got != want) {
            ++rep.failed;
            std::string w = "box(";
            for (auto l : levels) w += std::to_string(l) + ",";
            w += ") got " + rational_string(got) + " want " + rational_string(want);
            rep.witnesses.push_back(w);
        }
        // advance
        size_t i = 0;
        while (i < levels.size() && ++levels[i] == half) levels[i++] = 0;
        if (i == levels.size()) break;
    }
    return rep;
}

MeasureReport verify_additivity(const DiagonalMeasure& m, int n_lo, int n_hi,
                                int off_samples, std::uint64_t seed) {
    const TowerGeometry& g = m.geometry();
    MeasureReport rep;
    std::mt19937_64 rng(seed);
    auto taus = [&] {
        // all of {1,2,3}^d, not only the admissible ones
        std::vector<Tau> out;
        Tau t(m.d(), 1);
        while (true) {
            out.push_back(t);
            int i = 0;
            while (i < m.d() && t[i] == 3) t[i++] = 1;
            if (i == m.d()) break;
            ++t[i];
        }
        return out;
    }();

    auto check_box = [&](const BoxD& b) {
        Rational whole = m.measure_of_box(b);
        Rational sum(0);
        for (const auto& tau : taus) sum += m.measure_of_box(box_refine(g, b, tau));
        ++rep.checked;
        if (whole != sum) {
            ++rep.failed;
            std::string w = "depth " + std::to_string(b.depth) + " box(";
            for (auto l : b.levels) w += std::to_string(l) + ",";
            w += ") " + rational_string(whole) + " != " + rational_string(sum);
            rep.witnesses.push_back(w);
        }
    };

    for (int n = n_lo; n <= n_hi; ++n) {
        DiagonalD dn = m.diagonal(n);  // copy: the chain reallocates as deeper
                                       // values are evaluated
        std::int64_t bc = dn.box_count(g);
        for (std::int64_t k = 0; k < bc; ++k) check_box(dn.box_at(k));
        std::uniform_int_distribution<std::int64_t> pick(0, g.half_height(n) - 1);
        for (int s = 0; s < off_samples; ++s) {
            BoxD b;
            b.depth = n;
            for (int i = 0; i < m.d(); ++i) b.levels.push_back(pick(rng));
            check_box(b);
        }
    }
    return rep;
}

Rational ProductMeasure::measure_of_box(const BoxD& b) const {
    if (partition.size() != factors.size())
        throw std::invalid_argument("partition/factor mismatch");
    Rational out(1);
    for (size_t p = 0; p < partition.size(); ++p) {
        BoxD sub;
        sub.depth = b.depth;
        for (int i : partition[p]) sub.levels.push_back(b.levels.at(i));
        out *= factors[p].measure_of_box(sub);
    }
    return out;
}

Rational BoxTensor::at(const std::vector<std::int64_t>& key) const {
    auto it = values.find(key);
    return it == values.end() ? Rational(0) : it->second;
}

BoxTensor tensor_from_measure(const DiagonalMeasure& m, int n) {
    BoxTensor t;
    t.depth = n;
    t.d = m.d();
    const DiagonalD& dn = m.diagonal(n);
    Rational a = m.alpha(n);
    std::int64_t bc = dn.box_count(m.geometry());
    for (std::int64_t k = 0; k < bc; ++k) t.values[dn.box_at(k).levels] = a;
    return t;
}

BoxTensor tensor_from_product(const ProductMeasure& pm, int n) {
    BoxTensor t;
    t.depth = n;
    int d = 0;
    for (const auto& part : pm.partition) d += static_cast<int>(part.size());
    t.d = d;

    std::vector<BoxTensor> parts;
    for (const auto& f : pm.factors) parts.push_back(tensor_from_measure(f, n));

    // cartesian product of the factor supports
    std::vector<std::map<std::vector<std::int64_t>, Rational>::const_iterator> its;
    for (const auto& p : parts) {
        if (p.values.empty()) return t;
        its.push_back(p.values.begin());
    }
    while (true) {
        std::vector<std::int64_t> key(d);
        Rational v(1);
        for (size_t p = 0; p < parts.size(); ++p) {
            const auto& [sub, val] = *its[p];
            for (size_t i = 0; i < sub.size(); ++i) key[pm.partition[p][i]] = sub[i];
            v *= val;
        }
        t.values[key] = v;
        size_t p = 0;
        for (; p < parts.size(); ++p) {
            if (++its[p] != parts[p].values.end()) break;
            its[p] = parts[p].values.begin();
        }
        if (p == parts.size()) break;
    }
    return t;
}

namespace {

struct SubTensor {
    std::vector<int> coords;  // original coordinate indices
    std::map<std::vector<std::int64_t>, Rational> values;
};

bool values_equal(const Rational& a, const Rational& b, double tol) {
    if (tol == 0.0) return a == b;
    double da = a.convert_to<double>(), db = b.convert_to<double>();
    return std::abs(da - db) <= tol * std::max(1.0, std::abs(db));
}

/// Exact nonnegative rank-1 test of the unfolding of `t` over the
/// coordinate split (left, right); when it succeeds, fills the slice
/// factors and the shared scalar.
bool try_split(const SubTensor& t, const std::vector<int>& left_pos,
               const std::vector<int>& right_pos, double tol, SubTensor& a_out,
               SubTensor& b_out, Rational& scalar) {
    std::map<std::vector<std::int64_t>, std::map<std::vector<std::int64_t>, Rational>> rows;
    std::map<std::vector<std::int64_t>, Rational> col0;
    for (const auto& [key, v] : t.values) {
        std::vector<std::int64_t> r, c;
        for (int p : left_pos) r.push_back(key[p]);
        for (int p : right_pos) c.push_back(key[p]);
        rows[r][c] = v;
    }
    // support must be a product set R x C with equal cross ratios
    const auto& first_row = rows.begin()->second;
    size_t ncols = first_row.size();
    for (const auto& [r, cols] : rows) {
        if (cols.size() != ncols) return false;
        auto it0 = first_row.begin();
        for (auto it = cols.begin(); it != cols.end(); ++it, ++it0)
            if (it->first != it0->first) return false;
    }
    const auto& r0 = rows.begin()->first;
    const auto& c0 = first_row.begin()->first;
    Rational pivot = rows.at(r0).at(c0);
    for (const auto& [r, cols] : rows)
        for (const auto& [c, v] : cols)
            if (!values_equal(v * pivot, rows.at(r).at(c0) * rows.at(r0).at(c), tol))
                return false;

    a_out.coords.clear();
    b_out.coords.clear();
    for (int p : left_pos) a_out.coords.push_back(t.coords[p]);
    for (int p : right_pos) b_out.coords.push_back(t.coords[p]);
    a_out.values.clear();
    b_out.values.clear();
    for (const auto& [r, cols] : rows) a_out.values[r] = cols.at(c0);
    for (const auto& [c, v] : first_row) b_out.values[c] = v;
    scalar = pivot;
    return true;
}

void split_recursive(const SubTensor& t, double tol, std::vector<SubTensor>& leaves,
                     Rational& scalar_acc) {
    int k = static_cast<int>(t.coords.size());
    if (k >= 2) {
        // bipartitions keeping position 0 on the left
        for (int mask = 0; mask < (1 << (k - 1)); ++mask) {
            std::vector<int> left{0}, right;
            for (int p = 1; p < k; ++p)
                (mask & (1 << (p - 1)) ? left : right).push_back(p);
            if (right.empty()) continue;
            SubTensor a, b;
            Rational s;
            if (try_split(t, left, right, tol, a, b, s)) {
                scalar_acc *= s;
                split_recursive(a, tol, leaves, scalar_acc);
                split_recursive(b, tol, leaves, scalar_acc);
                return;
            }
        }
    }
    leaves.push_back(t);
}

} // namespace

Factorization factorize(const BoxTensor& tensor, double tolerance) {
    SubTensor root;
    for (int i = 0; i < tensor.d; ++i) root.coords.push_back(i);
    for (const auto& [key, v] : tensor.values)  // drop explicit zero entries
        if (v != 0) root.values[key] = v;
    if (root.values.empty())
        throw std::invalid_argument("factorize: tensor is identically zero");

    Factorization f;
    f.scalar = Rational(1);
    std::vector<SubTensor> leaves;
    split_recursive(root, tolerance, leaves, f.scalar);
    for (const auto& leaf : leaves) {
        f.partition.push_back(leaf.coords);
        BoxTensor bt;
        bt.depth = tensor.depth;
        bt.d = static_cast<int>(leaf.coords.size());
        bt.values = leaf.values;
        f.factors.push_back(std::move(bt));
    }
    return f;
}

} // namespace chacon
