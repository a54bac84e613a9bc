#pragma once

#include "chacon/diagonals.hpp"

#include <map>
#include <string>
#include <vector>

namespace chacon {

/// Measure values are exact rationals, not triadic: the normalization
/// sigma(C_{n0}^d) = lambda divides by box_count(D_{n0}), which is not a
/// power of 3 in general (e.g. alpha_1 = 1/4 on the full d=2 diagonal).
using Rational = boost::multiprecision::cpp_rational;

Rational to_rational(const TriadicRational& t);
std::string rational_string(const Rational& r);   // "num/den", or "num" when den = 1
Rational parse_rational(const std::string& text); // accepts "num", "num/den", "num/3^exp"

enum class MeasureKind { GraphJoining, WeirdConservative, WeirdDissipative };

struct Classification {
    MeasureKind kind = MeasureKind::GraphJoining;
    std::vector<std::int64_t> k;  // graph exponents k_2..k_d (empty otherwise)
    Rational alpha;               // graph density alpha = alpha_{n1} * 3^{n1}
    int n1 = 0;                   // depth from which every transition is central
    int depth_examined = 0;
    TailPolicy tail = TailPolicy::AllCentral;
};

/// The diagonal measure sigma_{(n0, D, tau)} scaled by lambda, evaluated
/// lazily from its parameters; sigma(C_{n0}^d) = lambda.  Requires an
/// initial diagonal.  Box values below n0 are not determined by the
/// parameters; C_{n0-1}^d gets a value by restriction only.
class DiagonalMeasure {
public:
    DiagonalMeasure(const TowerGeometry& g, ConsistentFamily family,
                    TriadicRational scale = TriadicRational::from_int(1));

    const ConsistentFamily& family() const { return family_; }
    const TowerGeometry& geometry() const { return *geom_; }
    const TriadicRational& scale() const { return scale_; }
    int n0() const { return family_.n0; }
    int d() const { return family_.d(); }

    /// The single n-diagonal carrying the measure inside C_n^d.
    const DiagonalD& diagonal(int n) const;

    /// Per-box value on D_n: alpha_{n0} = lambda / box_count(D_{n0}),
    /// divided by 3 at central steps, kept at corner steps.
    Rational alpha(int n) const;

    /// sigma(B): alpha(depth) on the diagonal, 0 off it; depth >= n0.
    Rational measure_of_box(const BoxD& b) const;

    /// sigma(C_n^d) = alpha(n) * box_count(D_n) for n >= n0.
    Rational halfcube(int n) const;

    /// sigma(C_{n0-1}^d) obtained by restriction: the sum of the n0-box
    /// values over boxes of D_{n0} contained in C_{n0-1}^d.
    Rational halfcube_below_by_restriction() const;

    /// Tail dichotomy; refuses truncated tails.
    Classification classify() const;

    /// Number of distinct first-coordinate levels among boxes of D_n
    /// (= box_count) and the exact fraction over h_n/2.
    std::pair<std::int64_t, Rational> compatible_level_count(int n) const;

    /// First-coordinate marginal on C_n levels: value per level.
    std::vector<Rational> marginal_first(int n) const;

private:
    void ensure_depth(int n) const;

    const TowerGeometry* geom_;
    ConsistentFamily family_;
    TriadicRational scale_;
    mutable std::vector<DiagonalD> chain_;      // D_{n0}, D_{n0+1}, ...
    mutable std::vector<Rational> alpha_;
};

struct MeasureReport {
    long long checked = 0;
    long long failed = 0;
    std::vector<std::string> witnesses;
};

/// Exhaustive check of sigma(A_1 x ... x A_d) = alpha * mu(A_1 cap
/// T^{-k_2}A_2 cap ...) over every n-box, with the intersection computed by
/// level arithmetic.  Requires a graph classification and h_n/2 > max|k_i|.
MeasureReport verify_graph_identity(const DiagonalMeasure& m, int n);

/// sigma(B) = sum over tau in {1,2,3}^d of sigma(B(tau)), exact, over all
/// boxes of D_n for n in [n_lo, n_hi] plus seeded off-diagonal samples.
MeasureReport verify_additivity(const DiagonalMeasure& m, int n_lo, int n_hi,
                                int off_samples = 32, std::uint64_t seed = 1);

/// Product of diagonal measures over a partition of {0,...,d-1}.
struct ProductMeasure {
    std::vector<std::vector<int>> partition;  // disjoint, covering 0..d-1
    std::vector<DiagonalMeasure> factors;     // one per part, on X^{|part|}

    Rational measure_of_box(const BoxD& b) const;
};

/// Sparse tensor of box values over C_n^d, indexed by level tuples.
struct BoxTensor {
    int depth = 0;
    int d = 0;
    std::map<std::vector<std::int64_t>, Rational> values;  // absent = 0

    Rational at(const std::vector<std::int64_t>& key) const;
};

BoxTensor tensor_from_measure(const DiagonalMeasure& m, int n);
BoxTensor tensor_from_product(const ProductMeasure& pm, int n);

struct Factorization {
    std::vector<std::vector<int>> partition;  // finest product split found
    std::vector<BoxTensor> factors;           // one per part
    Rational scalar;  // prod_j factor_j(key|part_j) = scalar * tensor(key)
};

/// Finest partition under which the tensor splits as an exact product of
/// nonnegative tensors, found by cross-ratio tests on unfoldings.  The
/// factors are coordinate slices through a reference support cell, so the
/// identity above holds exactly.  tolerance > 0 switches to approximate
/// double comparisons for externally supplied tensors.
Factorization factorize(const BoxTensor& tensor, double tolerance = 0.0);

} // namespace chacon
