#pragma once

#include "chacon/crossings.hpp"
#include "chacon/measures.hpp"

#include <map>
#include <optional>

namespace chacon {

/// Chain request: follow the family's boxes from the first box of D_{n0}
/// inside C_{n0-1}^d down to depth M and take the left-endpoint tuple.
struct WitnessSpec {
    ConsistentFamily family;
    int depth = 4;  // M
};

struct WitnessResult {
    PointTuple point;           // left endpoints of B_M
    std::vector<BoxD> chain;    // B_{n0}, ..., B_M
    CertStatus certification;   // condition_tau status of the family
};

/// Rational depth-M representative of a point seen by the family: it lies
/// in B_m (hence in D_m) for every n0 <= m <= M and in C_{n0-1}^d.  Throws
/// when no box of D_{n0} lies inside C_{n0-1}^d (the family violates the
/// visibility condition) or when the tau sequence runs out.
WitnessResult witness_point(const TowerGeometry& g, const WitnessSpec& spec);

struct SeenReport {
    long long checked = 0;
    long long failed = 0;
    std::vector<std::string> witnesses;  // failing (j, n) pairs
    long long skipped_exhausted = 0;     // orbit steps outside the finite construction
};

/// For each j in [j_min, j_max] and each n0 <= n <= M-1, the orbit point
/// (T^{xd})^j w is outside C_n^d or inside D_n.
SeenReport verify_seen_invariance(const Transform& t, const DiagonalMeasure& m,
                                  const WitnessResult& w, long long j_min, long long j_max);

struct HopfRow {
    std::vector<std::int64_t> levels;  // the m-box
    long long visits = 0;              // n_B
    Rational exact_ratio;              // sigma(B) / sigma(C_m^d)
    double empirical_ratio = 0.0;      // n_B / N
    double deviation = 0.0;
};

struct HopfTable {
    int box_depth = 0;
    long long steps = 0;
    long long total_visits = 0;  // N
    std::vector<HopfRow> rows;   // visited boxes plus all boxes of D_m
    bool degenerate = false;     // too few samples to mean anything
    bool support_mismatch = false;  // visits landed on sigma-null boxes
    bool partial = false;           // orbit left the construction early
    double max_deviation = 0.0;
};

/// Visit counts over j in [0, steps] against the exact box ratios of the
/// measure (the Hopf-quotient surrogate at finite range).
HopfTable hopf_experiment(const Transform& t, const DiagonalMeasure& m,
                          const PointTuple& start, int box_depth, long long steps);

struct CrossingCounts {
    Crossing first, second;
    std::map<std::vector<std::int64_t>, long long> n_b;       // per m-box
    std::map<std::vector<std::int64_t>, long long> n_b_prime;
    long long total_first = 0;   // N
    long long total_second = 0;  // N'
    PartialShift shift;          // from the t_n pattern at the start
    bool shift_applicable = false;  // pattern was within {1,2}
    long long shift_checked = 0;
    long long shift_failed = 0;  // violations of n'_{SB} = n_B
};

/// Box visit counts along the first and second n-crossings, with the
/// n'_{SB} = n_B comparison for the partial shift read off the t_n pattern.
/// Throws when no second n-crossing exists within scan_limit steps.
CrossingCounts crossing_counts(const Transform& t, const DiagonalMeasure& m,
                               const PointTuple& start, int box_depth, int n,
                               long long scan_limit);

struct SupportDepthRow {
    int depth = 0;
    long long crossings_found = 0;
    long long visits_on_diagonal = 0;
    long long visits_off_diagonal = 0;
};

struct SupportReport {
    std::vector<SupportDepthRow> rows;
    bool truncated_left = false;  // window start unreachable (no preimage)
};

/// Crossing counts of a dissipative witness over a window: for n large the
/// window should contain exactly one n-crossing.  Requires a
/// WeirdDissipative classification.
SupportReport orbit_support_check(const Transform& t, const DiagonalMeasure& m,
                                  const PointTuple& start, long long j_min, long long j_max,
                                  int n_lo, int n_hi);

} // namespace chacon
