#pragma once

#include "chacon/transform.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chacon {

/// Maximal interval of integers j with (T^{xd})^j x in C_n^d.  When the
/// backward scan hits the edge of the finite construction (no preimage),
/// the crossing is still reported and truncated_left is set.
struct Crossing {
    int depth = 0;
    long long start = 0;
    long long end = 0;
    bool truncated_left = false;

    long long length() const { return end - start + 1; }
};

/// Partition of {0,...,d-1} driving the partial shift S of Lemma-style
/// box comparisons: S acts as T on g1 coordinates and as the identity on
/// the rest.  Either side may be empty.
struct PartialShift {
    int d = 0;
    std::vector<int> g1;  // sorted, 0-based

    bool in_g1(int i) const;
    static std::vector<PartialShift> all(int d);
};

/// Smallest n >= 1 with every coordinate in C_n.
int min_enclosing_depth(const Transform& t, const PointTuple& xs);

/// The maximal crossing around j0; requires (T^{xd})^{j0} xs in C_n^d.
Crossing crossing_at(const Transform& t, const PointTuple& xs, int n, long long j0);

/// All maximal crossings intersecting [j_min, j_max], in order.  Edge
/// crossings are extended past the window to maximality.
std::vector<Crossing> crossings_in_window(const Transform& t, const PointTuple& xs, int n,
                                          long long j_min, long long j_max);

struct SeparationReport {
    int depth = 0;
    std::vector<Crossing> crossings;
    long long checked = 0;
    long long failed = 0;
    std::vector<std::string> witnesses;
};

/// Checks both Lemma-2.4 bounds (length <= h_n/2, gaps >= h_n/2) on all
/// crossings in the window.
SeparationReport verify_separation(const Transform& t, const PointTuple& xs, int n,
                                   long long j_min, long long j_max);

struct VerifyReport {
    long long checked = 0;
    long long failed = 0;
    std::vector<std::string> witnesses;

    void merge(const VerifyReport& o);
};

/// Lemma-2.2 verifier.  For sampled x in C_n^d with t_n(x_i) = 1 on G1 and
/// 2 elsewhere, checks that the box of (T^{xd})^{h_n+1} x is exactly the
/// shift of the box of x, which is the equivalence
/// "x in B <=> (T^{xd})^{h_n+1} x in SB" simultaneously for every n-box B.
/// The backward variant does the same for the (2,3) pattern and -h_n - 1.
/// offsets_per_third sample offsets are drawn per coordinate from the
/// 3^-(n+3) grid inside the required third.
VerifyReport verify_bto_sb(const Transform& t, int n, const PartialShift& shift,
                           int offsets_per_third = 3, bool backward = false);

/// Lemma-2.3 verifier: x in C_{n-1}^d with t_l(x_i) in {1,2} for all i
/// implies (T^{xd})^{h_l+1} x in C_n^d; sampled over boxes of C_{n-1}^d.
VerifyReport verify_tower_jump(const Transform& t, int n, int l, int d);

/// Lemma-2.5 verifier along an orbit window: whenever the orbit is in
/// C_{n-1}^d, the next h_{n-1}/2 steps stay in the same n-crossing.
VerifyReport verify_long_crossing(const Transform& t, const PointTuple& xs, int n,
                                  long long j_min, long long j_max);

struct SpecialDepth {
    int depth = 0;                  // n with second n-crossing inside first (n+1)-crossing
    Crossing second_crossing;
    std::vector<int> t_pattern;     // t_n(x_i)
    bool pattern_in_12 = false;     // every t_n(x_i) in {1,2}
    bool increment_verified = false; // t_n(T^j x_i) = t_n(x_i) + 1 on the second crossing
};

/// Lemma-2.6 scan: all n <= n_max whose second n-crossing lies inside the
/// first (n+1)-crossing, each annotated with the verified facts.
std::vector<SpecialDepth> find_special_depths(const Transform& t, const PointTuple& xs,
                                              int n_max, long long window);

} // namespace chacon
