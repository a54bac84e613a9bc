#pragma once

#include "chacon/triadic.hpp"

#include <cstdint>
#include <vector>

namespace chacon {

/// Raised when an operation would need a tower deeper than the geometry
/// was constructed with.
struct DepthExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact coordinates of a point inside tower `depth`: the level index and
/// the offset from the level's left endpoint (offset < 3^-depth).
struct LevelAddress {
    int depth = 0;
    std::int64_t level = 0;
    TriadicRational offset;
};

/// Cutting-and-stacking geometry of the infinite Chacon transformation.
///
/// Tower 0 is the single interval [0,1).  Step n+1 cuts tower n into three
/// subcolumns, adds one spacer above the middle one and 3*h_n + 1 spacers
/// above the third one (always the leftmost unused interval), and stacks
/// left under right, so h_{n+1} = 2(3 h_n + 1).  Levels are half-open
/// [a, a + 3^-n).  Immutable after construction.
class TowerGeometry {
public:
    static constexpr int kDefaultMaxDepth = 12;

    explicit TowerGeometry(int max_depth = kDefaultMaxDepth);

    int max_depth() const { return max_depth_; }

    /// h_n.
    std::int64_t height(int n) const;

    /// Number of levels in C_n, the bottom half of tower n: h_n/2 for
    /// n >= 1.  Tower 0 has a single level and C_0 is taken to be the
    /// whole base interval, so half_height(0) = 1.
    std::int64_t half_height(int n) const;

    /// L_n = h_n * 3^-n; tower n occupies exactly [0, L_n).
    const TriadicRational& support_length(int n) const;

    /// Left endpoint of level `level` of tower n.
    TriadicRational level_left(int n, std::int64_t level) const;

    /// Inverse of level_left: the unique (level, offset) with
    /// x = level_left(n, level) + offset and offset < 3^-n.
    /// Throws std::out_of_range if x >= L_n.
    LevelAddress locate(int n, const TriadicRational& x) const;

    /// t_n(x) in {1,2,3}: which third of its tower-n level x occupies.
    int subcolumn(int n, const TriadicRational& x) const;

    /// C_n membership: x < L_n and level < half_height(n).
    bool in_half_tower(int n, const TriadicRational& x) const;

    /// Level of tower n+1 reached from level `level` of tower n through
    /// subcolumn c in {1,2,3}.
    std::int64_t child_level(int n, std::int64_t level, int c) const;

    /// Level of tower n-1 containing level `level` of tower n, or -1 when
    /// the level is an n-spacer.
    std::int64_t parent_level(int n, std::int64_t level) const;

private:
    void check_depth(int n) const;

    int max_depth_;
    std::vector<std::int64_t> heights_;
    std::vector<TriadicRational> support_;
};

} // namespace chacon
