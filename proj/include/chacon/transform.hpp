#pragma once

#include "chacon/tower.hpp"

#include <vector>

namespace chacon {

using PointTuple = std::vector<TriadicRational>;

/// The Chacon transformation realized through tower addressing: T maps each
/// point to the point directly above it in the first tower where it is not
/// the top level.  Stateless over an immutable geometry.
class Transform {
public:
    explicit Transform(const TowerGeometry& geom) : geom_(&geom) {}

    const TowerGeometry& geometry() const { return *geom_; }

    /// Tx.  Throws DepthExhausted when x is the top level of every tower up
    /// to max_depth (only the top spacer of the deepest tower).
    TriadicRational apply(const TriadicRational& x) const;

    /// T^{-1}x.  Throws DepthExhausted when x is on the bottom-left chain
    /// (level 0 of every tower), which has no preimage at finite depth.
    TriadicRational apply_inverse(const TriadicRational& x) const;

    /// T^k x, negative k through the inverse.
    TriadicRational iterate(TriadicRational x, long long k) const;

    /// Coordinate-wise T^k.
    PointTuple product_apply(const PointTuple& xs, long long k) const;

    /// Every coordinate in C_n.
    bool in_half_cube(int n, const PointTuple& xs) const;

private:
    const TowerGeometry* geom_;
};

/// Stepwise orbit walker for long scans; callers may stop between steps.
/// After a step fails (depth exhausted) the cursor stays where it was and
/// exhausted() is set.
class OrbitCursor {
public:
    OrbitCursor(const Transform& t, PointTuple start)
        : transform_(&t), point_(std::move(start)) {}

    const PointTuple& point() const { return point_; }
    bool exhausted() const { return exhausted_; }

    bool step_forward();
    bool step_backward();

private:
    const Transform* transform_;
    PointTuple point_;
    bool exhausted_ = false;
};

} // namespace chacon
