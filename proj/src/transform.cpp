#include "chacon/transform.hpp"

namespace chacon {

TriadicRational Transform::apply(const TriadicRational& x) const {
    const TowerGeometry& g = *geom_;
    int m = 0;
    while (m <= g.max_depth() && x >= g.support_length(m)) ++m;
    if (m > g.max_depth()) throw DepthExhausted("point outside deepest tower");

    LevelAddress a = g.locate(m, x);
    // Ascend past towers where x sits on the top level.
    while (a.level == g.height(a.depth) - 1) {
        if (a.depth == g.max_depth())
            throw DepthExhausted("apply: top level of every tower up to max_depth");
        int c = 1 + a.offset.floor_scaled(a.depth + 1).convert_to<int>();
        a.level = g.child_level(a.depth, a.level, c);
        if (c > 1) a.offset -= TriadicRational::scaled(c - 1, a.depth + 1);
        a.depth += 1;
    }
    return g.level_left(a.depth, a.level + 1) + a.offset;
}

TriadicRational Transform::apply_inverse(const TriadicRational& x) const {
    const TowerGeometry& g = *geom_;
    int m = 0;
    while (m <= g.max_depth() && x >= g.support_length(m)) ++m;
    if (m > g.max_depth()) throw DepthExhausted("point outside deepest tower");

    LevelAddress a = g.locate(m, x);
    while (a.level == 0) {
        if (a.depth == g.max_depth())
            throw DepthExhausted("apply_inverse: bottom level of every tower up to max_depth");
        int c = 1 + a.offset.floor_scaled(a.depth + 1).convert_to<int>();
        a.level = g.child_level(a.depth, a.level, c);
        if (c > 1) a.offset -= TriadicRational::scaled(c - 1, a.depth + 1);
        a.depth += 1;
    }
    return g.level_left(a.depth, a.level - 1) + a.offset;
}

TriadicRational Transform::iterate(TriadicRational x, long long k) const {
    for (; k > 0; --k) x = apply(x);
    for (; k < 0; ++k) x = apply_inverse(x);
    return x;
}

PointTuple Transform::product_apply(const PointTuple& xs, long long k) const {
    PointTuple out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(iterate(x, k));
    return out;
}

bool Transform::in_half_cube(int n, const PointTuple& xs) const {
    for (const auto& x : xs)
        if (!geom_->in_half_tower(n, x)) return false;
    return true;
}

bool OrbitCursor::step_forward() {
    if (exhausted_) return false;
    PointTuple next = point_;
    try {
        for (auto& x : next) x = transform_->apply(x);
    } catch (const DepthExhausted&) {
        exhausted_ = true;
        return false;
    }
    point_ = std::move(next);
    return true;
}

bool OrbitCursor::step_backward() {
    if (exhausted_) return false;
    PointTuple next = point_;
    try {
        for (auto& x : next) x = transform_->apply_inverse(x);
    } catch (const DepthExhausted&) {
        exhausted_ = true;
        return false;
    }
    point_ = std::move(next);
    return true;
}

} // namespace chacon
