#include "chacon/tower.hpp"

namespace chacon {

TowerGeometry::TowerGeometry(int max_depth) : max_depth_(max_depth) {
    if (max_depth < 0) throw std::invalid_argument("max_depth must be nonnegative");
    heights_.resize(max_depth + 1);
    support_.resize(max_depth + 1);
    heights_[0] = 1;
    support_[0] = TriadicRational::from_int(1);
    for (int n = 1; n <= max_depth; ++n) {
        heights_[n] = 2 * (3 * heights_[n - 1] + 1);
        support_[n] = TriadicRational(BigInt(heights_[n]), n);
    }
}

void TowerGeometry::check_depth(int n) const {
    if (n < 0 || n > max_depth_)
        throw DepthExhausted("depth " + std::to_string(n) + " exceeds max_depth " +
                             std::to_string(max_depth_));
}

std::int64_t TowerGeometry::height(int n) const {
    check_depth(n);
    return heights_[n];
}

std::int64_t TowerGeometry::half_height(int n) const {
    check_depth(n);
    return n == 0 ? 1 : heights_[n] / 2;
}

const TriadicRational& TowerGeometry::support_length(int n) const {
    check_depth(n);
    return support_[n];
}

std::int64_t TowerGeometry::child_level(int n, std::int64_t level, int c) const {
    check_depth(n + 1);
    if (level < 0 || level >= heights_[n]) throw std::out_of_range("level out of range");
    std::int64_t h = heights_[n];
    switch (c) {
        case 1: return level;
        case 2: return h + level;
        case 3: return 2 * h + 1 + level;
        default: throw std::invalid_argument("subcolumn must be in {1,2,3}");
    }
}

std::int64_t TowerGeometry::parent_level(int n, std::int64_t level) const {
    check_depth(n);
    if (n == 0) throw std::invalid_argument("tower 0 has no parent");
    if (level < 0 || level >= heights_[n]) throw std::out_of_range("level out of range");
    std::int64_t h = heights_[n - 1];
    if (level < h) return level;
    if (level < 2 * h) return level - h;
    if (level == 2 * h) return -1;               // middle spacer
    if (level < 3 * h + 1) return level - 2 * h - 1;
    return -1;                                   // spacer above the third subcolumn
}

TriadicRational TowerGeometry::level_left(int n, std::int64_t level) const {
    check_depth(n);
    if (level < 0 || level >= heights_[n]) throw std::out_of_range("level out of range");
    // Walk down the stacking recursion, accumulating the subcolumn and
    // spacer shifts contributed at each step.
    TriadicRational left;
    for (int m = n; m >= 1; --m) {
        std::int64_t h = heights_[m - 1];
        if (level < h) {
            // subcolumn 1: no shift
        } else if (level < 2 * h) {
            left += TriadicRational::scaled(1, m);
            level -= h;
        } else if (level == 2 * h) {
            return left + support_[m - 1];
        } else if (level < 3 * h + 1) {
            left += TriadicRational::scaled(2, m);
            level -= 2 * h + 1;
        } else {
            return left + support_[m - 1] +
                   TriadicRational(BigInt(level - 3 * h), m);
        }
    }
    return left;
}

LevelAddress TowerGeometry::locate(int n, const TriadicRational& x) const {
    check_depth(n);
    if (x >= support_[n])
        throw std::out_of_range("point " + x.to_string() + " outside tower " + std::to_string(n));

    // Smallest tower containing x, then ascend through subcolumn indices.
    int m = 0;
    while (x >= support_[m]) ++m;

    std::int64_t level;
    TriadicRational offset;
    if (m == 0) {
        level = 0;
        offset = x;
    } else {
        // x lies in an m-spacer: the middle spacer is the first interval at
        // L_{m-1}, the remaining 3h+1 sit consecutively above it.
        TriadicRational rel = x - support_[m - 1];
        std::int64_t s = rel.floor_scaled(m).convert_to<std::int64_t>();
        std::int64_t h = heights_[m - 1];
        level = (s == 0) ? 2 * h : 3 * h + s;
        offset = rel - TriadicRational(BigInt(s), m);
    }
    for (; m < n; ++m) {
        int c = 1 + offset.floor_scaled(m + 1).convert_to<int>();
        level = child_level(m, level, c);
        if (c > 1) offset -= TriadicRational::scaled(c - 1, m + 1);
    }
    return LevelAddress{n, level, offset};
}

int TowerGeometry::subcolumn(int n, const TriadicRational& x) const {
    LevelAddress a = locate(n, x);
    return 1 + a.offset.floor_scaled(n + 1).convert_to<int>();
}

bool TowerGeometry::in_half_tower(int n, const TriadicRational& x) const {
    check_depth(n);
    if (x >= support_[n]) return false;
    return locate(n, x).level < half_height(n);
}

} // namespace chacon
