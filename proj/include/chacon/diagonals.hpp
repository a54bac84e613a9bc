#pragma once

#include "chacon/tower.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace chacon {

using Tau = std::vector<int>;  // d-tuple over {1,2,3}

/// Product of d levels of C_n.
struct BoxD {
    int depth = 0;
    std::vector<std::int64_t> levels;

    int d() const { return static_cast<int>(levels.size()); }
    bool operator==(const BoxD&) const = default;
};

/// Canonical offset-vector form of an n-diagonal: the boxes are
/// (offsets_i + k)_i for 0 <= k <= h_n/2 - 1 - max(offsets), and
/// min(offsets) = 0.
struct DiagonalD {
    int depth = 0;
    std::vector<std::int64_t> offsets;

    int d() const { return static_cast<int>(offsets.size()); }
    std::int64_t max_offset() const;
    std::int64_t box_count(const TowerGeometry& g) const;
    BoxD box_at(std::int64_t k) const;
    bool contains(const TowerGeometry& g, const BoxD& b) const;
    bool operator==(const DiagonalD&) const = default;
};

/// Canonical diagonal through a box, plus the box's position along it.
std::pair<DiagonalD, std::int64_t> diagonal_of_box(const TowerGeometry& g, const BoxD& b);

bool is_central(const Tau& tau);     // all coordinates equal
bool is_corner(const Tau& tau);      // both 1 and 3 occur
bool is_tau_admissible(const Tau& tau);

/// The canonical central tuple (1,...,1) followed by every corner tuple,
/// in lexicographic order.
std::vector<Tau> admissible_taus(int d);

/// B(tau): the (n+1)-box of points of B whose subcolumn pattern is tau.
BoxD box_refine(const TowerGeometry& g, const BoxD& b, const Tau& tau);

/// D(tau): the unique (n+1)-diagonal containing B(tau) for any box B of D.
/// Throws std::invalid_argument for inadmissible tau.
DiagonalD diagonal_refine(const TowerGeometry& g, const DiagonalD& diag, const Tau& tau);

/// Distinct (depth-1)-diagonals intersected by the boxes of `diag`.
std::vector<DiagonalD> parent_diagonals(const TowerGeometry& g, const DiagonalD& diag);

/// Whether some box of the diagonal meets C_m^d (as point sets; m = 0 means
/// the base cube [0,1)^d).
bool meets_half_cube(const TowerGeometry& g, const DiagonalD& diag, int m);

/// Number of boxes of the diagonal contained in C_{depth-1}^d.
std::int64_t boxes_in_lower_halfcube(const TowerGeometry& g, const DiagonalD& diag);

/// Smallest position k whose box lies inside C_{depth-1}^d, or -1.
std::int64_t first_box_in_lower_halfcube(const TowerGeometry& g, const DiagonalD& diag);

struct InitialReport {
    bool initial = false;
    int parents_found = 0;
    bool meets_lower_cube = false;   // intersection with C_{depth-2}^d
    bool low_depth_convention = false;  // depth <= 2: result depends on the C_0 convention
};

/// Whether the diagonal can head a consistent family at its own depth, i.e.
/// cannot be produced by refining a single lower diagonal still visible from
/// depth-2: either at least two parent diagonals meet it, or the unique
/// parent chain dies out because the diagonal misses C_{depth-2}^d.  Depth 1
/// diagonals are always initial.
bool is_initial(const TowerGeometry& g, const DiagonalD& diag);
InitialReport initial_report(const TowerGeometry& g, const DiagonalD& diag);

enum class TailPolicy { AllCentral, RepeatPrefix, Truncated };

enum class CertStatus { Certified, Refuted, Unknown };

/// (n0, D, tau) data with a declared tail.  taus[i] drives the transition
/// from depth n0+i to n0+i+1; AllCentral continues with (1,...,1) after the
/// prefix, RepeatPrefix cycles through the prefix, Truncated stops.
struct ConsistentFamily {
    int n0 = 1;
    DiagonalD initial;
    std::vector<Tau> taus;
    TailPolicy tail = TailPolicy::AllCentral;

    int d() const { return initial.d(); }

    /// Transition used from depth n to n+1; throws DepthExhausted past a
    /// truncated prefix.
    Tau tau_at(int n) const;

    /// Whether every coordinate keeps seeing a value in {1,2}: always for
    /// AllCentral, decidable on the block for RepeatPrefix, unknown for
    /// Truncated.
    CertStatus condition_tau_status() const;

    /// Smallest depth from which every transition is central, or -1 when
    /// corner steps never stop (RepeatPrefix with a corner in the block).
    /// Truncated tails are not classifiable.
    int eventually_central_from() const;
};

/// D_{n0}, ..., D_{up_to}, re-verifying D_{n+1} cap C_n^d subset D_n at
/// every step.
std::vector<DiagonalD> refine_family(const TowerGeometry& g, const ConsistentFamily& f,
                                     int up_to);

} // namespace chacon
