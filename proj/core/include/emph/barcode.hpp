#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "emph/spectral.hpp"

namespace emph {

inline constexpr double kInfiniteDeath = std::numeric_limits<double>::infinity();

// Half-open interval (birth, death] in filtration-time units. death is
// +infinity only in dimension 0.
struct Bar {
    double birth = 0.0;
    double death = 0.0;
    int dimension = 0;

    double persistence() const { return death - birth; }
};

// Bookkeeping for one bar: which composition produced it, which mode attains
// the birth max / death min (smallest index on ties; -1 when the extreme is
// the trivial 0 / +inf contribution), and per-mode segment indices for
// piecewise-linear curves (1-based; 0 for modes that contribute no finite
// threshold). Gradient code uses this to pick one subgradient branch
// deterministically.
struct BarOrigin {
    std::vector<int> composition;
    int birth_argmax = -1;
    int death_argmin = -1;
    std::vector<int> birth_segment;
    std::vector<int> death_segment;
};

// Bars of a single homology dimension, sorted by (birth, death, composition
// lexicographic) so the bar index j is stable between the barcode and the
// gradient chain.
struct Barcode {
    std::vector<Bar> bars;
    int dimension = 0;

    std::size_t size() const { return bars.size(); }
};

// Piecewise-linear monotone filtration curve: R direction vectors a^s with
// strictly positive components, traversed at constant speed sqrt(N) over
// [0, Q] with equal parameter length Q/R per segment. R = 1 is a ray (the
// horizon Q is then irrelevant: the single segment extends indefinitely).
struct FiltrationCurve {
    std::vector<std::vector<double>> directions;
    double Q = 0.0;

    int segment_count() const { return static_cast<int>(directions.size()); }
    int parameter_count() const {
        return directions.empty() ? 0 : static_cast<int>(directions.front().size());
    }
};

struct BarcodeResult {
    Barcode barcode;
    std::vector<BarOrigin> origins;
};

// Unscaled threshold interval of one circle of radius r for homology count
// n_L: n_L = 0 gives (0, inf); n_L = 2k+1 gives
// (2r sin(pi k/(2k+1)), 2r sin(pi (k+1)/(2k+3))]; a degenerate circle (r = 0)
// with odd n_L yields the empty marker. Even n_L >= 2 is a domain error;
// callers enumerate compositions that never contain such entries.
struct CircleInterval {
    double birth = 0.0;
    double death = 0.0;
    bool empty = false;
    bool infinite = false; // n_L = 0 case: (0, inf)
};
CircleInterval circle_interval(double r, int n_L);

// All tuples (n_1..n_N) with every entry zero or odd and sum n, no
// duplicates, in a fixed deterministic order: fewest active modes first,
// lexicographically descending within equal counts, so pure single-mode
// tuples lead in mode order ((3,0,0), (0,3,0), (0,0,3), (1,1,1)). The index
// set of the exact barcode formula.
std::vector<std::vector<int>> enumerate_compositions(int N, int n);

// Exact barcode of the ray through direction a (componentwise positive):
// per composition, each mode's circle interval is scaled by
// ||a||/(sqrt(N) a_L) and the intersection (max of births, min of deaths] is
// kept when nonempty. Depends on a only through a/||a||.
BarcodeResult ray_barcode(const LiouvilleRadii& radii,
                          const std::vector<double>& a, int n);

// Exact barcode along a piecewise-linear curve: thresholds are mapped
// through the affine inverse of the segment whose image contains them
// (smallest such segment; thresholds beyond the curve's reach extend the
// final segment). With R = 1 this reproduces ray_barcode exactly.
BarcodeResult curve_barcode(const LiouvilleRadii& radii,
                            const FiltrationCurve& curve, int n);

// Convergence report for piecewise-linear approximations of a smooth
// monotone curve given as a dense sample table (rows are points in R^N,
// starting at the origin, every component strictly increasing). The table is
// reparameterized by arc length to constant speed sqrt(N); for each R the
// equal-arc-length chord interpolant's barcode is compared (max absolute
// endpoint difference, matched by composition) against the limit barcode
// obtained by inverting the sampled curve directly.
struct RefineReport {
    std::vector<int> segment_counts;
    std::vector<double> max_errors;
    Barcode limit; // barcode of the sampled curve itself
};
RefineReport refine_check(const LiouvilleRadii& radii,
                          const std::vector<std::vector<double>>& curve_samples,
                          const std::vector<int>& segment_counts, int n);

} // namespace emph
