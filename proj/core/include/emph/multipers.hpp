#pragma once

#include <array>
#include <string>
#include <vector>

namespace emph::multipers {

// Rectangle [a,b] x [c,d] sampled on an n x n lattice (endpoints included),
// with the diagonal-ray count, Gaussian bandwidth and hull-weight exponent
// of the two-parameter persistence image.
struct TwoParamGrid {
    double a = 0.0, b = 1.0, c = 0.0, d = 1.0;
    int n = 2;
    int ray_count = 3;
    double sigma = 1.0;
    double q = 1.0;

    std::array<double, 2> point(int i, int j) const {
        return {a + i * (b - a) / (n - 1), c + j * (d - c) / (n - 1)};
    }
};

// A ray in the plane: origin + t * direction, t >= 0.
struct PlaneRay {
    std::array<double, 2> origin{0.0, 0.0};
    std::array<double, 2> direction{1.0, 1.0};
};

// One bar of a fibered barcode: (birth, death] measured as arc length along
// the ray with the given id; death may be +infinity.
struct RayBar {
    int ray = 0;
    double birth = 0.0;
    double death = 0.0;
    int multiplicity = 1;
};

// One summand of a vineyard decomposition: its bars plus the endpoint set
// whose convex hull defines the area weight. When `hull_points` is empty the
// endpoints are derived from the bars, clipping infinite deaths to the grid
// rectangle.
struct VineyardSummand {
    std::vector<RayBar> bars;
    std::vector<std::array<double, 2>> hull_points;
};

// Vineyard decomposition fixture: shared ray list plus summands.
struct Vineyard {
    std::vector<PlaneRay> rays;
    std::vector<VineyardSummand> summands;
};

// Fibered-barcode fixture for the landscape: rays indexed by the offset
// j - i they serve, with their origins and bars (multiplicities honored).
struct OffsetRayBarcode {
    int offset = 0;
    std::array<double, 2> origin{0.0, 0.0};
    std::vector<RayBar> bars; // `ray` field unused here
};
struct FiberedBarcodeFixture {
    std::vector<OffsetRayBarcode> rays;
};

// Area of the convex hull of a finite planar point set; 0 for degenerate
// (collinear, < 3 points, empty) input.
double convex_hull_area(const std::vector<std::array<double, 2>>& points);

// Two-parameter persistence image on the n x n grid (row-major, i outer):
//   I_{ij} = sum_summands w1 * w2(ell*) * exp(-min_bar dist(g_ij, bar)^2 / sigma^2)
// with w1 = (hull area / rectangle area)^q, ell* the ray of the closest bar
// and w2 its smaller direction component. Bars are segments (rays when death
// is infinite) in the plane.
std::vector<double> two_param_persistence_image(const Vineyard& vineyard,
                                                const TwoParamGrid& grid);

// k-th two-parameter persistence landscape on the same grid: at g_ij, the
// k-th largest tent value max{0, min{(t - b)/sqrt 2, (d - t)/sqrt 2}} with
// t = ||g_ij - origin of the offset-(j-i) ray|| over that ray's bars
// (0 when fewer than k bars). Missing offset rays raise input_error.
std::vector<double> two_param_persistence_landscape(
    const FiberedBarcodeFixture& fixture, int k, const TwoParamGrid& grid);

// JSON fixture document: grid, rays, summands (with optional hull point
// sets) and per-offset landscape barcodes.
struct Fixture {
    TwoParamGrid grid;
    Vineyard vineyard;
    FiberedBarcodeFixture landscape;
};
Fixture load_fixture(const std::string& path);
Fixture parse_fixture(const std::string& json_text);

// The worked two-circle example shipped with the library: H0 of the
// two-parameter sublevel filtration of a 4-vertex graph on [0,2]^2, whose
// image is ~(0.07, 0.31, 0.31, 0.39) and whose 1st landscape is (0,0,0,1).
std::string builtin_example_fixture_json();

} // namespace emph::multipers
