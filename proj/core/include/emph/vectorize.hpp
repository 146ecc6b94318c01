#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "emph/barcode.hpp"

namespace emph {

// Uniform r x r lattice (endpoints included) on the birth-persistence plane.
// Pixel v = ix*r + iy walks x (birth) in the outer loop and y (persistence)
// in the inner loop.
struct ImageGrid {
    int resolution = 10;
    double x_lo = 0.0, x_hi = 1.0; // birth range
    double y_lo = 0.0, y_hi = 1.0; // persistence range
    double sigma = 0.05;

    int size() const { return resolution * resolution; }
    double x_at(int ix) const {
        return x_lo + (x_hi - x_lo) * ix / (resolution - 1);
    }
    double y_at(int iy) const {
        return y_lo + (y_hi - y_lo) * iy / (resolution - 1);
    }
};

// Throws input_error unless resolution >= 2, the ranges are nonempty and
// sigma > 0.
void validate_grid(const ImageGrid& grid);

struct PersistenceImage {
    Eigen::VectorXd values; // length resolution^2
};

// I_v = sum_i (d_i - b_i) * (1/(2 pi sigma^2))
//             * exp(-[(x_v - b_i)^2 + (y_v - (d_i - b_i))^2] / (2 sigma^2)).
// The weight is the bar's persistence; Gaussians are centered at
// (birth, persistence). Bars with infinite death are rejected (filter
// dimension-0 bars before vectorizing).
PersistenceImage persistence_image(const Barcode& barcode, const ImageGrid& grid);

// Affine rescale onto [0,1] with the extremes recorded for the backward
// pass. A constant input is mapped to all zeros with divisor 1 (degenerate
// flag set); the backward chain treats (max - min) as a constant either way.
struct ScaleRecord {
    double max = 0.0;
    double min = 0.0;
    double divisor = 1.0;
    bool degenerate = false;
};
std::pair<Eigen::VectorXd, ScaleRecord> minmax_scale(const Eigen::VectorXd& values);

// Analytic partials of every pixel with respect to every bar endpoint:
//   dI_v/db_j = g_j * [-1 + (d_j-b_j)((d_j-2b_j) + (x_v-y_v))/sigma^2]
//   dI_v/dd_j = g_j * [ 1 + (d_j-b_j)(y_v-(d_j-b_j))/sigma^2]
// where g_j is bar j's own (unweighted) Gaussian at the pixel. Matrices are
// (resolution^2) x (bar count).
struct EndpointGradients {
    Eigen::MatrixXd dI_db;
    Eigen::MatrixXd dI_dd;
};
EndpointGradients image_endpoint_gradients(const Barcode& barcode,
                                           const ImageGrid& grid);

// Image and endpoint gradients in one pass, sharing the separable Gaussian
// factors. Hot-loop variant of the two operations above; results are
// identical to calling them separately.
struct ImageWithGradients {
    PersistenceImage image;
    EndpointGradients gradients;
};
ImageWithGradients persistence_image_with_gradients(const Barcode& barcode,
                                                    const ImageGrid& grid);

} // namespace emph
