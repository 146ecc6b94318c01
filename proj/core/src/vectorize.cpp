#include "emph/vectorize.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "emph/errors.hpp"

namespace emph {

namespace {

// Per-bar separable Gaussian factors on the grid: the full Gaussian at pixel
// (ix, iy) is norm * gx[ix] * gy[iy], so each bar costs 2r exps instead of
// r^2.
struct SeparableGaussian {
    std::vector<double> gx, gy;
};

SeparableGaussian bar_gaussian(const Bar& bar, const ImageGrid& grid) {
    SeparableGaussian g;
    const int r = grid.resolution;
    const double inv2s2 = 1.0 / (2.0 * grid.sigma * grid.sigma);
    const double pers = bar.persistence();
    g.gx.resize(r);
    g.gy.resize(r);
    for (int i = 0; i < r; ++i) {
        const double dx = grid.x_at(i) - bar.birth;
        const double dy = grid.y_at(i) - pers;
        g.gx[i] = std::exp(-dx * dx * inv2s2);
        g.gy[i] = std::exp(-dy * dy * inv2s2);
    }
    return g;
}

} // namespace

// ============================================================================
// Grid validation
// ============================================================================

void validate_grid(const ImageGrid& grid) {
    if (grid.resolution < 2) {
        throw input_error("image grid: resolution must be at least 2, got " +
                          std::to_string(grid.resolution));
    }
    if (!(grid.x_hi > grid.x_lo) || !(grid.y_hi > grid.y_lo)) {
        throw input_error("image grid: ranges must be nonempty");
    }
    if (!(grid.sigma > 0.0)) {
        throw input_error("image grid: bandwidth sigma must be positive");
    }
}

// ============================================================================
// Persistence image
// ============================================================================

namespace {
void fill_gradients(const Barcode& barcode, const ImageGrid& grid,
                    Eigen::VectorXd* image_out, Eigen::MatrixXd* db_out,
                    Eigen::MatrixXd* dd_out);
} // namespace

PersistenceImage persistence_image(const Barcode& barcode, const ImageGrid& grid) {
    validate_grid(grid);
    PersistenceImage image;
    // Shares the combined routine so the two entry points agree bitwise.
    fill_gradients(barcode, grid, &image.values, nullptr, nullptr);
    return image;
}

// ============================================================================
// Min-max rescale
// ============================================================================

std::pair<Eigen::VectorXd, ScaleRecord> minmax_scale(const Eigen::VectorXd& values) {
    if (values.size() == 0) throw input_error("minmax_scale: empty vector");
    ScaleRecord record;
    record.max = values.maxCoeff();
    record.min = values.minCoeff();
    const double span = record.max - record.min;
    if (span > 0.0) {
        record.divisor = span;
    } else {
        record.divisor = 1.0;
        record.degenerate = true;
    }
    Eigen::VectorXd scaled =
        (values.array() - record.min) / record.divisor;
    return {std::move(scaled), record};
}

// ============================================================================
// Endpoint gradients
// ============================================================================

namespace {

void fill_gradients(const Barcode& barcode, const ImageGrid& grid,
                    Eigen::VectorXd* image_out, Eigen::MatrixXd* db_out,
                    Eigen::MatrixXd* dd_out) {
    const int r = grid.resolution;
    const int p = static_cast<int>(barcode.bars.size());
    for (int j = 0; j < p; ++j) {
        if (std::isinf(barcode.bars[j].death)) {
            throw input_error(
                "persistence image: bar " + std::to_string(j) +
                " has infinite death; drop dimension-0 bars before vectorizing");
        }
    }
    const double norm =
        1.0 / (2.0 * std::numbers::pi * grid.sigma * grid.sigma);
    const double inv_s2 = 1.0 / (grid.sigma * grid.sigma);

    if (image_out) *image_out = Eigen::VectorXd::Zero(r * r);
    if (db_out) *db_out = Eigen::MatrixXd::Zero(r * r, p);
    if (dd_out) *dd_out = Eigen::MatrixXd::Zero(r * r, p);

    for (int j = 0; j < p; ++j) {
        const Bar& bar = barcode.bars[j];
        const SeparableGaussian g = bar_gaussian(bar, grid);
        const double pers = bar.persistence();
        // dI/db = g [-1 + pers ((x - b) - (y - pers))/sigma^2]
        // dI/dd = g [ 1 + pers (y - pers)/sigma^2]
        // with g the bar's own normalized Gaussian at the pixel.
        for (int ix = 0; ix < r; ++ix) {
            const double gx = norm * g.gx[ix];
            const double xb = grid.x_at(ix) - bar.birth;
            for (int iy = 0; iy < r; ++iy) {
                const double gv = gx * g.gy[iy];
                const int v = ix * r + iy;
                const double yp = grid.y_at(iy) - pers;
                if (image_out) (*image_out)[v] += pers * gv;
                if (db_out) (*db_out)(v, j) = gv * (-1.0 + pers * (xb - yp) * inv_s2);
                if (dd_out) (*dd_out)(v, j) = gv * (1.0 + pers * yp * inv_s2);
            }
        }
    }
}

} // namespace

EndpointGradients image_endpoint_gradients(const Barcode& barcode,
                                           const ImageGrid& grid) {
    validate_grid(grid);
    EndpointGradients out;
    fill_gradients(barcode, grid, nullptr, &out.dI_db, &out.dI_dd);
    return out;
}

ImageWithGradients persistence_image_with_gradients(const Barcode& barcode,
                                                    const ImageGrid& grid) {
    validate_grid(grid);
    ImageWithGradients out;
    fill_gradients(barcode, grid, &out.image.values, &out.gradients.dI_db,
                   &out.gradients.dI_dd);
    return out;
}

} // namespace emph
