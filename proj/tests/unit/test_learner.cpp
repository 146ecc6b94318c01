#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "emph/dataset.hpp"
#include "emph/errors.hpp"
#include "emph/learner.hpp"
#include "reference.hpp"

namespace {

emph::LiouvilleRadii make_radii(std::vector<double> radii) {
    emph::LiouvilleRadii out;
    for (std::size_t i = 0; i < radii.size(); ++i) out.modes.push_back(static_cast<int>(i + 1));
    out.radii = std::move(radii);
    return out;
}

// One full classification pipeline instance in homology dimension 1 with a
// fixed evaluation grid; the ground for the chain-rule checks.
struct Pipeline {
    emph::LiouvilleRadii radii;
    emph::FiltrationCurve curve;
    emph::ImageGrid grid;
    emph::DenseNet net;
    int label = 0;
};

double pipeline_loss(const Pipeline& p, const emph::ScaleRecord* frozen) {
    const auto result = emph::curve_barcode(p.radii, p.curve, 1);
    const auto image = emph::persistence_image(result.barcode, p.grid);
    Eigen::VectorXd scaled;
    if (frozen != nullptr) {
        scaled = testref::apply_frozen_scale(image.values, *frozen);
    } else {
        scaled = emph::minmax_scale(image.values).first;
    }
    return emph::loss(emph::forward(p.net, scaled).first, p.label);
}

std::vector<Eigen::VectorXd> exact_gradient(const Pipeline& p,
                                            emph::ScaleRecord& record_out) {
    const auto result = emph::curve_barcode(p.radii, p.curve, 1);
    const auto fused = emph::persistence_image_with_gradients(result.barcode, p.grid);
    const auto [scaled, record] = emph::minmax_scale(fused.image.values);
    record_out = record;
    const auto [probs, cache] = emph::forward(p.net, scaled);
    const auto net_grads = emph::backward(p.net, cache, p.label);
    const auto sens = emph::curve_sensitivities(p.radii, p.curve, 1, result.origins);
    std::vector<Eigen::MatrixXd> jacobians;
    for (const auto& a : p.curve.directions) jacobians.push_back(emph::rho_jacobian(a));
    return emph::direction_gradient(net_grads.input_gradient, record, fused.gradients,
                                    sens, jacobians);
}

Pipeline random_pipeline(std::mt19937_64& gen, int max_segments = 2) {
    Pipeline p;
    const int N = testref::uniform_int(gen, 2, 4);
    const int R = testref::uniform_int(gen, 1, max_segments);
    std::vector<double> radii(N);
    for (double& r : radii) r = testref::uniform(gen, 0.3, 2.0);
    p.radii = make_radii(radii);
    p.curve.directions.assign(R, std::vector<double>(N));
    for (auto& a : p.curve.directions) {
        for (double& v : a) v = testref::uniform(gen, 0.3, 1.5);
    }
    p.curve.Q = testref::uniform(gen, 1.5, 3.0);

    const auto initial = emph::curve_barcode(p.radii, p.curve, 1);
    double max_pers = 0.0;
    for (const auto& bar : initial.barcode.bars) {
        max_pers = std::max(max_pers, bar.persistence());
    }
    p.grid.resolution = 5;
    p.grid.x_lo = p.grid.y_lo = 0.0;
    p.grid.y_hi = 2.0 * max_pers;
    p.grid.x_hi = p.grid.y_hi;
    p.grid.sigma = 0.3 * p.grid.y_hi;

    const int classes = testref::uniform_int(gen, 2, 3);
    p.net = emph::DenseNet::init(p.grid.size(), {6}, classes,
                                 static_cast<std::uint64_t>(gen()));
    p.label = testref::uniform_int(gen, 0, classes - 1);
    return p;
}

} // namespace

TEST_SUITE("learner") {

TEST_CASE("direction normalization") {
    const auto diag = emph::rho({1.0, 1.0});
    CHECK(diag[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(diag[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

    const auto pythagorean = emph::rho({3.0, 4.0});
    CHECK(pythagorean[0] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(pythagorean[1] == doctest::Approx(0.8).epsilon(1e-15));

    const auto scaled = emph::rho({300.0, 400.0});
    CHECK(scaled[0] == doctest::Approx(0.6).epsilon(1e-15));

    CHECK_THROWS_AS((void)emph::rho({0.0, 0.0}), emph::domain_error);
}

TEST_CASE("normalization Jacobian: closed form, null space, finite differences") {
    const auto J = emph::rho_jacobian({1.0, 1.0});
    const double v = 1.0 / (2.0 * std::sqrt(2.0));
    CHECK(J(0, 0) == doctest::Approx(v).epsilon(1e-14));
    CHECK(J(1, 1) == doctest::Approx(v).epsilon(1e-14));
    CHECK(J(0, 1) == doctest::Approx(-v).epsilon(1e-14));
    CHECK(J(1, 0) == doctest::Approx(-v).epsilon(1e-14));

    std::mt19937_64 gen(31);
    const double h = 1e-7;
    for (int trial = 0; trial < 20; ++trial) {
        const int N = testref::uniform_int(gen, 2, 5);
        std::vector<double> a(N);
        for (double& x : a) x = testref::uniform(gen, 0.2, 2.0);

        const auto jac = emph::rho_jacobian(a);
        Eigen::VectorXd av = Eigen::Map<Eigen::VectorXd>(a.data(), N);
        CHECK((jac * av).lpNorm<Eigen::Infinity>() <= 1e-12);
        CHECK((jac - jac.transpose()).norm() <= 1e-12);

        Eigen::MatrixXd fd(N, N);
        for (int i = 0; i < N; ++i) {
            auto plus = a, minus = a;
            plus[i] += h;
            minus[i] -= h;
            const auto rp = emph::rho(plus), rm = emph::rho(minus);
            for (int r = 0; r < N; ++r) fd(r, i) = (rp[r] - rm[r]) / (2.0 * h);
        }
        CHECK(testref::relative_gap(jac, fd) < 1e-6);
    }
    CHECK_THROWS_AS((void)emph::rho_jacobian({0.0, 0.0}), emph::domain_error);
}

TEST_CASE("ray sensitivities: dimension-1 closed form") {
    const auto radii = make_radii({1.0, 0.5});
    const std::vector<double> rho{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    const auto result = emph::ray_barcode(radii, rho, 1);
    const auto sens = emph::ray_sensitivities(radii, rho, 1, result.origins);

    REQUIRE(sens.db_drho.rows() == 2);
    CHECK(sens.db_drho.norm() == 0.0); // dimension-1 births stay at zero

    // Bar order: mode 2's bar (death sqrt(3)/2) precedes mode 1's (sqrt 3).
    // d d_j / d rho_L = -sqrt(3/N) r_L / rho_L^2 on the bar's own mode.
    const double d_mode1 = -std::sqrt(1.5) * 1.0 / 0.5;
    const double d_mode2 = -std::sqrt(1.5) * 0.5 / 0.5;
    CHECK(sens.dd_drho(1, 0) == doctest::Approx(d_mode1).epsilon(1e-12));
    CHECK(sens.dd_drho(0, 1) == doctest::Approx(d_mode2).epsilon(1e-12));
    CHECK(sens.dd_drho(0, 0) == 0.0);
    CHECK(sens.dd_drho(1, 1) == 0.0);
}

TEST_CASE("ray sensitivities match finite differences in dimension 3") {
    // Dimension 3 exercises nonzero births (odd count 3 per mode). The
    // sensitivities differentiate the closed-form endpoint expressions with
    // the normalized components treated as free coordinates, so the oracle
    // evaluates those expressions directly at perturbed components.
    const auto radii = make_radii({1.0, 0.6});
    const std::vector<double> rho = emph::rho({0.8, 0.6});
    const int n = 3;
    const auto result = emph::ray_barcode(radii, rho, n);
    REQUIRE(result.barcode.size() == 2);
    const auto sens = emph::ray_sensitivities(radii, rho, n, result.origins);

    const auto endpoints_at = [&](const std::vector<double>& v) {
        const double sqrtN = std::sqrt(2.0);
        std::vector<std::pair<double, double>> out;
        for (const auto& origin : result.origins) {
            double birth = 0.0, death = std::numeric_limits<double>::infinity();
            for (int L = 0; L < 2; ++L) {
                if (origin.composition[L] == 0) continue;
                const auto iv = emph::circle_interval(radii.radii[L], origin.composition[L]);
                birth = std::max(birth, iv.birth / (sqrtN * v[L]));
                death = std::min(death, iv.death / (sqrtN * v[L]));
            }
            out.emplace_back(birth, death);
        }
        return out;
    };

    const double h = 1e-6;
    for (int L = 0; L < 2; ++L) {
        auto plus = rho, minus = rho;
        plus[L] += h;
        minus[L] -= h;
        const auto ep = endpoints_at(plus), em = endpoints_at(minus);
        for (int j = 0; j < 2; ++j) {
            const double fd_b = (ep[j].first - em[j].first) / (2.0 * h);
            const double fd_d = (ep[j].second - em[j].second) / (2.0 * h);
            CHECK(sens.db_drho(j, L) == doctest::Approx(fd_b).epsilon(1e-4));
            CHECK(sens.dd_drho(j, L) == doctest::Approx(fd_d).epsilon(1e-4));
        }
    }
}

TEST_CASE("curve sensitivities collapse to ray sensitivities for one segment") {
    const auto radii = make_radii({1.0, 0.5, 0.8});
    const std::vector<double> a{0.9, 0.5, 1.2};
    emph::FiltrationCurve curve;
    curve.directions = {a};
    curve.Q = 4.0;

    const auto ray_result = emph::ray_barcode(radii, a, 1);
    const auto curve_result = emph::curve_barcode(radii, curve, 1);
    const auto ray_sens =
        emph::ray_sensitivities(radii, emph::rho(a), 1, ray_result.origins);
    const auto curve_sens = emph::curve_sensitivities(radii, curve, 1, curve_result.origins);

    REQUIRE(curve_sens.dd_drho.size() == 1);
    CHECK((curve_sens.dd_drho[0] - ray_sens.dd_drho).norm() <= 1e-12);
    CHECK((curve_sens.db_drho[0] - ray_sens.db_drho).norm() <= 1e-12);
}

TEST_CASE("curve sensitivities: segment roles and finite differences") {
    // Two segments; mode 1's death lands in segment 2, mode 2's in segment 1
    // (the barcode module's worked configuration).
    const auto radii = make_radii({1.0, 0.5});
    emph::FiltrationCurve curve;
    curve.directions = {{1.0, 1.0}, {3.0, 1.0}};
    curve.Q = 2.0;
    const auto result = emph::curve_barcode(radii, curve, 1);
    REQUIRE(result.barcode.size() == 2);
    const auto sens = emph::curve_sensitivities(radii, curve, 1, result.origins);
    REQUIRE(sens.dd_drho.size() == 2);

    // Bar 0 is mode 2's (owned by segment 1): segment 2 must not touch it.
    CHECK(sens.dd_drho[1].row(0).norm() == 0.0);

    // Finite differences of the piecewise affine inverse, with the owning
    // segment frozen (the derivative's branch), over each segment's
    // normalized components.
    std::vector<std::vector<double>> rho_segs{emph::rho(curve.directions[0]),
                                              emph::rho(curve.directions[1])};
    const double seg_len = curve.Q / 2.0;
    const double sqrtN = std::sqrt(2.0);
    const auto death_at = [&](int bar, const std::vector<std::vector<double>>& v) {
        const auto& origin = result.origins[bar];
        int L = 0;
        while (origin.composition[L] == 0) ++L;
        const int owner = origin.death_segment[L];
        const double tau = emph::circle_interval(radii.radii[L], 1).death;
        double accumulated = 0.0;
        for (int i = 0; i + 1 < owner; ++i) accumulated += seg_len * v[i][L];
        return (owner - 1) * seg_len + (tau / sqrtN - accumulated) / v[owner - 1][L];
    };

    const double h = 1e-6;
    for (int bar = 0; bar < 2; ++bar) {
        for (int s = 0; s < 2; ++s) {
            for (int L = 0; L < 2; ++L) {
                auto plus = rho_segs, minus = rho_segs;
                plus[s][L] += h;
                minus[s][L] -= h;
                const double fd = (death_at(bar, plus) - death_at(bar, minus)) / (2.0 * h);
                CHECK(sens.dd_drho[s](bar, L) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
            }
        }
    }
}

TEST_CASE("direction gradient: zero upstream gradient and tangency") {
    std::mt19937_64 gen(37);
    Pipeline p = random_pipeline(gen);
    emph::ScaleRecord record;
    const auto grads = exact_gradient(p, record);
    REQUIRE(grads.size() == p.curve.directions.size());

    // The chain ends in the normalization Jacobian, whose null space is the
    // direction itself: the gradient never pushes along a, only across it.
    for (std::size_t s = 0; s < grads.size(); ++s) {
        const auto& a = p.curve.directions[s];
        double dot = 0.0;
        for (int L = 0; L < grads[s].size(); ++L) dot += grads[s][L] * a[L];
        CHECK(std::abs(dot) <= 1e-10 * std::max(1.0, grads[s].norm()));
    }

    const auto result = emph::curve_barcode(p.radii, p.curve, 1);
    const auto fused = emph::persistence_image_with_gradients(result.barcode, p.grid);
    const auto sens = emph::curve_sensitivities(p.radii, p.curve, 1, result.origins);
    std::vector<Eigen::MatrixXd> jacobians;
    for (const auto& a : p.curve.directions) jacobians.push_back(emph::rho_jacobian(a));
    const auto zero = emph::direction_gradient(Eigen::VectorXd::Zero(p.grid.size()),
                                               record, fused.gradients, sens, jacobians);
    for (const auto& g : zero) CHECK(g.norm() == 0.0);
}

TEST_CASE("direction gradient matches full-pipeline finite differences") {
    std::mt19937_64 gen(41);
    const double h = 1e-6;
    for (int trial = 0; trial < 15; ++trial) {
        Pipeline p = random_pipeline(gen);
        emph::ScaleRecord record;
        const auto grads = exact_gradient(p, record);

        double worst = 0.0;
        Eigen::VectorXd exact_all(0), fd_all(0);
        for (std::size_t s = 0; s < p.curve.directions.size(); ++s) {
            const int N = static_cast<int>(p.curve.directions[s].size());
            for (int L = 0; L < N; ++L) {
                Pipeline plus = p, minus = p;
                plus.curve.directions[s][L] += h;
                minus.curve.directions[s][L] -= h;
                const double fd =
                    (pipeline_loss(plus, &record) - pipeline_loss(minus, &record)) /
                    (2.0 * h);
                exact_all.conservativeResize(exact_all.size() + 1);
                fd_all.conservativeResize(fd_all.size() + 1);
                exact_all[exact_all.size() - 1] = grads[s][L];
                fd_all[fd_all.size() - 1] = fd;
            }
        }
        worst = testref::relative_gap(exact_all, fd_all, 1e-8);
        CHECK(worst < 1e-3);
    }
}

TEST_CASE("constraint box derivation") {
    emph::Barcode flat;
    flat.dimension = 1;
    flat.bars = {{0.0, 0.6, 1}, {0.0, 0.4, 1}};
    const auto box = emph::constraint_bounds({flat}, 0.5, 2.0, 0.01);
    CHECK(box.m == 0.01); // births are zero: the floor takes over
    CHECK(box.M == 1.0);  // 2 * 0.6 caps at 1

    emph::Barcode lifted;
    lifted.dimension = 3;
    lifted.bars = {{0.3, 0.45, 3}};
    const auto raw = emph::constraint_bounds({lifted}, 1.0, 1.0, 0.001);
    CHECK(raw.m == doctest::Approx(0.3));
    CHECK(raw.M == doctest::Approx(0.45));

    CHECK_THROWS_AS((void)emph::constraint_bounds({}, 0.5, 2.0, 0.01),
                    emph::input_error);

    emph::Barcode collapsed;
    collapsed.dimension = 1;
    collapsed.bars = {{0.9, 0.95, 1}};
    // m = 0.9, M = min(1, 1.9) -> valid; shrink c2 to collapse the box.
    CHECK_THROWS_AS((void)emph::constraint_bounds({collapsed}, 1.0, 0.5, 0.01),
                    emph::input_error);
}

TEST_CASE("projection clamps, preserves interior points, and is idempotent") {
    emph::ConstraintBox box;
    box.m = 0.1;
    box.M = 0.9;

    const auto inside = emph::project({0.5, 0.3}, box);
    CHECK(inside[0] == 0.5);
    CHECK(inside[1] == 0.3);

    const auto clamped = emph::project({0.02, 50.0}, box);
    CHECK(clamped[0] == box.m);
    CHECK(clamped[1] == box.M);
    CHECK(emph::project(clamped, box) == clamped);

    // The lower bound keeps every component strictly positive, so a
    // projected vector is always a valid direction.
    const auto revived = emph::project({0.0, 0.0}, box);
    CHECK(revived[0] == box.m);
    CHECK(revived[1] == box.m);
}

TEST_CASE("zero-ish training run echoes the projected all-ones start") {
    const auto data = emph::synth_example(emph::SynthKind::TwoClass, 10, 1.0, 5);
    emph::TrainConfig config;
    config.epochs = 1;
    config.lr = 0.001; // must be positive; both paths are frozen explicitly
    config.lr_net = 0.0;
    config.lr_directions = 0.0;
    config.modes = {1, 5};
    config.hidden = {4};
    config.resolution = 4;
    config.seed = 9;

    const auto result = emph::train(data, config);
    const double diag = 1.0 / std::sqrt(2.0);
    REQUIRE(result.model.curve.directions.size() == 1);
    CHECK(result.model.curve.directions[0][0] == doctest::Approx(diag).epsilon(1e-12));
    CHECK(result.model.curve.directions[0][1] == doctest::Approx(diag).epsilon(1e-12));
}

TEST_CASE("zero network learning rate freezes the network weights") {
    const auto data = emph::synth_example(emph::SynthKind::TwoClass, 10, 1.0, 5);
    emph::TrainConfig config;
    config.epochs = 6;
    config.lr = 0.05;
    config.lr_net = 0.0;
    config.modes = {1, 5};
    config.hidden = {4};
    config.resolution = 4;
    config.seed = 9;

    const auto result = emph::train(data, config);
    const auto initial = emph::DenseNet::init(config.resolution * config.resolution,
                                              config.hidden, 2, config.seed);
    for (std::size_t l = 0; l < initial.W.size(); ++l) {
        CHECK((result.model.net.W[l] - initial.W[l]).norm() == 0.0);
        CHECK((result.model.net.b[l] - initial.b[l]).norm() == 0.0);
    }
    // The directions still moved: the two update paths are independent.
    bool moved = false;
    for (double v : result.model.curve.directions[0]) {
        if (std::abs(v - 1.0 / std::sqrt(2.0)) > 1e-9) moved = true;
    }
    CHECK(moved);
}

TEST_CASE("projected updates never leave the box") {
    const auto data = emph::synth_example(emph::SynthKind::TwoClass, 15, 1.0, 2);
    emph::TrainConfig config;
    config.epochs = 40;
    config.lr = 0.05; // deliberately hot to stress the projection
    config.modes = {1, 5};
    config.hidden = {6};
    config.resolution = 5;
    config.seed = 3;

    const auto result = emph::train(data, config);
    CHECK(result.report.projection_violations == 0);
    for (const auto& epoch : result.report.trajectory) {
        for (const auto& segment : epoch) {
            for (double v : segment) {
                CHECK(v >= result.model.box.m - 1e-12);
                CHECK(v <= result.model.box.M + 1e-12);
            }
        }
    }
}

TEST_CASE("loss decreases over a short training run") {
    const auto data = emph::synth_example(emph::SynthKind::TwoClass, 20, 1.0, 1);
    emph::TrainConfig config;
    config.epochs = 300;
    config.lr = 0.01;
    config.modes = {1, 5};
    config.hidden = {10};
    config.resolution = 6;
    config.seed = 1;

    const auto result = emph::train(data, config);
    const auto& losses = result.report.epoch_loss;
    REQUIRE(losses.size() == 300);
    const auto median_of = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        return v[v.size() / 2];
    };
    const std::vector<double> head(losses.begin(), losses.begin() + 30);
    const std::vector<double> tail(losses.end() - 30, losses.end());
    CHECK(median_of(tail) < median_of(head));
}

TEST_CASE("training is deterministic under a fixed seed") {
    const auto data = emph::synth_example(emph::SynthKind::TwoClass, 12, 1.0, 8);
    emph::TrainConfig config;
    config.epochs = 25;
    config.lr = 0.01;
    config.modes = {1, 5};
    config.hidden = {5};
    config.resolution = 4;
    config.seed = 21;

    const auto a = emph::train(data, config);
    const auto b = emph::train(data, config);
    CHECK(a.report.test_accuracy == b.report.test_accuracy);
    REQUIRE(a.report.epoch_loss.size() == b.report.epoch_loss.size());
    for (std::size_t i = 0; i < a.report.epoch_loss.size(); ++i) {
        CHECK(a.report.epoch_loss[i] == b.report.epoch_loss[i]);
    }
    for (std::size_t l = 0; l < a.model.net.W.size(); ++l) {
        CHECK((a.model.net.W[l] - b.model.net.W[l]).norm() == 0.0);
    }
}

TEST_CASE("starting directions are normalized and projected before use") {
    const auto data = emph::synth_example(emph::SynthKind::TwoClass, 10, 1.0, 5);
    emph::TrainConfig config;
    config.epochs = 1;
    config.lr = 0.001;
    config.lr_net = 0.0;
    config.lr_directions = 0.0;
    config.modes = {1, 5};
    config.hidden = {4};
    config.resolution = 4;
    config.seed = 9;
    config.initial_directions = {{30.0, 40.0}}; // any positive scale is fine

    const auto result = emph::train(data, config);
    CHECK(result.model.curve.directions[0][0] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(result.model.curve.directions[0][1] == doctest::Approx(0.8).epsilon(1e-12));

    config.initial_directions = {{1.0, 1.0}, {1.0, 1.0}};
    CHECK_THROWS_AS((void)emph::train(data, config), emph::input_error);
}

TEST_CASE("train validates degenerate datasets and configs") {
    emph::Dataset one_class;
    one_class.classes = 1;
    for (int i = 0; i < 4; ++i) {
        emph::TimeSeries s;
        s.samples.assign(36, 0.5);
        s.label = 0;
        one_class.samples.push_back(s);
    }
    emph::TrainConfig config;
    config.modes = {1};
    CHECK_THROWS_AS((void)emph::train(one_class, config), emph::input_error);

    const auto data = emph::synth_example(emph::SynthKind::TwoClass, 6, 1.0, 5);
    config.epochs = 0;
    CHECK_THROWS_AS((void)emph::train(data, config), emph::input_error);
    config.epochs = 1;
    config.lr = 0.0;
    CHECK_THROWS_AS((void)emph::train(data, config), emph::input_error);
}

TEST_CASE("cross-validation: single cell equals fold-averaged training") {
    const auto data = emph::synth_example(emph::SynthKind::TwoClass, 15, 1.0, 4);
    emph::TrainConfig base;
    base.epochs = 20;
    base.lr = 0.01;
    base.modes = {1, 5};
    base.hidden = {5};
    base.resolution = 4;
    base.seed = 6;

    emph::HyperGrid grid;
    grid.lrs = {0.01};
    grid.sigmas = {base.sigma};
    grid.segments = {1};
    const auto report = emph::crossval(data, base, grid, 3);
    REQUIRE(report.cells.size() == 1);

    // Replicate the fold loop by hand.
    const auto folds = emph::stratified_folds(data, 3, base.seed);
    double total = 0.0;
    for (int fold = 0; fold < 3; ++fold) {
        emph::Dataset train_part, test_part;
        train_part.classes = test_part.classes = data.classes;
        for (std::size_t i = 0; i < data.size(); ++i) {
            (folds[i] == fold ? test_part : train_part).samples.push_back(data.samples[i]);
        }
        total += emph::train_eval(train_part, test_part, base).report.test_accuracy;
    }
    CHECK(report.cells[0].mean_accuracy == doctest::Approx(total / 3.0).epsilon(1e-12));
}

TEST_CASE("cross-validation: duplicated cells tie and the first wins") {
    const auto data = emph::synth_example(emph::SynthKind::TwoClass, 12, 1.0, 4);
    emph::TrainConfig base;
    base.epochs = 10;
    base.lr = 0.01;
    base.modes = {1, 5};
    base.hidden = {4};
    base.resolution = 4;
    base.seed = 2;

    emph::HyperGrid grid;
    grid.lrs = {0.01, 0.01};
    grid.sigmas = {base.sigma};
    grid.segments = {1};
    const auto report = emph::crossval(data, base, grid, 2);
    REQUIRE(report.cells.size() == 2);
    CHECK(report.cells[0].mean_accuracy == report.cells[1].mean_accuracy);
    CHECK(report.best_index == 0);
}

TEST_CASE("cross-validation rejects classes smaller than the fold count") {
    const auto data = emph::synth_example(emph::SynthKind::TwoClass, 3, 1.0, 4);
    emph::TrainConfig base;
    base.modes = {1, 5};
    emph::HyperGrid grid;
    grid.lrs = {0.01};
    grid.sigmas = {0.05};
    grid.segments = {1};
    CHECK_THROWS_AS((void)emph::crossval(data, base, grid, 4), emph::input_error);
}

} // TEST_SUITE
