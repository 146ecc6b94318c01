#include "emphcli/artifacts.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "emph/errors.hpp"

namespace emphcli {

using nlohmann::json;

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

json matrix_to_json_rowmajor(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
    }
    return out;
}

void write_file(const json& doc, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw emph::input_error("cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw emph::input_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw emph::input_error("'" + path + "' is not valid JSON: " + e.what());
    }
}

} // namespace

// ============================================================================
// Checkpoints
// ============================================================================

void save_checkpoint(const emph::TrainedModel& model, const std::string& path) {
    json doc;
    doc["format"] = "emph-checkpoint-1";
    doc["dimension"] = model.dimension;
    doc["modes"] = model.modes;
    doc["grid"] = {{"resolution", model.grid.resolution},
                   {"x_lo", model.grid.x_lo},
                   {"x_hi", model.grid.x_hi},
                   {"y_lo", model.grid.y_lo},
                   {"y_hi", model.grid.y_hi},
                   {"sigma", model.grid.sigma}};
    doc["box"] = {{"m", model.box.m},
                  {"M", model.box.M},
                  {"c1", model.box.c1},
                  {"c2", model.box.c2}};
    doc["curve"] = {{"Q", model.curve.Q},
                    {"directions", model.curve.directions}};
    json layers = json::array();
    for (std::size_t l = 0; l < model.net.W.size(); ++l) {
        layers.push_back({{"rows", model.net.W[l].rows()},
                          {"cols", model.net.W[l].cols()},
                          {"weights", matrix_to_json_rowmajor(model.net.W[l])},
                          {"bias", vector_to_json(model.net.b[l])}});
    }
    doc["layers"] = std::move(layers);
    write_file(doc, path);
}

emph::TrainedModel load_checkpoint(const std::string& path) {
    const json doc = read_file(path);
    try {
        if (doc.at("format").get<std::string>() != "emph-checkpoint-1") {
            throw emph::input_error("'" + path + "': unrecognized checkpoint format");
        }
        emph::TrainedModel model;
        model.dimension = doc.at("dimension").get<int>();
        model.modes = doc.at("modes").get<std::vector<int>>();
        const json& g = doc.at("grid");
        model.grid.resolution = g.at("resolution").get<int>();
        model.grid.x_lo = g.at("x_lo").get<double>();
        model.grid.x_hi = g.at("x_hi").get<double>();
        model.grid.y_lo = g.at("y_lo").get<double>();
        model.grid.y_hi = g.at("y_hi").get<double>();
        model.grid.sigma = g.at("sigma").get<double>();
        const json& b = doc.at("box");
        model.box.m = b.at("m").get<double>();
        model.box.M = b.at("M").get<double>();
        model.box.c1 = b.at("c1").get<double>();
        model.box.c2 = b.at("c2").get<double>();
        model.curve.Q = doc.at("curve").at("Q").get<double>();
        model.curve.directions =
            doc.at("curve").at("directions").get<std::vector<std::vector<double>>>();
        for (const json& layer : doc.at("layers")) {
            const auto rows = layer.at("rows").get<Eigen::Index>();
            const auto cols = layer.at("cols").get<Eigen::Index>();
            const auto weights = layer.at("weights").get<std::vector<double>>();
            const auto bias = layer.at("bias").get<std::vector<double>>();
            if (static_cast<Eigen::Index>(weights.size()) != rows * cols ||
                static_cast<Eigen::Index>(bias.size()) != rows) {
                throw emph::input_error("'" + path + "': layer shape mismatch");
            }
            Eigen::MatrixXd W(rows, cols);
            for (Eigen::Index r = 0; r < rows; ++r) {
                for (Eigen::Index c = 0; c < cols; ++c) W(r, c) = weights[r * cols + c];
            }
            model.net.W.push_back(std::move(W));
            model.net.b.push_back(
                Eigen::Map<const Eigen::VectorXd>(bias.data(), rows));
        }
        if (model.net.W.empty()) {
            throw emph::input_error("'" + path + "': checkpoint has no layers");
        }
        return model;
    } catch (const json::exception& e) {
        throw emph::input_error("'" + path + "': checkpoint schema error: " + e.what());
    }
}

// ============================================================================
// Metrics / timings / trajectory
// ============================================================================

void save_metrics(const emph::TrainResult& result, const RunConfig& config,
                  const std::string& path) {
    json doc;
    doc["test_accuracy"] = result.report.test_accuracy;
    doc["final_loss"] =
        result.report.epoch_loss.empty() ? 0.0 : result.report.epoch_loss.back();
    doc["epoch_loss"] = result.report.epoch_loss;
    doc["projection_violations"] = result.report.projection_violations;
    doc["final_directions"] = result.model.curve.directions;
    doc["Q"] = result.model.curve.Q;
    doc["box"] = {{"m", result.model.box.m}, {"M", result.model.box.M}};
    doc["grid"] = {{"x_hi", result.model.grid.x_hi},
                   {"y_hi", result.model.grid.y_hi},
                   {"resolution", result.model.grid.resolution},
                   {"sigma", result.model.grid.sigma}};
    // Echo the run configuration minus the artifact directory, so reruns
    // into different directories stay byte-identical.
    RunConfig echo = config;
    echo.output.clear();
    doc["config"] = config_to_text(echo);
    write_file(doc, path);
}

void save_timings(const emph::TrainReport& report, const std::string& path) {
    json doc;
    doc["barcode_s"] = report.time_barcode;
    doc["image_s"] = report.time_image;
    doc["network_s"] = report.time_network;
    doc["update_s"] = report.time_update;
    write_file(doc, path);
}

void save_trajectory(const emph::TrainReport& report,
                     const std::vector<int>& modes, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw emph::input_error("cannot write '" + path + "'");
    out << "epoch,segment";
    for (int mode : modes) out << ",a_" << mode;
    out << "\n";
    out << std::setprecision(17);
    for (std::size_t e = 0; e < report.trajectory.size(); ++e) {
        for (std::size_t s = 0; s < report.trajectory[e].size(); ++s) {
            out << e << "," << s + 1;
            for (double v : report.trajectory[e][s]) out << "," << v;
            out << "\n";
        }
    }
}

// ============================================================================
// CSV exports
// ============================================================================

void write_barcode_csv(const emph::BarcodeResult& result, std::ostream& out) {
    out << "dimension,birth,death,composition\n";
    out << std::setprecision(17);
    for (std::size_t j = 0; j < result.barcode.bars.size(); ++j) {
        const emph::Bar& bar = result.barcode.bars[j];
        out << bar.dimension << "," << bar.birth << ",";
        if (std::isinf(bar.death)) {
            out << "inf";
        } else {
            out << bar.death;
        }
        out << ",";
        const auto& comp = result.origins[j].composition;
        for (std::size_t L = 0; L < comp.size(); ++L) {
            if (L) out << " ";
            out << comp[L];
        }
        out << "\n";
    }
}

void write_image_csv(const emph::PersistenceImage& image, int resolution,
                     std::ostream& out) {
    out << std::setprecision(17);
    for (int ix = 0; ix < resolution; ++ix) {
        for (int iy = 0; iy < resolution; ++iy) {
            if (iy) out << ",";
            out << image.values[ix * resolution + iy];
        }
        out << "\n";
    }
}

void save_dataset_csv(const emph::Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw emph::input_error("cannot write '" + path + "'");
    out << std::setprecision(17);
    for (const emph::TimeSeries& series : data.samples) {
        out << series.label;
        for (double v : series.samples) out << "," << v;
        out << "\n";
    }
}

// ============================================================================
// Dataset resolution
// ============================================================================

emph::Dataset resolve_dataset(const RunConfig& config) {
    if (!config.input.empty()) return emph::load_ucr(config.input);
    emph::SynthKind kind;
    if (config.kind == "two-class") {
        kind = emph::SynthKind::TwoClass;
    } else if (config.kind == "three-class") {
        kind = emph::SynthKind::ThreeClass;
    } else {
        throw emph::input_error("unknown synthetic kind '" + config.kind +
                                "' (expected two-class or three-class)");
    }
    return emph::synth_example(kind, config.per_class, config.noise,
                               config.train.seed);
}

} // namespace emphcli
