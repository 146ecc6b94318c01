#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "emph/errors.hpp"
#include "emphcli/commands.hpp"
#include "emphcli/config.hpp"

namespace {

using emphcli::RunConfig;

// List-valued flags arrive as comma-separated strings and are folded into
// the config after parsing.
struct ListFlags {
    std::string modes;
    std::string hidden;
};

void add_data_options(CLI::App* cmd, RunConfig& config) {
    cmd->add_option("--input", config.input,
                    "dataset file (label-first CSV/TSV); omit to synthesize");
    cmd->add_option("--kind", config.kind, "synthetic kind: two-class | three-class");
    cmd->add_option("--per-class", config.per_class, "synthetic series per signal");
    cmd->add_option("--noise", config.noise, "synthetic noise standard deviation");
    cmd->add_option("--seed", config.train.seed, "random seed");
}

void add_filtration_options(CLI::App* cmd, RunConfig& config, ListFlags& lists) {
    cmd->add_option("--modes", lists.modes, "Fourier modes, e.g. 1,5");
    cmd->add_option("--dimension", config.train.dimension, "homology dimension n");
    cmd->add_option("--segments", config.train.segments, "curve segment count R");
    cmd->add_option("--Q", config.train.Q, "curve horizon (0 = auto)");
}

void add_train_options(CLI::App* cmd, RunConfig& config, ListFlags& lists) {
    cmd->add_option("--epochs", config.train.epochs, "training epochs");
    cmd->add_option("--lr", config.train.lr, "step size");
    cmd->add_flag("--lr-decay,!--constant-lr", config.train.lr_decay,
                  "use the diminishing step schedule lr/(1+k)");
    cmd->add_option("--lr-net", config.train.lr_net,
                    "network step size override (-1 = --lr)");
    cmd->add_option("--lr-directions", config.train.lr_directions,
                    "direction step size override (-1 = --lr)");
    cmd->add_option("--resolution", config.train.resolution, "image grid resolution");
    cmd->add_option("--sigma", config.train.sigma, "image Gaussian bandwidth");
    cmd->add_option("--hidden", lists.hidden, "hidden layer widths, e.g. 50");
    cmd->add_option("--c1", config.train.c1, "constraint box lower factor");
    cmd->add_option("--c2", config.train.c2, "constraint box upper factor");
    cmd->add_option("--test-fraction", config.train.test_fraction,
                    "held-out fraction for the internal split");
    cmd->add_flag("--learn,!--fixed", config.train.learn_filtration,
                  "learn the filtration (--fixed freezes the diagonal)");
    cmd->add_option("--batch", config.train.batch, "mini-batch size (0 = full)");
}

void fold_lists(const ListFlags& lists, RunConfig& config) {
    if (!lists.modes.empty()) {
        config.train.modes = emphcli::parse_int_list(lists.modes, "modes");
    }
    if (!lists.hidden.empty()) {
        config.train.hidden = emphcli::parse_int_list(lists.hidden, "hidden");
    }
}

} // namespace

int main(int argc, char** argv) {
    // The config file provides defaults, and explicit flags override them,
    // so the file is located and loaded before CLI11 parses the flags.
    std::string subcommand, config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (subcommand.empty() && !arg.empty() && arg[0] != '-') {
            subcommand = arg;
        } else if (arg == "--config" && i + 1 < argc) {
            config_path = argv[i + 1];
        } else if (arg.rfind("--config=", 0) == 0) {
            config_path = arg.substr(9);
        }
    }

    RunConfig config;
    if (subcommand == "bench") {
        config.train.epochs = 100;
        config.train.modes = {1, 2, 3, 4, 5};
    }
    try {
        if (!config_path.empty()) {
            config = emphcli::load_config(config_path, std::move(config));
        }
    } catch (const emph::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    ListFlags lists;
    std::string config_flag; // consumed above; registered so CLI11 accepts it

    CLI::App app{"Time-series classification via exact persistent homology "
                 "with filtration learning"};
    app.require_subcommand(0, 1);

    CLI::App* synth = app.add_subcommand("synth", "write a synthetic dataset");
    add_data_options(synth, config);
    synth->add_option("--output", config.output, "output directory");

    CLI::App* barcode = app.add_subcommand(
        "barcode", "print one sample's barcode as CSV");
    add_data_options(barcode, config);
    add_filtration_options(barcode, config, lists);
    barcode->add_option("--index", config.index, "sample index");
    barcode->add_option("--direction", config.direction,
                        "explicit directions, segments ';'-separated: 1,1;3,1");

    CLI::App* image = app.add_subcommand(
        "image", "print one sample's persistence image as CSV");
    add_data_options(image, config);
    add_filtration_options(image, config, lists);
    image->add_option("--index", config.index, "sample index");
    image->add_option("--direction", config.direction,
                      "explicit directions, segments ';'-separated");
    image->add_option("--resolution", config.train.resolution, "grid resolution");
    image->add_option("--sigma", config.train.sigma, "Gaussian bandwidth");
    image->add_option("--c2", config.train.c2, "grid range stretch factor");

    CLI::App* train = app.add_subcommand(
        "train", "train the classifier and write artifacts");
    add_data_options(train, config);
    add_filtration_options(train, config, lists);
    add_train_options(train, config, lists);
    train->add_option("--direction", config.direction,
                      "starting directions, segments ';'-separated: 1,1;1.2,0.7");
    train->add_option("--output", config.output, "artifact directory");

    CLI::App* eval = app.add_subcommand("eval", "evaluate a checkpoint");
    add_data_options(eval, config);
    eval->add_option("--checkpoint", config.checkpoint, "checkpoint JSON path");
    eval->add_option("--split", config.split, "subset: all | train | test");
    eval->add_option("--test-fraction", config.train.test_fraction,
                     "held-out fraction used for the split");
    eval->add_option("--output", config.output, "artifact directory");

    CLI::App* crossval = app.add_subcommand(
        "crossval", "k-fold cross-validation over a hyperparameter grid");
    add_data_options(crossval, config);
    add_filtration_options(crossval, config, lists);
    add_train_options(crossval, config, lists);
    crossval->add_option("--folds", config.train.folds, "fold count");
    crossval->add_option("--lrs", config.lrs, "learning rates, e.g. 0.01,0.005");
    crossval->add_option("--sigmas", config.sigmas, "bandwidths, e.g. 1,0.5,0.1");
    crossval->add_option("--segment-grid", config.segment_grid,
                         "segment counts, e.g. 1,2,3");
    crossval->add_option("--direction", config.direction,
                         "starting directions, segments ';'-separated");
    crossval->add_option("--output", config.output, "artifact directory");

    CLI::App* bench = app.add_subcommand(
        "bench", "time exact vs finite-difference gradient loops");
    bench->add_option("--samples", config.bench_samples, "dataset size");
    bench->add_option("--length", config.bench_length, "series length");
    bench->add_option("--epochs", config.train.epochs, "epochs to time");
    bench->add_option("--modes", lists.modes, "Fourier modes");
    bench->add_option("--segments", config.train.segments, "curve segments");
    bench->add_option("--resolution", config.train.resolution, "grid resolution");
    bench->add_option("--sigma", config.train.sigma, "Gaussian bandwidth");
    bench->add_option("--hidden", lists.hidden, "hidden layer widths");
    bench->add_option("--lr", config.train.lr, "step size");
    bench->add_option("--seed", config.train.seed, "random seed");
    bench->add_option("--output", config.output, "artifact directory");

    CLI::App* demo = app.add_subcommand(
        "multipers-demo", "run the two-parameter reference example");
    demo->add_option("--fixture", config.fixture,
                     "fixture JSON (omit for the built-in example)");
    demo->add_option("--k", config.k, "landscape level");

    for (CLI::App* cmd : {synth, barcode, image, train, eval, crossval, bench, demo}) {
        cmd->add_option("--config", config_flag,
                        "key=value config file providing defaults");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return (code == 0) ? 0 : 1;
    }

    try {
        fold_lists(lists, config);
        if (synth->parsed()) return emphcli::run_synth(config);
        if (barcode->parsed()) return emphcli::run_barcode(config);
        if (image->parsed()) return emphcli::run_image(config);
        if (train->parsed()) return emphcli::run_train(config);
        if (eval->parsed()) return emphcli::run_eval(config);
        if (crossval->parsed()) return emphcli::run_crossval(config);
        if (bench->parsed()) return emphcli::run_bench_command(config);
        if (demo->parsed()) return emphcli::run_multipers_demo(config);
        std::cout << app.help();
        return 1;
    } catch (const emph::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
