#include "emphcli/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "emph/errors.hpp"

namespace emphcli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw emph::input_error("config: key '" + key + "' wants a boolean, got '" + v + "'");
}

template <typename T>
T parse_number(const std::string& v, const std::string& key) {
    std::istringstream ss(v);
    T out{};
    std::string rest;
    ss >> out;
    ss >> rest;
    if (ss.fail() && rest.empty() && !ss.eof()) rest = "?";
    if (v.empty() || !rest.empty() || !ss.eof()) {
        throw emph::input_error("config: key '" + key + "' wants a number, got '" +
                                v + "'");
    }
    return out;
}

} // namespace

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_number<int>(item, what));
    }
    if (out.empty()) throw emph::input_error("config: '" + what + "' list is empty");
    return out;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_number<double>(item, what));
    }
    if (out.empty()) throw emph::input_error("config: '" + what + "' list is empty");
    return out;
}

std::vector<std::vector<double>> parse_directions(const std::string& text) {
    std::vector<std::vector<double>> out;
    std::stringstream ss(text);
    std::string segment;
    while (std::getline(ss, segment, ';')) {
        segment = trim(segment);
        if (segment.empty()) continue;
        out.push_back(parse_double_list(segment, "direction"));
    }
    if (out.empty()) throw emph::input_error("config: direction string is empty");
    return out;
}

std::string join_int_list(const std::vector<int>& values) {
    std::string out;
    for (int v : values) {
        if (!out.empty()) out += ",";
        out += std::to_string(v);
    }
    return out;
}

namespace {

std::string format_double(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

} // namespace

std::string config_to_text(const RunConfig& c) {
    std::ostringstream out;
    out << "# training\n";
    out << "epochs = " << c.train.epochs << "\n";
    out << "lr = " << format_double(c.train.lr) << "\n";
    out << "lr_decay = " << (c.train.lr_decay ? "true" : "false") << "\n";
    out << "lr_net = " << format_double(c.train.lr_net) << "\n";
    out << "lr_directions = " << format_double(c.train.lr_directions) << "\n";
    out << "modes = " << join_int_list(c.train.modes) << "\n";
    out << "dimension = " << c.train.dimension << "\n";
    out << "segments = " << c.train.segments << "\n";
    out << "Q = " << format_double(c.train.Q) << "\n";
    out << "resolution = " << c.train.resolution << "\n";
    out << "sigma = " << format_double(c.train.sigma) << "\n";
    out << "hidden = " << join_int_list(c.train.hidden) << "\n";
    out << "seed = " << c.train.seed << "\n";
    out << "c1 = " << format_double(c.train.c1) << "\n";
    out << "c2 = " << format_double(c.train.c2) << "\n";
    out << "folds = " << c.train.folds << "\n";
    out << "test_fraction = " << format_double(c.train.test_fraction) << "\n";
    out << "learn_filtration = " << (c.train.learn_filtration ? "true" : "false") << "\n";
    out << "batch = " << c.train.batch << "\n";
    out << "# run\n";
    out << "input = " << c.input << "\n";
    out << "kind = " << c.kind << "\n";
    out << "per_class = " << c.per_class << "\n";
    out << "noise = " << format_double(c.noise) << "\n";
    out << "output = " << c.output << "\n";
    out << "checkpoint = " << c.checkpoint << "\n";
    out << "split = " << c.split << "\n";
    out << "fixture = " << c.fixture << "\n";
    out << "index = " << c.index << "\n";
    out << "direction = " << c.direction << "\n";
    out << "k = " << c.k << "\n";
    out << "bench_samples = " << c.bench_samples << "\n";
    out << "bench_length = " << c.bench_length << "\n";
    out << "lrs = " << c.lrs << "\n";
    out << "sigmas = " << c.sigmas << "\n";
    out << "segment_grid = " << c.segment_grid << "\n";
    return out.str();
}

RunConfig config_from_text(const std::string& text, RunConfig base) {
    RunConfig c = std::move(base);
    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"epochs", [&](auto& v, auto& k) { c.train.epochs = parse_number<int>(v, k); }},
        {"lr", [&](auto& v, auto& k) { c.train.lr = parse_number<double>(v, k); }},
        {"lr_decay", [&](auto& v, auto& k) { c.train.lr_decay = parse_bool(v, k); }},
        {"lr_net", [&](auto& v, auto& k) { c.train.lr_net = parse_number<double>(v, k); }},
        {"lr_directions",
         [&](auto& v, auto& k) { c.train.lr_directions = parse_number<double>(v, k); }},
        {"modes", [&](auto& v, auto& k) { c.train.modes = parse_int_list(v, k); }},
        {"dimension",
         [&](auto& v, auto& k) { c.train.dimension = parse_number<int>(v, k); }},
        {"segments",
         [&](auto& v, auto& k) { c.train.segments = parse_number<int>(v, k); }},
        {"Q", [&](auto& v, auto& k) { c.train.Q = parse_number<double>(v, k); }},
        {"resolution",
         [&](auto& v, auto& k) { c.train.resolution = parse_number<int>(v, k); }},
        {"sigma", [&](auto& v, auto& k) { c.train.sigma = parse_number<double>(v, k); }},
        {"hidden", [&](auto& v, auto& k) { c.train.hidden = parse_int_list(v, k); }},
        {"seed",
         [&](auto& v, auto& k) { c.train.seed = parse_number<std::uint64_t>(v, k); }},
        {"c1", [&](auto& v, auto& k) { c.train.c1 = parse_number<double>(v, k); }},
        {"c2", [&](auto& v, auto& k) { c.train.c2 = parse_number<double>(v, k); }},
        {"folds", [&](auto& v, auto& k) { c.train.folds = parse_number<int>(v, k); }},
        {"test_fraction",
         [&](auto& v, auto& k) { c.train.test_fraction = parse_number<double>(v, k); }},
        {"learn_filtration",
         [&](auto& v, auto& k) { c.train.learn_filtration = parse_bool(v, k); }},
        {"batch", [&](auto& v, auto& k) { c.train.batch = parse_number<int>(v, k); }},
        {"input", [&](auto& v, auto&) { c.input = v; }},
        {"kind", [&](auto& v, auto&) { c.kind = v; }},
        {"per_class",
         [&](auto& v, auto& k) { c.per_class = parse_number<int>(v, k); }},
        {"noise", [&](auto& v, auto& k) { c.noise = parse_number<double>(v, k); }},
        {"output", [&](auto& v, auto&) { c.output = v; }},
        {"checkpoint", [&](auto& v, auto&) { c.checkpoint = v; }},
        {"split", [&](auto& v, auto&) { c.split = v; }},
        {"fixture", [&](auto& v, auto&) { c.fixture = v; }},
        {"index", [&](auto& v, auto& k) { c.index = parse_number<int>(v, k); }},
        {"direction", [&](auto& v, auto&) { c.direction = v; }},
        {"k", [&](auto& v, auto& k) { c.k = parse_number<int>(v, k); }},
        {"bench_samples",
         [&](auto& v, auto& k) { c.bench_samples = parse_number<int>(v, k); }},
        {"bench_length",
         [&](auto& v, auto& k) { c.bench_length = parse_number<int>(v, k); }},
        {"lrs", [&](auto& v, auto&) { c.lrs = v; }},
        {"sigmas", [&](auto& v, auto&) { c.sigmas = v; }},
        {"segment_grid", [&](auto& v, auto&) { c.segment_grid = v; }},
    };

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw emph::input_error("config: line " + std::to_string(lineno) +
                                    " is not of the form key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw emph::input_error("config: unknown key '" + key + "' on line " +
                                    std::to_string(lineno));
        }
        it->second(value, key);
    }
    return c;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw emph::input_error("config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return config_from_text(buffer.str(), std::move(base));
}

void save_config(const RunConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw emph::input_error("config: cannot write '" + path + "'");
    out << config_to_text(config);
}

} // namespace emphcli
