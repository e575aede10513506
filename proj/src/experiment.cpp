#include "iastab/experiment.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "iastab/errors.hpp"
#include "iastab/policies.hpp"
#include "iastab/rate_model.hpp"
#include "iastab/region.hpp"
#include "iastab/sim.hpp"

using nlohmann::json;

namespace iastab {

namespace {

// ---------------------------------------------------------------- formatting

std::string fmt(double v) {
    if (!std::isfinite(v)) throw NumericError("emit: non-finite value in output", v, 0);
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::string& header) : out_(path) {
        if (!out_) throw ConfigError("cannot open output file: " + path.string());
        out_ << header << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

void check_json_finite(const json& j) {
    if (j.is_number_float() && !std::isfinite(j.get<double>()))
        throw NumericError("emit: non-finite value in output", j.get<double>(), 0);
    if (j.is_structured())
        for (const auto& item : j) check_json_finite(item);
}

void write_json(const std::filesystem::path& path, const json& j) {
    check_json_finite(j);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path.string());
    out << j.dump(2) << "\n";
}

// ------------------------------------------------------------- strict schema

void require_keys(const json& obj, const std::string& where,
                  const std::vector<std::string>& allowed,
                  const std::vector<std::string>& required) {
    if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(where + ": unknown key '" + key + "'");
    }
    for (const auto& key : required) {
        if (!obj.contains(key))
            throw ConfigError(where + ": missing required key '" + key + "'");
    }
}

double get_num(const json& obj, const std::string& where, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return v.get<double>();
}

int get_int(const json& obj, const std::string& where, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return v.get<int>();
}

std::string get_str(const json& obj, const std::string& where, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

std::vector<double> grid_from_json(const json& p, const std::string& where) {
    if (!p.contains("grid")) throw ConfigError(where + ": missing required key 'grid'");
    const json& g = p.at("grid");
    if (g.is_array()) {
        std::vector<double> out;
        for (const auto& v : g) {
            if (!v.is_number()) throw ConfigError(where + ".grid: expected numbers");
            out.push_back(v.get<double>());
        }
        if (out.empty()) throw ConfigError(where + ".grid: must be nonempty");
        return out;
    }
    require_keys(g, where + ".grid", {"min", "max", "step"}, {"min", "max", "step"});
    const double lo = get_num(g, where + ".grid", "min");
    const double hi = get_num(g, where + ".grid", "max");
    const double step = get_num(g, where + ".grid", "step");
    if (step <= 0.0 || hi < lo) throw ConfigError(where + ".grid: need step > 0 and max >= min");
    std::vector<double> out;
    for (double v = lo; v <= hi + 1e-9 * step; v += step) out.push_back(v);
    return out;
}

// ------------------------------------------------------------ system parsing

} // namespace

SystemConfig system_config_from_json(const json& j) {
    require_keys(j, "system",
                 {"pairs", "tx_antennas", "rx_antennas", "streams", "power", "noise_var",
                  "probe_fraction", "bits", "sinr_threshold", "rate_per_stream", "path_loss"},
                 {"pairs", "tx_antennas", "rx_antennas", "streams", "power", "noise_var",
                  "probe_fraction", "bits", "sinr_threshold", "rate_per_stream", "path_loss"});
    SystemConfig cfg;
    cfg.pairs = get_int(j, "system", "pairs");
    cfg.tx_antennas = get_int(j, "system", "tx_antennas");
    cfg.rx_antennas = get_int(j, "system", "rx_antennas");
    cfg.streams = get_int(j, "system", "streams");
    cfg.power = get_num(j, "system", "power");
    cfg.noise_var = get_num(j, "system", "noise_var");
    cfg.probe_frac = get_num(j, "system", "probe_fraction");
    cfg.bits = get_int(j, "system", "bits");
    cfg.sinr_threshold = get_num(j, "system", "sinr_threshold");
    cfg.rate_per_stream = get_num(j, "system", "rate_per_stream");

    const json& pl = j.at("path_loss");
    if (pl.is_object() && pl.contains("matrix")) {
        require_keys(pl, "system.path_loss", {"matrix"}, {"matrix"});
        const json& m = pl.at("matrix");
        if (!m.is_array() || int(m.size()) != cfg.pairs)
            throw ConfigError("system.path_loss.matrix: expected an N x N array");
        for (const auto& row : m) {
            if (!row.is_array() || int(row.size()) != cfg.pairs)
                throw ConfigError("system.path_loss.matrix: expected an N x N array");
            for (const auto& v : row) {
                if (!v.is_number())
                    throw ConfigError("system.path_loss.matrix: expected numbers");
                cfg.path_loss.push_back(v.get<double>());
            }
        }
    } else if (pl.is_object()) {
        require_keys(pl, "system.path_loss", {"direct", "cross"}, {"direct", "cross"});
        const double zd = get_num(pl, "system.path_loss", "direct");
        const double zc = get_num(pl, "system.path_loss", "cross");
        cfg.path_loss.assign(std::size_t(cfg.pairs) * cfg.pairs, zc);
        for (int k = 0; k < cfg.pairs; ++k)
            cfg.path_loss[std::size_t(k) * cfg.pairs + k] = zd;
    } else {
        throw ConfigError("system.path_loss: expected {direct, cross} or {matrix}");
    }
    cfg.validate();
    return cfg;
}

namespace {

// ------------------------------------------------------------- experiments

PolicySpec policy_from_params(const json& p, const std::string& where) {
    PolicySpec spec;
    spec.kind = policy_kind_from_name(get_str(p, where, "policy"));
    if (p.contains("csi")) {
        const std::string c = get_str(p, where, "csi");
        if (c == "imperfect") spec.csi = CsiCase::Imperfect;
        else if (c == "perfect") spec.csi = CsiCase::Perfect;
        else throw ConfigError(where + ".csi: expected 'imperfect' or 'perfect'");
    }
    return spec;
}

ServiceModel service_from_params(const json& p, const std::string& where) {
    if (!p.contains("service_model")) return ServiceModel::AnalyticBernoulli;
    const std::string s = get_str(p, where, "service_model");
    if (s == "analytic") return ServiceModel::AnalyticBernoulli;
    if (s == "distributional") return ServiceModel::Distributional;
    throw ConfigError(where + ".service_model: expected 'analytic' or 'distributional'");
}

std::vector<double> arrival_vector(const json& p, const std::string& where, int pairs) {
    const json& a = p.at("arrival");
    if (!a.is_array() || int(a.size()) != pairs)
        throw ConfigError(where + ".arrival: expected an array with one entry per pair");
    std::vector<double> out;
    for (const auto& v : a) {
        if (!v.is_number()) throw ConfigError(where + ".arrival: expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::filesystem::path> run_rates(const SystemConfig& cfg, const json& p,
                                             const std::filesystem::path& dir,
                                             const std::string& format) {
    require_keys(p, "params", {}, {});
    (void)p;
    std::vector<std::filesystem::path> files;
    const double rsvd = cfg.is_symmetric() ? svd_rate(cfg) : svd_rate(cfg, 0);
    if (format == "json") {
        json rows = json::array();
        for (int l = 1; l <= cfg.pairs; ++l) {
            rows.push_back({{"L", l},
                            {"r", symmetric_rate(cfg, l, CsiCase::Imperfect)},
                            {"mu", symmetric_rate(cfg, l, CsiCase::Perfect)},
                            {"r_total", symmetric_rate(cfg, l, CsiCase::Imperfect, true)},
                            {"mu_total", symmetric_rate(cfg, l, CsiCase::Perfect, true)}});
        }
        write_json(dir / "rates.json", json{{"rows", rows}, {"r_svd", rsvd}});
        files.push_back(dir / "rates.json");
    } else {
        CsvWriter csv(dir / "rates.csv", "L,r,mu,r_total,mu_total,r_svd");
        for (int l = 1; l <= cfg.pairs; ++l)
            csv.row({std::to_string(l), fmt(symmetric_rate(cfg, l, CsiCase::Imperfect)),
                     fmt(symmetric_rate(cfg, l, CsiCase::Perfect)),
                     fmt(symmetric_rate(cfg, l, CsiCase::Imperfect, true)),
                     fmt(symmetric_rate(cfg, l, CsiCase::Perfect, true)), fmt(rsvd)});
        files.push_back(dir / "rates.csv");
    }
    return files;
}

std::vector<std::filesystem::path> run_region(const SystemConfig& cfg, const json& p,
                                              const std::filesystem::path& dir,
                                              const std::string& format) {
    require_keys(p, "params", {"technique"}, {"technique"});
    const Technique tech = technique_from_name(get_str(p, "params", "technique"));
    const RegionVertexSet set = region_vertices(cfg, tech);
    std::vector<std::filesystem::path> files;
    if (format == "json") {
        json pts = json::array();
        for (const auto& v : set.points) {
            pts.push_back({{"label", technique_name(v.source) + ":L=" +
                                         std::to_string(v.cardinality) + ":s=" +
                                         Decision(set.pairs, v.mask).to_string()},
                           {"point", v.point}});
        }
        write_json(dir / "region.json", json{{"technique", technique_name(tech)},
                                             {"pairs", set.pairs},
                                             {"points", pts}});
        files.push_back(dir / "region.json");
    } else {
        std::string header = "label";
        for (int k = 1; k <= cfg.pairs; ++k) header += ",a_" + std::to_string(k);
        CsvWriter csv(dir / "region.csv", header);
        for (const auto& v : set.points) {
            std::vector<std::string> cells{technique_name(v.source) + ":L=" +
                                           std::to_string(v.cardinality) + ":s=" +
                                           Decision(set.pairs, v.mask).to_string()};
            for (double x : v.point) cells.push_back(fmt(x));
            csv.row(cells);
        }
        files.push_back(dir / "region.csv");
    }
    return files;
}

std::vector<std::filesystem::path> run_fractions(const SystemConfig& cfg, const json& p,
                                                 const std::filesystem::path& dir,
                                                 const std::string& format) {
    require_keys(p, "params", {"kind", "grid", "targets"}, {"kind"});
    const std::string kind = get_str(p, "params", "kind");
    std::vector<std::filesystem::path> files;

    auto emit = [&](const std::string& stem, const std::string& xname,
                    const std::vector<std::pair<double, json>>& rows,
                    const std::vector<std::string>& ynames) {
        if (format == "json") {
            json arr = json::array();
            for (const auto& [x, vals] : rows) {
                json row{{xname, x}};
                for (const auto& yn : ynames) row[yn] = vals.at(yn);
                arr.push_back(row);
            }
            write_json(dir / (stem + ".json"), arr);
            files.push_back(dir / (stem + ".json"));
        } else {
            std::string header = xname;
            for (const auto& yn : ynames) header += "," + yn;
            CsvWriter csv(dir / (stem + ".csv"), header);
            for (const auto& [x, vals] : rows) {
                std::vector<std::string> cells{fmt(x)};
                for (const auto& yn : ynames) cells.push_back(fmt(vals.at(yn).get<double>()));
                csv.row(cells);
            }
            files.push_back(dir / (stem + ".csv"));
        }
    };

    if (kind == "bits") {
        std::vector<std::pair<double, json>> rows;
        for (double b : grid_from_json(p, "params"))
            rows.push_back({b, json{{"fraction", bits_fraction(cfg, int(std::lround(b)))}}});
        emit("fraction_bits", "b_prime", rows, {"fraction"});
    } else if (kind == "pairs") {
        std::vector<std::pair<double, json>> rows;
        for (double n : grid_from_json(p, "params"))
            rows.push_back({n, json{{"fraction", pairs_fraction(cfg, int(std::lround(n)))}}});
        emit("fraction_pairs", "n_prime", rows, {"fraction"});
    } else if (kind == "beta") {
        std::vector<std::pair<double, json>> rows;
        SystemConfig probe = cfg;
        for (double b : grid_from_json(p, "params")) {
            probe.bits = int(std::lround(b));
            rows.push_back(
                {b, json{{"beta_p", beta_p(probe).value}, {"beta_a", beta_a(probe)}}});
        }
        emit("fraction_beta", "bits", rows, {"beta_p", "beta_a"});
    } else if (kind == "bit_bound") {
        if (!p.contains("targets") || !p.at("targets").is_array())
            throw ConfigError("params.targets (array) required for bit_bound");
        std::vector<std::pair<double, json>> rows;
        for (const auto& t : p.at("targets")) {
            if (!t.is_number()) throw ConfigError("params.targets: expected numbers");
            const double target = t.get<double>();
            const BitsForFraction bf = bits_for_fraction(cfg, target);
            rows.push_back(
                {target, json{{"b_bound", bf.b_bound}, {"b_exact", double(bf.b_exact)}}});
        }
        emit("bit_bound", "target", rows, {"b_bound", "b_exact"});
    } else {
        throw ConfigError("params.kind: expected bits|pairs|beta|bit_bound");
    }
    return files;
}

std::vector<std::filesystem::path> run_membership(const SystemConfig& cfg, const json& p,
                                                  const std::filesystem::path& dir) {
    require_keys(p, "params", {"arrival", "technique", "tol"}, {"arrival", "technique"});
    const std::vector<double> a = arrival_vector(p, "params", cfg.pairs);
    const Technique tech = technique_from_name(get_str(p, "params", "technique"));
    const double tol = p.contains("tol") ? get_num(p, "params", "tol") : 1e-7;
    const bool member = membership(cfg, a, tech, tol);
    write_json(dir / "membership.json",
               json{{"technique", technique_name(tech)}, {"arrival", a}, {"member", member}});
    return {dir / "membership.json"};
}

std::vector<std::filesystem::path> run_select(const SystemConfig& cfg, const json& p,
                                              const std::filesystem::path& dir) {
    require_keys(p, "params", {"arrival"}, {"arrival"});
    const std::vector<double> a = arrival_vector(p, "params", cfg.pairs);
    const TechniqueChoice choice = select_technique(cfg, a);
    const char* why = "";
    switch (choice.rationale) {
    case SelectRationale::SvdCoversIa: why = "svd_covers_ia"; break;
    case SelectRationale::OnlyInIa: why = "only_in_ia"; break;
    case SelectRationale::OnlyInSvd: why = "only_in_svd"; break;
    case SelectRationale::InBoth: why = "in_both_svd_spares_backhaul"; break;
    }
    write_json(dir / "select.json",
               json{{"arrival", a},
                    {"technique", choice.technique == Technique::Svd ? "tdma_svd" : "ia"},
                    {"rationale", why}});
    return {dir / "select.json"};
}

std::vector<std::filesystem::path> run_simulate(const SystemConfig& cfg, const json& p,
                                                const std::filesystem::path& dir,
                                                const std::string& format, std::uint64_t seed) {
    require_keys(p, "params", {"policy", "csi", "arrivals", "horizon", "service_model"},
                 {"policy", "arrivals", "horizon"});
    const PolicySpec spec = policy_from_params(p, "params");
    const ServiceModel service = service_from_params(p, "params");
    const std::int64_t horizon = std::int64_t(get_num(p, "params", "horizon"));

    const json& arr = p.at("arrivals");
    require_keys(arr, "params.arrivals", {"kind", "mean", "means", "cap"}, {"kind"});
    std::vector<double> means;
    if (arr.contains("means")) {
        if (!arr.at("means").is_array())
            throw ConfigError("params.arrivals.means: expected an array");
        for (const auto& v : arr.at("means")) {
            if (!v.is_number()) throw ConfigError("params.arrivals.means: expected numbers");
            means.push_back(v.get<double>());
        }
    } else if (arr.contains("mean")) {
        means.assign(cfg.pairs, get_num(arr, "params.arrivals", "mean"));
    } else {
        throw ConfigError("params.arrivals: need 'mean' or 'means'");
    }
    ArrivalSpec arrivals;
    const std::string kind = get_str(arr, "params.arrivals", "kind");
    if (kind == "poisson") arrivals = ArrivalSpec::poisson(means);
    else if (kind == "deterministic") arrivals = ArrivalSpec::deterministic(means);
    else throw ConfigError("params.arrivals.kind: expected poisson|deterministic");
    if (arr.contains("cap")) arrivals.cap = get_num(arr, "params.arrivals", "cap");

    RngStream rng(seed, 0);
    const QueueTrajectory traj = run_queue_sim(cfg, spec, arrivals, horizon, service, rng);

    std::vector<std::filesystem::path> files;
    write_json(dir / "simulate.json", json{{"policy", spec.label()},
                                           {"horizon", traj.horizon},
                                           {"total_avg_queue", traj.total_avg},
                                           {"per_pair_avg", traj.per_pair_avg},
                                           {"second_half_slope", traj.second_half_slope},
                                           {"divergent", traj.divergent},
                                           {"technique_share_ia", traj.ia_share}});
    files.push_back(dir / "simulate.json");
    if (format == "csv") {
        CsvWriter csv(dir / "trajectory.csv", "slot,total_queue");
        for (std::int64_t t = 0; t < traj.horizon; ++t)
            csv.row({std::to_string(t), fmt(traj.total_per_slot[t])});
        files.push_back(dir / "trajectory.csv");
    }
    return files;
}

std::vector<std::filesystem::path> run_sweep(const SystemConfig& cfg, const json& p,
                                             const std::filesystem::path& dir,
                                             const std::string& format, std::uint64_t seed) {
    require_keys(p, "params",
                 {"policy", "csi", "grid", "horizon", "replicas", "service_model", "threads"},
                 {"policy", "grid", "horizon", "replicas"});
    const PolicySpec spec = policy_from_params(p, "params");
    const ServiceModel service = service_from_params(p, "params");
    const std::int64_t horizon = std::int64_t(get_num(p, "params", "horizon"));
    const int replicas = get_int(p, "params", "replicas");
    const int threads = p.contains("threads") ? get_int(p, "params", "threads") : 0;
    const std::vector<double> grid = grid_from_json(p, "params");

    const std::vector<SweepPoint> points =
        arrival_sweep(cfg, spec, grid, horizon, replicas, seed, service, threads);

    std::vector<std::filesystem::path> files;
    if (format == "json") {
        json arr = json::array();
        for (const auto& pt : points)
            arr.push_back({{"a", pt.arrival_mean},
                           {"total_avg_queue", pt.total_avg_queue},
                           {"stderr", pt.stderr_},
                           {"policy", spec.label()},
                           {"divergent", pt.divergent},
                           {"technique_share_ia", pt.ia_share}});
        write_json(dir / "sweep.json", arr);
        files.push_back(dir / "sweep.json");
    } else {
        CsvWriter csv(dir / "sweep.csv", "a,total_avg_queue,stderr,policy,technique_share_ia");
        for (const auto& pt : points)
            csv.row({fmt(pt.arrival_mean), fmt(pt.total_avg_queue), fmt(pt.stderr_),
                     spec.label(), fmt(pt.ia_share)});
        files.push_back(dir / "sweep.csv");
    }
    return files;
}

// ------------------------------------------------------------ config plumbing

void apply_override(json& root, const std::string& kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("--set expects key=value, got '" + kv + "'");
    const std::string path = kv.substr(0, eq);
    const std::string raw = kv.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw);
    } catch (const json::parse_error&) {
        value = raw; // plain string
    }
    json* node = &root;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.empty()) throw ConfigError("--set: empty key path");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &((*node)[parts[i]]);
    (*node)[parts.back()] = value;
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

std::vector<std::filesystem::path> run_experiment(const std::string& config_path,
                                                  const std::vector<std::string>& overrides,
                                                  std::uint64_t seed,
                                                  const std::filesystem::path& out_dir,
                                                  const std::string& format_override) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot read config file: " + config_path);
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    for (const auto& kv : overrides) apply_override(root, kv);

    require_keys(root, "config", {"system", "experiment", "format", "params"},
                 {"system", "experiment"});
    const SystemConfig cfg = system_config_from_json(root.at("system"));
    const std::string experiment = get_str(root, "config", "experiment");
    std::string format = root.contains("format") ? get_str(root, "config", "format") : "csv";
    if (!format_override.empty()) format = format_override;
    if (format != "csv" && format != "json")
        throw ConfigError("format: expected 'csv' or 'json'");
    const json params = root.contains("params") ? root.at("params") : json::object();

    std::filesystem::create_directories(out_dir);

    std::vector<std::filesystem::path> files;
    if (experiment == "rates") files = run_rates(cfg, params, out_dir, format);
    else if (experiment == "region") files = run_region(cfg, params, out_dir, format);
    else if (experiment == "fractions") files = run_fractions(cfg, params, out_dir, format);
    else if (experiment == "membership") files = run_membership(cfg, params, out_dir);
    else if (experiment == "select") files = run_select(cfg, params, out_dir);
    else if (experiment == "simulate") files = run_simulate(cfg, params, out_dir, format, seed);
    else if (experiment == "sweep") files = run_sweep(cfg, params, out_dir, format, seed);
    else
        throw ConfigError(
            "experiment: expected rates|region|fractions|membership|select|simulate|sweep");

    json manifest;
    manifest["config_hash"] = fnv1a(root.dump());
    manifest["seed"] = seed;
    manifest["experiment"] = experiment;
    manifest["version"] = "0.1.0";
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    manifest["wall_clock_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    json outs = json::array();
    for (const auto& f : files) outs.push_back(f.filename().string());
    manifest["outputs"] = outs;
    write_json(out_dir / "manifest.json", manifest);
    files.push_back(out_dir / "manifest.json");
    return files;
}

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"Stability-region analysis and queue simulation for TDD MIMO interference "
                 "networks with interference alignment over a limited backhaul"};
    std::string config_path;
    std::string out_dir = "out";
    std::string format;
    std::uint64_t seed = 12345;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "JSON experiment config")->required();
    app.add_option("--seed", seed, "top-level RNG seed");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--set", overrides, "override config entries, key.path=value")
        ->take_all();
    app.add_option("--format", format, "csv or json (overrides config)");

    std::vector<const char*> argv;
    argv.push_back("iastab");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const auto files =
            run_experiment(config_path, overrides, seed, out_dir, format);
        for (const auto& f : files) std::cout << f.string() << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const GuardError& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return 4;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace iastab
