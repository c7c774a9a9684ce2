#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fatshatter/bounds.hpp"
#include "fatshatter/chaining.hpp"
#include "fatshatter/class_core.hpp"
#include "fatshatter/dimensions.hpp"
#include "fatshatter/empirical_process.hpp"
#include "fatshatter/errors.hpp"
#include "fatshatter/metric_geometry.hpp"
#include "fatshatter/numeric.hpp"
#include "fatshatter/rng.hpp"
#include "fatshatter/serialization.hpp"

namespace fs = fatshatter;
using nlohmann::json;

namespace {

constexpr std::uint64_t kPackSampleTag = 0x7061636bULL;
constexpr std::uint64_t kChainSampleTag = 0x636861696eULL;

struct CommonOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    bool exact = false;
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON config file")->required();
    cmd->add_option("--seed", opts.seed, "Override the config seed");
    cmd->add_option("--out", opts.out, "CSV output path (default: stdout)");
    cmd->add_flag("--exact", opts.exact, "Force exact enumeration or fail");
    cmd->add_option("--threads", opts.threads, "Worker threads (default 1)")
        ->check(CLI::Range(1u, 256u));
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fs::ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw fs::ConfigError(std::string("config parse failure: ") + e.what());
    }
    return j;
}

fs::ExperimentConfig load_config(const CommonOpts& opts) {
    const auto base_dir = std::filesystem::path(opts.config_path).parent_path().string();
    auto config = fs::parse_experiment_config(load_json(opts.config_path),
                                              base_dir.empty() ? "." : base_dir);
    if (opts.seed) config.seed = *opts.seed;
    if (opts.exact) config.exact = true;
    return config;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw fs::ConfigError("cannot open output file " + out_path);
    out << text;
}

int run_dim(const CommonOpts& opts) {
    const auto config = load_config(opts);
    if (config.gamma_values.empty()) {
        throw fs::ConfigError("dim: config needs a non-empty gamma_values list");
    }
    const bool binary = config.function_class.is_binary();
    const std::size_t vc = binary ? fs::vc_dim(config.function_class) : 0;
    std::ostringstream csv;
    csv << "class_id,gamma,fat,vc\n";
    for (double gamma : config.gamma_values) {
        csv << '"' << config.class_id << '"' << ',' << fs::format_double(gamma) << ','
            << fs::fat_dim(config.function_class, gamma) << ',';
        if (binary) csv << vc;
        csv << "\n";
    }
    emit(csv.str(), opts.out);
    return 0;
}

int run_pack(const CommonOpts& opts) {
    const auto config = load_config(opts);
    const auto& fc = config.function_class;
    const double range = fc.range_width();
    const double zeta = config.zeta.value_or(config.epsilon / 8.0);

    fs::Rng rng = fs::Rng::stream(fs::derive_seed(config.seed, kPackSampleTag), 0);
    std::vector<std::size_t> indices(2 * config.sample_m);
    for (auto& idx : indices) idx = config.distribution.sample(rng);
    const auto restriction = fs::restrict_class(fc, fs::SampleVector(indices, config.sample_m));
    const auto net = fs::greedy_net(restriction.vectors, zeta);

    bool separated = true;
    for (std::size_t a = 0; a < net.points.size() && separated; ++a) {
        for (std::size_t b = a + 1; b < net.points.size(); ++b) {
            if (fs::distance(net.points[a], net.points[b], 2) <= zeta) {
                separated = false;
                break;
            }
        }
    }
    bool covered = true;
    for (std::size_t i = 0; i < restriction.vectors.size(); ++i) {
        if (fs::distance(restriction.vectors[i], net.points[net.cover_map[i]], 2) > zeta) {
            covered = false;
            break;
        }
    }

    std::ostringstream csv;
    csv << "class_id,m,epsilon,zeta,ambient_size,net_size,separation_ok,cover_ok,"
           "packing_exact,rv_bound,fat_scale,fat_value,seed\n";
    csv << '"' << config.class_id << '"' << ',' << config.sample_m << ','
        << fs::format_double(config.epsilon) << ',' << fs::format_double(zeta) << ','
        << restriction.vectors.size() << ',' << net.points.size() << ','
        << (separated ? "true" : "false") << ',' << (covered ? "true" : "false") << ',';
    if (restriction.vectors.size() <= 24) {
        csv << fs::packing_number_exact(restriction.vectors, zeta);
    }
    csv << ',';
    if (zeta < range / 2.0) {
        const double gamma = config.constants.c_tilde * zeta;
        const std::size_t fat = fs::fat_dim(fc, gamma);
        csv << fs::format_double(fs::rv_packing_bound(range, zeta, fat, config.constants)) << ','
            << fs::format_double(gamma) << ',' << fat;
    } else {
        csv << ",,";
    }
    csv << ',' << config.seed << "\n";
    emit(csv.str(), opts.out);
    return 0;
}

int run_chain(const CommonOpts& opts, const std::string& dump_path) {
    const auto config = load_config(opts);
    const auto& fc = config.function_class;

    fs::Rng rng = fs::Rng::stream(fs::derive_seed(config.seed, kChainSampleTag), 0);
    std::vector<std::size_t> indices(2 * config.sample_m);
    for (auto& idx : indices) idx = config.distribution.sample(rng);
    const auto restriction = fs::restrict_class(fc, fs::SampleVector(indices, config.sample_m));
    const auto net = fs::greedy_net(restriction.vectors, config.epsilon / 8.0);
    const auto chain = fs::build_chain(net, fc.range_width(), config.epsilon);
    const auto report = fs::verify_chain(chain, config.sample_m);

    std::ostringstream levels;
    for (std::size_t j = 0; j < chain.levels.size(); ++j) {
        if (j > 0) levels << ';';
        levels << chain.levels[j].size();
    }
    std::ostringstream csv;
    csv << "class_id,m,epsilon,net_size,depth,level_sizes,decomposition_ok,"
           "increment_bounds_ok,level_sizes_ok,seed\n";
    csv << '"' << config.class_id << '"' << ',' << config.sample_m << ','
        << fs::format_double(config.epsilon) << ',' << net.points.size() << ',' << chain.depth
        << ',' << levels.str() << ',' << (report.decomposition_ok ? "true" : "false") << ','
        << (report.increment_bounds_ok ? "true" : "false") << ','
        << (report.level_sizes_ok ? "true" : "false") << ',' << config.seed << "\n";
    emit(csv.str(), opts.out);

    if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        if (!out) throw fs::ConfigError("cannot open dump file " + dump_path);
        out << fs::to_json(chain).dump(2) << "\n";
    }
    if (!report.all_pass()) {
        for (const auto& witness : report.witnesses) {
            std::cerr << "chain violation: " << witness << "\n";
        }
        return 4;
    }
    return 0;
}

int run_simulate(const CommonOpts& opts, bool full) {
    const auto config = load_config(opts);
    if (config.m_values.empty()) {
        throw fs::ConfigError("simulate: config needs a non-empty m_values list");
    }
    const auto rows = fs::run_experiment(config, opts.threads);
    emit(fs::experiment_csv(rows, full), opts.out);
    return 0;
}

int run_bound(const CommonOpts& opts) {
    const json j = load_json(opts.config_path);
    const double epsilon = j.value("epsilon", 0.25);
    const double delta = j.value("delta", 0.05);
    fs::BoundConstants constants;
    if (j.contains("constants")) {
        const auto& c = j.at("constants");
        constants = fs::BoundConstants(c.value("c_tilde", 1.0), c.value("C_tilde", 1.0));
    }
    const double legacy_scale = j.value("legacy_scale", 1.0);

    std::string class_id = "explicit";
    double range = j.value("range_width", 1.0);
    std::size_t kappa = 0;
    std::size_t legacy_fat = 0;
    if (j.contains("class")) {
        const auto config = load_config(opts);
        class_id = config.class_id;
        range = config.function_class.range_width();
        kappa = fs::fat_dim(config.function_class, constants.c_tilde * epsilon / 16.0);
        legacy_fat = fs::fat_dim(config.function_class, epsilon / 5.0);
    } else {
        if (!j.contains("kappa")) {
            throw fs::ConfigError("bound: need either a class spec or an explicit kappa");
        }
        kappa = j.at("kappa").get<std::size_t>();
        legacy_fat = j.value("fat", kappa);
    }
    if (j.contains("class_id")) class_id = j.at("class_id").get<std::string>();

    std::ostringstream csv;
    csv << "class_id,epsilon,delta,c_tilde,C_tilde,kappa,theorem_m,legacy_fat,legacy_scale,"
           "legacy_m\n";
    csv << '"' << class_id << '"' << ',' << fs::format_double(epsilon) << ','
        << fs::format_double(delta) << ',' << fs::format_double(constants.c_tilde) << ','
        << fs::format_double(constants.C_tilde) << ',' << kappa << ','
        << fs::theorem_sample_bound(range, epsilon, delta, kappa, constants) << ',' << legacy_fat
        << ',' << fs::format_double(legacy_scale) << ','
        << fs::legacy_sample_bound(range, epsilon, delta, legacy_fat, legacy_scale) << "\n";
    emit(csv.str(), opts.out);
    return 0;
}

int run_compare(const CommonOpts& opts) {
    const json j = load_json(opts.config_path);
    if (!j.contains("epsilon_sweep")) {
        throw fs::ConfigError("compare: config needs an epsilon_sweep list");
    }
    const auto sweep = j.at("epsilon_sweep").get<std::vector<double>>();
    const double delta = j.value("delta", 0.05);
    const std::size_t fat = j.value("fat", std::size_t{0});
    const double legacy_scale = j.value("legacy_scale", 1.0);
    double range = j.value("range_width", 1.0);
    fs::BoundConstants constants;
    if (j.contains("constants")) {
        const auto& c = j.at("constants");
        constants = fs::BoundConstants(c.value("c_tilde", 1.0), c.value("C_tilde", 1.0));
    }
    if (j.contains("class")) {
        range = load_config(opts).function_class.range_width();
    }
    const auto rows = fs::compare_bounds(range, sweep, delta, fat, constants, legacy_scale);
    emit(fs::compare_csv(rows), opts.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uniform convergence toolkit: combinatorial dimensions, nets, chaining, "
                 "and sample-complexity bounds for finite function classes"};
    app.require_subcommand(1);

    CommonOpts dim_opts, pack_opts, chain_opts, sim_opts, bound_opts, cmp_opts;
    std::string chain_dump;
    bool sim_full = false;

    auto* dim = app.add_subcommand("dim", "Fat-shattering and VC dimension of a class");
    add_common(dim, dim_opts);
    auto* pack = app.add_subcommand("pack", "Greedy net and packing report on a sample");
    add_common(pack, pack_opts);
    auto* chain = app.add_subcommand("chain", "Build and verify a chaining decomposition");
    add_common(chain, chain_opts);
    chain->add_option("--dump-json", chain_dump, "Write the chain structure as JSON");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo deviation tails");
    add_common(simulate, sim_opts);
    simulate->add_flag("--full", sim_full, "Append bound and chain columns to the CSV");
    auto* bound = app.add_subcommand("bound", "Evaluate the sample-complexity formulas");
    add_common(bound, bound_opts);
    auto* compare = app.add_subcommand("compare", "Sweep epsilon and compare both bounds");
    add_common(compare, cmp_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (dim->parsed()) return run_dim(dim_opts);
        if (pack->parsed()) return run_pack(pack_opts);
        if (chain->parsed()) return run_chain(chain_opts, chain_dump);
        if (simulate->parsed()) return run_simulate(sim_opts, sim_full);
        if (bound->parsed()) return run_bound(bound_opts);
        if (compare->parsed()) return run_compare(cmp_opts);
    } catch (const fs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fs::SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
