#include "fatshatter/serialization.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fatshatter/errors.hpp"

namespace fatshatter {

using nlohmann::json;

json to_json(const FunctionClass& fc) {
    json j;
    j["values"] = fc.rows();
    j["range"] = {fc.range_lo(), fc.range_hi()};
    if (fc.domain_labels()) j["domain_labels"] = *fc.domain_labels();
    return j;
}

FunctionClass function_class_from_json(const json& j) {
    try {
        auto values = j.at("values").get<std::vector<std::vector<double>>>();
        const auto range = j.at("range").get<std::vector<double>>();
        if (range.size() != 2) throw ConfigError("class: range must be [lo, hi]");
        std::optional<std::vector<double>> labels;
        if (j.contains("domain_labels")) {
            labels = j.at("domain_labels").get<std::vector<double>>();
        }
        return FunctionClass(std::move(values), range[0], range[1], std::move(labels));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("class: malformed JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("class: ") + e.what());
    }
}

json to_json(const ShatterCertificate& cert) {
    json assignment = json::object();
    for (std::size_t mask = 0; mask < cert.assignment.size(); ++mask) {
        assignment[std::to_string(mask)] = cert.assignment[mask];
    }
    return json{{"subset", cert.subset},
                {"witness", cert.witness},
                {"gamma", cert.gamma},
                {"assignment", std::move(assignment)}};
}

json to_json(const SeparatedNet& net) {
    return json{{"points", net.points}, {"epsilon", net.epsilon}, {"cover_map", net.cover_map}};
}

json to_json(const ChainStructure& chain) {
    return json{{"depth", chain.depth},
                {"epsilon", chain.epsilon},
                {"range_width", chain.range_width},
                {"net_points", chain.net_points},
                {"levels", chain.levels},
                {"projections", chain.projections},
                {"increments", chain.increments},
                {"decomposition", chain.decomposition}};
}

namespace {

FunctionClass resolve_class(const json& spec, const std::string& base_dir, std::string& id) {
    if (!spec.is_object()) throw ConfigError("config: class must be an object");
    std::string generator = spec.value("generator", std::string{});
    if (generator.empty() && spec.contains("values")) generator = "inline";
    if (generator == "threshold") {
        const auto grid = spec.at("grid").get<std::vector<double>>();
        const auto thresholds = spec.at("thresholds").get<std::vector<double>>();
        id = "threshold-g" + std::to_string(grid.size()) + "-t" +
             std::to_string(thresholds.size());
        return make_threshold_class(grid, thresholds);
    }
    if (generator == "full_binary") {
        const auto n = spec.at("n").get<std::size_t>();
        id = "full_binary-n" + std::to_string(n);
        return make_full_binary_class(n);
    }
    if (generator == "inline") {
        id = "inline";
        return function_class_from_json(spec);
    }
    if (generator == "file") {
        const auto path =
            std::filesystem::path(base_dir) / spec.at("path").get<std::string>();
        std::ifstream in(path);
        if (!in) throw ConfigError("config: cannot open class file " + path.string());
        json file_json;
        in >> file_json;
        id = path.stem().string();
        return function_class_from_json(file_json);
    }
    throw ConfigError("config: unknown class generator '" + generator + "'");
}

Distribution resolve_distribution(const json& j, std::size_t domain_size) {
    if (!j.contains("distribution")) return Distribution::uniform(domain_size);
    const auto& spec = j.at("distribution");
    const std::string type =
        spec.value("type", spec.contains("weights") ? "weights" : "uniform");
    if (type == "uniform") return Distribution::uniform(domain_size);
    if (type == "weights") {
        return Distribution(spec.at("weights").get<std::vector<double>>());
    }
    throw ConfigError("config: unknown distribution type '" + type + "'");
}

}  // namespace

ExperimentConfig parse_experiment_config(const json& j, const std::string& base_dir) {
    try {
        if (!j.contains("class")) throw ConfigError("config: missing class spec");
        std::string id;
        FunctionClass fc = resolve_class(j.at("class"), base_dir, id);
        Distribution dist = resolve_distribution(j, fc.num_points());
        if (j.contains("class_id")) id = j.at("class_id").get<std::string>();

        ExperimentConfig config(std::move(id), std::move(fc), std::move(dist));
        config.epsilon = j.value("epsilon", config.epsilon);
        config.delta = j.value("delta", config.delta);
        if (j.contains("m_values")) {
            config.m_values = j.at("m_values").get<std::vector<std::size_t>>();
        }
        config.trials = j.value("trials", config.trials);
        config.seed = j.value("seed", config.seed);
        if (j.contains("constants")) {
            const auto& c = j.at("constants");
            config.constants =
                BoundConstants(c.value("c_tilde", 1.0), c.value("C_tilde", 1.0));
        }
        config.legacy_scale = j.value("legacy_scale", config.legacy_scale);
        config.statistic = j.value("statistic", config.statistic);
        config.exact = j.value("exact", config.exact);
        if (j.contains("gamma_values")) {
            config.gamma_values = j.at("gamma_values").get<std::vector<double>>();
        }
        config.sample_m = j.value("m", config.sample_m);
        if (j.contains("zeta")) config.zeta = j.at("zeta").get<double>();
        if (j.contains("epsilon_sweep")) {
            config.epsilon_sweep = j.at("epsilon_sweep").get<std::vector<double>>();
        }
        config.sweep_fat = j.value("fat", config.sweep_fat);
        config.validate();
        return config;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

}  // namespace fatshatter
