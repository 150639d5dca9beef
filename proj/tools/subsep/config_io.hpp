#pragma once

// JSON <-> SeparationConfig plumbing for the CLI: config files mirror the
// SeparationConfig field names, unknown keys are rejected by name, and every
// run writes a manifest with the fully resolved configuration.

#include <nlohmann/json.hpp>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "subsep/errors.hpp"
#include "subsep/pipeline.hpp"

namespace subsep::cli {

class ConfigError : public Error {
public:
    using Error::Error;
};

inline void reject_unknown_keys(const nlohmann::json& obj, const std::string& scope,
                                std::initializer_list<const char*> known) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            if (key == k) ok = true;
        if (!ok)
            throw ConfigError("config: unknown key '" + (scope.empty() ? key : scope + "." + key) +
                              "'");
    }
}

inline CurvatureConfig::Mode curvature_mode_from(const std::string& name) {
    if (name == "standard") return CurvatureConfig::Mode::standard;
    if (name == "paper-literal") return CurvatureConfig::Mode::paper_literal;
    throw ConfigError("config: curvature.mode must be 'standard' or 'paper-literal', got '" +
                      name + "'");
}

inline std::string to_string(CurvatureConfig::Mode mode) {
    return mode == CurvatureConfig::Mode::standard ? "standard" : "paper-literal";
}

inline FocussConfig::Init init_from(const std::string& name) {
    if (name == "ridge") return FocussConfig::Init::ridge;
    if (name == "ones") return FocussConfig::Init::ones;
    throw ConfigError("config: solver.init must be 'ridge' or 'ones', got '" + name + "'");
}

inline std::string to_string(FocussConfig::Init init) {
    return init == FocussConfig::Init::ridge ? "ridge" : "ones";
}

/// Overlay a parsed config file onto `cfg`; only present keys override.
inline void apply_config_json(const nlohmann::json& j, SeparationConfig& cfg) {
    if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
    reject_unknown_keys(j, "", {"noise", "spline_order", "knot_target", "curvature", "solver"});

    if (j.contains("noise")) {
        const auto& n = j["noise"];
        reject_unknown_keys(n, "noise", {"length", "n_max", "include_dc"});
        if (n.contains("length")) cfg.noise.length = n["length"].get<Eigen::Index>();
        if (n.contains("n_max")) cfg.noise.n_max = n["n_max"].get<int>();
        if (n.contains("include_dc")) cfg.noise.include_dc = n["include_dc"].get<bool>();
    }
    if (j.contains("spline_order")) cfg.spline_order = j["spline_order"].get<int>();
    if (j.contains("knot_target")) cfg.knot_target = j["knot_target"].get<Eigen::Index>();
    if (j.contains("curvature")) {
        const auto& c = j["curvature"];
        reject_unknown_keys(c, "curvature", {"mode", "zero_tol"});
        if (c.contains("mode")) cfg.curvature.mode = curvature_mode_from(c["mode"].get<std::string>());
        if (c.contains("zero_tol")) cfg.curvature.zero_tol = c["zero_tol"].get<double>();
    }
    if (j.contains("solver")) {
        const auto& s = j["solver"];
        reject_unknown_keys(s, "solver",
                            {"q", "lambda", "epsilon", "max_iter", "prune_floor", "init"});
        if (s.contains("q")) cfg.solver.q = s["q"].get<double>();
        if (s.contains("lambda")) cfg.solver.lambda = s["lambda"].get<double>();
        if (s.contains("epsilon")) cfg.solver.epsilon = s["epsilon"].get<double>();
        if (s.contains("max_iter")) cfg.solver.max_iter = s["max_iter"].get<int>();
        if (s.contains("prune_floor")) cfg.solver.prune_floor = s["prune_floor"].get<double>();
        if (s.contains("init")) cfg.solver.init = init_from(s["init"].get<std::string>());
    }
}

inline void load_config_file(const std::filesystem::path& path, SeparationConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }
    apply_config_json(j, cfg);
}

inline nlohmann::json config_to_json(const SeparationConfig& cfg) {
    return nlohmann::json{
        {"noise",
         {{"length", cfg.noise.length},
          {"n_max", cfg.noise.n_max},
          {"include_dc", cfg.noise.include_dc}}},
        {"spline_order", cfg.spline_order},
        {"knot_target", cfg.knot_target},
        {"curvature",
         {{"mode", to_string(cfg.curvature.mode)}, {"zero_tol", cfg.curvature.zero_tol}}},
        {"solver",
         {{"q", cfg.solver.q},
          {"lambda", cfg.solver.lambda},
          {"epsilon", cfg.solver.epsilon},
          {"max_iter", cfg.solver.max_iter},
          {"prune_floor", cfg.solver.prune_floor},
          {"init", to_string(cfg.solver.init)}}}};
}

inline void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace subsep::cli
