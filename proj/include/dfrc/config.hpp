// SPDX-License-Identifier: Apache-2.0
//
// dfrc-ci: constructive-interference waveform design for dual-functional
// radar-communication transmitters
// Copyright (C) 2026 The dfrc-ci authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DFRC_CONFIG_HPP
#define DFRC_CONFIG_HPP

#include <cmath>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "signal_model.hpp"
#include "solvers.hpp"

namespace dfrc {

/// Malformed or inconsistent configuration; maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kConfigVersion = 1;

/// Named solver entry of an experiment ("SCA", "SQ", "SDR").
struct MethodSpec {
    std::string name;
    SolverConfig config;
};

struct AngleGrid {
    double start_deg = -90.0;
    double stop_deg = 90.0;
    double step_deg = 0.5;

    std::vector<double> degrees() const {
        std::vector<double> out;
        const auto n = static_cast<std::size_t>(std::floor((stop_deg - start_deg) / step_deg + 1e-9)) + 1;
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(start_deg + step_deg * static_cast<double>(i));
        return out;
    }
};

struct ExperimentSpec {
    Scenario scenario = Scenario::reference();
    std::vector<MethodSpec> methods;
    std::vector<double> gamma_sweep_db{12.0, 15.0, 18.0, 21.0, 24.0, 27.0};
    double gamma_db = 15.0;  // operating point for beampattern and solve
    std::size_t n_channel_draws = 50;
    std::size_t n_symbol_draws = 10;
    AngleGrid angle_grid;
    std::size_t noise_trials = 100000;
    double eve_noise_var = 1.0;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    std::size_t threads = 0;  // 0: hardware concurrency
    bool svg = true;

    void validate() const {
        try {
            scenario.validate();
            for (const auto& m : methods)
                m.config.validate();
        } catch (const ContractError& e) {
            throw ConfigError(e.what());
        }
        if (methods.empty())
            throw ConfigError("config: at least one method is required");
        if (gamma_sweep_db.empty())
            throw ConfigError("config: gamma_sweep_db must not be empty");
        if (n_channel_draws == 0 || n_symbol_draws == 0)
            throw ConfigError("config: draw counts must be positive");
        if (!(angle_grid.step_deg > 0.0) || !(angle_grid.stop_deg > angle_grid.start_deg) ||
            angle_grid.start_deg < -90.0 || angle_grid.stop_deg > 90.0)
            throw ConfigError("config: angle grid must be an increasing range inside [-90, 90] deg");
        if (noise_trials == 0)
            throw ConfigError("config: noise_trials must be positive");
        if (!(eve_noise_var > 0.0))
            throw ConfigError("config: eavesdropper noise variance must be positive");
    }
};

namespace detail {

using json = nlohmann::json;

/// Reject unknown keys; a unit-less spelling of a known quantity gets a
/// message naming the expected suffix.
inline void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    if (!obj.is_object())
        throw ConfigError("config: '" + where + "' must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (allowed.count(key))
            continue;
        for (const char* suffix : {"_db", "_dbm", "_deg"}) {
            if (allowed.count(key + suffix))
                throw ConfigError("config: '" + where + "." + key + "' lacks a unit suffix; give it as '" + key +
                                  suffix + "'");
        }
        throw ConfigError("config: unknown key '" + where + "." + key + "'");
    }
}

template <class T>
T get(const json& obj, const std::string& where, const char* key, T fallback) {
    if (!obj.contains(key))
        return fallback;
    if constexpr (std::is_unsigned_v<T> && !std::is_same_v<T, bool>) {
        if (!obj.at(key).is_number_unsigned())
            throw ConfigError("config: '" + where + "." + key + "' must be a non-negative integer");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError("config: '" + where + "." + key + "' has the wrong type");
    }
}

inline double finite(double v, const std::string& name) {
    if (!std::isfinite(v))
        throw ConfigError("config: '" + name + "' must be finite");
    return v;
}

inline std::vector<double> finite(std::vector<double> v, const std::string& name) {
    for (double e : v)
        finite(e, name);
    return v;
}

inline SolverConfig parse_solver(const json& j, SolverConfig base) {
    check_keys(j, "solver",
               {"max_outer_iters", "conv_tol", "linesearch", "randomization_samples", "sq_lambda_scale",
                "outer_rel_tol"});
    base.max_outer_iters = get<std::size_t>(j, "solver", "max_outer_iters", base.max_outer_iters);
    base.conv_tol = finite(get<double>(j, "solver", "conv_tol", base.conv_tol), "solver.conv_tol");
    base.randomization_samples = get<std::size_t>(j, "solver", "randomization_samples", base.randomization_samples);
    base.sq_lambda_scale = finite(get<double>(j, "solver", "sq_lambda_scale", base.sq_lambda_scale),
                                  "solver.sq_lambda_scale");
    base.sqsdr_tol = finite(get<double>(j, "solver", "outer_rel_tol", base.sqsdr_tol), "solver.outer_rel_tol");
    const auto ls = get<std::string>(j, "solver", "linesearch", "armijo");
    if (ls == "armijo")
        base.linesearch = LineSearch::armijo;
    else if (ls == "exact_fixed_phi")
        base.linesearch = LineSearch::exact_fixed_phi;
    else
        throw ConfigError("config: solver.linesearch must be 'armijo' or 'exact_fixed_phi'");
    return base;
}

}  // namespace detail

inline Method parse_method(const std::string& name) {
    if (name == "SCA")
        return Method::SCA;
    if (name == "SQ")
        return Method::SQ;
    if (name == "SDR")
        return Method::SDR;
    throw ConfigError("unknown method '" + name + "' (expected SCA, SQ or SDR)");
}

inline std::vector<MethodSpec> make_methods(const std::vector<std::string>& names, const SolverConfig& base) {
    std::vector<MethodSpec> out;
    for (const auto& n : names) {
        MethodSpec m{n, base};
        m.config.method = parse_method(n);
        out.push_back(m);
    }
    return out;
}

/// Parses the JSON experiment description. Schema (all keys optional except
/// "version"):
///
///   version: 1
///   scenario: n_tx, n_rx, n_users, psk_order, target_angle_deg,
///             target_power_db, clutter_angles_deg[], clutter_powers_db[],
///             radar_noise_var_db, user_noise_var_db, power_budget_dbm
///   experiment: gamma_sweep_db[], gamma_db, n_channel_draws,
///             n_symbol_draws, angle_grid_deg {start, stop, step},
///             noise_trials, eve_noise_var_db, seed, output_dir, threads, svg
///   methods: ["SCA", "SQ", "SDR"]
///   solver: max_outer_iters, conv_tol, linesearch, randomization_samples,
///           sq_lambda_scale, outer_rel_tol
inline ExperimentSpec parse_config(const nlohmann::json& j) {
    using detail::get;
    using detail::json;
    detail::check_keys(j, "<root>", {"version", "scenario", "experiment", "methods", "solver"});
    if (!j.contains("version"))
        throw ConfigError("config: missing 'version'");
    if (get<int>(j, "<root>", "version", 0) != kConfigVersion)
        throw ConfigError("config: unsupported version (expected " + std::to_string(kConfigVersion) + ")");

    ExperimentSpec spec;
    Scenario& sc = spec.scenario;
    if (j.contains("scenario")) {
        const auto& s = j.at("scenario");
        const std::string w = "scenario";
        detail::check_keys(s, w,
                           {"n_tx", "n_rx", "n_users", "psk_order", "target_angle_deg", "target_power_db",
                            "clutter_angles_deg", "clutter_powers_db", "radar_noise_var_db", "user_noise_var_db",
                            "power_budget_dbm"});
        sc.n_tx = get<std::size_t>(s, w, "n_tx", sc.n_tx);
        sc.n_rx = get<std::size_t>(s, w, "n_rx", sc.n_tx);
        const auto k = get<std::size_t>(s, w, "n_users", sc.n_users());
        sc.psk_order = get<int>(s, w, "psk_order", sc.psk_order);
        sc.target_angle = deg_to_rad(detail::finite(get<double>(s, w, "target_angle_deg", 0.0), "target_angle_deg"));
        sc.target_power =
            db_to_linear(detail::finite(get<double>(s, w, "target_power_db", 10.0), "target_power_db"));
        std::vector<double> ca{-50.0, -20.0, 20.0, 50.0};
        ca = detail::finite(get<std::vector<double>>(s, w, "clutter_angles_deg", ca), "clutter_angles_deg");
        std::vector<double> cp(ca.size(), 30.0);
        cp = detail::finite(get<std::vector<double>>(s, w, "clutter_powers_db", cp), "clutter_powers_db");
        sc.clutter_angles.clear();
        sc.clutter_powers.clear();
        for (double a : ca)
            sc.clutter_angles.push_back(deg_to_rad(a));
        for (double p : cp)
            sc.clutter_powers.push_back(db_to_linear(p));
        sc.radar_noise_var =
            db_to_linear(detail::finite(get<double>(s, w, "radar_noise_var_db", 0.0), "radar_noise_var_db"));
        const double un =
            db_to_linear(detail::finite(get<double>(s, w, "user_noise_var_db", 0.0), "user_noise_var_db"));
        sc.user_noise_vars.assign(k, un);
        sc.power_budget =
            db_to_linear(detail::finite(get<double>(s, w, "power_budget_dbm", 30.0), "power_budget_dbm"));
    }

    if (j.contains("experiment")) {
        const auto& e = j.at("experiment");
        const std::string w = "experiment";
        detail::check_keys(e, w,
                           {"gamma_sweep_db", "gamma_db", "n_channel_draws", "n_symbol_draws", "angle_grid_deg",
                            "noise_trials", "eve_noise_var_db", "seed", "output_dir", "threads", "svg"});
        spec.gamma_sweep_db =
            detail::finite(get<std::vector<double>>(e, w, "gamma_sweep_db", spec.gamma_sweep_db), "gamma_sweep_db");
        spec.gamma_db = detail::finite(get<double>(e, w, "gamma_db", spec.gamma_db), "gamma_db");
        spec.n_channel_draws = get<std::size_t>(e, w, "n_channel_draws", spec.n_channel_draws);
        spec.n_symbol_draws = get<std::size_t>(e, w, "n_symbol_draws", spec.n_symbol_draws);
        if (e.contains("angle_grid_deg")) {
            const auto& g = e.at("angle_grid_deg");
            detail::check_keys(g, "experiment.angle_grid_deg", {"start", "stop", "step"});
            const std::string gw = "experiment.angle_grid_deg";
            spec.angle_grid.start_deg = detail::finite(get<double>(g, gw, "start", -90.0), "start");
            spec.angle_grid.stop_deg = detail::finite(get<double>(g, gw, "stop", 90.0), "stop");
            spec.angle_grid.step_deg = detail::finite(get<double>(g, gw, "step", 0.5), "step");
        }
        spec.noise_trials = get<std::size_t>(e, w, "noise_trials", spec.noise_trials);
        spec.eve_noise_var =
            db_to_linear(detail::finite(get<double>(e, w, "eve_noise_var_db", 0.0), "eve_noise_var_db"));
        spec.seed = get<std::uint64_t>(e, w, "seed", spec.seed);
        spec.output_dir = get<std::string>(e, w, "output_dir", spec.output_dir);
        spec.threads = get<std::size_t>(e, w, "threads", spec.threads);
        spec.svg = get<bool>(e, w, "svg", spec.svg);
    }

    SolverConfig base;
    if (j.contains("solver"))
        base = detail::parse_solver(j.at("solver"), base);
    std::vector<std::string> names{"SCA", "SQ", "SDR"};
    if (j.contains("methods"))
        names = get<std::vector<std::string>>(j, "<root>", "methods", names);
    spec.methods = make_methods(names, base);
    spec.validate();
    return spec;
}

inline ExperimentSpec parse_config_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    return parse_config(j);
}

inline ExperimentSpec load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

/// Canonical JSON form of a spec (sorted keys, full precision). Hashing
/// this gives the manifest's config hash.
inline nlohmann::json to_json(const ExperimentSpec& spec) {
    nlohmann::json j;
    j["version"] = kConfigVersion;
    const Scenario& sc = spec.scenario;
    std::vector<double> ca, cp;
    for (double a : sc.clutter_angles)
        ca.push_back(rad_to_deg(a));
    for (double p : sc.clutter_powers)
        cp.push_back(linear_to_db(p));
    j["scenario"] = {{"n_tx", sc.n_tx},
                     {"n_rx", sc.n_rx},
                     {"n_users", sc.n_users()},
                     {"psk_order", sc.psk_order},
                     {"target_angle_deg", rad_to_deg(sc.target_angle)},
                     {"target_power_db", linear_to_db(sc.target_power)},
                     {"clutter_angles_deg", ca},
                     {"clutter_powers_db", cp},
                     {"radar_noise_var_db", linear_to_db(sc.radar_noise_var)},
                     {"user_noise_var_db", sc.user_noise_vars.empty() ? 0.0 : linear_to_db(sc.user_noise_vars[0])},
                     {"power_budget_dbm", linear_to_db(sc.power_budget)}};
    j["experiment"] = {{"gamma_sweep_db", spec.gamma_sweep_db},
                       {"gamma_db", spec.gamma_db},
                       {"n_channel_draws", spec.n_channel_draws},
                       {"n_symbol_draws", spec.n_symbol_draws},
                       {"angle_grid_deg",
                        {{"start", spec.angle_grid.start_deg},
                         {"stop", spec.angle_grid.stop_deg},
                         {"step", spec.angle_grid.step_deg}}},
                       {"noise_trials", spec.noise_trials},
                       {"eve_noise_var_db", linear_to_db(spec.eve_noise_var)},
                       {"seed", spec.seed},
                       {"output_dir", spec.output_dir},
                       {"threads", spec.threads},
                       {"svg", spec.svg}};
    std::vector<std::string> names;
    for (const auto& m : spec.methods)
        names.push_back(m.name);
    j["methods"] = names;
    if (!spec.methods.empty()) {
        const auto& c = spec.methods.front().config;
        j["solver"] = {{"max_outer_iters", c.max_outer_iters},
                       {"conv_tol", c.conv_tol},
                       {"linesearch", c.linesearch == LineSearch::armijo ? "armijo" : "exact_fixed_phi"},
                       {"randomization_samples", c.randomization_samples},
                       {"sq_lambda_scale", c.sq_lambda_scale},
                       {"outer_rel_tol", c.sqsdr_tol}};
    }
    return j;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Hash of the canonical form without the keys that cannot change results
/// (output location, thread count).
inline std::string config_hash(const ExperimentSpec& spec) {
    auto j = to_json(spec);
    j["experiment"].erase("output_dir");
    j["experiment"].erase("threads");
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
    return buf;
}

}  // namespace dfrc

#endif  // DFRC_CONFIG_HPP
