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

#ifndef DFRC_CLI_HPP
#define DFRC_CLI_HPP

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "harness.hpp"

namespace dfrc {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitInfeasible = 3, kExitNumeric = 4 };

struct CliOverrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> method;
    std::optional<std::size_t> n_tx;
    std::optional<std::size_t> threads;
};

namespace detail {

inline ExperimentSpec resolve_spec(const CliOverrides& o) {
    ExperimentSpec spec;
    if (!o.config.empty()) {
        spec = load_config(o.config);
    } else {
        spec.methods = make_methods({"SCA", "SQ", "SDR"}, SolverConfig{});
    }
    if (o.seed)
        spec.seed = *o.seed;
    if (o.out)
        spec.output_dir = *o.out;
    if (o.n_tx) {
        spec.scenario.n_tx = *o.n_tx;
        spec.scenario.n_rx = *o.n_tx;
    }
    if (o.threads)
        spec.threads = *o.threads;
    if (o.method) {
        const SolverConfig base = spec.methods.empty() ? SolverConfig{} : spec.methods.front().config;
        spec.methods = make_methods({*o.method}, base);
    }
    spec.validate();
    return spec;
}

inline void write_outputs(const ExperimentSpec& spec, const std::string& sub, const ExperimentReport* rep,
                          const std::vector<std::pair<std::string, std::string>>& files) {
    const std::filesystem::path dir(spec.output_dir);
    std::vector<std::string> names;
    for (const auto& [name, text] : files) {
        write_file(dir / name, text);
        names.push_back(name);
    }
    write_file(dir / "manifest.json", manifest(spec, sub, rep, names).dump(2) + "\n");
}

inline int run_solve(const ExperimentSpec& spec) {
    const Scenario& sc = spec.scenario;
    const auto inst = draw_instance(sc, spec.seed, 0, 0);
    const auto cs = instance_constraints(sc, inst, spec.gamma_db);
    auto cfg = spec.methods.front().config;
    cfg.rng_seed = derive_seed(spec.seed, {7});
    const auto r = solve(sc, cs, cfg);
    if (r.status == SolverStatus::infeasible) {
        std::cerr << "infeasible: user " << r.infeasible_user << " cannot reach a non-negative CI margin (best "
                  << r.infeasible_margin << ")\n";
        nlohmann::json j{{"status", "infeasible"},
                         {"user", r.infeasible_user},
                         {"best_margin", r.infeasible_margin}};
        write_outputs(spec, "solve", nullptr, {{"solve.json", j.dump(2) + "\n"}});
        return kExitInfeasible;
    }
    const auto rep = check_feasible(cs, r.x_opt);
    std::string csv = "antenna,x_re,x_im,w_re,w_im\n";
    for (std::size_t i = 0; i < sc.n_tx; ++i)
        csv += std::to_string(i) + "," + fmt(r.x_opt[i].real()) + "," + fmt(r.x_opt[i].imag()) + "," +
               (i < r.w_opt.size() ? fmt(r.w_opt[i].real()) + "," + fmt(r.w_opt[i].imag()) : std::string(",")) +
               "\n";
    for (std::size_t i = sc.n_tx; i < r.w_opt.size(); ++i)
        csv += std::to_string(i) + ",,," + fmt(r.w_opt[i].real()) + "," + fmt(r.w_opt[i].imag()) + "\n";
    std::string mcsv = "user,margin,snr_db,gamma_db\n";
    std::vector<double> snr_db;
    for (std::size_t k = 0; k < sc.n_users(); ++k) {
        snr_db.push_back(linear_to_db(snr_user(sc, k, inst.channels[k], r.x_opt)));
        mcsv += std::to_string(k) + "," + fmt(rep.per_user_margins[k]) + "," + fmt(snr_db.back()) + "," +
                fmt(spec.gamma_db) + "\n";
    }
    nlohmann::json j;
    j["method"] = spec.methods.front().name;
    j["status"] = std::string(to_string(r.status));
    j["iterations"] = r.trace.back().iteration;
    j["sinr_linear"] = r.trace.back().sinr;
    j["sinr_db"] = linear_to_db(r.trace.back().sinr);
    j["sinr_mvdr_linear"] = r.sinr_rad;
    j["power"] = norm_sq(r.x_opt);
    j["power_margin"] = rep.power_margin;
    j["margins"] = rep.per_user_margins;
    j["snr_db"] = snr_db;
    if (r.upper_bound)
        j["upper_bound_db"] = linear_to_db(*r.upper_bound);
    if (r.relaxation_objective)
        j["relaxation_objective_db"] = linear_to_db(*r.relaxation_objective);
    std::string tcsv = "iteration,objective,sinr,step,gap,min_margin\n";
    for (const auto& t : r.trace)
        tcsv += std::to_string(t.iteration) + "," + fmt(t.objective) + "," + fmt(t.sinr) + "," + fmt(t.step) + "," +
                fmt(t.gap) + "," + fmt(t.min_margin) + "\n";
    write_outputs(spec, "solve", nullptr,
                  {{"solve.csv", csv}, {"margins.csv", mcsv}, {"trace.csv", tcsv}, {"solve.json", j.dump(2) + "\n"}});
    std::cout << j["method"].get<std::string>() << " " << j["status"].get<std::string>() << "  SINR "
              << fmt(j["sinr_db"].get<double>()) << " dB  min margin " << fmt(rep.min_margin()) << "\n";
    return kExitOk;
}

}  // namespace detail

/// Entry point of the `dfrc` tool; returns the process exit code.
inline int cli_main(int argc, char** argv) {
    CLI::App app{"Constructive-interference DFRC waveform design experiments", "dfrc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    CliOverrides o;
    auto add_common = [&](CLI::App* sub, bool outputs) {
        sub->add_option("-c,--config", o.config, "JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "master seed");
        sub->add_option("--method", o.method, "solver: SCA, SQ or SDR");
        sub->add_option("--n-tx", o.n_tx, "transmit (and receive) antenna count");
        if (outputs) {
            sub->add_option("-o,--out", o.out, "output directory");
            sub->add_option("--threads", o.threads, "worker threads (0: all cores)");
        }
    };
    auto* tradeoff = app.add_subcommand("tradeoff", "radar SINR versus user SNR threshold");
    auto* beam = app.add_subcommand("beampattern", "average transmit beampattern");
    auto* security = app.add_subcommand("security", "user and eavesdropper symbol error rates");
    auto* solve_cmd = app.add_subcommand("solve", "solve one random instance");
    auto* validate = app.add_subcommand("validate", "check a configuration file");
    for (auto* s : {tradeoff, beam, security, solve_cmd})
        add_common(s, true);
    add_common(validate, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        const auto spec = detail::resolve_spec(o);
        if (validate->parsed()) {
            std::cout << "config OK  hash " << config_hash(spec) << "\n";
            return kExitOk;
        }
        if (solve_cmd->parsed())
            return detail::run_solve(spec);
        if (tradeoff->parsed()) {
            const auto rep = run_tradeoff(spec);
            std::vector<std::pair<std::string, std::string>> files{{"tradeoff.csv", tradeoff_csv(rep)}};
            if (spec.svg)
                files.emplace_back("tradeoff.svg", tradeoff_svg(rep));
            detail::write_outputs(spec, "tradeoff", &rep, files);
            std::cout << tradeoff_csv(rep);
        } else if (beam->parsed()) {
            const auto rep = run_beampattern(spec);
            nlohmann::json m = nlohmann::json::array();
            for (const auto& s : rep.beampattern) {
                nlohmann::json e{{"method", s.method},
                                 {"n_ok", s.n_ok},
                                 {"peak_angle_deg", s.peak_angle_deg},
                                 {"pslr_db", s.pslr_db},
                                 {"width_3db_deg", s.width_3db_deg},
                                 {"null_depth_db", s.null_depth_db}};
                m.push_back(e);
                std::cout << s.method << ": peak " << fmt(s.peak_angle_deg) << " deg, PSLR " << fmt(s.pslr_db)
                          << " dB, -3 dB width " << fmt(s.width_3db_deg) << " deg\n";
            }
            std::vector<std::pair<std::string, std::string>> files{{"beampattern.csv", beampattern_csv(rep)},
                                                                   {"beampattern_metrics.json", m.dump(2) + "\n"}};
            if (spec.svg)
                files.emplace_back("beampattern.svg", beampattern_svg(rep));
            detail::write_outputs(spec, "beampattern", &rep, files);
        } else if (security->parsed()) {
            const auto rep = run_security_metrics(spec);
            detail::write_outputs(spec, "security", &rep, {{"security.csv", security_csv(rep)}});
            std::cout << security_csv(rep);
        }
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << " (residual " << e.residual() << ")\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace dfrc

#endif  // DFRC_CLI_HPP
