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

#ifndef DFRC_HARNESS_HPP
#define DFRC_HARNESS_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ci_constraints.hpp"
#include "config.hpp"
#include "numerics.hpp"
#include "signal_model.hpp"
#include "solvers.hpp"

namespace dfrc {

inline constexpr const char* kVersion = "1.0.0";

// ---- seeding and parallel map ------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of one work unit, a pure function of the master seed and the
/// unit's coordinates.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> coords) {
    std::uint64_t h = splitmix64(master);
    for (auto c : coords)
        h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
    return h;
}

inline std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0)
        return requested;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Evaluates f(0..n-1) on a thread pool; results come back in index order.
/// The exception of the lowest failing index is rethrown.
template <class F>
auto parallel_map(std::size_t n, std::size_t threads, F f) -> std::vector<decltype(f(std::size_t{}))> {
    using R = decltype(f(std::size_t{}));
    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t nt = std::min(resolve_threads(threads), std::max<std::size_t>(n, 1));
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < nt; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }
    std::vector<R> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i])
            std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

// ---- random instances ----------------------------------------------------

/// K channels with i.i.d. CN(0, 1) entries.
inline std::vector<ComplexVector> draw_channels(const Scenario& sc, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    std::vector<ComplexVector> out(sc.n_users(), ComplexVector(sc.n_tx));
    for (auto& h : out)
        for (auto& e : h)
            e = {g(rng), g(rng)};
    return out;
}

inline std::vector<PskSymbol> draw_symbols(const Scenario& sc, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> u(1, sc.psk_order);
    std::vector<PskSymbol> out;
    for (std::size_t k = 0; k < sc.n_users(); ++k)
        out.push_back(make_psk(sc.psk_order, u(rng)));
    return out;
}

struct Instance {
    std::vector<ComplexVector> channels;
    std::vector<PskSymbol> symbols;
};

/// Channel draw c is shared by all its symbol draws s.
inline Instance draw_instance(const Scenario& sc, std::uint64_t master, std::size_t c, std::size_t s) {
    std::mt19937_64 rc(derive_seed(master, {1, c}));
    std::mt19937_64 rs(derive_seed(master, {2, c, s}));
    return {draw_channels(sc, rc), draw_symbols(sc, rs)};
}

inline CiConstraintSet instance_constraints(const Scenario& sc, const Instance& in, double gamma_db) {
    return build_constraints(sc, in.channels, in.symbols, std::vector<double>(sc.n_users(), db_to_linear(gamma_db)));
}

// ---- statistics ----------------------------------------------------------

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& v) {
    MeanStderr r;
    r.n = v.size();
    if (v.empty())
        return r;
    double s = 0.0;
    for (double e : v)
        s += e;
    r.mean = s / static_cast<double>(v.size());
    if (v.size() > 1) {
        double q = 0.0;
        for (double e : v)
            q += (e - r.mean) * (e - r.mean);
        r.stderr_ = std::sqrt(q / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
    }
    return r;
}

// ---- reports -------------------------------------------------------------

struct TradeoffRow {
    std::string method;  // SCA, SQ, SDR-rand, SDR-bound
    double gamma_db = 0.0;
    MeanStderr sinr_db;
    std::size_t n_fail = 0;
};

struct BeampatternSeries {
    std::string method;
    std::vector<double> gain_db;  // peak-normalised, on the angle grid
    double peak_angle_deg = 0.0;
    double pslr_db = 0.0;
    double width_3db_deg = 0.0;
    std::vector<double> null_depth_db;  // at clutter angles, relative to the target-angle level
    std::vector<bool> null_is_local_min;
    std::size_t n_ok = 0;
    std::size_t n_fail = 0;
};

struct SecurityRow {
    double gamma_db = 0.0;
    double cu_ser = 0.0;
    double eve_ser = 0.0;
    std::size_t n_ok = 0;
};

struct ExperimentReport {
    std::vector<TradeoffRow> tradeoff;
    std::vector<double> angles_deg;
    std::vector<BeampatternSeries> beampattern;
    std::vector<SecurityRow> security;
    double runtime_s = 0.0;
    std::size_t n_solver_runs = 0;
    std::size_t n_failures = 0;
};

// ---- experiments ---------------------------------------------------------

namespace detail {

struct RunOutcome {
    bool ok = false;
    double sinr = 0.0;  // linear, last trace entry
    std::optional<double> bound;
    ComplexVector x;
};

inline RunOutcome run_method(const Scenario& sc, const CiConstraintSet& cs, SolverConfig cfg,
                             std::uint64_t unit_seed) {
    cfg.rng_seed = unit_seed;
    RunOutcome o;
    try {
        const auto r = solve(sc, cs, cfg);
        if (r.status == SolverStatus::infeasible)
            return o;
        o.ok = true;
        o.sinr = r.trace.back().sinr;
        o.bound = r.upper_bound;
        o.x = r.x_opt;
    } catch (const NumericError&) {
        o.ok = false;
    }
    return o;
}

inline std::size_t n_units(const ExperimentSpec& spec) { return spec.n_channel_draws * spec.n_symbol_draws; }

}  // namespace detail

/// Mean radar SINR (dB) per method and Gamma. SDR yields two series: the
/// randomised waveform and the relaxation bound.
inline ExperimentReport run_tradeoff(const ExperimentSpec& spec) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const Scenario& sc = spec.scenario;
    const std::size_t units = detail::n_units(spec);
    const std::size_t nm = spec.methods.size();
    const std::size_t total = spec.gamma_sweep_db.size() * units;

    auto outcomes = parallel_map(total, spec.threads, [&](std::size_t idx) {
        const std::size_t g = idx / units;
        const std::size_t u = idx % units;
        const std::size_t c = u / spec.n_symbol_draws;
        const std::size_t s = u % spec.n_symbol_draws;
        const auto inst = draw_instance(sc, spec.seed, c, s);
        const auto cs = instance_constraints(sc, inst, spec.gamma_sweep_db[g]);
        std::vector<detail::RunOutcome> per;
        for (const auto& m : spec.methods)
            per.push_back(detail::run_method(sc, cs, m.config, derive_seed(spec.seed, {3, c, s, g})));
        return per;
    });

    ExperimentReport rep;
    for (std::size_t mi = 0; mi < nm; ++mi) {
        const bool is_sdr = spec.methods[mi].config.method == Method::SDR;
        for (int series = 0; series < (is_sdr ? 2 : 1); ++series) {
            for (std::size_t g = 0; g < spec.gamma_sweep_db.size(); ++g) {
                std::vector<double> vals;
                std::size_t fail = 0;
                for (std::size_t u = 0; u < units; ++u) {
                    const auto& o = outcomes[g * units + u][mi];
                    if (!o.ok) {
                        ++fail;
                        continue;
                    }
                    vals.push_back(linear_to_db(series == 0 ? o.sinr : *o.bound));
                }
                TradeoffRow row;
                row.method = is_sdr ? (series == 0 ? "SDR-rand" : "SDR-bound") : spec.methods[mi].name;
                row.gamma_db = spec.gamma_sweep_db[g];
                row.sinr_db = mean_stderr(vals);
                row.n_fail = fail;
                rep.tradeoff.push_back(row);
            }
        }
    }
    rep.n_solver_runs = total * nm;
    for (const auto& per : outcomes)
        for (const auto& o : per)
            rep.n_failures += o.ok ? 0 : 1;
    rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Pattern summary on an angle grid (linear powers, any scale).
struct PatternMetrics {
    double peak_angle_deg = 0.0;
    double pslr_db = 0.0;
    double width_3db_deg = 0.0;
};

inline PatternMetrics pattern_metrics(const std::vector<double>& angles_deg, const std::vector<double>& power) {
    if (angles_deg.size() != power.size() || power.size() < 3)
        throw ContractError("pattern_metrics: need matching grids of at least 3 points");
    PatternMetrics m;
    const std::size_t n = power.size();
    const std::size_t pk = static_cast<std::size_t>(std::max_element(power.begin(), power.end()) - power.begin());
    m.peak_angle_deg = angles_deg[pk];
    const double half = 0.5 * power[pk];
    auto crossing = [&](int dir) {
        std::size_t i = pk;
        while (true) {
            const long j = static_cast<long>(i) + dir;
            if (j < 0 || j >= static_cast<long>(n))
                return angles_deg[i];
            const auto jj = static_cast<std::size_t>(j);
            if (power[jj] < half) {
                const double t = (power[i] - half) / (power[i] - power[jj]);
                return angles_deg[i] + t * (angles_deg[jj] - angles_deg[i]);
            }
            i = jj;
        }
    };
    m.width_3db_deg = crossing(+1) - crossing(-1);
    // main lobe ends at the first local minimum on each side
    std::size_t lo = pk, hi = pk;
    while (lo > 0 && power[lo - 1] <= power[lo])
        --lo;
    while (hi + 1 < n && power[hi + 1] <= power[hi])
        ++hi;
    double side = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (i < lo || i > hi)
            side = std::max(side, power[i]);
    m.pslr_db = side > 0.0 ? linear_to_db(power[pk] / side) : std::numeric_limits<double>::infinity();
    return m;
}

/// Transmit beampattern averaged over draws at Gamma = spec.gamma_db.
inline ExperimentReport run_beampattern(const ExperimentSpec& spec) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const Scenario& sc = spec.scenario;
    const std::size_t units = detail::n_units(spec);
    const auto grid_deg = spec.angle_grid.degrees();
    std::vector<double> grid;
    for (double a : grid_deg)
        grid.push_back(deg_to_rad(a));

    auto outcomes = parallel_map(units, spec.threads, [&](std::size_t u) {
        const std::size_t c = u / spec.n_symbol_draws;
        const std::size_t s = u % spec.n_symbol_draws;
        const auto inst = draw_instance(sc, spec.seed, c, s);
        const auto cs = instance_constraints(sc, inst, spec.gamma_db);
        std::vector<detail::RunOutcome> per;
        for (const auto& m : spec.methods)
            per.push_back(detail::run_method(sc, cs, m.config, derive_seed(spec.seed, {4, c, s})));
        return per;
    });

    ExperimentReport rep;
    rep.angles_deg = grid_deg;
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
        BeampatternSeries ser;
        ser.method = spec.methods[mi].name;
        std::vector<ComplexVector> xs;
        for (const auto& per : outcomes) {
            if (per[mi].ok)
                xs.push_back(per[mi].x);
            else
                ++ser.n_fail;
        }
        ser.n_ok = xs.size();
        rep.n_failures += ser.n_fail;
        if (xs.empty()) {
            rep.beampattern.push_back(ser);
            continue;
        }
        const auto pw = transmit_beampattern(sc, xs, grid);
        const double peak = *std::max_element(pw.begin(), pw.end());
        for (double p : pw)
            ser.gain_db.push_back(p == peak ? 0.0 : linear_to_db(p / peak));
        const auto pm = pattern_metrics(grid_deg, pw);
        ser.peak_angle_deg = pm.peak_angle_deg;
        ser.pslr_db = pm.pslr_db;
        ser.width_3db_deg = pm.width_3db_deg;
        const double target_level = transmit_beampattern(sc, xs, {sc.target_angle})[0];
        const double probe = deg_to_rad(spec.angle_grid.step_deg);
        for (double ca : sc.clutter_angles) {
            const auto v = transmit_beampattern(sc, xs, {ca - probe, ca, ca + probe});
            ser.null_depth_db.push_back(linear_to_db(v[1] / target_level));
            ser.null_is_local_min.push_back(v[1] <= v[0] && v[1] <= v[2]);
        }
        rep.beampattern.push_back(ser);
    }
    rep.n_solver_runs = units * spec.methods.size();
    rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Symbol error rates of the users and of an eavesdropper at the target
/// angle observing a_t^T(theta_0) x + n, for the first configured method.
inline ExperimentReport run_security_metrics(const ExperimentSpec& spec) {
    spec.validate();
    const auto t0 = std::chrono::steady_clock::now();
    const Scenario& sc = spec.scenario;
    const std::size_t units = detail::n_units(spec);
    const std::size_t trials = (spec.noise_trials + units - 1) / units;
    const auto at0 = steering_tx(sc, sc.target_angle);
    const auto& method = spec.methods.front();

    struct Counts {
        bool ok = false;
        std::size_t cu_err = 0, eve_err = 0, n = 0;
    };
    const std::size_t total = spec.gamma_sweep_db.size() * units;
    auto counts = parallel_map(total, spec.threads, [&](std::size_t idx) {
        const std::size_t g = idx / units;
        const std::size_t u = idx % units;
        const std::size_t c = u / spec.n_symbol_draws;
        const std::size_t s = u % spec.n_symbol_draws;
        const auto inst = draw_instance(sc, spec.seed, c, s);
        const auto cs = instance_constraints(sc, inst, spec.gamma_sweep_db[g]);
        Counts cnt;
        const auto o = detail::run_method(sc, cs, method.config, derive_seed(spec.seed, {5, c, s, g}));
        if (!o.ok)
            return cnt;
        cnt.ok = true;
        std::mt19937_64 rng(derive_seed(spec.seed, {6, c, s, g}));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<cplx> clean;
        for (const auto& h : inst.channels)
            clean.push_back(dot(h, o.x));
        const cplx eve_clean = transpose_dot(at0, o.x);
        const double eve_sd = std::sqrt(0.5 * spec.eve_noise_var);
        for (std::size_t t = 0; t < trials; ++t) {
            const cplx ye = eve_clean + cplx{eve_sd * gauss(rng), eve_sd * gauss(rng)};
            const auto de = decode_psk(ye, sc.psk_order);
            for (std::size_t k = 0; k < sc.n_users(); ++k) {
                const double sd = std::sqrt(0.5 * sc.user_noise_vars[k]);
                const cplx y = clean[k] + cplx{sd * gauss(rng), sd * gauss(rng)};
                const auto d = decode_psk(y, sc.psk_order);
                cnt.cu_err += (d && *d == inst.symbols[k]) ? 0 : 1;
                cnt.eve_err += (de && *de == inst.symbols[k]) ? 0 : 1;
                ++cnt.n;
            }
        }
        return cnt;
    });

    ExperimentReport rep;
    for (std::size_t g = 0; g < spec.gamma_sweep_db.size(); ++g) {
        SecurityRow row;
        row.gamma_db = spec.gamma_sweep_db[g];
        std::size_t cu = 0, eve = 0, n = 0;
        for (std::size_t u = 0; u < units; ++u) {
            const auto& c = counts[g * units + u];
            if (!c.ok) {
                ++rep.n_failures;
                continue;
            }
            ++row.n_ok;
            cu += c.cu_err;
            eve += c.eve_err;
            n += c.n;
        }
        if (n > 0) {
            row.cu_ser = static_cast<double>(cu) / static_cast<double>(n);
            row.eve_ser = static_cast<double>(eve) / static_cast<double>(n);
        }
        rep.security.push_back(row);
    }
    rep.n_solver_runs = total;
    rep.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---- output --------------------------------------------------------------

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

/// Rows from zero successful draws are omitted.
inline std::string tradeoff_csv(const ExperimentReport& rep) {
    std::string s = "method,gamma_db,mean_sinr_db,stderr,n_ok\n";
    for (const auto& r : rep.tradeoff) {
        if (r.sinr_db.n == 0)
            continue;
        s += r.method + "," + fmt(r.gamma_db) + "," + fmt(r.sinr_db.mean) + "," + fmt(r.sinr_db.stderr_) + "," +
             std::to_string(r.sinr_db.n) + "\n";
    }
    return s;
}

inline std::string beampattern_csv(const ExperimentReport& rep) {
    std::string s = "angle_deg,method,gain_db\n";
    for (const auto& ser : rep.beampattern) {
        if (ser.gain_db.empty())
            continue;
        for (std::size_t i = 0; i < rep.angles_deg.size(); ++i)
            s += fmt(rep.angles_deg[i]) + "," + ser.method + "," + fmt(ser.gain_db[i]) + "\n";
    }
    return s;
}

inline std::string security_csv(const ExperimentReport& rep) {
    std::string s = "gamma_db,cu_ser,eve_ser\n";
    for (const auto& r : rep.security) {
        if (r.n_ok == 0)
            continue;
        s += fmt(r.gamma_db) + "," + fmt(r.cu_ser) + "," + fmt(r.eve_ser) + "\n";
    }
    return s;
}

struct SvgSeries {
    std::string name;
    std::vector<double> x, y;
};

/// Minimal line chart.
inline std::string svg_line_chart(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                                  const std::vector<SvgSeries>& series) {
    constexpr double W = 640, H = 420, L = 70, R = 150, T = 40, B = 50;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.y[i]))
                continue;
            x0 = std::min(x0, s.x[i]);
            x1 = std::max(x1, s.x[i]);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    if (!(x1 > x0)) {
        x0 -= 1;
        x1 += 1;
    }
    if (!(y1 > y0)) {
        y0 -= 1;
        y1 += 1;
    }
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(W) + "\" height=\"" + fmt(H) +
                    "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + fmt(W / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + title + "</text>\n";
    s += "<rect x=\"" + fmt(L) + "\" y=\"" + fmt(T) + "\" width=\"" + fmt(W - L - R) + "\" height=\"" +
         fmt(H - T - B) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0;
        const double yv = y0 + (y1 - y0) * k / 4.0;
        s += "<text x=\"" + fmt(px(xv)) + "\" y=\"" + fmt(H - B + 16) + "\" text-anchor=\"middle\">" + fmt(xv) +
             "</text>\n";
        s += "<text x=\"" + fmt(L - 6) + "\" y=\"" + fmt(py(yv) + 4) + "\" text-anchor=\"end\">" + fmt(yv) +
             "</text>\n";
    }
    s += "<text x=\"" + fmt((L + W - R) / 2) + "\" y=\"" + fmt(H - 12) + "\" text-anchor=\"middle\">" + xlabel +
         "</text>\n";
    s += "<text x=\"16\" y=\"" + fmt((T + H - B) / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fmt((T + H - B) / 2) + ")\">" + ylabel + "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& ser = series[k];
        const char* col = colors[k % 6];
        std::string pts;
        for (std::size_t i = 0; i < ser.x.size(); ++i)
            if (std::isfinite(ser.y[i]))
                pts += fmt(px(ser.x[i])) + "," + fmt(py(ser.y[i])) + " ";
        s += "<polyline fill=\"none\" stroke=\"" + std::string(col) + "\" stroke-width=\"1.5\" points=\"" + pts +
             "\"/>\n";
        const double ly = T + 14 + 18.0 * static_cast<double>(k);
        s += "<line x1=\"" + fmt(W - R + 10) + "\" y1=\"" + fmt(ly - 4) + "\" x2=\"" + fmt(W - R + 30) + "\" y2=\"" +
             fmt(ly - 4) + "\" stroke=\"" + col + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + fmt(W - R + 36) + "\" y=\"" + fmt(ly) + "\">" + ser.name + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

inline std::string tradeoff_svg(const ExperimentReport& rep) {
    std::vector<SvgSeries> ss;
    for (const auto& r : rep.tradeoff) {
        if (r.sinr_db.n == 0)
            continue;
        auto it = std::find_if(ss.begin(), ss.end(), [&](const SvgSeries& s) { return s.name == r.method; });
        if (it == ss.end()) {
            ss.push_back({r.method, {}, {}});
            it = ss.end() - 1;
        }
        it->x.push_back(r.gamma_db);
        it->y.push_back(r.sinr_db.mean);
    }
    return svg_line_chart("Radar SINR vs user SNR threshold", "Gamma (dB)", "mean SINR (dB)", ss);
}

inline std::string beampattern_svg(const ExperimentReport& rep) {
    std::vector<SvgSeries> ss;
    for (const auto& ser : rep.beampattern)
        if (!ser.gain_db.empty())
            ss.push_back({ser.method, rep.angles_deg, ser.gain_db});
    return svg_line_chart("Transmit beampattern", "angle (deg)", "gain (dB)", ss);
}

inline nlohmann::json manifest(const ExperimentSpec& spec, const std::string& subcommand,
                               const ExperimentReport* rep, const std::vector<std::string>& files) {
    nlohmann::json j;
    j["tool"] = "dfrc";
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["seed"] = spec.seed;
    j["config_hash"] = config_hash(spec);
    j["config"] = to_json(spec);
#ifdef __VERSION__
    j["compiler"] = __VERSION__;
#endif
    j["files"] = files;
    if (rep) {
        j["solver_runs"] = rep->n_solver_runs;
        j["failures"] = rep->n_failures;
        j["runtime_s"] = rep->runtime_s;
    }
    return j;
}

}  // namespace dfrc

#endif  // DFRC_HARNESS_HPP
