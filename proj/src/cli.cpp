#include "codiag/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "codiag/acceptance.hpp"
#include "codiag/compactness.hpp"
#include "codiag/errors.hpp"
#include "codiag/parallel.hpp"

namespace codiag {

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

SymbolMap load_symbol(const RunConfig& cfg) {
    if (cfg.symbol_path.empty()) throw ConfigError("missing --symbol");
    Json j = load_json(cfg.symbol_path);
    // "slow" specs may reference a separate file produced by build-blaschke
    if (j.contains("kind") && j.at("kind") == "slow" && j.contains("spec") &&
        j.at("spec").is_string())
        j["spec"] = load_json(j.at("spec").get<std::string>());
    return SymbolMap::from_json(j);
}

OrliczFunction load_psi(const RunConfig& cfg) {
    if (cfg.psi_path.empty()) throw ConfigError("missing --psi");
    return OrliczFunction::from_json(load_json(cfg.psi_path));
}

struct ArtifactSink {
    const RunConfig& cfg;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    Json manifest_entries = Json::array();

    void write(const std::string& path, const std::string& bytes) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot write " + path);
        out << bytes;
        manifest_entries.push_back({{"path", path},
                                    {"bytes", bytes.size()},
                                    {"fnv1a64", hex64(fnv1a64(bytes))}});
    }

    void finish() {
        Json cfg_json;
        cfg_json["subcommand"] = cfg.subcommand;
        cfg_json["symbol"] = cfg.symbol_path;
        cfg_json["psi"] = cfg.psi_path;
        cfg_json["samples"] = cfg.samples;
        cfg_json["paths"] = cfg.paths;
        cfg_json["seed"] = cfg.seed;
        Json m;
        m["version"] = kVersion;
        m["config_fnv1a64"] = hex64(fnv1a64(cfg_json.dump()));
        m["seed"] = cfg.seed;
        m["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        m["outputs"] = manifest_entries;
        std::ofstream out(cfg.out_path + ".manifest.json", std::ios::binary);
        out << dump_json17(m);
    }
};

Json measure_json(const MeasureResult& m) {
    return {{"estimate", m.estimate}, {"stderr", m.std_err},
            {"paths", m.paths},       {"hits", m.hits},
            {"absorb_tol", m.absorb_tol}};
}

int run_build_blaschke(const RunConfig& cfg, ArtifactSink& sink) {
    const OrliczFunction psi = load_psi(cfg);
    const SlowBlaschkeSpec spec = build_slow_blaschke(delta_from_psi(psi), cfg.depth);
    // pure spec payload: loadable verbatim through {"kind":"slow","spec":...}
    sink.write(cfg.out_path, dump_json17(spec.to_json()));
    return 0;
}

int run_rho(const RunConfig& cfg, ArtifactSink& sink) {
    const SymbolMap phi = load_symbol(cfg);
    if (cfg.h_list.empty()) throw ConfigError("missing --h list");
    for (double h : cfg.h_list)
        if (h < 10.0 / static_cast<double>(cfg.samples))
            throw StatFloorError("rho: h below the resolution floor 10/M = " +
                                 format17(10.0 / static_cast<double>(cfg.samples)));
    const PullbackSample sample = PullbackSample::build(phi, cfg.samples, cfg.eps);
    CsvTable t;
    t.header = {"h", "rho", "binomial_stderr"};
    for (double h : cfg.h_list) {
        const double r = sample.rho(h);
        t.add_row({format17(h), format17(r),
                   format17(std::sqrt(r * (1.0 - r) /
                                      static_cast<double>(sample.size())))});
    }
    sink.write(cfg.out_path, t.dump());
    return 0;
}

int run_luecking(const RunConfig& cfg, ArtifactSink& sink) {
    const SymbolMap phi = load_symbol(cfg);
    const PullbackSample sample = PullbackSample::build(phi, cfg.samples, cfg.eps);
    const LueckingSums sums = sample.luecking_sums(cfg.p, cfg.nmax);
    CsvTable t;
    t.header = {"n", "partial_sum"};
    for (std::size_t i = 0; i < sums.partial.size(); ++i)
        t.add_row({std::to_string(i + 1), format17(sums.partial[i])});
    sink.write(cfg.out_path, t.dump());
    Json v{{"p", cfg.p},
           {"diverging", sums.diverging},
           {"sparse_windows", sums.sparse_windows}};
    sink.write(cfg.out_path + ".verdict.json", dump_json17(v));
    return 0;
}

int run_luecking_a(const RunConfig& cfg, ArtifactSink& sink) {
    const SymbolMap phi = load_symbol(cfg);
    const auto ratio = luecking_integral(phi, cfg.p, cfg.nmax, LueckingForm::RatioLambda);
    const auto proof = luecking_integral(phi, cfg.p, cfg.nmax, LueckingForm::ProofWeight);
    CsvTable t;
    t.header = {"k", "integral_ratio_lambda", "integral_proof_weight"};
    for (std::size_t i = 0; i < ratio.partial.size(); ++i)
        t.add_row({std::to_string(i + 2), format17(ratio.partial[i]),
                   format17(proof.partial[i])});
    sink.write(cfg.out_path, t.dump());
    Json v{{"p", cfg.p},
           {"ratio_diverging", ratio.diverging},
           {"proof_diverging", proof.diverging}};
    sink.write(cfg.out_path + ".verdict.json", dump_json17(v));
    return 0;
}

int run_nevanlinna(const RunConfig& cfg, ArtifactSink& sink) {
    const SymbolMap phi = load_symbol(cfg);
    CsvTable t;
    t.header = {"re", "im", "N"};
    for (int i = 0; i < cfg.grid; ++i) {
        for (int j = 0; j < cfg.grid; ++j) {
            const double x = -0.95 + 1.9 * (i + 0.5) / cfg.grid;
            const double y = -0.95 + 1.9 * (j + 0.5) / cfg.grid;
            if (std::hypot(x, y) >= 0.95) continue;
            const CountingValue v = counting_function(phi, {x, y});
            t.add_row({format17(x), format17(y), format17(v.value)});
        }
    }
    sink.write(cfg.out_path, t.dump());
    return 0;
}

int run_closed_range(const RunConfig& cfg, ArtifactSink& sink) {
    const SymbolMap phi = load_symbol(cfg);
    if (cfg.h_list.empty()) throw ConfigError("missing --h-list");
    const PullbackSample sample = PullbackSample::build(phi, cfg.samples, cfg.eps);
    const ClosedRangeResult r = sample.closed_range(cfg.h_list);
    Json j;
    j["c_est"] = r.c_est;
    j["stat_threshold"] = r.stat_threshold;
    j["verdict"] = r.consistent ? "closed-range-consistent" : "fails";
    j["per_h_min"] = r.per_h_min;
    sink.write(cfg.out_path, dump_json17(j));
    return 0;
}

std::unique_ptr<PlanarDomain> make_domain(const RunConfig& cfg,
                                          const std::vector<double>& deltas) {
    if (cfg.domain == "disk") return std::make_unique<DiskDomain>();
    if (cfg.domain == "regionR")
        return std::make_unique<BarrierDomain>(BarrierDomain::Kind::RegionR, 0,
                                               std::vector<double>{});
    if (cfg.domain == "omega_n")
        return std::make_unique<BarrierDomain>(BarrierDomain::Kind::OmegaN, cfg.n,
                                               deltas);
    if (cfg.domain == "omega")
        return std::make_unique<BarrierDomain>(BarrierDomain::Kind::Omega, 0, deltas);
    throw ConfigError("unknown domain \"" + cfg.domain + "\"");
}

int run_harmonic(const RunConfig& cfg, ArtifactSink& sink) {
    std::vector<double> deltas;
    if (cfg.domain == "omega_n" || cfg.domain == "omega") {
        if (!cfg.barriers_path.empty()) {
            const Json barriers = load_json(cfg.barriers_path);
            for (const auto& row : barriers.at("calibrations"))
                deltas.push_back(row.at("delta").get<double>());
        } else {
            // default widths shrink geometrically; fine for exploration
            for (int j = 0; j < std::max(cfg.n, 4); ++j)
                deltas.push_back(0.02 * std::pow(0.5, j));
        }
    }
    const auto dom = make_domain(cfg, deltas);
    const auto dist = exit_distribution(*dom, cfg.a, cfg.paths, cfg.seed);
    Json j;
    j["domain"] = dom->name();
    j["a"] = {cfg.a.real(), cfg.a.imag()};
    j["paths"] = cfg.paths;
    j["seed"] = cfg.seed;
    Json labels;
    for (const auto& [label, m] : dist) labels[label] = measure_json(m);
    j["exit_distribution"] = labels;
    sink.write(cfg.out_path, dump_json17(j));
    return 0;
}

int run_calibrate(const RunConfig& cfg, ArtifactSink& sink) {
    const bool psi_scheme = cfg.eps_scheme == "psi";
    OrliczFunction psi = OrliczFunction::power(2.0);
    if (psi_scheme && !cfg.psi_path.empty()) psi = load_psi(cfg);
    std::vector<double> priors;
    Json rows = Json::array();
    for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
        double eps = cfg.target_eps;
        if (eps == 0.0)
            eps = psi_scheme ? eps_scheme_psi(n, psi) : eps_scheme_exp(n);
        const Calibration cal =
            calibrate_hole(n, priors, cfg.a, eps, cfg.paths,
                           cfg.seed + static_cast<std::uint64_t>(1000 * n));
        priors.push_back(cal.delta);
        Json trace = Json::array();
        for (auto [d, e] : cal.trace) trace.push_back({{"delta", d}, {"estimate", e}});
        rows.push_back({{"n", n},
                        {"eps", cal.requested_eps},
                        {"delta", cal.delta},
                        {"achieved", cal.achieved},
                        {"stderr", cal.std_err},
                        {"monotone_trace", cal.monotone_trace},
                        {"trace", trace}});
    }
    Json j;
    j["scheme"] = cfg.eps_scheme;
    j["a"] = {cfg.a.real(), cfg.a.imag()};
    j["calibrations"] = rows;
    sink.write(cfg.out_path, dump_json17(j));
    return 0;
}

int run_rho_bound(const RunConfig& cfg, ArtifactSink& sink) {
    if (cfg.barriers_path.empty()) throw ConfigError("missing --barriers");
    if (cfg.h_list.empty()) throw ConfigError("missing --h list");
    const Json barriers = load_json(cfg.barriers_path);
    std::vector<Calibration> cals;
    for (const auto& row : barriers.at("calibrations")) {
        Calibration c;
        c.n = row.at("n").get<int>();
        c.requested_eps = row.at("eps").get<double>();
        c.delta = row.at("delta").get<double>();
        c.achieved = row.at("achieved").get<double>();
        cals.push_back(c);
    }
    OrliczFunction psi = OrliczFunction::power(2.0);
    const bool have_psi = !cfg.psi_path.empty();
    if (have_psi) psi = load_psi(cfg);
    const RhoBoundReport rep =
        rho_bound_report(cals, cfg.h_list, have_psi ? &psi : nullptr);
    Json rows = Json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"h", r.h},
                        {"n", r.n},
                        {"b_n", r.b_n},
                        {"b_next", r.b_next},
                        {"bound", r.bound},
                        {"achieved", r.achieved},
                        {"psi_delta_bound", r.psi_delta_bound}});
    Json j;
    j["rows"] = rows;
    j["fitted_c"] = rep.fitted_c;
    j["fit_r2"] = rep.fit_r2;
    sink.write(cfg.out_path, dump_json17(j));
    return 0;
}

int run_report(const RunConfig& cfg, ArtifactSink& sink) {
    const SymbolMap phi = load_symbol(cfg);
    const OrliczFunction psi = load_psi(cfg);
    ReportOptions opt;
    opt.samples = cfg.samples;
    opt.eps = cfg.eps;
    if (!cfg.h_list.empty()) opt.h_list = cfg.h_list;
    for (double h : opt.h_list)
        if (h < 10.0 / static_cast<double>(opt.samples))
            throw StatFloorError("report: h below the resolution floor 10/M");
    const DiagnosticReport rep = run_diagnostic(phi, psi, opt);
    sink.write(cfg.out_path, dump_json17(rep.to_json()));
    sink.write(cfg.out_path + ".csv", rep.to_csv().dump());
    return 0;
}

int run_selftest(const RunConfig& cfg, ArtifactSink& sink) {
    const auto criteria = run_acceptance(cfg.seed);
    Json rows = Json::array();
    int failures = 0;
    for (const auto& c : criteria) {
        std::cout << "[" << (c.id < 10 ? " " : "") << c.id << "] "
                  << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.detail.empty()) std::cout << "  -- " << c.detail;
        std::cout << "\n";
        rows.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass},
                        {"detail", c.detail}});
        if (!c.pass) ++failures;
    }
    Json j;
    j["seed"] = cfg.seed;
    j["criteria"] = rows;
    j["failures"] = failures;
    sink.write(cfg.out_path, dump_json17(j));
    return failures == 0 ? 0 : 1;
}

} // namespace

std::vector<double> parse_h_grid(const std::string& text) {
    std::vector<double> out;
    if (text.rfind("geometric:", 0) == 0) {
        std::istringstream in(text.substr(10));
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') ||
            !std::getline(in, c, ':'))
            throw ConfigError("h grid: want geometric:start:factor:count");
        const double start = std::stod(a), factor = std::stod(b);
        const int count = std::stoi(c);
        if (!(start > 0.0 && start < 1.0 && factor > 1.0 && count >= 1))
            throw ConfigError("h grid: bad geometric parameters");
        double h = start;
        for (int i = 0; i < count; ++i, h /= factor) out.push_back(h);
        return out;
    }
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw ConfigError("h grid: empty list");
    return out;
}

std::complex<double> parse_complex(const std::string& text) {
    // forms: "0.5", "0.5+3.0i", "-1e-2-2i"
    std::string s = text;
    if (!s.empty() && s.back() == 'i') {
        s.pop_back();
        std::size_t split = s.size();
        for (std::size_t i = s.size(); i-- > 1;) {
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == s.size()) return {0.0, std::stod(s.empty() ? "1" : s)};
        return {std::stod(s.substr(0, split)), std::stod(s.substr(split))};
    }
    return {std::stod(s), 0.0};
}

int run(const RunConfig& config) {
    try {
        if (config.threads > 0) set_worker_count(config.threads);
        ArtifactSink sink{config};
        int rc = 0;
        if (config.subcommand == "build-blaschke") rc = run_build_blaschke(config, sink);
        else if (config.subcommand == "rho") rc = run_rho(config, sink);
        else if (config.subcommand == "luecking") rc = run_luecking(config, sink);
        else if (config.subcommand == "luecking-a") rc = run_luecking_a(config, sink);
        else if (config.subcommand == "nevanlinna") rc = run_nevanlinna(config, sink);
        else if (config.subcommand == "closed-range") rc = run_closed_range(config, sink);
        else if (config.subcommand == "harmonic") rc = run_harmonic(config, sink);
        else if (config.subcommand == "calibrate") rc = run_calibrate(config, sink);
        else if (config.subcommand == "rho-bound") rc = run_rho_bound(config, sink);
        else if (config.subcommand == "report") rc = run_report(config, sink);
        else if (config.subcommand == "selftest") rc = run_selftest(config, sink);
        else throw ConfigError("unknown subcommand \"" + config.subcommand + "\"");
        sink.finish();
        return rc;
    } catch (const StatFloorError& e) {
        std::cerr << "statistical floor: " << e.what() << "\n";
        return 4;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace codiag
