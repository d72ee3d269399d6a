#include <CLI11.hpp>

#include "codiag/cli.hpp"
#include "codiag/errors.hpp"

using codiag::RunConfig;

namespace {

void add_common(CLI::App* sub, RunConfig& cfg) {
    sub->set_help_flag("--help", "print help");  // keep --h free for window sizes
    sub->add_option("--seed", cfg.seed, "run seed (all randomness derives from it)");
    sub->add_option("--out", cfg.out_path, "output artifact path");
    sub->add_option("--threads", cfg.threads,
                    "worker count (0 = hardware); never affects results");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"composition-operator diagnostics on the unit disk"};
    app.require_subcommand(1);
    app.set_version_flag("--version", codiag::kVersion);

    RunConfig cfg;
    std::string h_text, a_text, n_range;

    auto* build = app.add_subcommand(
        "build-blaschke", "construct a slow Blaschke product spec from an Orlicz gauge");
    add_common(build, cfg);
    build->add_option("--psi", cfg.psi_path, "Orlicz spec JSON")->required();
    build->add_option("--depth", cfg.depth, "truncation depth M (>= 8)");

    auto* rho = app.add_subcommand("rho", "Carleson function sweep of a symbol");
    add_common(rho, cfg);
    rho->add_option("--symbol", cfg.symbol_path)->required();
    rho->add_option("--h", h_text, "comma list or geometric:start:factor:count")->required();
    rho->add_option("--samples", cfg.samples, "boundary sample count (power of two)");

    auto* lue = app.add_subcommand("luecking", "dyadic window partial sums");
    add_common(lue, cfg);
    lue->add_option("--symbol", cfg.symbol_path)->required();
    lue->add_option("--p", cfg.p);
    lue->add_option("--nmax", cfg.nmax);
    lue->add_option("--samples", cfg.samples);

    auto* luea = app.add_subcommand("luecking-a", "counting-function annulus integrals");
    add_common(luea, cfg);
    luea->add_option("--symbol", cfg.symbol_path)->required();
    luea->add_option("--p", cfg.p);
    luea->add_option("--depth", cfg.nmax, "annulus depth (k runs to here)");

    auto* nev = app.add_subcommand("nevanlinna", "counting function on a disk grid");
    add_common(nev, cfg);
    nev->add_option("--symbol", cfg.symbol_path)->required();
    nev->add_option("--grid", cfg.grid);

    auto* cr = app.add_subcommand("closed-range", "window mass floor test");
    add_common(cr, cfg);
    cr->add_option("--symbol", cfg.symbol_path)->required();
    cr->add_option("--h-list", h_text)->required();
    cr->add_option("--samples", cfg.samples);

    auto* harm = app.add_subcommand("harmonic", "Brownian exit distribution of a domain");
    add_common(harm, cfg);
    harm->add_option("--domain", cfg.domain, "disk | regionR | omega_n | omega");
    harm->add_option("--n", cfg.n, "barrier index for omega_n");
    harm->add_option("--a", a_text, "start point, e.g. 0.5+3.0i");
    harm->add_option("--paths", cfg.paths);
    harm->add_option("--barriers", cfg.barriers_path, "calibrated barrier JSON");

    auto* cal = app.add_subcommand("calibrate",
                                   "size the barrier holes to an epsilon scheme");
    add_common(cal, cfg);
    cal->add_option("--n", n_range, "index range, e.g. 1..6");
    cal->add_option("--eps-scheme", cfg.eps_scheme, "exp | psi");
    cal->add_option("--eps", cfg.target_eps, "explicit epsilon (overrides the scheme)");
    cal->add_option("--psi", cfg.psi_path, "Orlicz spec for the psi scheme");
    cal->add_option("--paths", cfg.paths);
    cal->add_option("--a", a_text);

    auto* rb = app.add_subcommand("rho-bound", "per-h bounds from a calibrated run");
    add_common(rb, cfg);
    rb->add_option("--barriers", cfg.barriers_path)->required();
    rb->add_option("--h", h_text)->required();
    rb->add_option("--psi", cfg.psi_path, "optional Orlicz spec for the Delta bound");

    auto* rep = app.add_subcommand("report", "full compactness/Schatten diagnostic");
    add_common(rep, cfg);
    rep->add_option("--symbol", cfg.symbol_path)->required();
    rep->add_option("--psi", cfg.psi_path)->required();
    rep->add_option("--h-grid", h_text);
    rep->add_option("--samples", cfg.samples)->default_val(std::size_t{1} << 17);

    auto* self = app.add_subcommand("selftest", "run the acceptance suite");
    add_common(self, cfg);

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.subcommand = app.get_subcommands().front()->get_name();
        if (!h_text.empty()) cfg.h_list = codiag::parse_h_grid(h_text);
        if (!a_text.empty()) cfg.a = codiag::parse_complex(a_text);
        if (!n_range.empty()) {
            const auto dots = n_range.find("..");
            if (dots == std::string::npos) {
                cfg.n_lo = cfg.n_hi = std::stoi(n_range);
            } else {
                cfg.n_lo = std::stoi(n_range.substr(0, dots));
                cfg.n_hi = std::stoi(n_range.substr(dots + 2));
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    return codiag::run(cfg);
}
