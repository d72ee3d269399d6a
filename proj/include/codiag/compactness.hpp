#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "codiag/carleson.hpp"
#include "codiag/nevanlinna.hpp"
#include "codiag/orlicz.hpp"
#include "codiag/symbols.hpp"
#include "codiag/wos.hpp"

namespace codiag {

enum class Trend { ToZero, BoundedAway, Inconclusive };

std::string trend_name(Trend t);

/// Sweep classification, values listed from large h (or radius far from 1)
/// toward the limit: "to zero" when the last third's mean drops below a
/// quarter of the first third's, "bounded away" when the last third's min
/// stays above half of it. An all-zero sweep counts as "to zero" (the
/// rho = 0 => Delta = 0 convention for strict contractions).
Trend classify_trend(std::span<const double> values);

struct DeltaRow {
    double h = 0.0;
    double rho = 0.0;
    double delta = 0.0;  // Psi^{-1}(1/h) / Psi^{-1}(1/rho); 0 when rho = 0
};

/// The compactness ratio table of eq-style criterion: Delta(h) -> 0 iff
/// C_phi is compact on H^Psi. rho values must come from the same h list.
std::vector<DeltaRow> delta_ratio(const OrliczFunction& psi,
                                  std::span<const double> h_list,
                                  std::span<const double> rho_values);

Trend delta_trend(std::span<const DeltaRow> rows);

struct PointwiseRow {
    double radius = 0.0;
    double angular = 0.0;  // max over angles of (1-|z|)/(1-|phi(z)|)
    double orlicz = 0.0;   // max over angles of Psi^{-1}(1/(1-|phi|))/Psi^{-1}(1/(1-|z|))
};

/// Pointwise compactness ratios along circles |z| = r; the slow Blaschke
/// symbol drives the Orlicz ratio to zero although Delta stays bounded away.
std::vector<PointwiseRow> pointwise_ratios(const SymbolMap& phi,
                                           const OrliczFunction& psi,
                                           std::span<const double> radii,
                                           int angular_grid = 1024);

struct SchattenVerdict {
    double p = 2.0;
    std::string verdict;  // "in S_p", "not in S_p", "inconclusive"
    std::string reason;
};

struct SchattenReport {
    double alpha_hat = 0.0;   // power-law fit exponent of rho ~ h^alpha
    double power_r2 = 0.0;
    double exp_c = 0.0;       // e^{-c/h} fit when available
    double exp_r2 = 0.0;
    bool rho_vanishes = false;  // rho = 0 beyond the resolution floor
    std::vector<SchattenVerdict> verdicts;
};

/// Combines the rho-table fits with the Luecking partial-sum verdicts:
/// rho = 0 tails and e^{-c/h} decay put C_phi in every S_p; a unit power
/// law with diverging sums rules them all out. Refuses a fit-based verdict
/// below R^2 = 0.9.
SchattenReport schatten_report(std::span<const double> h_list,
                               std::span<const double> rho_values,
                               std::span<const double> p_list,
                               const std::vector<LueckingSums>& sums_per_p);

/// Full diagnostic for one symbol/psi pair; every verdict cites the table
/// rows it derives from, and the report carries the "numerical evidence,
/// not proof" banner.
struct DiagnosticReport {
    std::string symbol_id;
    std::string psi_id;
    std::vector<DeltaRow> delta_table;
    Trend delta_verdict = Trend::Inconclusive;
    std::vector<PointwiseRow> pointwise_table;
    Trend angular_verdict = Trend::Inconclusive;
    Trend orlicz_verdict = Trend::Inconclusive;
    std::vector<double> p_list;
    std::vector<LueckingSums> sums;
    SchattenReport schatten;

    Json to_json() const;
    CsvTable to_csv() const;
};

struct ReportOptions {
    std::size_t samples = 1 << 17;
    double eps = 1e-6;
    std::vector<double> h_list;     // default: geometric 0.25 / 2^k, 9 points
    std::vector<double> radii;      // default: 1 - 2^{-k}, k = 3..10
    std::vector<double> p_list{1.0, 2.0, 4.0};
    int luecking_nmax = 8;
};

DiagnosticReport run_diagnostic(const SymbolMap& phi, const OrliczFunction& psi,
                                const ReportOptions& opt = {});

} // namespace codiag
