#include "codiag/compactness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "codiag/errors.hpp"

namespace codiag {

std::string trend_name(Trend t) {
    switch (t) {
        case Trend::ToZero: return "to-zero";
        case Trend::BoundedAway: return "bounded-away";
        case Trend::Inconclusive: return "inconclusive";
    }
    return "?";
}

Trend classify_trend(std::span<const double> values) {
    const std::size_t k = values.size();
    if (k < 3) return Trend::Inconclusive;
    const std::size_t third = std::max<std::size_t>(1, k / 3);
    double first_mean = 0.0;
    for (std::size_t i = 0; i < third; ++i) first_mean += values[i];
    first_mean /= static_cast<double>(third);
    double last_mean = 0.0;
    double last_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = k - third; i < k; ++i) {
        last_mean += values[i];
        last_min = std::min(last_min, values[i]);
    }
    last_mean /= static_cast<double>(third);
    if (first_mean == 0.0 && last_mean == 0.0) return Trend::ToZero;
    if (last_mean < 0.25 * first_mean) return Trend::ToZero;
    if (last_min > 0.5 * first_mean) return Trend::BoundedAway;
    return Trend::Inconclusive;
}

std::vector<DeltaRow> delta_ratio(const OrliczFunction& psi,
                                  std::span<const double> h_list,
                                  std::span<const double> rho_values) {
    if (h_list.size() != rho_values.size())
        throw ConfigError("delta ratio: h and rho lists differ in length");
    std::vector<DeltaRow> rows;
    for (std::size_t i = 0; i < h_list.size(); ++i) {
        DeltaRow row;
        row.h = h_list[i];
        row.rho = rho_values[i];
        row.delta = row.rho > 0.0
                        ? psi.inverse(1.0 / row.h) / psi.inverse(1.0 / row.rho)
                        : 0.0;  // rho = 0 convention
        rows.push_back(row);
    }
    // h decreasing along the sweep
    std::sort(rows.begin(), rows.end(),
              [](const DeltaRow& a, const DeltaRow& b) { return a.h > b.h; });
    return rows;
}

Trend delta_trend(std::span<const DeltaRow> rows) {
    std::vector<double> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(r.delta);
    return classify_trend(v);
}

std::vector<PointwiseRow> pointwise_ratios(const SymbolMap& phi,
                                           const OrliczFunction& psi,
                                           std::span<const double> radii,
                                           int angular_grid) {
    std::vector<PointwiseRow> rows;
    for (double r : radii) {
        if (!(r > 0.0 && r < 1.0)) throw ConfigError("pointwise: radii must be in (0,1)");
        PointwiseRow row;
        row.radius = r;
        const double inv_denom = psi.inverse(1.0 / (1.0 - r));
        for (int j = 0; j < angular_grid; ++j) {
            const double theta = 2.0 * std::numbers::pi * j / angular_grid;
            const double m = std::abs(phi.eval(std::polar(r, theta)));
            const double gap = std::max(1.0 - m, 1e-300);
            row.angular = std::max(row.angular, (1.0 - r) / gap);
            row.orlicz = std::max(row.orlicz, psi.inverse(1.0 / gap) / inv_denom);
        }
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(),
              [](const PointwiseRow& a, const PointwiseRow& b) {
                  return a.radius < b.radius;  // toward the boundary
              });
    return rows;
}

SchattenReport schatten_report(std::span<const double> h_list,
                               std::span<const double> rho_values,
                               std::span<const double> p_list,
                               const std::vector<LueckingSums>& sums_per_p) {
    if (h_list.size() != rho_values.size() || p_list.size() != sums_per_p.size())
        throw ConfigError("schatten: mismatched inputs");
    SchattenReport rep;

    // fit rho ~ C h^alpha and rho ~ exp(-c/h) on the positive rows
    std::vector<std::pair<double, double>> pos;  // (h, rho)
    for (std::size_t i = 0; i < h_list.size(); ++i)
        if (rho_values[i] > 0.0) pos.emplace_back(h_list[i], rho_values[i]);
    rep.rho_vanishes = pos.size() < h_list.size();
    auto fit = [](const std::vector<std::pair<double, double>>& xy, double& slope,
                  double& r2) {
        const double n = static_cast<double>(xy.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
        for (auto [x, y] : xy) {
            sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
        }
        const double denom = n * sxx - sx * sx;
        if (std::abs(denom) == 0.0) { slope = 0.0; r2 = 0.0; return; }
        slope = (n * sxy - sx * sy) / denom;
        const double intercept = (sy - slope * sx) / n;
        double ss_res = 0.0;
        for (auto [x, y] : xy) {
            const double e = y - (intercept + slope * x);
            ss_res += e * e;
        }
        const double ss_tot = syy - sy * sy / n;
        r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    };
    if (pos.size() >= 3) {
        std::vector<std::pair<double, double>> loglog, expfit;
        for (auto [h, rho] : pos) {
            loglog.emplace_back(std::log(h), std::log(rho));
            expfit.emplace_back(1.0 / h, std::log(rho));
        }
        fit(loglog, rep.alpha_hat, rep.power_r2);
        double slope = 0.0;
        fit(expfit, slope, rep.exp_r2);
        rep.exp_c = -slope;
    }

    for (std::size_t i = 0; i < p_list.size(); ++i) {
        SchattenVerdict v;
        v.p = p_list[i];
        const bool diverges = sums_per_p[i].diverging;
        if (rep.rho_vanishes && pos.empty()) {
            v.verdict = "in S_p";
            v.reason = "rho vanishes on the whole h-grid (finite-rank-like tail)";
        } else if (rep.exp_r2 >= 0.9 && rep.exp_c > 0.0 &&
                   rep.exp_r2 >= rep.power_r2 && !diverges) {
            v.verdict = "in S_p";
            v.reason = "rho(h) <= e^{-c/h} fit, c = " + format17(rep.exp_c) +
                       "; implies rho <= C h^a for every a > 1";
        } else if (diverges) {
            v.verdict = "not in S_p";
            v.reason = "Luecking partial sums consistent with divergence";
        } else if (rep.power_r2 < 0.9 && rep.exp_r2 < 0.9) {
            v.verdict = "inconclusive";
            v.reason = "no fit reached R^2 = 0.9";
        } else {
            v.verdict = "in S_p";
            v.reason = "partial sums stabilize";
        }
        rep.verdicts.push_back(v);
    }
    return rep;
}

DiagnosticReport run_diagnostic(const SymbolMap& phi, const OrliczFunction& psi,
                                const ReportOptions& opt) {
    DiagnosticReport rep;
    rep.symbol_id = phi.id();
    rep.psi_id = psi.id();

    std::vector<double> h_list = opt.h_list;
    if (h_list.empty())
        for (int k = 0; k < 9; ++k) h_list.push_back(0.25 * std::ldexp(1.0, -k));
    std::vector<double> radii = opt.radii;
    if (radii.empty())
        for (int k = 3; k <= 10; ++k) radii.push_back(1.0 - std::ldexp(1.0, -k));

    const PullbackSample sample = PullbackSample::build(phi, opt.samples, opt.eps);
    std::vector<double> rho_values;
    for (double h : h_list) rho_values.push_back(sample.rho(h));

    rep.delta_table = delta_ratio(psi, h_list, rho_values);
    rep.delta_verdict = delta_trend(rep.delta_table);

    rep.pointwise_table = pointwise_ratios(phi, psi, radii);
    std::vector<double> ang, orl;
    for (const auto& r : rep.pointwise_table) {
        ang.push_back(r.angular);
        orl.push_back(r.orlicz);
    }
    rep.angular_verdict = classify_trend(ang);
    rep.orlicz_verdict = classify_trend(orl);

    rep.p_list = opt.p_list;
    for (double p : opt.p_list)
        rep.sums.push_back(sample.luecking_sums(p, opt.luecking_nmax));
    rep.schatten = schatten_report(h_list, rho_values, opt.p_list, rep.sums);
    return rep;
}

Json DiagnosticReport::to_json() const {
    Json j;
    j["banner"] = "numerical evidence, not proof";
    j["symbol"] = symbol_id;
    j["psi"] = psi_id;
    Json dt = Json::array();
    for (std::size_t i = 0; i < delta_table.size(); ++i) {
        const auto& r = delta_table[i];
        dt.push_back({{"row", i}, {"h", r.h}, {"rho", r.rho}, {"delta", r.delta}});
    }
    j["delta_table"] = dt;
    Json pt = Json::array();
    for (std::size_t i = 0; i < pointwise_table.size(); ++i) {
        const auto& r = pointwise_table[i];
        pt.push_back({{"row", i},
                      {"radius", r.radius},
                      {"angular_ratio", r.angular},
                      {"orlicz_ratio", r.orlicz}});
    }
    j["pointwise_table"] = pt;
    Json sums_json = Json::array();
    for (std::size_t i = 0; i < sums.size(); ++i) {
        Json s;
        s["p"] = p_list[i];
        s["partial"] = sums[i].partial;
        s["diverging"] = sums[i].diverging;
        s["sparse_windows"] = sums[i].sparse_windows;
        sums_json.push_back(s);
    }
    j["luecking_sums"] = sums_json;

    auto cite_all = [&](const Json& table) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < table.size(); ++i) rows.push_back(i);
        return rows;
    };
    Json verdicts;
    verdicts["delta_trend"] = {{"value", trend_name(delta_verdict)},
                               {"rows", cite_all(dt)},
                               {"table", "delta_table"}};
    verdicts["angular_trend"] = {{"value", trend_name(angular_verdict)},
                                 {"rows", cite_all(pt)},
                                 {"table", "pointwise_table"}};
    verdicts["orlicz_trend"] = {{"value", trend_name(orlicz_verdict)},
                                {"rows", cite_all(pt)},
                                {"table", "pointwise_table"}};
    Json sv = Json::array();
    for (const auto& v : schatten.verdicts)
        sv.push_back({{"p", v.p}, {"verdict", v.verdict}, {"reason", v.reason}});
    verdicts["schatten"] = {{"value", sv},
                            {"alpha_hat", schatten.alpha_hat},
                            {"power_r2", schatten.power_r2},
                            {"exp_c", schatten.exp_c},
                            {"exp_r2", schatten.exp_r2},
                            {"rows", cite_all(dt)},
                            {"table", "delta_table"}};
    j["verdicts"] = verdicts;
    return j;
}

CsvTable DiagnosticReport::to_csv() const {
    CsvTable t;
    t.header = {"h", "rho", "delta"};
    for (const auto& r : delta_table)
        t.add_row({format17(r.h), format17(r.rho), format17(r.delta)});
    return t;
}

} // namespace codiag
