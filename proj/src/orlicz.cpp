#include "codiag/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "codiag/errors.hpp"

namespace codiag {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

OrliczFunction OrliczFunction::power(double p) {
    if (!(p >= 1.0)) throw ConfigError("orlicz: power family needs p >= 1");
    OrliczFunction f;
    f.family_ = OrliczFamily::Power;
    f.param_ = p;
    return f;
}

OrliczFunction OrliczFunction::exp_type(double a) {
    if (!(a >= 1.0)) throw ConfigError("orlicz: exp family needs a >= 1");
    OrliczFunction f;
    f.family_ = OrliczFamily::ExpType;
    f.param_ = a;
    return f;
}

OrliczFunction OrliczFunction::table(std::vector<std::pair<double, double>> pts) {
    if (pts.size() < 2) throw ConfigError("orlicz: table needs at least 2 points");
    std::sort(pts.begin(), pts.end());
    OrliczFunction f;
    f.family_ = OrliczFamily::Table;
    f.param_ = 0.0;
    double prev_slope = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto [x, y] = pts[i];
        if (!(x > 0.0 && y > 0.0))
            throw ConfigError("orlicz: table points must be positive");
        if (i > 0) {
            if (x <= pts[i - 1].first || y <= pts[i - 1].second)
                throw ConfigError("orlicz: table must be strictly increasing (flats rejected)");
            const double slope = (std::log(y) - std::log(pts[i - 1].second)) /
                                 (std::log(x) - std::log(pts[i - 1].first));
            // piecewise power pieces x^alpha stay convex iff alpha >= 1 and
            // the exponents do not decrease
            if (slope < 1.0 - 1e-12 || slope < prev_slope - 1e-12)
                throw ConfigError("orlicz: table is not convex");
            prev_slope = slope;
        }
        f.log_x_.push_back(std::log(x));
        f.log_y_.push_back(std::log(y));
    }
    return f;
}

double OrliczFunction::operator()(double x) const {
    if (x < 0.0) throw ConfigError("orlicz: negative argument");
    if (x == 0.0) return 0.0;
    switch (family_) {
        case OrliczFamily::Power:
            return std::pow(x, param_);
        case OrliczFamily::ExpType: {
            const double e = std::pow(x, param_);
            if (e > 700.0) return kInf;
            return std::expm1(e);
        }
        case OrliczFamily::Table: {
            const double lx = std::log(x);
            std::size_t seg;
            if (lx <= log_x_.front()) {
                seg = 0;
            } else if (lx >= log_x_.back()) {
                seg = log_x_.size() - 2;
            } else {
                seg = static_cast<std::size_t>(
                          std::upper_bound(log_x_.begin(), log_x_.end(), lx) -
                          log_x_.begin()) - 1;
            }
            const double t = (lx - log_x_[seg]) / (log_x_[seg + 1] - log_x_[seg]);
            return std::exp(log_y_[seg] + t * (log_y_[seg + 1] - log_y_[seg]));
        }
    }
    return 0.0;
}

double OrliczFunction::inverse(double y) const {
    if (y < 0.0) throw ConfigError("orlicz: inverse of negative value");
    if (y == 0.0) return 0.0;
    if (std::isinf(y)) return kInf;

    // strictly increasing families have exact inverses; the generalized
    // (left-continuous) reading only matters for tables
    if (family_ == OrliczFamily::Power) return std::pow(y, 1.0 / param_);
    if (family_ == OrliczFamily::ExpType)
        return std::pow(std::log1p(y), 1.0 / param_);

    double lo = 0.0, hi = 1.0;
    double f_hi = (*this)(hi);
    int grow = 0;
    while (f_hi < y) {
        lo = hi;
        hi *= 2.0;
        f_hi = (*this)(hi);
        if (++grow > 1100)
            throw NumericalError("orlicz: no bracket for inverse below overflow probe");
    }
    const double tol = 1e-10 * std::max(1.0, y);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = (*this)(mid);
        if (std::abs(fm - y) <= tol && std::isfinite(fm)) return mid;
        if (fm < y)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-16 * std::max(1.0, hi)) break;
    }
    return lo;  // left endpoint of the residual bracket
}

std::string OrliczFunction::id() const {
    switch (family_) {
        case OrliczFamily::Power: return "power:" + format17(param_);
        case OrliczFamily::ExpType: return "exp:" + format17(param_);
        case OrliczFamily::Table: return "table:" + std::to_string(log_x_.size());
    }
    return "?";
}

Json OrliczFunction::to_json() const {
    Json j;
    switch (family_) {
        case OrliczFamily::Power:
            j["family"] = "power";
            j["p"] = param_;
            break;
        case OrliczFamily::ExpType:
            j["family"] = "exp";
            j["a"] = param_;
            break;
        case OrliczFamily::Table: {
            j["family"] = "table";
            Json pts = Json::array();
            for (std::size_t i = 0; i < log_x_.size(); ++i)
                pts.push_back({std::exp(log_x_[i]), std::exp(log_y_[i])});
            j["points"] = pts;
            break;
        }
    }
    return j;
}

OrliczFunction OrliczFunction::from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw ConfigError("orlicz: spec needs a \"family\" key");
    const std::string fam = j.at("family").get<std::string>();
    for (const auto& [key, _] : j.items()) {
        if (key != "family" && key != "p" && key != "a" && key != "points")
            throw ConfigError("orlicz: unknown key \"" + key + "\"");
    }
    if (fam == "power") return power(j.at("p").get<double>());
    if (fam == "exp") return exp_type(j.at("a").get<double>());
    if (fam == "table") {
        std::vector<std::pair<double, double>> pts;
        for (const auto& row : j.at("points"))
            pts.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        return table(std::move(pts));
    }
    throw ConfigError("orlicz: unknown family \"" + fam + "\"");
}

OrliczFunction make_orlicz(const std::string& family, double parameter) {
    if (family == "power") return OrliczFunction::power(parameter);
    if (family == "exp") return OrliczFunction::exp_type(parameter);
    throw ConfigError("orlicz: unknown family \"" + family + "\"");
}

DecayFunction::DecayFunction(std::function<double(double)> raw,
                             DecayProvenance provenance, bool monotone)
    : raw_(std::move(raw)), provenance_(provenance), monotone_(monotone) {}

double DecayFunction::operator()(double t) const {
    const double v = raw_(t);
    if (!(v > 0.0)) return 1e-300;  // codomain (0, 1/2]
    return std::min(0.5, v);
}

DecayFunction delta_from_psi(const OrliczFunction& psi) {
    return DecayFunction(
        [psi](double t) {
            const double y = psi.inverse(1.0 / t);
            return 1.0 / psi(std::sqrt(y));
        },
        DecayProvenance::FromPsi, /*monotone=*/true);
}

} // namespace codiag
