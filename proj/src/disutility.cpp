#include "riskpool/disutility.hpp"

#include <algorithm>
#include <cmath>

#include "riskpool/errors.hpp"

namespace riskpool {

double Disutility::inverse_marginal_slope(double z) const {
    if (!(z > 0.0)) throw DomainError(describe() + ": inverse_marginal_slope needs z > 0");
    return risk_tolerance(inverse_marginal(z)) / z;
}

std::string Disutility::describe() const { return family(); }

// ---------------------------------------------------------------- power ----

PowerDisutility::PowerDisutility(double sigma, double domain_bound)
    : sigma_(sigma), bound_(domain_bound) {
    if (!(sigma_ > 0.0) || !std::isfinite(sigma_)) throw ConfigError("crra: sigma must be positive");
    if (!(bound_ > 0.0)) throw ConfigError("crra: domain bound must be positive");
}

double PowerDisutility::marginal(double s) const {
    if (!(s >= 0.0) || s >= bound_) {
        throw DomainError(describe() + ": marginal outside [0, " + std::to_string(bound_) + ")");
    }
    return std::pow(s, sigma_);
}

double PowerDisutility::inverse_marginal(double z) const {
    if (!(z >= 0.0)) throw DomainError(describe() + ": inverse marginal needs z >= 0");
    return std::pow(z, 1.0 / sigma_);
}

double PowerDisutility::inverse_marginal_slope(double z) const {
    if (!(z > 0.0)) throw DomainError(describe() + ": inverse_marginal_slope needs z > 0");
    return std::pow(z, 1.0 / sigma_ - 1.0) / sigma_;
}

double PowerDisutility::risk_tolerance(double s) const {
    if (!(s >= 0.0)) throw DomainError(describe() + ": risk tolerance needs s >= 0");
    return s / sigma_;
}

bool PowerDisutility::inada_compliant() const {
    // v' vanishes at 0 but diverges only at infinity, so a finite maximal
    // loss leaves the upper Inada condition unmet.
    return !std::isfinite(bound_);
}

std::string PowerDisutility::describe() const {
    return "crra(sigma=" + std::to_string(sigma_) + ")";
}

// ---------------------------------------------------------- exponential ----

ExponentialDisutility::ExponentialDisutility(double gamma, double domain_bound)
    : gamma_(gamma), bound_(domain_bound) {
    if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) throw ConfigError("exp: gamma must be positive");
    if (!(bound_ > 0.0)) throw ConfigError("exp: domain bound must be positive");
}

double ExponentialDisutility::marginal(double s) const {
    if (!(s >= 0.0)) throw DomainError(describe() + ": marginal needs s >= 0");
    return std::expm1(s / gamma_);
}

double ExponentialDisutility::inverse_marginal(double z) const {
    if (!(z >= 0.0)) throw DomainError(describe() + ": inverse marginal needs z >= 0");
    return gamma_ * std::log1p(z);
}

double ExponentialDisutility::inverse_marginal_slope(double z) const {
    if (!(z > 0.0)) throw DomainError(describe() + ": inverse_marginal_slope needs z > 0");
    return gamma_ / (1.0 + z);
}

double ExponentialDisutility::risk_tolerance(double s) const {
    if (!(s >= 0.0)) throw DomainError(describe() + ": risk tolerance needs s >= 0");
    return -gamma_ * std::expm1(-s / gamma_);  // gamma (1 - e^{-s/gamma}), 0 at s = 0
}

bool ExponentialDisutility::inada_compliant() const { return !std::isfinite(bound_); }

std::string ExponentialDisutility::describe() const {
    return "exp(gamma=" + std::to_string(gamma_) + ")";
}

// ------------------------------------------------------------- tabulated ----

TabulatedDisutility::TabulatedDisutility(std::vector<double> loss_grid,
                                         std::vector<double> marginal_values)
    : grid_(std::move(loss_grid)), marginal_(std::move(marginal_values)) {
    if (grid_.size() != marginal_.size() || grid_.size() < 2) {
        throw ConfigError("table: grid and marginal values must align, length >= 2");
    }
    if (grid_.front() != 0.0 || marginal_.front() != 0.0) {
        throw ConfigError("table: the marginal must start at v'(0) = 0");
    }
    for (std::size_t i = 1; i < grid_.size(); ++i) {
        if (!(grid_[i] > grid_[i - 1]) || !(marginal_[i] > marginal_[i - 1])) {
            throw ConfigError("table: grid and marginal values must be strictly increasing");
        }
    }
}

std::size_t TabulatedDisutility::segment(double s) const {
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), s);
    const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
    return std::clamp<std::size_t>(hi, 1, grid_.size() - 1);
}

double TabulatedDisutility::marginal(double s) const {
    if (!(s >= 0.0) || s > grid_.back()) {
        throw DomainError("table: marginal outside [0, " + std::to_string(grid_.back()) + "]");
    }
    const std::size_t j = segment(s);
    const double t = (s - grid_[j - 1]) / (grid_[j] - grid_[j - 1]);
    return marginal_[j - 1] + t * (marginal_[j] - marginal_[j - 1]);
}

double TabulatedDisutility::inverse_marginal(double z) const {
    if (!(z >= 0.0)) throw DomainError("table: inverse marginal needs z >= 0");
    if (z <= 0.0) return 0.0;
    if (z >= marginal_.back()) return grid_.back();  // saturated: bounded image

    // Bracket grown geometrically from [0, 1], then bisection.
    double lo = 0.0, hi = std::min(1.0, grid_.back());
    while (marginal(hi) < z) {
        lo = hi;
        hi = std::min(2.0 * hi, grid_.back());
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (marginal(mid) < z ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double TabulatedDisutility::risk_tolerance(double s) const {
    // v'' is the slope of the interpolated marginal on the enclosing segment.
    const double m = marginal(s);
    const std::size_t j = segment(s);
    const double slope = (marginal_[j] - marginal_[j - 1]) / (grid_[j] - grid_[j - 1]);
    return m / slope;
}

// ---------------------------------------------------------------------------

DisutilityPtr make_crra(double sigma, double domain_bound) {
    return std::make_shared<PowerDisutility>(sigma, domain_bound);
}

DisutilityPtr make_exponential(double gamma, double domain_bound) {
    return std::make_shared<ExponentialDisutility>(gamma, domain_bound);
}

}  // namespace riskpool
