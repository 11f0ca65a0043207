#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace riskpool {

/// Loss-side preference model: v increasing and strictly convex on
/// [0, domain_bound). Exposes the pieces the Borch machinery needs — the
/// marginal disutility v', its functional inverse I, and the risk tolerance
/// v'/v''. A model is Inada-compliant when v'(0) = 0 and v' diverges at the
/// domain bound, which forces I's image into [0, domain_bound).
class Disutility {
public:
    virtual ~Disutility() = default;

    virtual double marginal(double s) const = 0;          // v'(s)
    virtual double inverse_marginal(double z) const = 0;  // I(z), I(0) = 0
    virtual double risk_tolerance(double s) const = 0;    // v'(s)/v''(s)

    /// d/dz of inverse_marginal for z > 0. The default rides on the identity
    /// z I'(z) = T(I(z)).
    virtual double inverse_marginal_slope(double z) const;

    /// Supremum of v' over the domain when finite; a finite bound means the
    /// inverse marginal saturates and large allocations become infeasible.
    virtual std::optional<double> marginal_bound() const { return std::nullopt; }

    virtual double domain_bound() const = 0;  // the participant's maximal loss
    virtual bool inada_compliant() const = 0;
    virtual std::string family() const = 0;
    virtual std::string describe() const;
};

using DisutilityPtr = std::shared_ptr<const Disutility>;

/// v(s) = s^(1+sigma) / (1+sigma): constant relative risk aversion.
/// v'(s) = s^sigma, I(z) = z^(1/sigma), T(s) = s/sigma.
class PowerDisutility final : public Disutility {
public:
    explicit PowerDisutility(double sigma,
                             double domain_bound = std::numeric_limits<double>::infinity());

    double sigma() const { return sigma_; }

    double marginal(double s) const override;
    double inverse_marginal(double z) const override;
    double inverse_marginal_slope(double z) const override;
    double risk_tolerance(double s) const override;
    double domain_bound() const override { return bound_; }
    bool inada_compliant() const override;
    std::string family() const override { return "crra"; }
    std::string describe() const override;

private:
    double sigma_;
    double bound_;
};

/// v(s) = gamma·exp(s/gamma) − s: v'(s) = exp(s/gamma) − 1,
/// I(z) = gamma·ln(1+z), T(s) = gamma(1 − exp(−s/gamma)) saturating at gamma.
class ExponentialDisutility final : public Disutility {
public:
    explicit ExponentialDisutility(double gamma,
                                   double domain_bound = std::numeric_limits<double>::infinity());

    double gamma() const { return gamma_; }

    double marginal(double s) const override;
    double inverse_marginal(double z) const override;
    double inverse_marginal_slope(double z) const override;
    double risk_tolerance(double s) const override;
    double domain_bound() const override { return bound_; }
    bool inada_compliant() const override;
    std::string family() const override { return "exp"; }
    std::string describe() const override;

private:
    double gamma_;
    double bound_;
};

/// Marginal disutility given as a strictly increasing table on [0, s_max],
/// interpolated linearly and inverted by bracketed bisection. The inverse
/// clamps at s_max, so the model reports a finite marginal_bound().
class TabulatedDisutility final : public Disutility {
public:
    TabulatedDisutility(std::vector<double> loss_grid, std::vector<double> marginal_values);

    double marginal(double s) const override;
    double inverse_marginal(double z) const override;
    double risk_tolerance(double s) const override;
    std::optional<double> marginal_bound() const override { return marginal_.back(); }
    double domain_bound() const override { return grid_.back(); }
    bool inada_compliant() const override { return false; }
    std::string family() const override { return "table"; }

private:
    std::size_t segment(double s) const;

    std::vector<double> grid_;
    std::vector<double> marginal_;
};

DisutilityPtr make_crra(double sigma,
                        double domain_bound = std::numeric_limits<double>::infinity());
DisutilityPtr make_exponential(double gamma,
                               double domain_bound = std::numeric_limits<double>::infinity());

}  // namespace riskpool
