#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace riskpool {

/// Probability mass function on the money lattice {0, δ, 2δ, ..., k_max·δ}.
///
/// Entries are non-negative and sum to one within kNormalizationTol; trailing
/// exact zeros are dropped so max_support() reflects the last reachable point.
/// Factory functions truncate tails below kTailMass and renormalize the
/// retained mass. Instances are immutable and safe to share across threads.
class LatticeDistribution {
public:
    static constexpr double kTailMass = 1e-12;
    static constexpr double kNormalizationTol = 1e-10;
    static constexpr std::size_t kMaxPoints = std::size_t{1} << 24;

    LatticeDistribution(double step, std::vector<double> pmf, std::string name = {});

    static LatticeDistribution point_mass(double step, std::size_t index, std::string name = {});

    double step() const { return step_; }
    const std::vector<double>& pmf() const { return pmf_; }
    const std::string& name() const { return name_; }

    std::size_t points() const { return pmf_.size(); }  // k_max + 1
    double max_support() const { return step_ * static_cast<double>(pmf_.size() - 1); }

    double mean() const;
    double variance() const;
    std::vector<double> cdf() const;

private:
    double step_;
    std::vector<double> pmf_;
    std::string name_;
};

/// Collective-risk model for one participant: a Poisson number of i.i.d.
/// claims, each drawn from `severity`.
struct CompoundPoissonSpec {
    double frequency_lambda = 0.0;
    LatticeDistribution severity;
};

/// Negative binomial claim-size law on {0, 1, 2, ...}:
/// pmf[k] = C(k+r-1, k) q^r (1-q)^k, mean r(1-q)/q.
LatticeDistribution negbinom_pmf(int r, double q,
                                 std::size_t max_points = LatticeDistribution::kMaxPoints,
                                 double step = 1.0, std::string name = {});

/// Law of the compound sum, via the generating-function identity
/// pgf_X = exp(lambda (pgf_C - 1)) evaluated on a power-of-two circular grid.
/// The grid grows until wrap-around mass in the last cell falls below the
/// tail rule, or max_points is exceeded.
LatticeDistribution compound_poisson(const CompoundPoissonSpec& spec,
                                     std::size_t max_points = LatticeDistribution::kMaxPoints);

/// Distribution of the independent sum of two lattice variables. Always runs
/// through the zero-padded FFT path; output support is exact.
LatticeDistribution convolve(const LatticeDistribution& a, const LatticeDistribution& b);

/// n-fold convolution of independent losses (n >= 2), pairwise-reduced.
/// The result is truncated by the tail rule and renormalized.
LatticeDistribution aggregate(std::span<const LatticeDistribution> pool);

enum class GammaDiscretization { MeanPreserving, Lower, Upper };

/// Lattice discretization of Gamma(shape, rate). The default method matches
/// the first local moment on every cell, so the discrete mean stays within
/// one step of shape/rate.
LatticeDistribution discretize_gamma(double shape, double rate, double step,
                                     std::size_t max_points = LatticeDistribution::kMaxPoints,
                                     GammaDiscretization method = GammaDiscretization::MeanPreserving);

}  // namespace riskpool
