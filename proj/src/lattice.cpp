#include "riskpool/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "riskpool/errors.hpp"
#include "riskpool/fft.hpp"
#include "riskpool/numeric.hpp"

namespace riskpool {

namespace {

// Divide by the retained mass so the pmf sums to one again.
void renormalize(std::vector<double>& pmf) {
    const double total = compensated_total(pmf);
    if (!(total > 0.0)) throw DomainError("lattice: cannot normalize zero-mass pmf");
    for (double& p : pmf) p /= total;
}

// FFT output carries O(eps) noise; clip it rather than reject the result.
void clip_fft_noise(std::vector<double>& pmf) {
    for (double& p : pmf) {
        if (p < 0.0) {
            if (p < -1e-10) throw DomainError("lattice: convolution produced a significantly negative mass");
            p = 0.0;
        }
    }
}

// Index of the last entry to keep so that the dropped suffix mass stays
// below the tail rule. Returns pmf.size()-1 if nothing can be dropped.
std::size_t tail_cut(const std::vector<double>& pmf, double tail_mass) {
    CompensatedSum suffix;
    std::size_t cut = pmf.size() - 1;
    for (std::size_t k = pmf.size(); k-- > 1;) {
        suffix.add(pmf[k]);
        if (suffix.value() >= tail_mass) break;
        cut = k - 1;
    }
    return cut;
}

void truncate_and_renormalize(std::vector<double>& pmf, double tail_mass) {
    pmf.resize(tail_cut(pmf, tail_mass) + 1);
    renormalize(pmf);
}

}  // namespace

LatticeDistribution::LatticeDistribution(double step, std::vector<double> pmf, std::string name)
    : step_(step), pmf_(std::move(pmf)), name_(std::move(name)) {
    if (!(step_ > 0.0) || !std::isfinite(step_)) {
        throw ConfigError("lattice '" + name_ + "': step must be positive and finite");
    }
    if (pmf_.empty()) throw ConfigError("lattice '" + name_ + "': empty pmf");
    for (double p : pmf_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw ConfigError("lattice '" + name_ + "': pmf entries must be non-negative and finite");
        }
    }
    const double total = compensated_total(pmf_);
    if (std::abs(total - 1.0) > kNormalizationTol) {
        throw ConfigError("lattice '" + name_ + "': pmf sums to " + std::to_string(total) +
                          ", expected 1 within " + std::to_string(kNormalizationTol));
    }
    while (pmf_.size() > 1 && pmf_.back() == 0.0) pmf_.pop_back();
}

LatticeDistribution LatticeDistribution::point_mass(double step, std::size_t index, std::string name) {
    std::vector<double> pmf(index + 1, 0.0);
    pmf[index] = 1.0;
    return LatticeDistribution(step, std::move(pmf), std::move(name));
}

double LatticeDistribution::mean() const {
    CompensatedSum acc;
    for (std::size_t k = 0; k < pmf_.size(); ++k) acc.add(pmf_[k] * (static_cast<double>(k) * step_));
    return acc.value();
}

double LatticeDistribution::variance() const {
    const double m = mean();
    CompensatedSum acc;
    for (std::size_t k = 0; k < pmf_.size(); ++k) {
        const double d = static_cast<double>(k) * step_ - m;
        acc.add(pmf_[k] * d * d);
    }
    return acc.value();
}

std::vector<double> LatticeDistribution::cdf() const {
    std::vector<double> out(pmf_.size());
    CompensatedSum acc;
    for (std::size_t k = 0; k < pmf_.size(); ++k) {
        acc.add(pmf_[k]);
        out[k] = acc.value();
    }
    return out;
}

LatticeDistribution negbinom_pmf(int r, double q, std::size_t max_points, double step, std::string name) {
    if (r < 1) throw ConfigError("negbinom: r must be a positive integer");
    if (!(q > 0.0 && q < 1.0)) throw ConfigError("negbinom: q must lie in (0, 1)");
    max_points = std::min(max_points, LatticeDistribution::kMaxPoints);

    std::vector<double> pmf;
    CompensatedSum cum;
    double p = std::pow(q, r);
    for (std::size_t k = 0;; ++k) {
        pmf.push_back(p);
        cum.add(p);
        if (1.0 - cum.value() < LatticeDistribution::kTailMass) break;
        if (pmf.size() >= max_points) {
            throw TruncationError("negbinom(r=" + std::to_string(r) + ", q=" + std::to_string(q) +
                                  "): tail rule unachievable within " + std::to_string(max_points) +
                                  " lattice points");
        }
        p *= (1.0 - q) * (static_cast<double>(k) + static_cast<double>(r)) / (static_cast<double>(k) + 1.0);
    }
    renormalize(pmf);
    return LatticeDistribution(step, std::move(pmf), std::move(name));
}

LatticeDistribution compound_poisson(const CompoundPoissonSpec& spec, std::size_t max_points) {
    const double lambda = spec.frequency_lambda;
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ConfigError("compound_poisson: frequency lambda must be positive");
    }
    max_points = std::min(max_points, LatticeDistribution::kMaxPoints);
    const auto& sev = spec.severity.pmf();

    // Initial grid guess: mean plus a generous multiple of the standard
    // deviation, never smaller than the severity support itself.
    const double unit_mean = spec.severity.mean() / spec.severity.step();
    double unit_m2 = 0.0;
    for (std::size_t k = 0; k < sev.size(); ++k) unit_m2 += sev[k] * static_cast<double>(k) * static_cast<double>(k);
    const double guess = lambda * unit_mean + 12.0 * std::sqrt(std::max(lambda * unit_m2, 1.0)) +
                         static_cast<double>(sev.size()) + 16.0;
    std::size_t n = fft::next_pow2(static_cast<std::size_t>(guess));
    n = std::max<std::size_t>(n, 64);

    for (;;) {
        if (n > LatticeDistribution::kMaxPoints || n > fft::next_pow2(max_points)) {
            throw TruncationError("compound_poisson(lambda=" + std::to_string(lambda) +
                                  "): wrap-around persists at the lattice cap; increase max_points");
        }
        std::vector<std::complex<double>> grid(n);
        for (std::size_t k = 0; k < sev.size() && k < n; ++k) grid[k] = sev[k];
        fft::transform(grid, false);
        for (auto& g : grid) g = std::exp(lambda * (g - 1.0));
        fft::transform(grid, true);

        std::vector<double> pmf(n);
        for (std::size_t k = 0; k < n; ++k) pmf[k] = grid[k].real();
        clip_fft_noise(pmf);

        // wrap-around check: folded tail shows up in the last cell
        if (pmf.back() > 1e-13 && n < fft::next_pow2(max_points)) {
            n <<= 1;
            continue;
        }
        if (pmf.back() > LatticeDistribution::kTailMass) {
            throw TruncationError("compound_poisson(lambda=" + std::to_string(lambda) +
                                  "): tail mass " + std::to_string(pmf.back()) +
                                  " at the last cell; increase max_points");
        }
        truncate_and_renormalize(pmf, LatticeDistribution::kTailMass);
        if (pmf.size() > max_points) {
            throw TruncationError("compound_poisson: support exceeds max_points after truncation");
        }
        return LatticeDistribution(spec.severity.step(), std::move(pmf));
    }
}

LatticeDistribution convolve(const LatticeDistribution& a, const LatticeDistribution& b) {
    const double rel = std::abs(a.step() - b.step()) / std::max(a.step(), b.step());
    if (rel > 1e-12) {
        throw ConfigError("convolve: mismatched lattice steps " + std::to_string(a.step()) + " vs " +
                          std::to_string(b.step()));
    }
    if (a.points() + b.points() - 1 > LatticeDistribution::kMaxPoints) {
        throw TruncationError("convolve: output support exceeds the lattice cap");
    }
    std::vector<double> pmf = fft::convolve(a.pmf(), b.pmf());
    clip_fft_noise(pmf);
    renormalize(pmf);
    return LatticeDistribution(a.step(), std::move(pmf));
}

LatticeDistribution aggregate(std::span<const LatticeDistribution> pool) {
    if (pool.size() < 2) throw ConfigError("aggregate: need at least 2 distributions");

    // Pairwise reduction keeps intermediate supports short; intermediates are
    // trimmed with a much tighter rule than the final result so the repeated
    // truncation cannot accumulate visible bias.
    constexpr double kIntermediateTail = 1e-15;
    std::vector<LatticeDistribution> level(pool.begin(), pool.end());
    while (level.size() > 1) {
        std::vector<LatticeDistribution> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            LatticeDistribution c = convolve(level[i], level[i + 1]);
            std::vector<double> pmf = c.pmf();
            truncate_and_renormalize(pmf, kIntermediateTail);
            next.emplace_back(c.step(), std::move(pmf));
        }
        if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
        level = std::move(next);
    }
    std::vector<double> pmf = level.front().pmf();
    truncate_and_renormalize(pmf, LatticeDistribution::kTailMass);
    return LatticeDistribution(level.front().step(), std::move(pmf), "aggregate");
}

LatticeDistribution discretize_gamma(double shape, double rate, double step, std::size_t max_points,
                                     GammaDiscretization method) {
    if (!(shape > 0.0) || !(rate > 0.0)) throw ConfigError("discretize_gamma: shape and rate must be positive");
    if (!(step > 0.0)) throw ConfigError("discretize_gamma: step must be positive");
    max_points = std::min(max_points, LatticeDistribution::kMaxPoints);

    const auto cdf = [&](double x) { return x <= 0.0 ? 0.0 : boost::math::gamma_p(shape, rate * x); };
    // E[min(X, d)], the limited expected value
    const auto lev = [&](double d) {
        if (d <= 0.0) return 0.0;
        return (shape / rate) * boost::math::gamma_p(shape + 1.0, rate * d) + d * (1.0 - cdf(d));
    };

    std::vector<double> pmf;
    CompensatedSum cum;
    for (std::size_t k = 0;; ++k) {
        const double x = static_cast<double>(k) * step;
        double p = 0.0;
        switch (method) {
            case GammaDiscretization::MeanPreserving:
                p = (k == 0) ? 1.0 - lev(step) / step
                             : (2.0 * lev(x) - lev(x - step) - lev(x + step)) / step;
                break;
            case GammaDiscretization::Lower:
                p = cdf(x + step) - cdf(x);
                break;
            case GammaDiscretization::Upper:
                p = (k == 0) ? 0.0 : cdf(x) - cdf(x - step);
                break;
        }
        pmf.push_back(std::max(p, 0.0));
        cum.add(pmf.back());
        if (1.0 - cum.value() < LatticeDistribution::kTailMass) break;
        if (pmf.size() >= max_points) {
            throw TruncationError("discretize_gamma(shape=" + std::to_string(shape) + ", rate=" +
                                  std::to_string(rate) + "): tail rule unachievable within " +
                                  std::to_string(max_points) + " points at step " + std::to_string(step));
        }
    }
    renormalize(pmf);
    return LatticeDistribution(step, std::move(pmf));
}

}  // namespace riskpool
