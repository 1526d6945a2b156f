#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lrdcp/time_series.hpp"

namespace lrdcp {

enum class Margin { gaussian, pareto };

// Synthesis recipe: fGn with Hurst index H, marginal transform, optional
// level shift of height `shift` after floor(n*tau).
struct LrdSpec {
    std::size_t n = 0;
    double hurst = 0.5;
    Margin margin = Margin::gaussian;
    double pareto_beta = 3.0;
    double pareto_k = 1.0;
    double tau = 0.0;     // <= 0 means no change
    double shift = 0.0;
    std::uint64_t seed = 0;
};

// Exact autocovariance of unit-variance fractional Gaussian noise,
// rho(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2.
double fgn_autocov(std::size_t lag, double hurst);

// Davies-Harte circulant-embedding sampler. The covariance eigenvalues and
// FFT plan are computed once at construction, so repeated draws at the same
// (n, H) cost one FFT each. Not safe for concurrent generate() calls on the
// same instance; give each thread its own generator.
class FgnGenerator {
public:
    FgnGenerator(std::size_t n, double hurst);
    ~FgnGenerator();
    FgnGenerator(const FgnGenerator&) = delete;
    FgnGenerator& operator=(const FgnGenerator&) = delete;

    // Deterministic given (n, H, seed).
    std::vector<double> generate(std::uint64_t seed);

    std::size_t length() const;
    double hurst() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::vector<double> generate_fgn(std::size_t n, double hurst, std::uint64_t seed);

// Marginal transform turning a standard normal draw into a standardized
// Pareto(beta, k) value; strictly decreasing in t, mean 0, variance 1.
double pareto_transform(double t, double beta, double k);

// Adds h to every observation with 1-based index > floor(n*tau).
TimeSeries inject_change(const TimeSeries& y, double tau, double h);

// Index of the last pre-break observation, k0 = floor(n*tau).
std::size_t change_index(std::size_t n, double tau);

// Full recipe: fGn -> margin transform -> level shift.
TimeSeries synthesize(const LrdSpec& spec);
TimeSeries synthesize(const LrdSpec& spec, FgnGenerator& gen);

} // namespace lrdcp
