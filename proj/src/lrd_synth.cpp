#include "lrdcp/lrd_synth.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "lrdcp/rng.hpp"

namespace lrdcp {

namespace {

// FFTW plan creation/destruction is not thread-safe; execution is.
std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

std::size_t next_pow2(std::size_t v) {
    std::size_t p = 1;
    while (p < v) p <<= 1;
    return p;
}

void check_hurst(double hurst) {
    if (!(hurst > 0.0 && hurst < 1.0)) {
        throw std::invalid_argument("hurst must lie in (0, 1)");
    }
}

} // namespace

double fgn_autocov(std::size_t lag, double hurst) {
    check_hurst(hurst);
    if (lag == 0) return 1.0;
    const double k = static_cast<double>(lag);
    const double e = 2.0 * hurst;
    return 0.5 * (std::pow(k + 1.0, e) - 2.0 * std::pow(k, e) + std::pow(k - 1.0, e));
}

struct FgnGenerator::Impl {
    std::size_t n = 0;
    double hurst = 0.5;
    std::size_t m = 0; // circulant length, power of two >= 2(n-1)
    std::vector<double> sqrt_eigen; // sqrt(lambda_j), j = 0..m/2
    fftw_complex* spectrum = nullptr;
    double* signal = nullptr;
    fftw_plan plan_c2r = nullptr;

    ~Impl() {
        if (plan_c2r) {
            std::lock_guard<std::mutex> lock(fftw_plan_mutex());
            fftw_destroy_plan(plan_c2r);
        }
        if (spectrum) fftw_free(spectrum);
        if (signal) fftw_free(signal);
    }
};

FgnGenerator::FgnGenerator(std::size_t n, double hurst) : impl_(new Impl) {
    if (n < 1) throw std::invalid_argument("FgnGenerator: need n >= 1");
    check_hurst(hurst);
    impl_->n = n;
    impl_->hurst = hurst;
    if (n == 1) return; // single draw, no FFT machinery

    const std::size_t m = next_pow2(2 * (n - 1));
    impl_->m = m;

    // Circulant first row: c_j = rho(min(j, m-j)).
    std::vector<double> circ(m);
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t lag = std::min(j, m - j);
        circ[j] = fgn_autocov(lag, hurst);
    }

    // Eigenvalues via one real-to-complex FFT of the (even) first row.
    fftw_complex* eig = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (m / 2 + 1)));
    double* in = static_cast<double*>(fftw_malloc(sizeof(double) * m));
    for (std::size_t j = 0; j < m; ++j) in[j] = circ[j];
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_plan p = fftw_plan_dft_r2c_1d(static_cast<int>(m), in, eig, FFTW_ESTIMATE);
        fftw_execute(p);
        fftw_destroy_plan(p);
    }

    impl_->sqrt_eigen.resize(m / 2 + 1);
    const double tol = 1e-8;
    for (std::size_t j = 0; j <= m / 2; ++j) {
        double lambda = eig[j][0];
        if (lambda < 0.0) {
            if (lambda < -tol) {
                fftw_free(eig);
                fftw_free(in);
                throw std::runtime_error(
                    "FgnGenerator: negative circulant eigenvalue " + std::to_string(lambda) +
                    " at index " + std::to_string(j));
            }
            lambda = 0.0;
        }
        impl_->sqrt_eigen[j] = std::sqrt(lambda);
    }
    fftw_free(eig);
    fftw_free(in);

    impl_->spectrum = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (m / 2 + 1)));
    impl_->signal = static_cast<double*>(fftw_malloc(sizeof(double) * m));
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        impl_->plan_c2r = fftw_plan_dft_c2r_1d(static_cast<int>(m), impl_->spectrum,
                                               impl_->signal, FFTW_ESTIMATE);
    }
}

FgnGenerator::~FgnGenerator() = default;

std::size_t FgnGenerator::length() const { return impl_->n; }
double FgnGenerator::hurst() const { return impl_->hurst; }

std::vector<double> FgnGenerator::generate(std::uint64_t seed) {
    SplitMix64 rng(seed);
    if (impl_->n == 1) {
        return {rng.next_normal()};
    }
    const std::size_t m = impl_->m;
    fftw_complex* spec = impl_->spectrum;

    // W_0 and W_{m/2} are real; interior frequencies get complex Gaussians of
    // half the eigen-mass so the inverse transform is real with the right
    // covariance.
    spec[0][0] = impl_->sqrt_eigen[0] * rng.next_normal();
    spec[0][1] = 0.0;
    for (std::size_t j = 1; j < m / 2; ++j) {
        const double s = impl_->sqrt_eigen[j] * 0.7071067811865475244;
        spec[j][0] = s * rng.next_normal();
        spec[j][1] = s * rng.next_normal();
    }
    spec[m / 2][0] = impl_->sqrt_eigen[m / 2] * rng.next_normal();
    spec[m / 2][1] = 0.0;

    fftw_execute(impl_->plan_c2r);

    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<double> out(impl_->n);
    for (std::size_t i = 0; i < impl_->n; ++i) {
        out[i] = impl_->signal[i] * scale;
    }
    return out;
}

std::vector<double> generate_fgn(std::size_t n, double hurst, std::uint64_t seed) {
    FgnGenerator gen(n, hurst);
    return gen.generate(seed);
}

double pareto_transform(double t, double beta, double k) {
    if (!(beta > 2.0) || !(k > 0.0)) {
        throw std::invalid_argument("pareto_transform: need beta > 2 and k > 0");
    }
    const double mean = beta * k / (beta - 1.0);
    const double sd = std::sqrt(beta * k * k / ((beta - 1.0) * (beta - 1.0) * (beta - 2.0)));

    // Phi(t)^{-1/beta} computed in log space when erfc would underflow
    // (t below about -37); the asymptotic tail log Phi(t) ~ -t^2/2 - log(-t)
    // - log(sqrt(2 pi)) takes over there.
    double pow_term;
    if (t > -37.0) {
        const double phi = 0.5 * std::erfc(-t * 0.7071067811865475244);
        pow_term = std::pow(phi, -1.0 / beta);
    } else {
        double log_phi = -0.5 * t * t - std::log(-t) - 0.9189385332046727418;
        // cap the exponent so the saturated tail value stays finite
        pow_term = std::exp(std::min(-log_phi / beta, 700.0));
    }
    return (k * pow_term - mean) / sd;
}

std::size_t change_index(std::size_t n, double tau) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * tau + 1e-9));
}

TimeSeries inject_change(const TimeSeries& y, double tau, double h) {
    const std::size_t n = y.size();
    const std::size_t k0 = change_index(n, tau);
    if (k0 < 1 || k0 > n - 1) {
        throw std::invalid_argument("inject_change: floor(n*tau) must lie in [1, n-1]");
    }
    TimeSeries out = y;
    for (std::size_t i = k0; i < n; ++i) {
        out.values[i] += h;
    }
    return out;
}

TimeSeries synthesize(const LrdSpec& spec, FgnGenerator& gen) {
    TimeSeries out;
    out.values = gen.generate(spec.seed);
    if (spec.margin == Margin::pareto) {
        for (double& v : out.values) {
            v = pareto_transform(v, spec.pareto_beta, spec.pareto_k);
        }
    }
    if (spec.tau > 0.0 && spec.shift != 0.0) {
        out = inject_change(out, spec.tau, spec.shift);
    }
    return out;
}

TimeSeries synthesize(const LrdSpec& spec) {
    FgnGenerator gen(spec.n, spec.hurst);
    return synthesize(spec, gen);
}

} // namespace lrdcp
