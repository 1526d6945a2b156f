#include "lrdcp/asymptotics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "lrdcp/lrd_synth.hpp"
#include "lrdcp/rng.hpp"

namespace lrdcp {

namespace {

constexpr double kSqrt2Inv = 0.7071067811865475244;

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * kSqrt2Inv); }

double std_normal_pdf(double x) {
    return 0.3989422804014326779 * std::exp(-0.5 * x * x);
}

double factorial(unsigned r) {
    double f = 1.0;
    for (unsigned i = 2; i <= r; ++i) f *= i;
    return f;
}

// Adaptive Simpson quadrature.
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa,
             double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-13) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    return adapt(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol, 40);
}

void check_params(double memory_d, unsigned hermite_rank) {
    if (hermite_rank < 1) {
        throw std::domain_error("hermite rank must be >= 1");
    }
    if (!(memory_d > 0.0 && memory_d * hermite_rank < 1.0)) {
        throw std::domain_error("need 0 < D < 1/r");
    }
}

} // namespace

double c_r(double memory_d, unsigned hermite_rank) {
    check_params(memory_d, hermite_rank);
    const double dr = memory_d * hermite_rank;
    return std::sqrt(2.0 * factorial(hermite_rank) / ((1.0 - dr) * (2.0 - dr)));
}

double g_d_r(double t, const LrdParams& p) {
    check_params(p.memory_d, p.hermite_rank);
    const double ex = p.hermite_rank * p.memory_d / 2.0;
    return std::pow(t, ex) * std::pow(p.c_l, -0.5 * p.hermite_rank);
}

double d_n_r(std::size_t n, const LrdParams& p) {
    check_params(p.memory_d, p.hermite_rank);
    const double ex = 1.0 - p.hermite_rank * p.memory_d / 2.0;
    return std::pow(static_cast<double>(n), ex) *
           std::pow(p.c_l, 0.5 * p.hermite_rank) * c_r(p.memory_d, p.hermite_rank);
}

double m_n(double shift_height, const LrdParams& p) {
    check_params(p.memory_d, p.hermite_rank);
    if (shift_height == 0.0) {
        throw std::domain_error("m_n: shift height must be nonzero");
    }
    const double ex = 2.0 / (p.hermite_rank * p.memory_d);
    return std::pow(std::pow(p.c_l, 0.5 * p.hermite_rank) / std::abs(shift_height), ex);
}

double shift_functional(double h) { return std_normal_cdf(h * kSqrt2Inv) - 0.5; }

double shift_functional_quadrature(double h) {
    auto f = [h](double x) {
        return (std_normal_cdf(x + h) - std_normal_cdf(x)) * std_normal_pdf(x);
    };
    const double lim = 12.0 + std::abs(h);
    return integrate(f, -lim, lim);
}

double delta_tau(double lambda, double tau) {
    if (!(lambda >= 0.0 && lambda <= 1.0 && tau >= 0.0 && tau <= 1.0)) {
        throw std::domain_error("delta_tau: arguments must lie in [0, 1]");
    }
    return lambda <= tau ? lambda * (1.0 - tau) : (1.0 - lambda) * tau;
}

NormalFunctionals normal_functionals() {
    auto f_sq = [](double x) {
        double f = std_normal_pdf(x);
        return f * f;
    };
    // J_1(x) = E[xi 1{xi <= x}] = -f(x), so int J_1 dF = -int f^2.
    auto j1_df = [](double x) {
        double f = std_normal_pdf(x);
        return -f * f;
    };
    NormalFunctionals out;
    out.int_f_sq = integrate(f_sq, -12.0, 12.0);
    out.int_j1_df = integrate(j1_df, -12.0, 12.0);
    return out;
}

double h_drift(double s, double tau, double int_f_sq) {
    if (!(int_f_sq > 0.0)) {
        throw std::domain_error("h_drift: int_f_sq must be positive");
    }
    return s <= 0.0 ? s * (1.0 - tau) * int_f_sq : -s * tau * int_f_sq;
}

LimitLawSample sample_limit_argmax(double tau, double hurst, std::size_t reps,
                                   std::uint64_t seed, const LimitLawOptions& opt) {
    if (reps < 1) throw std::invalid_argument("sample_limit_argmax: need reps >= 1");
    if (!(opt.grid_m > 0.0 && opt.grid_step > 0.0 && opt.grid_step <= opt.grid_m)) {
        throw std::invalid_argument("sample_limit_argmax: need 0 < step <= M");
    }

    const NormalFunctionals nf = normal_functionals();
    const double int_j1 = opt.override_int_j1 ? opt.int_j1_value : nf.int_j1_df;

    const std::size_t half = static_cast<std::size_t>(std::llround(opt.grid_m / opt.grid_step));
    const std::size_t grid_n = 2 * half + 1; // s_j = (j - half) * step, j = 0..2*half
    const double noise_scale = std::pow(opt.grid_step, hurst);

    LimitLawSample out;
    out.argmax_values.resize(reps);
    out.grid_m = opt.grid_m;
    out.grid_step = opt.grid_step;
    out.tau = tau;
    out.int_j1_df = int_j1;
    out.int_f_sq = nf.int_f_sq;

    FgnGenerator gen(grid_n - 1, hurst);
    std::vector<double> process(grid_n);
    for (std::size_t rep = 0; rep < reps; ++rep) {
        // Two-sided fBm on the grid: cumulative fGn increments, pinned to 0
        // at s = 0.
        const std::vector<double> incr = gen.generate(mix_seed(seed, rep));
        process[0] = 0.0;
        for (std::size_t j = 1; j < grid_n; ++j) {
            process[j] = process[j - 1] + incr[j - 1];
        }
        const double at_zero = process[half];

        double best = -std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < grid_n; ++j) {
            const double s = (static_cast<double>(j) - static_cast<double>(half)) * opt.grid_step;
            const double bh = (process[j] - at_zero) * noise_scale;
            const double sign = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
            const double g = sign * bh * int_j1 + h_drift(s, tau, nf.int_f_sq);
            if (g > best) { // strict: smallest grid argmax
                best = g;
                best_j = j;
            }
        }
        out.argmax_values[rep] =
            (static_cast<double>(best_j) - static_cast<double>(half)) * opt.grid_step;
    }
    return out;
}

} // namespace lrdcp
