#pragma once

#include <cstdint>
#include <vector>

namespace lrdcp {

// Memory parameter D, Hermite rank r and the slowly varying function treated
// as a constant c_L. The derived Hurst index is H = 1 - rD/2.
struct LrdParams {
    double memory_d = 0.5;
    unsigned hermite_rank = 1;
    double c_l = 1.0;

    double hurst() const { return 1.0 - hermite_rank * memory_d / 2.0; }
};

// c_r = sqrt(2 r! / ((1 - Dr)(2 - Dr))); requires 0 < Dr < 1.
double c_r(double memory_d, unsigned hermite_rank);

// d_{n,r} = n / g_{D,r}(n) * c_r = n^{1 - rD/2} c_L^{r/2} c_r.
double d_n_r(std::size_t n, const LrdParams& p);

// g_{D,r}(t) = t^{rD/2} c_L^{-r/2}.
double g_d_r(double t, const LrdParams& p);

// Asymptotic inverse of g at |h|^{-1}: m = (|h|^{-1} c_L^{r/2})^{2/(rD)}.
// Throws on h = 0.
double m_n(double shift_height, const LrdParams& p);

// Delta(h) = integral (F(x+h) - F(x)) dF(x) for standard normal F;
// closed form Phi(h / sqrt(2)) - 1/2.
double shift_functional(double h);

// Quadrature evaluation of the defining integral of Delta(h); used to
// cross-check the closed form.
double shift_functional_quadrature(double h);

// Tent function: lambda (1 - tau) below tau, (1 - lambda) tau above.
double delta_tau(double lambda, double tau);

struct NormalFunctionals {
    double int_f_sq;  // integral of f(x)^2 dx, f standard normal density
    double int_j1_df; // integral of J_1(x) dF(x), J_1(x) = -f(x)
};

// Both by adaptive quadrature (closed forms 1/(2 sqrt(pi)) and its negative).
NormalFunctionals normal_functionals();

// Drift of the limit process: s(1-tau) int_f_sq for s <= 0, -s tau int_f_sq
// for s > 0. Nonpositive, zero only at s = 0.
double h_drift(double s, double tau, double int_f_sq);

struct LimitLawSample {
    std::vector<double> argmax_values; // one per replication
    double grid_m = 0.0;
    double grid_step = 0.0;
    double tau = 0.0;
    double int_j1_df = 0.0;
    double int_f_sq = 0.0;
};

struct LimitLawOptions {
    double grid_m = 50.0;
    double grid_step = 0.05;
    // Test hook: when set, overrides the quadrature value of int J_1 dF.
    bool override_int_j1 = false;
    double int_j1_value = 0.0;
};

// Simulates argmax_s ( sign(s) B_H(s) int_J1_dF + h(s; tau) ) on the grid
// [-M, M]; one smallest-grid-argmax per replication. Deterministic for a
// fixed seed, independent of replication execution order.
LimitLawSample sample_limit_argmax(double tau, double hurst, std::size_t reps,
                                   std::uint64_t seed, const LimitLawOptions& opt = {});

} // namespace lrdcp
