#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace xlog {

// (t_total - t_bench) / t_bench. Requires t_bench > 0.
double runtime_overhead(double t_total, double t_bench);

// Student-t quantile at probability p (0 < p < 1), dof degrees of freedom.
double student_t_quantile(double p, double dof);

struct RatioCI {
    double rho = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double confidence = 0.0;
    std::size_t n = 0;
};

// Symmetric Fieller interval for the ratio of two paired sample means:
// rho +- |rho| * z * sqrt((s_X/mu_X)^2 + (s_Y/mu_Y)^2 - 2*cov/(mu_X*mu_Y))
// with z the two-sided Student-t quantile at n-1 degrees of freedom. All
// sample moments use the n-1 divisor. A zero mean on either side is a
// degenerate input; a negative radicand raises InvalidIntervalError rather
// than clamping.
RatioCI fieller_ci(std::span<const double> xs, std::span<const double> ys, double confidence);

struct FactorialFit {
    double q0 = 0, qs = 0, qb = 0, qi = 0;  // effects in y = q0 + qs*xs + qb*xb + qi*xs*xb
    double f_s = 0, f_b = 0, f_i = 0, f_e = 0;  // allocation of variation, sums to 1
    double s_e = 0;                             // residual sum of squares
    std::size_t r = 0;                          // replicates per cell
};

// Cell order: index = (x_s > 0 ? 1 : 0) + (x_b > 0 ? 2 : 0), i.e.
// cells[0]=(-1,-1), cells[1]=(+1,-1), cells[2]=(-1,+1), cells[3]=(+1,+1).
inline constexpr std::size_t factorial_cell(int x_s, int x_b) {
    return (x_s > 0 ? 1u : 0u) + (x_b > 0 ? 2u : 0u);
}

// 2^2*r full factorial fit: effects are signed quarter-sums of the cell
// means, residual is the within-cell scatter, and each F is the fraction of
// total variation its factor explains. All four cells need the same number
// of replicates, at least one.
FactorialFit factorial_fit(const std::array<std::vector<double>, 4>& cells);

}  // namespace xlog
