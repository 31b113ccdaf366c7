#include "xlog/analytics.hpp"

#include <cmath>
#include <string>

#include "xlog/errors.hpp"

namespace xlog {

double runtime_overhead(double t_total, double t_bench) {
    if (!(t_bench > 0.0)) {
        throw InputError("baseline time must be positive");
    }
    return (t_total - t_bench) / t_bench;
}

namespace {

// Continued fraction for the regularized incomplete beta, Lentz's method.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; m++) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

double incbeta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * betacf(a, b, x) / a;
    }
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
    double x = dof / (dof + t * t);
    double p = 0.5 * incbeta(dof / 2.0, 0.5, x);
    return t >= 0.0 ? 1.0 - p : p;
}

}  // namespace

double student_t_quantile(double p, double dof) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InputError("quantile probability must lie in (0, 1)");
    }
    if (!(dof > 0.0)) {
        throw InputError("degrees of freedom must be positive");
    }
    if (p == 0.5) return 0.0;
    bool upper = p > 0.5;
    double target = upper ? p : 1.0 - p;

    double hi = 1.0;
    while (student_t_cdf(hi, dof) < target) {
        hi *= 2.0;
        if (hi > 1e12) break;
    }
    double lo = 0.0;
    for (int i = 0; i < 200; i++) {
        double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, dof) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double t = 0.5 * (lo + hi);
    return upper ? t : -t;
}

RatioCI fieller_ci(std::span<const double> xs, std::span<const double> ys, double confidence) {
    const std::size_t n = xs.size();
    if (n != ys.size()) {
        throw InputError("paired samples must have equal length");
    }
    if (n < 2) {
        throw InputError("need at least two paired samples");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw ConfigError("confidence level must lie in (0, 1)");
    }

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; i++) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    if (my == 0.0) {
        throw InputError("denominator mean is zero");
    }
    if (mx == 0.0) {
        throw InputError("numerator mean is zero; the relative variance is undefined");
    }

    // vx, vy and cov share one accumulation pattern so that identical
    // samples cancel exactly in the radicand.
    double vx = 0.0, vy = 0.0, cov = 0.0;
    for (std::size_t i = 0; i < n; i++) {
        vx += (xs[i] - mx) * (xs[i] - mx);
        vy += (ys[i] - my) * (ys[i] - my);
        cov += (xs[i] - mx) * (ys[i] - my);
    }
    const double divisor = static_cast<double>(n - 1);
    vx /= divisor;
    vy /= divisor;
    cov /= divisor;

    double radicand = vx / (mx * mx) + vy / (my * my) - 2.0 * cov / (mx * my);
    if (radicand < 0.0) {
        throw InvalidIntervalError("Fieller radicand is negative (" + std::to_string(radicand) +
                                   "); no symmetric interval exists");
    }

    RatioCI ci;
    ci.n = n;
    ci.confidence = confidence;
    ci.rho = mx / my;
    double z = student_t_quantile(1.0 - (1.0 - confidence) / 2.0, static_cast<double>(n - 1));
    double half = std::fabs(ci.rho) * z * std::sqrt(radicand);
    ci.lo = ci.rho - half;
    ci.hi = ci.rho + half;
    return ci;
}

FactorialFit factorial_fit(const std::array<std::vector<double>, 4>& cells) {
    const std::size_t r = cells[0].size();
    for (const auto& cell : cells) {
        if (cell.empty()) {
            throw ConfigError("factorial design requires every cell to be populated");
        }
        if (cell.size() != r) {
            throw ConfigError("factorial design requires equal replicates per cell");
        }
    }

    std::array<double, 4> mean{};
    for (std::size_t c = 0; c < 4; c++) {
        for (double y : cells[c]) mean[c] += y;
        mean[c] /= static_cast<double>(r);
    }

    FactorialFit fit;
    fit.r = r;
    // Signs per cell (x_s, x_b): 0=(-,-) 1=(+,-) 2=(-,+) 3=(+,+).
    fit.q0 = (mean[0] + mean[1] + mean[2] + mean[3]) / 4.0;
    fit.qs = (-mean[0] + mean[1] - mean[2] + mean[3]) / 4.0;
    fit.qb = (-mean[0] - mean[1] + mean[2] + mean[3]) / 4.0;
    fit.qi = (mean[0] - mean[1] - mean[2] + mean[3]) / 4.0;

    for (std::size_t c = 0; c < 4; c++) {
        for (double y : cells[c]) {
            fit.s_e += (y - mean[c]) * (y - mean[c]);
        }
    }

    double denom = fit.s_e / (4.0 * static_cast<double>(r)) + fit.qs * fit.qs +
                   fit.qb * fit.qb + fit.qi * fit.qi;
    if (denom == 0.0) {
        // No variation at all: nothing to allocate, everything is residual.
        fit.f_e = 1.0;
        return fit;
    }
    fit.f_s = fit.qs * fit.qs / denom;
    fit.f_b = fit.qb * fit.qb / denom;
    fit.f_i = fit.qi * fit.qi / denom;
    fit.f_e = 1.0 - (fit.f_s + fit.f_b + fit.f_i);
    return fit;
}

}  // namespace xlog
