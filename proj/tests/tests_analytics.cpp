#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "xlog/analytics.hpp"
#include "xlog/errors.hpp"

#include "support.hpp"

using namespace xlog;

TEST_CASE("runtime overhead ratio") {
    CHECK(runtime_overhead(12.0, 10.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(runtime_overhead(10.0, 10.0) == 0.0);
    CHECK(runtime_overhead(9.0, 10.0) == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK_THROWS_AS(runtime_overhead(1.0, 0.0), InputError);
    CHECK_THROWS_AS(runtime_overhead(1.0, -2.0), InputError);
}

TEST_CASE("Student-t quantiles against table values") {
    // Rows any stats text carries, to a microunit.
    CHECK(std::fabs(student_t_quantile(0.95, 5) - 2.015048) < 1e-6);
    CHECK(std::fabs(student_t_quantile(0.95, 29) - 1.699127) < 1e-6);
    CHECK(std::fabs(student_t_quantile(0.975, 10) - 2.228139) < 1e-6);
    CHECK(std::fabs(student_t_quantile(0.975, 1) - 12.706205) < 1e-4);
    CHECK(std::fabs(student_t_quantile(0.90, 2) - 1.885618) < 1e-6);

    // Median, symmetry, monotonicity, and the normal limit.
    CHECK(std::fabs(student_t_quantile(0.5, 7)) < 1e-9);
    for (double p : {0.6, 0.8, 0.95, 0.99}) {
        CHECK(std::fabs(student_t_quantile(p, 11) + student_t_quantile(1.0 - p, 11)) < 1e-9);
    }
    CHECK(student_t_quantile(0.9, 4) < student_t_quantile(0.95, 4));
    CHECK(student_t_quantile(0.95, 4) > student_t_quantile(0.95, 40));
    CHECK(std::fabs(student_t_quantile(0.975, 100000) - 1.959964) < 1e-3);

    CHECK_THROWS_AS(student_t_quantile(0.0, 5), InputError);
    CHECK_THROWS_AS(student_t_quantile(1.0, 5), InputError);
    CHECK_THROWS_AS(student_t_quantile(-0.2, 5), InputError);
    CHECK_THROWS_AS(student_t_quantile(0.95, 0), InputError);
    CHECK_THROWS_AS(student_t_quantile(0.95, -3), InputError);
}

TEST_CASE("ratio interval of a sample against itself collapses to the point") {
    // X == Y forces rho = 1 and a radicand of exactly zero: the variance
    // terms and twice the covariance cancel identically, not approximately.
    auto rng = support::make_rng(301);
    std::uniform_real_distribution<double> val(0.5, 9.5);
    for (int iter = 0; iter < 50; iter++) {
        std::vector<double> xs;
        for (int i = 0; i < 12; i++) xs.push_back(val(rng));
        const RatioCI ci = fieller_ci(xs, xs, 0.95);
        CHECK(ci.rho == 1.0);
        CHECK(ci.lo == 1.0);
        CHECK(ci.hi == 1.0);
        CHECK(ci.n == 12);
        CHECK(ci.confidence == 0.95);
    }
}

TEST_CASE("ratio interval: hand-checked two-point sample") {
    // xs = {2, 4}, ys = {1, 1}: rho = 3, s_X^2 = 2, s_Y = cov = 0, so the
    // radicand is (s_X/mu_X)^2 = 2/9 and the half-width is
    // |rho| * t(0.975, 1) * sqrt(2)/3 = t * sqrt(2).
    const std::vector<double> xs{2.0, 4.0};
    const std::vector<double> ys{1.0, 1.0};
    const RatioCI ci = fieller_ci(xs, ys, 0.95);
    const double t = student_t_quantile(0.975, 1);
    CHECK(ci.rho == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(ci.lo == doctest::Approx(3.0 - t * std::sqrt(2.0)).epsilon(1e-9));
    CHECK(ci.hi == doctest::Approx(3.0 + t * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("ratio interval input validation") {
    const std::vector<double> xs{1.0, 2.0, 3.0};
    const std::vector<double> ys{2.0, 3.0, 4.0};
    const std::vector<double> short_ys{2.0, 3.0};
    CHECK_THROWS_AS(fieller_ci(xs, short_ys, 0.95), InputError);
    CHECK_THROWS_AS(fieller_ci({xs.data(), 1}, {ys.data(), 1}, 0.95), InputError);
    CHECK_THROWS_AS(fieller_ci(xs, ys, 0.0), ConfigError);
    CHECK_THROWS_AS(fieller_ci(xs, ys, 1.0), ConfigError);

    const std::vector<double> zero_mean{-1.0, 0.0, 1.0};
    CHECK_THROWS_AS(fieller_ci(xs, zero_mean, 0.95), InputError);
    CHECK_THROWS_AS(fieller_ci(zero_mean, ys, 0.95), InputError);
}

TEST_CASE("ratio interval captures a fresh run's ratio at the nominal rate") {
    // The radicand uses the plain per-observation deviations, so the
    // interval brackets where one run's X/Y lands, not the narrower
    // sampling band of the mean ratio. Coverage is therefore measured
    // against a fresh observation pair.
    auto rng = support::make_rng(303);
    std::normal_distribution<double> nx(10.0, 1.0), ny(5.0, 0.5);
    int covered = 0;
    const int trials = 4000;
    for (int trial = 0; trial < trials; trial++) {
        std::vector<double> xs, ys;
        for (int i = 0; i < 30; i++) {
            xs.push_back(nx(rng));
            ys.push_back(ny(rng));
        }
        const RatioCI ci = fieller_ci(xs, ys, 0.90);
        CHECK(ci.lo <= ci.rho);
        CHECK(ci.rho <= ci.hi);
        const double fresh = nx(rng) / ny(rng);
        if (ci.lo <= fresh && fresh <= ci.hi) covered++;
    }
    const double coverage = static_cast<double>(covered) / trials;
    CHECK(coverage >= 0.87);
    CHECK(coverage <= 0.93);
}

TEST_CASE("factorial fit recovers a planted exact model") {
    // y = 10 + 2*xs + 1*xb + 0.5*xs*xb, three identical replicates.
    std::array<std::vector<double>, 4> cells;
    const double q0 = 10, qs = 2, qb = 1, qi = 0.5;
    for (int s : {-1, 1}) {
        for (int b : {-1, 1}) {
            const double y = q0 + qs * s + qb * b + qi * s * b;
            cells[factorial_cell(s, b)] = {y, y, y};
        }
    }
    const FactorialFit fit = factorial_fit(cells);
    CHECK(fit.q0 == doctest::Approx(q0).epsilon(1e-12));
    CHECK(fit.qs == doctest::Approx(qs).epsilon(1e-12));
    CHECK(fit.qb == doctest::Approx(qb).epsilon(1e-12));
    CHECK(fit.qi == doctest::Approx(qi).epsilon(1e-12));
    CHECK(fit.r == 3);
    CHECK(fit.s_e == doctest::Approx(0.0).scale(1e-12));
    // Variation splits 4 : 1 : 0.25 with nothing left for error.
    CHECK(fit.f_s == doctest::Approx(4.0 / 5.25).epsilon(1e-12));
    CHECK(fit.f_b == doctest::Approx(1.0 / 5.25).epsilon(1e-12));
    CHECK(fit.f_i == doctest::Approx(0.25 / 5.25).epsilon(1e-12));
    CHECK(fit.f_e == doctest::Approx(0.0).scale(1e-12));
    CHECK(fit.f_s + fit.f_b + fit.f_i + fit.f_e == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("factorial fit: balanced noise lands in the error term only") {
    // Residuals +-d around each cell mean keep the means (so the effects)
    // untouched and contribute 8*d^2 of within-cell scatter.
    std::array<std::vector<double>, 4> cells;
    const double d = 0.25;
    for (int s : {-1, 1}) {
        for (int b : {-1, 1}) {
            const double y = 3.0 + 1.5 * s - 0.5 * b + 0.25 * s * b;
            cells[factorial_cell(s, b)] = {y + d, y - d};
        }
    }
    const FactorialFit fit = factorial_fit(cells);
    CHECK(fit.qs == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(fit.qb == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.qi == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(fit.r == 2);
    CHECK(fit.s_e == doctest::Approx(8 * d * d).epsilon(1e-12));

    const double explained = 4 * 2 * (1.5 * 1.5 + 0.5 * 0.5 + 0.25 * 0.25);
    const double sst = explained + 8 * d * d;
    CHECK(fit.f_e == doctest::Approx(8 * d * d / sst).epsilon(1e-12));
    CHECK(fit.f_s + fit.f_b + fit.f_i + fit.f_e == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("factorial fit satisfies the variation identity on random data") {
    auto rng = support::make_rng(305);
    std::normal_distribution<double> noise(0.0, 2.0);
    for (int iter = 0; iter < 50; iter++) {
        const std::size_t r = 5;
        std::array<std::vector<double>, 4> cells;
        std::vector<double> all;
        for (auto& cell : cells) {
            for (std::size_t i = 0; i < r; i++) {
                cell.push_back(noise(rng));
                all.push_back(cell.back());
            }
        }
        const FactorialFit fit = factorial_fit(cells);

        double mean = 0;
        for (double y : all) mean += y;
        mean /= static_cast<double>(all.size());
        double sst = 0;
        for (double y : all) sst += (y - mean) * (y - mean);

        const double explained =
            4.0 * static_cast<double>(r) *
            (fit.qs * fit.qs + fit.qb * fit.qb + fit.qi * fit.qi);
        CHECK(sst == doctest::Approx(explained + fit.s_e).epsilon(1e-9));
        CHECK(fit.q0 == doctest::Approx(mean).epsilon(1e-12));
        CHECK(fit.f_s + fit.f_b + fit.f_i + fit.f_e == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(fit.f_e >= 0.0);
    }
}

TEST_CASE("factorial fit with zero total variation charges everything to error") {
    std::array<std::vector<double>, 4> cells;
    for (auto& cell : cells) cell = {7.0, 7.0};
    const FactorialFit fit = factorial_fit(cells);
    CHECK(fit.q0 == 7.0);
    CHECK(fit.qs == 0.0);
    CHECK(fit.s_e == 0.0);
    CHECK(fit.f_s == 0.0);
    CHECK(fit.f_b == 0.0);
    CHECK(fit.f_i == 0.0);
    CHECK(fit.f_e == 1.0);
}

TEST_CASE("factorial fit validation") {
    std::array<std::vector<double>, 4> cells{
        std::vector<double>{1.0}, std::vector<double>{2.0},
        std::vector<double>{3.0}, std::vector<double>{}};
    CHECK_THROWS_AS(factorial_fit(cells), ConfigError);
    cells[3] = {4.0, 5.0};
    CHECK_THROWS_AS(factorial_fit(cells), ConfigError);
}

TEST_CASE("cell indexing convention") {
    CHECK(factorial_cell(-1, -1) == 0);
    CHECK(factorial_cell(+1, -1) == 1);
    CHECK(factorial_cell(-1, +1) == 2);
    CHECK(factorial_cell(+1, +1) == 3);
}
