#include <cmath>
#include <filesystem>

#include <doctest.h>

#include "oracles.hpp"
#include "sbsize/empirical.hpp"
#include "sbsize/errors.hpp"

using namespace sbsize;

TEST_CASE("perfect line fits exactly") {
    const std::vector<double> xs{0.0, 1.0, 2.0, 3.0, 4.0};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(2.0 * x + 1.0);
    const RegressionModel m = fit_regression(xs, ys);
    CHECK(m.alpha == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m.beta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.sigma == doctest::Approx(0.0));
    CHECK(m.n_samples == 5);
}

TEST_CASE("sigma of a fixed line on two held-out points with unit residuals") {
    // line y = x; points with residuals +1 and -1 -> sqrt((1+1)/2) = 1
    const std::vector<double> xs{2.0, 5.0};
    const std::vector<double> ys{3.0, 4.0};
    CHECK(residual_sigma(1.0, 0.0, xs, ys) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("estimate worked examples") {
    CHECK(estimate_sboc({0.0046, 0.0567, 0.0315, 0}, 22.0) ==
          doctest::Approx(0.1894).epsilon(1e-9));
    CHECK(estimate_sboc({1.0, 0.0, 0.0, 0}, 0.0) == 0.0);
    // second coefficient row: 0.0074 * 22 - 0.0221 + 0.0709
    CHECK(estimate_sboc({0.0074, -0.0221, 0.0709, 0}, 22.0) ==
          doctest::Approx(0.2116).epsilon(1e-9));
    // strongly negative intercept clamps at zero
    CHECK(estimate_sboc({0.0074, -0.5, 0.0, 0}, 1.0) == 0.0);
}

TEST_CASE("estimate keeps the sigma margin above the raw line") {
    oracle::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        RegressionModel m{rng.uniform(-0.01, 0.02), rng.uniform(-0.1, 0.1), rng.uniform(0.0, 0.2), 10};
        const double sivi = rng.uniform(0.0, 30.0);
        CHECK(estimate_sboc(m, sivi) >= m.alpha * sivi + m.beta - 1e-12);
    }
}

TEST_CASE("pearson hand values") {
    CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{3, 6, 9}) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{-1, -2, -3}) ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{2, 1, 3}) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
                    NumericalError);
    CHECK_THROWS_AS(pearson(std::vector<double>{1.0}, std::vector<double>{1.0}), DataError);
}

TEST_CASE("pearson is invariant under positive affine maps") {
    oracle::Rng rng(4);
    std::vector<double> xs, ys;
    for (int i = 0; i < 50; ++i) {
        xs.push_back(rng.uniform(0.0, 10.0));
        ys.push_back(0.4 * xs.back() + rng.normal());
    }
    const double base = pearson(xs, ys);
    std::vector<double> xs2, ys2;
    for (size_t i = 0; i < xs.size(); ++i) {
        xs2.push_back(3.5 * xs[i] - 7.0);
        ys2.push_back(0.25 * ys[i] + 11.0);
    }
    CHECK(pearson(xs2, ys2) == doctest::Approx(base).epsilon(1e-9));
}

TEST_CASE("nearest-rank quantiles") {
    EmpiricalCdf cdf({10, 9, 8, 7, 6, 5, 4, 3, 2, 1});
    CHECK(cdf.quantile(0.9) == doctest::Approx(9.0));
    CHECK(cdf.quantile(1.0) == doctest::Approx(10.0));
    CHECK(cdf.quantile(0.05) == doctest::Approx(1.0));

    EmpiricalCdf single({42.0});
    CHECK(single.quantile(0.01) == doctest::Approx(42.0));
    CHECK(single.quantile(1.0) == doctest::Approx(42.0));

    CHECK_THROWS_AS(cdf.quantile(0.0), DataError);
    CHECK_THROWS_AS(cdf.quantile(1.5), DataError);
    CHECK_THROWS_AS(EmpiricalCdf({}), DataError);
}

TEST_CASE("quantile level monotonicity") {
    oracle::Rng rng(5);
    std::vector<double> v;
    for (int i = 0; i < 37; ++i) v.push_back(rng.uniform(0.0, 1.0));
    EmpiricalCdf cdf(v);
    double prev = -1e18;
    for (double level = 0.05; level <= 1.0; level += 0.05) {
        const double q = cdf.quantile(level);
        CHECK(q >= prev);
        prev = q;
    }
    CHECK(cdf.quantile(1.0) == *std::max_element(v.begin(), v.end()));
}

TEST_CASE("OLS residual orthogonality") {
    oracle::Rng rng(6);
    std::vector<double> xs, ys;
    for (int i = 0; i < 365; ++i) {
        xs.push_back(rng.uniform(1.0, 25.0));
        ys.push_back(0.005 * xs.back() + 0.05 + 0.01 * rng.normal());
    }
    const RegressionModel m = fit_regression(xs, ys);
    double sum_r = 0.0, sum_rx = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (m.alpha * xs[i] + m.beta);
        sum_r += r;
        sum_rx += r * xs[i];
    }
    CHECK(std::abs(sum_r) < 1e-9);
    CHECK(std::abs(sum_rx) < 1e-9);
}

TEST_CASE("degenerate regressions raise") {
    CHECK_THROWS_AS(fit_regression(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3}),
                    NumericalError);
    CHECK_THROWS_AS(fit_regression(std::vector<double>{1}, std::vector<double>{1}), DataError);
}

TEST_CASE("regression save/load round trip") {
    const std::string path = (std::filesystem::temp_directory_path() / "coeffs.txt").string();
    const RegressionModel m{0.0046, 0.0567, 0.0315, 365};
    save_regression(path, m);
    const RegressionModel r = load_regression(path);
    CHECK(r.alpha == doctest::Approx(m.alpha).epsilon(1e-9));
    CHECK(r.beta == doctest::Approx(m.beta).epsilon(1e-9));
    CHECK(r.sigma == doctest::Approx(m.sigma).epsilon(1e-9));
    CHECK(r.n_samples == 365);
}
