#include "doctest.h"

#include <cmath>

#include "mzi/series.hpp"

using namespace mzi;

TEST_CASE("factorial matches directly multiplied values") {
    CHECK(factorial(0) == 1.0);
    CHECK(factorial(1) == 1.0);
    CHECK(factorial(5) == 120.0);
    CHECK(factorial(12) == 479001600.0);
    // 20! is still exactly representable
    CHECK(factorial(20) == 2432902008176640000.0);
}

TEST_CASE("legendre recurrence reproduces the low-order polynomials") {
    for (double x : {-1.7, -0.4, 0.0, 0.31, 1.0, 2.9}) {
        CHECK(legendre_p(0, x) == 1.0);
        CHECK(legendre_p(1, x) == x);
        CHECK(legendre_p(2, x) == doctest::Approx(0.5 * (3 * x * x - 1)).epsilon(1e-14));
        CHECK(legendre_p(3, x) == doctest::Approx(0.5 * (5 * x * x * x - 3 * x)).epsilon(1e-14));
        CHECK(legendre_p(4, x) ==
              doctest::Approx((35 * std::pow(x, 4) - 30 * x * x + 3) / 8).epsilon(1e-13));
    }
    CHECK_THROWS_AS(legendre_p(-1, 0.5), std::invalid_argument);
}

TEST_CASE("phase-stripped imaginary-argument variant stays real and positive") {
    // (-i)^n P_n(i s) obeys the same recurrence with the minus sign flipped
    for (double s : {0.1, 0.77, 2.5}) {
        CHECK(legendre_p_imag(1, s) == s);
        CHECK(legendre_p_imag(2, s) == doctest::Approx(0.5 * (3 * s * s + 1)).epsilon(1e-14));
        CHECK(legendre_p_imag(3, s) ==
              doctest::Approx(0.5 * (5 * s * s * s + 3 * s)).epsilon(1e-14));
        for (int n = 0; n <= 12; ++n) CHECK(legendre_p_imag(n, s) > 0.0);
    }
}

TEST_CASE("dual numbers differentiate through composite expressions") {
    Dual<double> x(0.8, 1.0);
    auto y = sin(x) * exp(x) + 3.0 / x;
    double want = std::cos(0.8) * std::exp(0.8) + std::sin(0.8) * std::exp(0.8) - 3.0 / 0.64;
    CHECK(y.val == doctest::Approx(std::sin(0.8) * std::exp(0.8) + 3.0 / 0.8).epsilon(1e-15));
    CHECK(y.dot == doctest::Approx(want).epsilon(1e-14));

    // second derivative of sin via one level of nesting
    Dual<Dual<double>> z(Dual<double>(0.8, 1.0), Dual<double>(1.0, 0.0));
    auto s2 = sin(z);
    CHECK(s2.dot.dot == doctest::Approx(-std::sin(0.8)).epsilon(1e-14));
}

TEST_CASE("jet exponential of a pure cross term gives X^k / k! on the diagonal") {
    QuadraticForm<double> q;
    q.cross = 1.7;
    auto jet = jet_exp_quadratic(q, 5, 5);
    for (int k = 0; k <= 5; ++k) {
        double want = std::pow(1.7, k) / factorial(k);
        CHECK(jet.at(k, k) == doctest::Approx(want).epsilon(1e-13));
        // off-diagonal coefficients vanish for a cross-only exponent
        if (k >= 1) CHECK(jet.at(k, k - 1) == 0.0);
    }
    CHECK(jet_mixed_derivative(jet, 3, 3) ==
          doctest::Approx(std::pow(1.7, 3) * factorial(3)).epsilon(1e-13));
}

TEST_CASE("jet exponential matches a brute-force truncated series") {
    QuadraticForm<double> q;
    q.lin_h = 0.3;
    q.lin_g = -0.2;
    q.cross = 1.1;
    q.sq_h = -0.45;
    q.sq_g = 0.25;
    auto jet = jet_exp_quadratic(q, 4, 4);

    // same object assembled the slow way
    BivariateJet<double> poly(4, 4);
    poly.at(1, 0) = q.lin_h;
    poly.at(0, 1) = q.lin_g;
    poly.at(1, 1) = q.cross;
    poly.at(2, 0) = q.sq_h;
    poly.at(0, 2) = q.sq_g;
    auto brute = BivariateJet<double>::unit(4, 4);
    auto power = BivariateJet<double>::unit(4, 4);
    double fact = 1.0;
    for (int m = 1; m <= 16; ++m) {
        power = power * poly;
        fact *= m;
        auto scaled = power;
        scaled.scale(1.0 / fact);
        brute += scaled;
    }
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
            CHECK(jet.at(i, j) == doctest::Approx(brute.at(i, j)).epsilon(1e-12));
}

TEST_CASE("jet arithmetic works over complex coefficients") {
    QuadraticForm<Cplx<double>> q;
    q.lin_h = Cplx<double>(0.0, 0.5);
    q.lin_g = Cplx<double>(0.0, -0.5);
    q.cross = Cplx<double>(0.8, 0.0);
    auto jet = jet_exp_quadratic(q, 2, 2);
    // c[1][1] = cross + lin_h lin_g = 0.8 + 0.25
    CHECK(jet.at(1, 1).re == doctest::Approx(1.05).epsilon(1e-14));
    CHECK(jet.at(1, 1).im == doctest::Approx(0.0));
    // conjugate-symmetric linear terms keep the diagonal real
    CHECK(jet.at(2, 2).im == doctest::Approx(0.0));
}

TEST_CASE("derivative orders beyond the truncation are rejected") {
    auto jet = BivariateJet<double>::unit(2, 3);
    CHECK_THROWS_AS(jet_mixed_derivative(jet, 3, 0), std::out_of_range);
    CHECK_THROWS_AS(jet_mixed_derivative(jet, 0, 4), std::out_of_range);
    CHECK_THROWS_AS(BivariateJet<double>(-1, 2), std::invalid_argument);
    QuadraticForm<double> q;
    q.cross = std::nan("");
    CHECK_THROWS_AS(jet_exp_quadratic(q, 2, 2), std::invalid_argument);
}
