#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <catch_amalgamated.hpp>

#include "bispec/chebyshev.hpp"
#include "bispec/error.hpp"

using namespace bispec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Chebyshev recurrences", "[chebyshev]") {
  for (int k = 0; k <= 12; ++k)
    for (double t : {0.1, 0.7, 1.3, 2.9}) {
      const double x = std::cos(t);
      CHECK_THAT(cheb_eval(ChebKind::T, k, x), WithinAbs(std::cos(k * t), 1e-12));
      CHECK_THAT(cheb_eval(ChebKind::U, k, x), WithinAbs(std::sin((k + 1) * t) / std::sin(t), 1e-10));
      CHECK_THAT(phi_poly(k, 2 * x), WithinAbs(k == 0 ? 1.0 : 2 * std::cos(k * t), 1e-12));
    }
  CHECK(cheb_eval(ChebKind::U, -1, 0.3) == 0.0);
  CHECK_THROWS_AS(phi_poly(-1, 0.0), Error);
}

TEST_CASE("p and Gamma polynomials", "[chebyshev]") {
  for (double x : {-3.0, -0.5, 0.0, 1.7}) {
    CHECK_THAT(p_poly(1, 5, x), WithinAbs(x, 1e-12));
    CHECK_THAT(p_poly(2, 5, x), WithinAbs(x * x - 1 - 0.25, 1e-12));
    CHECK_THAT(gamma_poly(2, 5, x), WithinAbs(x * x - 2 + 3.0 / 4.0, 1e-12));
    CHECK_THAT(gamma_poly(3, 5, x), WithinAbs(phi_poly(3, x), 1e-12));
    CHECK_THAT(gamma_poly(4, 3, x), WithinAbs(phi_poly(4, x) + 0.25, 1e-12));
  }
  CHECK(gamma_shift(0, 4) == 0.0);
  CHECK(gamma_shift(1, 4) == 0.0);
  CHECK_THAT(gamma_shift(6, 4), WithinRel(2.0 / 27.0, 1e-14));
  CHECK(gamma_shift(4, 2) == 0.0);
  CHECK_THROWS_AS(p_poly(0, 3, 1.0), Error);
  CHECK_THROWS_AS(gamma_poly(2, 1, 1.0), Error);
}

TEST_CASE("basis conversion preserves the function", "[chebyshev]") {
  ChebExpansion e;
  e.basis = Basis::Phi;
  e.coeffs = {0.3, -1.2, 0.8, 0.0, 0.25, 0.1};
  const auto g = convert_basis(e, Basis::Gamma, 5);
  CHECK(g.basis == Basis::Gamma);
  for (std::size_t k = 1; k < e.coeffs.size(); ++k) CHECK(g.coeffs[k] == e.coeffs[k]);
  for (double x : {-2.5, -1.0, 0.0, 0.4, 3.1}) CHECK_THAT(g(x), WithinAbs(e(x), 1e-12));
  const auto back = convert_basis(g, Basis::Phi, 0);
  for (std::size_t k = 0; k < e.coeffs.size(); ++k) CHECK_THAT(back.coeffs[k], WithinAbs(e.coeffs[k], 1e-14));
  CHECK_THROWS_AS(convert_basis(e, Basis::Gamma, 1), Error);
}

TEST_CASE("exponential has modified Bessel coefficients", "[chebyshev]") {
  const auto e = fit_expansion([](double x) { return std::exp(x); }, Basis::Phi, 0, 2.0, 30);
  REQUIRE(e.coeffs.size() >= 12);
  for (int k = 0; k < static_cast<int>(e.coeffs.size()); ++k)
    CHECK_THAT(e.coeffs[k], WithinAbs(boost::math::cyl_bessel_i(k, 2.0), 1e-12));
  CHECK(e.rho > 5.0);
  for (double x : {-2.0, -0.3, 1.1, 2.0}) {
    CHECK(std::abs(e(x) - std::exp(x)) <= e.tail_bound + 1e-15);
    CHECK_THAT(e(x), WithinAbs(std::exp(x), 1e-11));
  }
}

TEST_CASE("fits of polynomials are exact and finite", "[chebyshev]") {
  auto f = [](double x) { return phi_poly(3, x) + 0.5 * phi_poly(1, x) - 2.0; };
  const auto e = fit_expansion(f, Basis::Phi, 0, 3.0, 20);
  CHECK(e.degree() == 3);
  CHECK_THAT(e.coeff(0), WithinAbs(-2.0, 1e-12));
  CHECK_THAT(e.coeff(1), WithinAbs(0.5, 1e-12));
  CHECK_THAT(e.coeff(2), WithinAbs(0.0, 1e-12));
  CHECK_THAT(e.coeff(3), WithinAbs(1.0, 1e-12));
  const auto g = fit_expansion([](double x) { return x * x; }, Basis::Gamma, 4, 3.0, 20);
  CHECK(g.basis == Basis::Gamma);
  for (double x : {-3.0, 0.2, 2.7}) CHECK_THAT(g(x), WithinAbs(x * x, 1e-10));
  CHECK(e.tail_bound < 1e-9);
}

TEST_CASE("non-analytic functions are rejected", "[chebyshev]") {
  try {
    fit_expansion([](double x) { return std::abs(x); }, Basis::Phi, 0, 2.0, 20);
    FAIL("expected NonDecayingCoefficients");
  } catch (const Error& ex) {
    CHECK(ex.kind() == ErrorKind::NonDecayingCoefficients);
  }
  // a pole just outside the interval decays too slowly for a wider fit window
  CHECK_THROWS_AS(fit_expansion([](double x) { return 1.0 / (2.2 - x); }, Basis::Phi, 0, 2.19, 15), Error);
  CHECK_THROWS_AS(fit_expansion([](double x) { return x; }, Basis::Gamma, 1, 2.0, 5), Error);
}

TEST_CASE("limit variances and covariances", "[chebyshev]") {
  for (int k = 2; k <= 6; ++k) CHECK_THAT(sigma_f(single_term(Basis::Phi, k)).value, WithinAbs(2.0 * k, 1e-12));
  CHECK(sigma_f(single_term(Basis::Phi, 1)).value == 0.0);
  CHECK(cov_fg(single_term(Basis::Phi, 2), single_term(Basis::Phi, 3)).value == 0.0);
  // basis does not matter for the variance
  CHECK_THAT(sigma_f(single_term(Basis::Gamma, 4, 5)).value, WithinAbs(8.0, 1e-12));
  const auto e = fit_expansion([](double x) { return std::exp(x); }, Basis::Phi, 0, 2.0, 30);
  double expected = 0.0;
  for (int k = 2; k < 40; ++k) expected += 2.0 * k * std::pow(boost::math::cyl_bessel_i(k, 2.0), 2);
  const auto s = sigma_f(e);
  CHECK(std::abs(s.value - expected) <= 1e-10 + s.truncation_bound);
}

TEST_CASE("limit means", "[chebyshev]") {
  CHECK(mu_cnbw(1, 3, 3) == 0.0);
  CHECK(mu_cnbw(3, 3, 3) == 64.0);
  CHECK(mu_cnbw(4, 3, 3) == 16.0 + 256.0);
  CHECK(mu_cnbw(6, 2, 3) == 4.0 + 8.0 + 64.0);
  CHECK_THAT(cycle_mean(3, 3, 3), WithinRel(64.0 / 6.0, 1e-14));
  CHECK(default_r_n(1000, 8, 8) == 1);
  CHECK(default_r_n(1000000, 2, 3, 0.5) == 9);
  CHECK(default_r_n(50, 2, 2) == 1);
  const double q = 49.0;
  CHECK_THAT(m_f_n(single_term(Basis::Phi, 3), 1000, 8, 8, 5), WithinRel(std::pow(q, 1.5), 1e-12));
  CHECK_THAT(m_f_n(single_term(Basis::Phi, 2), 1000, 8, 8, 5), WithinRel((q * q - 1000.0 * 6 * 7) / q, 1e-12));
  CHECK(m_f_n(single_term(Basis::Phi, 7), 1000, 8, 8, 5) == 0.0);
  CHECK_THAT(m_f_n(single_term(Basis::Gamma, 2, 8), 1000, 8, 8, 5),
             WithinRel(q, 1e-12));
}
