#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hardy/bounds.hpp"
#include "hardy/decay_fit.hpp"
#include "hardy/errors.hpp"

using hardy::Complex;
using hardy::Point;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::size_t> index_list(std::size_t first, std::size_t last) {
  std::vector<std::size_t> ns;
  for (std::size_t n = first; n <= last; ++n) ns.push_back(n);
  return ns;
}

}  // namespace

TEST_CASE("minoration constant in its three regimes") {
  CHECK(hardy::minoration_constant(1.0) == doctest::Approx(1.0 / 12.0));
  CHECK(hardy::minoration_constant(2.0) == doctest::Approx(1.0 / std::sqrt(12.0)));
  CHECK(hardy::minoration_constant(1.5, 2.0) == doctest::Approx(std::pow(12.0, -1.0 / 1.5) / 2.0));
  CHECK(hardy::minoration_constant(4.0, 7.0, 1.0) == doctest::Approx(1.0 / std::sqrt(12.0)));
  CHECK(hardy::minoration_constant(4.0, 1.0, 2.0) == doctest::Approx(0.5 / std::sqrt(12.0)));
  CHECK_THROWS_AS(hardy::minoration_constant(0.5), hardy::DomainError);
}

TEST_CASE("constants ledger") {
  const auto c2 = hardy::make_constants(2.0, 0.5);
  CHECK(c2.c_p == doctest::Approx(0.28867513459481287));
  CHECK(c2.lambda_constant == 12.0);
  CHECK(c2.alpha == doctest::Approx(kPi * kPi / 2.0));
  CHECK(*c2.beta_theta == doctest::Approx(kPi * kPi / (std::sqrt(2.0) * 0.5)));
  CHECK(c2.tau_rigorous);
  CHECK(c2.inverse_max_conjugate() == doctest::Approx(0.5));

  const auto c1 = hardy::make_constants(1.0);
  CHECK(std::isinf(c1.p_star));
  CHECK(c1.inverse_max_conjugate() == 0.0);
  CHECK(c1.lower_rigorous());

  const auto c4 = hardy::make_constants(4.0);
  CHECK(c4.p_tilde == 2.0);
  CHECK(c4.p_star == doctest::Approx(4.0 / 3.0));
  CHECK_FALSE(c4.lower_rigorous());
  // 1/max(p*, 2) = 1 - 1/min(p, 2) in every regime
  for (double p : {1.0, 1.2, 1.5, 2.0, 3.0, 8.0}) {
    const auto c = hardy::make_constants(p);
    const double via_conjugate = std::isinf(c.p_star) ? 0.0 : 1.0 / std::max(c.p_star, 2.0);
    CHECK(c.inverse_max_conjugate() == doctest::Approx(via_conjugate));
  }

  const auto over = hardy::make_constants(1.5, std::nullopt, {{"tau_p", "2"}, {"kappa_form", "lambda"}, {"lambda", "10"}});
  CHECK(over.c_p == doctest::Approx(std::pow(12.0, -1.0 / 1.5) / 2.0));
  CHECK(over.kappa_form == hardy::KappaForm::lambda);
  CHECK(over.lambda_constant == 10.0);
  CHECK_THROWS_AS(hardy::make_constants(2.0, std::nullopt, {{"nonsense", "1"}}), hardy::ConfigError);
  CHECK_THROWS_AS(hardy::make_constants(2.0, std::nullopt, {{"tau_p", "x"}}), hardy::ConfigError);
  CHECK_THROWS_AS(hardy::make_constants(2.0, std::nullopt, {{"kappa_form", "other"}}), hardy::ConfigError);

  const auto upper = hardy::make_upper_constants({{"upper.K", "3"}, {"upper.chi", "0.25"}, {"tau_p", "1"}});
  CHECK(upper.regular_k == 3.0);
  CHECK(upper.regular_chi == 0.25);
  CHECK(upper.carleson_c == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(hardy::make_upper_constants({{"upper.chi", "1.5"}}), hardy::ConfigError);
  CHECK_THROWS_AS(hardy::make_upper_constants({{"upper.other", "1"}}), hardy::ConfigError);
}

TEST_CASE("lobo bound for a single point at the origin") {
  const auto c = hardy::make_constants(2.0);
  const hardy::Sequence u(std::vector<Point>{Point()});
  const auto report = hardy::lobo_lower_bound(hardy::lens_symbol(0.5), u, c);
  CHECK(report.values.front() == doctest::Approx(1.0 / (std::sqrt(12.0) * 2.0 * std::numbers::e)).epsilon(1e-12));
  CHECK(report.values.front() == doctest::Approx(0.0531).epsilon(1e-3));
  CHECK(report.rigorous);
}

TEST_CASE("lobo bound rejects colliding images") {
  const auto c = hardy::make_constants(2.0);
  const hardy::Sequence u(std::vector<Point>{Point(0.2), Point(0.5)});
  CHECK_THROWS_AS(hardy::lobo_lower_bound(hardy::constant_symbol(0.3), u, c), hardy::DegenerateSequenceError);
}

TEST_CASE("mu_n of lens maps on geometric sequences") {
  for (double theta : {0.3, 0.5, 0.8}) {
    const auto lens = hardy::lens_symbol(theta);
    for (double p : {1.0, 2.0, 3.0}) {
      const auto c = hardy::make_constants(p, theta);
      for (double sigma : {0.2, 0.5, 0.9}) {
        for (std::size_t n : {1, 5, 20}) {
          const auto u = hardy::geometric_test_sequence(sigma, n);
          const auto report = hardy::lobo_lower_bound(lens, u, c);
          const double mu = std::exp(report.parameters.front().at("log_mu") / p);
          CHECK(mu >= std::pow(0.5 * std::pow(sigma, double(n)), (1.0 - theta) / p) * (1.0 - 1e-12));
        }
      }
    }
  }
}

TEST_CASE("sparser test sequences are better separated") {
  // sigma = 0.5 spreads the points further apart than sigma = 0.9
  const auto c = hardy::make_constants(2.0);
  const auto lens = hardy::lens_symbol(0.5);
  const auto close = hardy::lobo_lower_bound(lens, hardy::geometric_test_sequence(0.9, 6), c);
  const auto far = hardy::lobo_lower_bound(lens, hardy::geometric_test_sequence(0.5, 6), c);
  CHECK(far.parameters.front().at("log_delta_u") > close.parameters.front().at("log_delta_u"));
}

TEST_CASE("optimized radial sequence dominates every grid choice") {
  const auto c = hardy::make_constants(2.0, 0.5);
  const auto lens = hardy::lens_symbol(0.5);
  for (std::size_t n : {1, 4, 12}) {
    const auto [u, best] = hardy::optimize_lobo_sequence(lens, n, c);
    CHECK(u.size() == n);
    for (double eps : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
      const auto probe = hardy::lobo_lower_bound(lens, hardy::geometric_test_sequence(std::exp(-eps), n), c);
      CHECK(best.log_values.front() >= probe.log_values.front() - 1e-12);
    }
  }
}

TEST_CASE("n = 1 gives the single-point bound") {
  const auto c = hardy::make_constants(2.0);
  const auto [u, best] = hardy::optimize_lobo_sequence(hardy::lens_symbol(0.5), 1, c);
  CHECK(u.size() == 1);
  CHECK(best.values.front() == doctest::Approx(1.0 / (std::sqrt(12.0) * 2.0 * std::numbers::e)).epsilon(1e-9));
}

TEST_CASE("lens exponent beta_{p,theta}") {
  CHECK(hardy::lens_beta_p_theta(0.5, 2.0) == doctest::Approx(2.641).epsilon(1e-3));
  for (double theta : {0.1, 0.3, 0.5, 0.7, 0.95}) {
    for (double p : {1.0, 2.0, 5.0}) {
      CHECK(std::abs(hardy::lens_beta_p_theta(theta, p) - hardy::lens_beta_p_theta_closed(theta, p)) < 1e-12);
    }
  }
  CHECK(hardy::lens_beta_p_theta(0.999999, 2.0) < 1e-2);
  CHECK(hardy::lens_beta_p_theta(1e-6, 2.0) > 1e3);
  double previous = INFINITY;
  for (double theta = 0.05; theta < 1.0; theta += 0.05) {
    const double b = hardy::lens_beta_p_theta(theta, 2.0);
    CHECK(b < previous);
    previous = b;
  }
}

TEST_CASE("lens optimal epsilon") {
  const double beta = kPi * kPi / (std::pow(2.0, 0.5) * 0.5);
  CHECK(hardy::lens_optimal_epsilon(0.5, 2.0, 100) == doctest::Approx(std::sqrt(3.0 * beta * 2.0 / 0.5) / 10.0));
}

TEST_CASE("lens asymptotic bound") {
  const auto c = hardy::make_constants(2.0, 0.5);
  CHECK_THROWS_AS(hardy::lens_asymptotic_lower_bound(0.5, 2.0, 25, c), hardy::RangeError);
  CHECK_THROWS_AS(hardy::lens_asymptotic_lower_bound(1.0, 2.0, 1000, c), hardy::DomainError);
  CHECK(hardy::lens_asymptotic_lower_bound(0.5, 2.0, 200, c) > 0.0);

  const auto ns = index_list(1, 400);
  const auto report = hardy::lens_asymptotic_report(0.5, ns, c);
  CHECK(report.n_values.front() == 168);  // first n with eps* < 1
  for (std::size_t i = 1; i < report.values.size(); ++i) CHECK(report.values[i] <= report.values[i - 1]);
}

TEST_CASE("grid-optimal lobo bound is above the lens formula at n = 25") {
  const auto c = hardy::make_constants(2.0, 0.5);
  const auto [u, best] = hardy::optimize_lobo_sequence(hardy::lens_symbol(0.5), 25, c);
  CHECK(best.log_values.front() >= hardy::log_lens_asymptotic_formula(0.5, 2.0, 25, c));
}

TEST_CASE("radial bound grid contains the closed-form choices") {
  const auto lens = hardy::lens_symbol(0.5);
  const std::size_t n = 400;
  const auto grid = hardy::default_radial_sigma_grid(lens, n, 2.0);
  const double k = std::sqrt((1.0 - 0.5) / 0.5) / (10.0 * std::sqrt(2.0));
  const double lens_sigma = 1.0 - 1.0 / (k * std::sqrt(double(n)));
  CHECK(std::find(grid.begin(), grid.end(), lens_sigma) != grid.end());

  const auto cusp_grid = hardy::default_radial_sigma_grid(hardy::cusp_symbol(), n, 2.0);
  const double cusp_sigma = 1.0 - std::log(double(n)) / (4.0 * double(n));
  CHECK(std::find(cusp_grid.begin(), cusp_grid.end(), cusp_sigma) != cusp_grid.end());

  const auto st = hardy::shapiro_taylor_symbol(1.0);
  const auto st_grid = hardy::default_radial_sigma_grid(st, n, 2.0);
  const double st_sigma = 1.0 / (std::numbers::e * std::pow(st.radial_complement(1.0), 1.0 / double(n)));
  CHECK(std::find(st_grid.begin(), st_grid.end(), st_sigma) != st_grid.end());
}

TEST_CASE("radial bound") {
  const auto c = hardy::make_constants(2.0, 0.5);
  const auto lens = hardy::lens_symbol(0.5);
  const auto ns = index_list(1, 60);
  const auto report = hardy::radial_lower_bound(lens, ns, c);
  CHECK(report.rigorous);
  for (std::size_t i = 0; i < report.values.size(); ++i) {
    CHECK(report.values[i] > 0.0);
    if (i > 0) CHECK(report.values[i] <= report.values[i - 1]);
    // the supremum dominates each grid point
    const double sigma = report.parameters[i].at("sigma");
    CHECK(report.log_values[i] == doctest::Approx(hardy::log_radial_objective(lens, 2.0, ns[i], sigma, c)));
    CHECK(report.log_values[i] >= hardy::log_radial_objective(lens, 2.0, ns[i], 0.9, c));
  }
  CHECK_THROWS_AS(hardy::radial_lower_bound(hardy::identity_symbol(), ns, c), hardy::DomainError);
  const auto st = hardy::radial_lower_bound(hardy::shapiro_taylor_symbol(1.0), ns, hardy::make_constants(2.0));
  CHECK_FALSE(st.rigorous);
}

TEST_CASE("radial and closed-form lens bounds share the decay order") {
  const auto c = hardy::make_constants(2.0, 0.5);
  std::vector<std::size_t> ns;
  for (int i = 0; i <= 40; ++i) ns.push_back(std::size_t(std::lround(std::pow(10.0, 2.0 + 2.0 * i / 40.0))));
  const auto radial = hardy::radial_lower_bound(hardy::lens_symbol(0.5), ns, c);
  const auto closed = hardy::lens_asymptotic_report(0.5, ns, c);
  const auto f_radial = hardy::fit(radial, hardy::DecayKind::stretched, {100, 10000});
  const auto f_closed = hardy::fit(closed, hardy::DecayKind::stretched, {100, 10000});
  CHECK(f_closed.fitted.at("b") == doctest::Approx(hardy::lens_beta_p_theta(0.5, 2.0)).epsilon(1e-6));
  CHECK(std::abs(f_radial.fitted.at("b") / f_closed.fitted.at("b") - 1.0) < 0.5);
}

TEST_CASE("geometric decay floor") {
  CHECK(hardy::geometric_decay_floor(hardy::automorphism_symbol(Complex(0.3, 0.2)), 2000).value ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hardy::geometric_decay_floor(hardy::scale_symbol(0.5), 2000).value >= 0.25 - 1e-12);
  const auto lens = hardy::geometric_decay_floor(hardy::lens_symbol(0.5), 10000);
  CHECK(lens.value >= 0.25 - 1e-12);
  CHECK_FALSE(lens.degenerate);
  CHECK(hardy::geometric_decay_floor(hardy::constant_symbol(0.4), 500).degenerate);
}

TEST_CASE("Carl-Triebel inequality") {
  const std::vector<double> zeros(5, 0.0);
  CHECK(hardy::carl_triebel_lower_bound(zeros, 1.0, 5, 2) == 0.0);
  const std::vector<double> lambda{0.8, 0.5, 0.1};
  CHECK(hardy::carl_triebel_lower_bound(lambda, 1.0, 1, 0) == doctest::Approx(0.8 / 16.0));
  CHECK(hardy::carl_triebel_lower_bound(lambda, 2.0, 3, 1) ==
        doctest::Approx(std::sqrt(0.8 * 0.5 * 0.1 / (std::pow(16.0, 3) * 2.0))));
  CHECK_THROWS_AS(hardy::carl_triebel_lower_bound(lambda, 1.0, 2, 2), hardy::DomainError);

  // the specialization is the general bound with 2n eigenvalues s^{j-1} and m = n - 1,
  // after replacing a_n^{n+1} by ||T|| a_n^n
  const double s = 0.6;
  const double norm = 1.5;
  for (std::size_t n : {1, 3, 10}) {
    std::vector<double> geometric;
    for (std::size_t j = 0; j < 2 * n; ++j) geometric.push_back(std::pow(s, double(j)));
    const double general = hardy::log_carl_triebel_lower_bound(geometric, norm, 2 * n, n - 1);
    const double special = hardy::log_carl_triebel_specialized(s, norm, n);
    CHECK(special == doctest::Approx((double(n + 1) * general - std::log(norm)) / double(n)).epsilon(1e-12));
  }
}

TEST_CASE("Carleson window estimate") {
  const auto grid = hardy::WindowGrid::standard();
  SUBCASE("identity with the trivial Blaschke product") {
    // (1/h) m(arc within h of xi) = 2 arcsin(h/2) / (pi h), largest at h = 1
    hardy::WindowGrid coarse{{1.0, 0.5, 0.25, 0.125}, grid.angles};
    const auto est = hardy::carleson_window_upper_bound(hardy::identity_symbol(), {}, 2.0, 4, coarse, 1 << 16, 1);
    CHECK(est.window_sup == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
    CHECK(est.extremal_size == 1.0);
    CHECK_FALSE(est.resolution_warning);
    CHECK(est.value == doctest::Approx(std::sqrt(2.0) * 2.0 * std::sqrt(est.window_sup)));

    // h = 2^-10 windows hold a handful of samples; the noisy sup is flagged
    const auto fine = hardy::carleson_window_upper_bound(hardy::identity_symbol(), {}, 2.0, 4, grid, 1 << 14, 1);
    CHECK(fine.resolution_warning);
  }
  SUBCASE("h = 1 window never exceeds 1") {
    hardy::WindowGrid unit{{1.0}, grid.angles};
    const auto lens = hardy::lens_symbol(0.5);
    const std::vector<Point> zeros{Point(0.3), Point(-0.6)};
    const auto est = hardy::carleson_window_upper_bound(lens, zeros, 2.0, 3, unit, 1 << 13, 2);
    CHECK(est.window_sup <= 1.0);
  }
  SUBCASE("zeros at the images of a geometric sequence shrink the window supremum") {
    const auto lens = hardy::lens_symbol(0.5);
    double previous = INFINITY;
    for (std::size_t n : {1, 4, 8, 16}) {
      std::vector<Point> zeros;
      for (std::size_t j = 1; j < n; ++j) zeros.push_back(lens.evaluate(Point::from_polar_gap(std::pow(0.5, double(j)), 0.0)));
      const auto est = hardy::carleson_window_upper_bound(lens, zeros, 2.0, n, grid, 1 << 14, 3);
      CHECK(est.window_sup <= previous + 1e-3);
      previous = est.window_sup;
    }
  }
  SUBCASE("determinism and resolution warning") {
    const auto lens = hardy::lens_symbol(0.5);
    const auto a = hardy::carleson_window_upper_bound(lens, {}, 2.0, 2, grid, 4096, 9);
    const auto b = hardy::carleson_window_upper_bound(lens, {}, 2.0, 2, grid, 4096, 9);
    CHECK(a.value == b.value);
    const auto coarse = hardy::carleson_window_upper_bound(lens, {}, 2.0, 2, grid, 64, 9);
    CHECK(coarse.resolution_warning);
  }
  CHECK_THROWS_AS(hardy::carleson_window_upper_bound(hardy::identity_symbol(), {Point(0.1)}, 2.0, 1, grid, 64, 0),
                  hardy::DomainError);
  CHECK_THROWS_AS(hardy::carleson_window_upper_bound(hardy::cusp_symbol(), {}, 2.0, 1, grid, 64, 0), hardy::DomainError);
}

TEST_CASE("globally regular upper bound") {
  const auto identity_modulus = [](double log_h) { return log_h; };
  for (std::size_t k : {1, 10, 1000}) {
    const auto r = hardy::global_regular_upper_bound(identity_modulus, 1, 2.0, k);
    CHECK(r.value == doctest::Approx(1.0));
  }
  const auto growing = [](double log_h) { return 0.5 * log_h; };  // omega^{-1}(h) = sqrt(h) > h
  CHECK_THROWS_AS(hardy::global_regular_upper_bound(growing, 1, 2.0, 10), hardy::DomainError);

  // N_k and d_N against their definitions for the lens modulus
  const auto lens = hardy::lens_symbol(0.5);
  const auto& inv = lens.modulus()->log_omega_inverse;
  for (std::size_t k : {5, 50, 500, 5000}) {
    const auto r = hardy::global_regular_upper_bound(inv, 2, 2.0, k);
    auto d = [&](long N) {
      const double x = std::ldexp(1.0, -int(N));
      return long(std::floor(std::log(x / std::exp(inv(std::log(x)))) / std::log(4.0))) + 1;
    };
    CHECK(2 * r.n_k * d(r.n_k) < long(k));
    CHECK(2 * (r.n_k + 1) * d(r.n_k + 1) >= long(k));
    CHECK(r.d_n == d(r.n_k));
  }
  double previous = INFINITY;
  for (std::size_t k = 1; k <= 3000; k += 7) {
    const double v = hardy::global_regular_upper_bound(inv, 2, 2.0, k).value;
    CHECK(v <= previous);
    previous = v;
  }
}
