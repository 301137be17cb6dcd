#include <doctest.h>

#include <cmath>
#include <random>

#include "hardy/decay_fit.hpp"
#include "hardy/errors.hpp"

using hardy::DecayKind;

namespace {

hardy::SingularValueTable table_from(const std::function<double(double)>& f, std::size_t count) {
  hardy::SingularValueTable t;
  for (std::size_t n = 1; n <= count; ++n) t.values.push_back(f(double(n)));
  t.truncation = count;
  return t;
}

}  // namespace

TEST_CASE("exact geometric data") {
  const auto t = table_from([](double n) { return std::pow(0.5, n); }, 30);
  const auto m = hardy::fit(t, DecayKind::geometric, {1, 30});
  CHECK(m.fitted.at("r") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(m.r_squared == doctest::Approx(1.0));
}

TEST_CASE("exact stretched data") {
  const auto t = table_from([](double n) { return std::exp(-2.0 * std::sqrt(n)); }, 60);
  const auto m = hardy::fit(t, DecayKind::stretched, {1, 60});
  CHECK(m.fitted.at("b") == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(m.fitted.at("d")) < 1e-9);
  CHECK(m.r_squared == doctest::Approx(1.0));
}

TEST_CASE("exact cusp data") {
  const auto t = table_from([](double n) { return 3.0 * std::exp(-0.7 * n / std::log(n)); }, 40);
  const auto m = hardy::fit(t, DecayKind::cusp, {2, 40});
  CHECK(m.fitted.at("b") == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(m.fitted.at("c") == doctest::Approx(std::log(3.0)).epsilon(1e-10));
}

TEST_CASE("refitting synthetic data recovers the parameters") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::size_t> n;
    for (std::size_t i = 2; i <= 80; ++i) n.push_back(i);
    for (DecayKind kind : {DecayKind::geometric, DecayKind::stretched, DecayKind::cusp}) {
      hardy::DecayModel truth;
      truth.kind = kind;
      truth.fitted = {{"log_r", -u(rng) / 3.0}, {"b", u(rng)}, {"d", u(rng) - 1.5}, {"c", u(rng) - 1.0}};
      std::vector<double> y;
      for (std::size_t k : n) y.push_back(truth.predict_log(double(k)));
      const auto m = hardy::fit_log(n, y, kind, {2, 80});
      for (const auto& [key, value] : m.fitted) {
        if (key == "r") continue;
        CHECK(value == doctest::Approx(truth.fitted.at(key)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("fitted decay parameter has the right sign on decaying data") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<std::size_t> n;
  std::vector<double> y;
  for (std::size_t k = 2; k <= 50; ++k) {
    n.push_back(k);
    y.push_back(-1.3 * std::sqrt(double(k)) + noise(rng));
  }
  for (DecayKind kind : {DecayKind::geometric, DecayKind::stretched, DecayKind::cusp}) {
    const auto m = hardy::fit_log(n, y, kind, {2, 50});
    CHECK(m.r_squared >= 0.0);
    CHECK(m.r_squared <= 1.0);
    if (m.r_squared > 0.9) {
      if (kind == DecayKind::geometric) CHECK(m.fitted.at("log_r") < 0.0);
      else CHECK(m.fitted.at("b") > 0.0);
    }
  }
}

TEST_CASE("ranking") {
  const auto t = table_from([](double n) { return std::pow(0.3, n); }, 30);
  std::vector<hardy::DecayModel> models;
  for (DecayKind kind : {DecayKind::stretched, DecayKind::cusp, DecayKind::geometric}) {
    models.push_back(hardy::fit(t, kind, {2, 30}));
  }
  CHECK(hardy::compare(models).front() == 2);

  // identical r^2: the model with fewer parameters wins
  hardy::DecayModel a;
  a.kind = DecayKind::stretched;
  a.r_squared = 0.97;
  hardy::DecayModel b;
  b.kind = DecayKind::cusp;
  b.r_squared = 0.97;
  const auto order = hardy::compare({a, b});
  CHECK(order.front() == 1);

  hardy::DecayModel other = b;
  other.n_range = {5, 9};
  CHECK_THROWS_AS(hardy::compare({a, other}), hardy::RangeError);
}

TEST_CASE("fit preconditions") {
  auto t = table_from([](double n) { return std::pow(0.5, n); }, 10);
  CHECK_THROWS_AS(hardy::fit(t, DecayKind::geometric, {1, 3}), hardy::RangeError);
  t.values[4] = 0.0;
  CHECK_THROWS_AS(hardy::fit(t, DecayKind::geometric, {1, 10}), hardy::DomainError);
  CHECK_THROWS_AS(hardy::fit(table_from([](double n) { return std::pow(0.5, n); }, 10), DecayKind::cusp, {1, 10}),
                  hardy::DomainError);
  CHECK_EQ(hardy::parse_decay_kind("stretched"), DecayKind::stretched);
  CHECK_THROWS_AS(hardy::parse_decay_kind("power"), hardy::ConfigError);
}

TEST_CASE("values below the noise floor are left out") {
  const auto t = table_from([](double n) { return std::pow(0.2, n); }, 25);
  const auto m = hardy::fit(t, DecayKind::geometric, {1, 25});
  CHECK(m.n_used.size() == 18);  // 0.2^19 < 1e-13
  CHECK(m.fitted.at("r") == doctest::Approx(0.2).epsilon(1e-10));
}
