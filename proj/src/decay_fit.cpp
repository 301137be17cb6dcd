#include "hardy/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/QR>

#include "hardy/errors.hpp"

namespace hardy {

namespace {

// Design-matrix row for one n.
std::vector<double> basis(DecayKind kind, double n) {
  switch (kind) {
    case DecayKind::geometric:
      return {n, 1.0};
    case DecayKind::stretched:
      return {-std::sqrt(n), std::log(n), 1.0};
    case DecayKind::cusp:
      return {-n / std::log(n), 1.0};
  }
  return {};
}

}  // namespace

std::string to_string(DecayKind kind) {
  switch (kind) {
    case DecayKind::geometric:
      return "geometric";
    case DecayKind::stretched:
      return "stretched";
    case DecayKind::cusp:
      return "cusp";
  }
  return "";
}

DecayKind parse_decay_kind(const std::string& text) {
  if (text == "geometric") return DecayKind::geometric;
  if (text == "stretched") return DecayKind::stretched;
  if (text == "cusp") return DecayKind::cusp;
  throw ConfigError("unknown decay law '" + text + "'");
}

std::size_t DecayModel::parameter_count() const { return kind == DecayKind::stretched ? 3 : 2; }

double DecayModel::predict_log(double n) const {
  switch (kind) {
    case DecayKind::geometric:
      return n * fitted.at("log_r") + fitted.at("c");
    case DecayKind::stretched:
      return -fitted.at("b") * std::sqrt(n) + fitted.at("d") * std::log(n) + fitted.at("c");
    case DecayKind::cusp:
      return -fitted.at("b") * n / std::log(n) + fitted.at("c");
  }
  return 0.0;
}

DecayModel fit_log(std::span<const std::size_t> n, std::span<const double> log_values, DecayKind kind,
                   NRange range) {
  if (n.size() != log_values.size()) throw DomainError("index and value lists differ in length");
  if (range.last < range.first) throw RangeError("empty fit range");

  std::vector<std::size_t> used;
  std::vector<double> y;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < range.first || n[i] > range.last) continue;
    if (!std::isfinite(log_values[i])) throw DomainError("nonpositive value in fit range");
    if (kind == DecayKind::cusp && n[i] < 2) throw DomainError("cusp law needs n >= 2");
    used.push_back(n[i]);
    y.push_back(log_values[i]);
  }
  if (used.size() < 4) throw RangeError("fit needs at least 4 points in range");

  DecayModel model;
  model.kind = kind;
  model.n_range = range;
  const auto rows = Eigen::Index(used.size());
  const auto cols = Eigen::Index(model.parameter_count());
  Eigen::MatrixXd a(rows, cols);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto row = basis(kind, double(used[std::size_t(i)]));
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = row[std::size_t(j)];
    b(i) = y[std::size_t(i)];
  }
  const Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);

  switch (kind) {
    case DecayKind::geometric:
      model.fitted = {{"log_r", x(0)}, {"r", std::exp(x(0))}, {"c", x(1)}};
      break;
    case DecayKind::stretched:
      model.fitted = {{"b", x(0)}, {"d", x(1)}, {"c", x(2)}};
      break;
    case DecayKind::cusp:
      model.fitted = {{"b", x(0)}, {"c", x(1)}};
      break;
  }

  const Eigen::VectorXd r = b - a * x;
  const double mean = b.mean();
  const double ss_tot = (b.array() - mean).square().sum();
  const double ss_res = r.squaredNorm();
  if (ss_tot > 0.0) {
    model.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  } else {
    model.r_squared = ss_res <= 1e-24 ? 1.0 : 0.0;
  }
  model.n_used = std::move(used);
  model.residuals.assign(r.data(), r.data() + r.size());
  return model;
}

DecayModel fit(const SingularValueTable& table, DecayKind kind, NRange range) {
  std::vector<std::size_t> n;
  std::vector<double> y;
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    const std::size_t idx = i + 1;
    if (idx < range.first || idx > range.last) continue;
    const double v = table.values[i];
    if (!(v > 0.0)) throw DomainError("nonpositive singular value in fit range");
    if (v < kFitFloor) continue;
    n.push_back(idx);
    y.push_back(std::log(v));
  }
  return fit_log(n, y, kind, range);
}

DecayModel fit(const BoundReport& report, DecayKind kind, NRange range) {
  return fit_log(report.n_values, report.log_values, kind, range);
}

std::vector<std::size_t> compare(const std::vector<DecayModel>& models) {
  for (const auto& m : models) {
    if (!(m.n_range == models.front().n_range)) throw RangeError("models fitted on different ranges");
  }
  std::vector<std::size_t> order(models.size());
  std::iota(order.begin(), order.end(), std::size_t(0));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double ri = models[i].r_squared;
    const double rj = models[j].r_squared;
    if (std::abs(ri - rj) > 1e-12) return ri > rj;
    return models[i].parameter_count() < models[j].parameter_count();
  });
  return order;
}

}  // namespace hardy
