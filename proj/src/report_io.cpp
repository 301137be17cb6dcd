#include "hardy/report_io.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

#include "hardy/errors.hpp"

namespace hardy {

using nlohmann::ordered_json;

namespace {

// JSON has no infinities; they are written as strings.
ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

ordered_json constants_json(const BoundConstants& c) {
  ordered_json j;
  j["p"] = number(c.p);
  j["p_tilde"] = number(c.p_tilde);
  j["p_star"] = number(c.p_star);
  j["tau_p"] = number(c.tau_p);
  j["tau_2"] = number(c.tau_2);
  j["tau_rigorous"] = c.tau_rigorous;
  j["c_p"] = number(c.c_p);
  j["c_p_by_case"] = {{"p=1", number(minoration_constant(1.0))},
                      {"1<p<=2", number(std::pow(12.0, -1.0 / c.p) / c.tau_p)},
                      {"p>2", number(minoration_constant(3.0, 1.0, c.tau_2))}};
  j["lambda"] = number(c.lambda_constant);
  j["kappa_form"] = c.kappa_form == KappaForm::vinogradov ? "vinogradov" : "lambda";
  j["alpha"] = number(c.alpha);
  if (c.theta) j["theta"] = number(*c.theta);
  if (c.beta_theta) j["beta_theta"] = number(*c.beta_theta);
  j["inverse_max_conjugate"] = number(c.inverse_max_conjugate());
  j["radial_sigma_exponent"] = number(c.radial_sigma_exponent);
  j["radial_c_prime"] = number(c.radial_c_prime);
  return j;
}

ordered_json upper_json(const UpperConstants& u) {
  return {{"C", number(u.carleson_c)},
          {"K", number(u.regular_k)},
          {"kappa", number(u.regular_kappa)},
          {"chi", number(u.regular_chi)},
          {"rigorous", false}};
}

std::string csv_params(const std::map<std::string, double>& params) {
  std::string s;
  for (const auto& [k, v] : params) {
    if (!s.empty()) s += ';';
    s += k + '=' + format_double(v);
  }
  return s;
}

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw ConfigError("format must be csv or json");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_table(std::ostream& out, const SingularValueTable& table, const std::string& symbol, Format format) {
  if (format == Format::csv) {
    out << "n,sigma,truncation,converged\n";
    for (std::size_t i = 0; i < table.values.size(); ++i) {
      out << i + 1 << ',' << format_double(table.values[i]) << ',' << table.truncation << ','
          << (i < table.converged_upto ? "true" : "false") << '\n';
    }
    return;
  }
  ordered_json j;
  j["symbol"] = symbol;
  j["truncation"] = table.truncation;
  j["converged_upto"] = table.converged_upto;
  j["non_converged"] = table.non_converged;
  ordered_json values = ordered_json::array();
  for (double v : table.values) values.push_back(number(v));
  j["sigma"] = std::move(values);
  out << j.dump(2) << '\n';
}

void write_reports(std::ostream& out, const std::vector<BoundReport>& reports, Format format) {
  if (format == Format::csv) {
    out << "bound,n,value,rigorous,params\n";
    for (const auto& r : reports) {
      for (std::size_t i = 0; i < r.n_values.size(); ++i) {
        out << r.bound_name << ',' << r.n_values[i] << ',' << format_double(r.values[i]) << ','
            << (r.rigorous ? "true" : "false") << ',' << csv_params(r.parameters[i]) << '\n';
      }
    }
    return;
  }
  ordered_json all = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json j;
    j["bound"] = r.bound_name;
    j["rigorous"] = r.rigorous;
    j["n"] = r.n_values;
    ordered_json values = ordered_json::array();
    ordered_json logs = ordered_json::array();
    ordered_json params = ordered_json::array();
    for (std::size_t i = 0; i < r.n_values.size(); ++i) {
      values.push_back(number(r.values[i]));
      logs.push_back(number(r.log_values[i]));
      ordered_json p = ordered_json::object();
      for (const auto& [k, v] : r.parameters[i]) p[k] = number(v);
      params.push_back(std::move(p));
    }
    j["value"] = std::move(values);
    j["log_value"] = std::move(logs);
    j["params"] = std::move(params);
    j["constants"] = constants_json(r.constants);
    all.push_back(std::move(j));
  }
  out << all.dump(2) << '\n';
}

void write_models(std::ostream& out, const std::vector<DecayModel>& models, const std::string& symbol) {
  ordered_json j;
  j["symbol"] = symbol;
  ordered_json list = ordered_json::array();
  for (const auto& m : models) {
    ordered_json e;
    e["kind"] = to_string(m.kind);
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : m.fitted) params[k] = number(v);
    e["parameters"] = std::move(params);
    e["r_squared"] = number(m.r_squared);
    e["n_range"] = {m.n_range.first, m.n_range.last};
    e["n_used"] = m.n_used;
    ordered_json residuals = ordered_json::array();
    for (double r : m.residuals) residuals.push_back(number(r));
    e["residuals"] = std::move(residuals);
    list.push_back(std::move(e));
  }
  j["models"] = std::move(list);
  if (models.size() > 1) {
    ordered_json ranking = ordered_json::array();
    for (std::size_t i : compare(models)) ranking.push_back(to_string(models[i].kind));
    j["ranking"] = std::move(ranking);
  }
  out << j.dump(2) << '\n';
}

void write_constants(std::ostream& out, const BoundConstants& constants, const UpperConstants& upper,
                     Format format) {
  ordered_json j;
  j["lower"] = constants_json(constants);
  j["upper"] = upper_json(upper);
  if (format == Format::json) {
    out << j.dump(2) << '\n';
    return;
  }
  out << "key,value\n";
  for (const auto& [group, entries] : j.items()) {
    for (const auto& [k, v] : entries.items()) {
      if (v.is_object()) {
        for (const auto& [k2, v2] : v.items()) out << group << '.' << k << '.' << k2 << ',' << v2.dump() << '\n';
      } else {
        out << group << '.' << k << ',' << (v.is_number_float() ? format_double(v.get<double>()) : v.dump()) << '\n';
      }
    }
  }
}

}  // namespace hardy
