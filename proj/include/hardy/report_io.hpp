#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hardy/bounds.hpp"
#include "hardy/decay_fit.hpp"
#include "hardy/spectral_oracle.hpp"

namespace hardy {

enum class Format { csv, json };

Format parse_format(const std::string& text);

/// Shortest round-trip decimal form; identical input gives identical text.
std::string format_double(double x);

/// CSV columns: n,sigma,truncation,converged
void write_table(std::ostream& out, const SingularValueTable& table, const std::string& symbol, Format format);

/// CSV columns: bound,n,value,rigorous,params (params as key=value;...).
/// JSON keeps log values and the full constants snapshot.
void write_reports(std::ostream& out, const std::vector<BoundReport>& reports, Format format);

/// JSON: kind, parameters, r_squared, n_range, residuals; plus the ranking
/// when more than one model is given.
void write_models(std::ostream& out, const std::vector<DecayModel>& models, const std::string& symbol);

void write_constants(std::ostream& out, const BoundConstants& constants, const UpperConstants& upper,
                     Format format);

}  // namespace hardy
