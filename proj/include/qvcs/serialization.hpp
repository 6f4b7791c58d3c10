#pragma once

// JSON form of spinor states and a minimal CSV writer shared by the reports.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qvcs/fock.hpp"

namespace qvcs {

using ordered_json = nlohmann::ordered_json;

/// {"basis", "n_max", "dim", "coefficients": [[re, im], ...]} in basis order.
ordered_json to_json(const SpinorState& state);

/// Inverse of to_json. Throws ValidationError on malformed input.
SpinorState spinor_from_json(const nlohmann::json& j);

/// Shortest decimal text that round-trips to the same double ("%.17g" class),
/// with non-finite values spelled nan / inf / -inf.
std::string format_double(double x);

/// Quotes a field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace qvcs
