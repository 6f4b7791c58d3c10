#include "qvcs/serialization.hpp"

#include <charconv>
#include <cmath>
#include <utility>

#include "qvcs/errors.hpp"

namespace qvcs {

ordered_json to_json(const SpinorState& state) {
  ordered_json j;
  j["basis"] = "chi^s (x) Phi_n at index 2n + s, s = 0 (+), 1 (-)";
  j["n_max"] = state.n_max();
  j["dim"] = state.dim();
  ordered_json coeffs = ordered_json::array();
  for (Eigen::Index i = 0; i < state.coeffs().size(); ++i) {
    const cplx c = state.coeffs()(i);
    coeffs.push_back({c.real(), c.imag()});
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

SpinorState spinor_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coefficients") || !j["coefficients"].is_array()) {
    throw ValidationError("spinor JSON needs a coefficients array");
  }
  const auto& arr = j["coefficients"];
  CVector c(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& e = arr[i];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ValidationError("coefficient " + std::to_string(i) + " is not a [re, im] pair");
    }
    c(static_cast<Eigen::Index>(i)) = cplx(e[0].get<double>(), e[1].get<double>());
  }
  if (j.contains("dim") && j["dim"].get<std::size_t>() != arr.size()) {
    throw ValidationError("spinor JSON dim does not match the coefficient count");
  }
  try {
    return SpinorState(std::move(c));
  } catch (const ShapeError& e) {
    throw ValidationError(e.what());
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) os << ',';
    os << csv_field(fields[i]);
  }
  os << '\n';
}

}  // namespace qvcs
