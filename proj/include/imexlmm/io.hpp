#pragma once

// JSON forms of schemes and certification reports. Scheme coefficients are
// written as exact fraction strings; parsing also accepts JSON integers.

#include "imexlmm/certify.hpp"
#include "imexlmm/errors.hpp"
#include "imexlmm/rational.hpp"
#include "imexlmm/schemes.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace imexlmm::io {

using json = nlohmann::ordered_json;

inline json rationals_to_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline std::vector<Rational> rationals_from_json(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw std::invalid_argument("scheme JSON: '" + key + "' must be an array");
  std::vector<Rational> out;
  for (const auto& e : j.at(key)) {
    if (e.is_string())
      out.push_back(parse_rational(e.get<std::string>()));
    else if (e.is_number_integer())
      out.push_back(Rational(e.get<long long>()));
    else
      throw std::invalid_argument("scheme JSON: entries of '" + key + "' must be fraction strings or integers");
  }
  return out;
}

/// {"k", "A", "B", "Bhat"} plus the difference-form columns for reference.
inline json scheme_to_json(const SchemeCoefficients& s) {
  json j;
  j["k"] = s.k;
  j["A"] = rationals_to_json(s.A);
  j["B"] = rationals_to_json(s.B);
  j["Bhat"] = rationals_to_json(s.Bhat);
  const auto r = reform(s);
  j["a"] = rationals_to_json(r.a);
  j["b"] = rationals_to_json(r.b);
  j["bhat"] = rationals_to_json(r.bhat);
  j["chat"] = rationals_to_json(r.chat);
  return j;
}

/// Reads "k", "A", "B", "Bhat"; any other keys are ignored.
inline SchemeCoefficients scheme_from_json(const json& j) {
  if (!j.is_object() || !j.contains("k") || !j.at("k").is_number_integer())
    throw std::invalid_argument("scheme JSON: need an object with integer 'k'");
  SchemeCoefficients s;
  s.k = j.at("k").get<int>();
  s.A = rationals_from_json(j, "A");
  s.B = rationals_from_json(j, "B");
  s.Bhat = rationals_from_json(j, "Bhat");
  check_shape(s);
  return s;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline SchemeCoefficients read_scheme(const std::string& path) { return scheme_from_json(read_json_file(path)); }

inline json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

inline json certificate_to_json(const EnergyCertificate& c) {
  json j;
  j["gamma"] = c.gamma;
  j["p"] = c.p;
  j["U"] = matrix_to_json(c.U);
  j["G"] = matrix_to_json(c.G);
  j["min_eig_G_plus_GT"] = c.G.size() ? min_eig_sym_sum(c.G) : 0.0;
  return j;
}

inline json report_to_json(const DissipationReport& r) {
  json j;
  j["certifiable"] = r.certifiable();
  if (r.refused) j["refusal_reason"] = r.refusal_reason;
  j["alpha_max"] = r.alpha_max;
  j["argmin_a"] = r.min_a.argmin;
  j["beta_max"] = r.beta_max;
  j["argmin_b"] = r.min_b.argmin;
  j["gamma_fraction"] = r.gamma_fraction;
  j["model"] = {{"ell_f", r.model.ell_f}, {"zeta", r.model.zeta}, {"eta", r.model.eta}};
  j["chat1"] = r.chat1;
  if (r.cert_a) j["certificate_a"] = certificate_to_json(*r.cert_a);
  if (r.cert_b) j["certificate_b"] = certificate_to_json(*r.cert_b);
  if (!r.refused) j["tau_max"] = r.tau_max;
  return j;
}

}  // namespace imexlmm::io
