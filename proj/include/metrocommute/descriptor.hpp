// Copyright 2026 The metrocommute Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON problem descriptors: a state, a Hamiltonian set, theta, an optional weight matrix
// and tolerance overrides.

#include "metrocommute/conditions.hpp"
#include "metrocommute/encoding.hpp"
#include "metrocommute/families.hpp"
#include "metrocommute/metrology.hpp"
#include "metrocommute/states.hpp"

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>

namespace metrocommute {

using Json = nlohmann::json;

struct StateSpec {
  enum class Kind { Matrix, Eigpairs, Family };
  Kind kind = Kind::Matrix;
  Matrix matrix;
  std::vector<std::pair<double, Vector>> eigpairs;
  std::string family;
  Json params = Json::object();
};

struct HamiltonianSpec {
  bool is_family = false;
  Matrix matrix;
  std::string family;
  Json params = Json::object();
};

struct ProblemDescriptor {
  StateSpec state;
  std::vector<HamiltonianSpec> hamiltonians;
  std::vector<double> theta;  // empty means zeros
  std::optional<RealMatrix> weight_matrix;
  double rank_tol = kRankTol;
  double zero_tol = kZeroTol;
};

struct Problem {
  DensityMatrix rho;
  HamiltonianSet hams;
  std::vector<double> theta;
  std::optional<WeightMatrix> weight;
  double rank_tol = kRankTol;
  double zero_tol = kZeroTol;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

inline double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(path, "must be finite");
  return x;
}

inline Complex as_complex(const Json& j, const std::string& path) {
  if (j.is_number()) return as_number(j, path);
  if (!j.is_array() || j.size() != 2) fail(path, "expected a [re, im] pair");
  return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]")};
}

inline const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

inline void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (const auto& [k, v] : obj.items()) {
    bool ok = false;
    for (const char* allowed : keys) ok = ok || k == allowed;
    if (!ok) fail(path, "unexpected field '" + k + "'");
  }
}

inline Matrix parse_matrix(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object with 'dim' and 'entries'");
  only_keys(j, {"dim", "entries"}, path);
  const Json& jd = field(j, "dim", path);
  if (!jd.is_number_integer() || jd.get<long>() < 1 || jd.get<long>() > 4096) fail(path + ".dim", "expected a positive integer");
  const auto d = static_cast<Eigen::Index>(jd.get<long>());
  const Json& e = field(j, "entries", path);
  if (!e.is_array() || static_cast<Eigen::Index>(e.size()) != d * d) {
    fail(path + ".entries", "expected " + std::to_string(d * d) + " row-major entries");
  }
  Matrix m(d, d);
  for (Eigen::Index k = 0; k < d * d; ++k) {
    m(k / d, k % d) = as_complex(e[static_cast<std::size_t>(k)], path + ".entries[" + std::to_string(k) + "]");
  }
  return m;
}

inline Vector parse_vector(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of amplitudes");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) v[static_cast<Eigen::Index>(k)] = as_complex(j[k], path + "[" + std::to_string(k) + "]");
  return v;
}

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline Json matrix_json(const Matrix& m) {
  Json e = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) e.push_back(complex_json(m(i, j)));
  }
  return {{"dim", m.rows()}, {"entries", e}};
}

inline Json real_matrix_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

inline RealMatrix parse_real_matrix(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != n) fail(rp, "expected a row of length " + std::to_string(n));
    for (std::size_t k = 0; k < n; ++k) m(i, k) = as_number(j[i][k], rp + "[" + std::to_string(k) + "]");
  }
  return m;
}

inline Json parse_params(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    if (v.is_number()) as_number(v, path + "." + k);
    else if (!v.is_string() && !v.is_array()) fail(path + "." + k, "expected a number, string or array");
  }
  return j;
}

inline double param(const Json& params, const char* key, const std::string& path, std::optional<double> fallback = {}) {
  auto it = params.find(key);
  if (it == params.end()) {
    if (fallback) return *fallback;
    fail(path, std::string("missing parameter '") + key + "'");
  }
  return as_number(*it, path + "." + key);
}

inline int int_param(const Json& params, const char* key, const std::string& path, std::optional<int> fallback = {}) {
  const double x = param(params, key, path, fallback ? std::optional<double>(*fallback) : std::nullopt);
  if (x != std::floor(x)) fail(path + "." + key, "expected an integer");
  return static_cast<int>(x);
}

inline std::string string_param(const Json& params, const char* key, const std::string& path) {
  auto it = params.find(key);
  if (it == params.end() || !it->is_string()) fail(path, std::string("missing string parameter '") + key + "'");
  return it->get<std::string>();
}

inline void known_params(const Json& params, std::initializer_list<const char*> keys, const std::string& path) {
  for (const auto& [k, v] : params.items()) {
    bool ok = false;
    for (const char* allowed : keys) ok = ok || k == allowed;
    if (!ok) fail(path, "unknown parameter '" + k + "'");
  }
}

}  // namespace detail

inline const std::vector<std::string>& state_families() {
  static const std::vector<std::string> names = {"separable_mixture", "qutrit_rank_two", "cyclic_phase_mixture",
                                                 "cyclic_phase_marginal", "bell_rank_three", "qutrit_bell_pair",
                                                 "isotropic_bell", "bell_diagonal"};
  return names;
}

inline const std::vector<std::string>& hamiltonian_families() {
  static const std::vector<std::string> names = {"pauli", "spin", "qutrit_pair", "qutrit_sigma", "qutrit_diag"};
  return names;
}

inline DensityMatrix build_family_state(const std::string& name, const Json& params, const std::string& path) {
  using namespace detail;
  const std::string pp = path + ".params";
  if (name == "separable_mixture") {
    known_params(params, {"p"}, pp);
    return family::separable_mixture(param(params, "p", pp));
  }
  if (name == "qutrit_rank_two") {
    known_params(params, {"alpha", "lambda"}, pp);
    return family::qutrit_rank_two(param(params, "alpha", pp), param(params, "lambda", pp));
  }
  if (name == "cyclic_phase_mixture") {
    known_params(params, {"lambda"}, pp);
    return family::cyclic_phase_mixture(param(params, "lambda", pp));
  }
  if (name == "cyclic_phase_marginal") {
    known_params(params, {"pair"}, pp);
    return family::cyclic_phase_marginal(string_param(params, "pair", pp));
  }
  if (name == "bell_rank_three") {
    known_params(params, {"lambda1", "lambda2"}, pp);
    return family::bell_rank_three(param(params, "lambda1", pp), param(params, "lambda2", pp));
  }
  if (name == "qutrit_bell_pair") {
    known_params(params, {"lambda"}, pp);
    return family::qutrit_bell_pair(param(params, "lambda", pp));
  }
  if (name == "isotropic_bell") {
    known_params(params, {"lambda"}, pp);
    return family::isotropic(family::psi_plus(), param(params, "lambda", pp));
  }
  if (name == "bell_diagonal") {
    known_params(params, {"d", "weights"}, pp);
    const int d = int_param(params, "d", pp);
    if (d < 2 || d > 16) fail(pp + ".d", "expected 2 <= d <= 16");
    auto it = params.find("weights");
    if (it == params.end() || !it->is_array()) fail(pp, "missing array parameter 'weights'");
    std::vector<double> w;
    for (std::size_t k = 0; k < it->size(); ++k) w.push_back(as_number((*it)[k], pp + ".weights[" + std::to_string(k) + "]"));
    return bell_diagonal(w, d).state;
  }
  fail(path + ".family", "unknown state family '" + name + "'");
}

inline Matrix build_family_hamiltonian(const std::string& name, const Json& params, const std::string& path) {
  using namespace detail;
  const std::string pp = path + ".params";
  if (name == "pauli") {
    known_params(params, {"label", "scale"}, pp);
    return param(params, "scale", pp, 1.0) * family::pauli_string(string_param(params, "label", pp));
  }
  if (name == "spin") {
    known_params(params, {"x", "y", "z", "site", "sites"}, pp);
    const Matrix s = family::spin(param(params, "x", pp, 0.0), param(params, "y", pp, 0.0), param(params, "z", pp, 0.0));
    return family::local(s, int_param(params, "site", pp, 0), int_param(params, "sites", pp, 1));
  }
  if (name == "qutrit_pair") {
    known_params(params, {"a", "a_prime", "site", "sites"}, pp);
    const Matrix h = param(params, "a", pp) * family::qutrit_h() + param(params, "a_prime", pp) * family::qutrit_hprime();
    return family::local(h, int_param(params, "site", pp, 0), int_param(params, "sites", pp, 1));
  }
  if (name == "qutrit_sigma" || name == "qutrit_diag") {
    known_params(params, {"scale"}, pp);
    return param(params, "scale", pp, 1.0) * (name == "qutrit_sigma" ? family::qutrit_sigma() : family::qutrit_diag());
  }
  fail(path + ".family", "unknown Hamiltonian family '" + name + "'");
}

inline ProblemDescriptor parse_descriptor(const Json& j) {
  using namespace detail;
  if (!j.is_object()) fail("descriptor", "expected a JSON object");
  only_keys(j, {"state", "hamiltonians", "theta", "weight_matrix", "tolerances"}, "descriptor");
  ProblemDescriptor d;

  const Json& s = field(j, "state", "descriptor");
  if (!s.is_object()) fail("state", "expected an object");
  if (s.contains("family")) {
    only_keys(s, {"family", "params"}, "state");
    if (!s["family"].is_string()) fail("state.family", "expected a string");
    d.state.kind = StateSpec::Kind::Family;
    d.state.family = s["family"].get<std::string>();
    d.state.params = s.contains("params") ? parse_params(s["params"], "state.params") : Json::object();
  } else if (s.contains("eigpairs")) {
    only_keys(s, {"eigpairs"}, "state");
    const Json& pairs = s["eigpairs"];
    if (!pairs.is_array() || pairs.empty()) fail("state.eigpairs", "expected a non-empty array");
    d.state.kind = StateSpec::Kind::Eigpairs;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const std::string p = "state.eigpairs[" + std::to_string(k) + "]";
      if (!pairs[k].is_object()) fail(p, "expected an object with 'weight' and 'vector'");
      only_keys(pairs[k], {"weight", "vector"}, p);
      d.state.eigpairs.emplace_back(as_number(field(pairs[k], "weight", p), p + ".weight"),
                                    parse_vector(field(pairs[k], "vector", p), p + ".vector"));
    }
  } else {
    d.state.kind = StateSpec::Kind::Matrix;
    d.state.matrix = parse_matrix(s, "state");
  }

  const Json& hs = field(j, "hamiltonians", "descriptor");
  if (!hs.is_array() || hs.empty()) fail("hamiltonians", "expected a non-empty array");
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const std::string p = "hamiltonians[" + std::to_string(k) + "]";
    HamiltonianSpec h;
    if (hs[k].is_object() && hs[k].contains("family")) {
      only_keys(hs[k], {"family", "params"}, p);
      if (!hs[k]["family"].is_string()) fail(p + ".family", "expected a string");
      h.is_family = true;
      h.family = hs[k]["family"].get<std::string>();
      h.params = hs[k].contains("params") ? parse_params(hs[k]["params"], p + ".params") : Json::object();
    } else {
      h.matrix = parse_matrix(hs[k], p);
    }
    d.hamiltonians.push_back(std::move(h));
  }

  if (j.contains("theta")) {
    const Json& t = j["theta"];
    if (!t.is_array()) fail("theta", "expected an array of numbers");
    for (std::size_t k = 0; k < t.size(); ++k) d.theta.push_back(as_number(t[k], "theta[" + std::to_string(k) + "]"));
  }
  if (j.contains("weight_matrix")) d.weight_matrix = parse_real_matrix(j["weight_matrix"], "weight_matrix");
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    if (!t.is_object()) fail("tolerances", "expected an object");
    only_keys(t, {"rank", "zero"}, "tolerances");
    if (t.contains("rank")) d.rank_tol = as_number(t["rank"], "tolerances.rank");
    if (t.contains("zero")) d.zero_tol = as_number(t["zero"], "tolerances.zero");
    if (!(d.rank_tol > 0) || !(d.zero_tol > 0)) fail("tolerances", "tolerances must be positive");
  }
  return d;
}

// Canonical form: keys sorted, matrices as {"dim", "entries"}, defaults written out.
inline Json to_json(const ProblemDescriptor& d) {
  using namespace detail;
  Json j;
  switch (d.state.kind) {
    case StateSpec::Kind::Matrix: j["state"] = matrix_json(d.state.matrix); break;
    case StateSpec::Kind::Eigpairs: {
      Json pairs = Json::array();
      for (const auto& [w, v] : d.state.eigpairs) {
        Json amps = Json::array();
        for (Eigen::Index k = 0; k < v.size(); ++k) amps.push_back(complex_json(v[k]));
        pairs.push_back({{"weight", w}, {"vector", amps}});
      }
      j["state"] = {{"eigpairs", pairs}};
      break;
    }
    case StateSpec::Kind::Family: j["state"] = {{"family", d.state.family}, {"params", d.state.params}}; break;
  }
  Json hs = Json::array();
  for (const auto& h : d.hamiltonians) {
    hs.push_back(h.is_family ? Json{{"family", h.family}, {"params", h.params}} : matrix_json(h.matrix));
  }
  j["hamiltonians"] = hs;
  j["theta"] = d.theta.empty() ? std::vector<double>(d.hamiltonians.size(), 0.0) : d.theta;
  if (d.weight_matrix) j["weight_matrix"] = real_matrix_json(*d.weight_matrix);
  j["tolerances"] = {{"rank", d.rank_tol}, {"zero", d.zero_tol}};
  return j;
}

inline ProblemDescriptor parse_descriptor_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return parse_descriptor(j);
}

inline ProblemDescriptor load_descriptor(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open descriptor '" + file + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_descriptor_text(ss.str());
}

inline Problem build_problem(const ProblemDescriptor& d) {
  DensityMatrix rho = [&] {
    switch (d.state.kind) {
      case StateSpec::Kind::Matrix: return DensityMatrix(d.state.matrix, d.rank_tol);
      case StateSpec::Kind::Eigpairs: return density_from_eigpairs(d.state.eigpairs, d.rank_tol);
      case StateSpec::Kind::Family: break;
    }
    return DensityMatrix(build_family_state(d.state.family, d.state.params, "state").matrix(), d.rank_tol);
  }();

  std::vector<HermitianOperator> ops;
  for (std::size_t k = 0; k < d.hamiltonians.size(); ++k) {
    const std::string path = "hamiltonians[" + std::to_string(k) + "]";
    const auto& h = d.hamiltonians[k];
    const Matrix m = h.is_family ? build_family_hamiltonian(h.family, h.params, path) : h.matrix;
    if (m.rows() != rho.dim()) {
      detail::fail(path, "dimension " + std::to_string(m.rows()) + " differs from state dimension " + std::to_string(rho.dim()));
    }
    try {
      ops.emplace_back(m);
    } catch (const ValidationError& e) {
      detail::fail(path, e.what());
    }
  }
  HamiltonianSet hs(std::move(ops));
  std::vector<double> theta = d.theta.empty() ? std::vector<double>(hs.size(), 0.0) : d.theta;
  if (theta.size() != hs.size()) {
    detail::fail("theta", "expected " + std::to_string(hs.size()) + " values, got " + std::to_string(theta.size()));
  }
  std::optional<WeightMatrix> weight;
  if (d.weight_matrix) {
    if (d.weight_matrix->rows() != static_cast<Eigen::Index>(hs.size())) {
      detail::fail("weight_matrix", "size must equal the number of Hamiltonians");
    }
    try {
      weight.emplace(*d.weight_matrix);
    } catch (const ValidationError& e) {
      detail::fail("weight_matrix", e.what());
    }
  }
  return Problem{std::move(rho), std::move(hs), std::move(theta), std::move(weight), d.rank_tol, d.zero_tol};
}

// Sweepable names: a numeric state-family parameter ("p"), "H<i>.<key>" for a Hamiltonian
// family parameter (1-based), or "theta<i>".
inline ProblemDescriptor with_parameter(ProblemDescriptor d, const std::string& name, double value) {
  auto set_in = [&](Json& params, const std::string& key, const std::string& where) {
    auto it = params.find(key);
    if (it == params.end() || !it->is_number()) throw ValidationError("unknown parameter '" + name + "' (" + where + ")");
    *it = value;
  };
  if (name.rfind("theta", 0) == 0 && name.size() > 5) {
    const std::size_t idx = std::stoul(name.substr(5));
    if (d.theta.empty()) d.theta.assign(d.hamiltonians.size(), 0.0);
    if (idx < 1 || idx > d.theta.size()) throw ValidationError("unknown parameter '" + name + "'");
    d.theta[idx - 1] = value;
    return d;
  }
  if (name.size() > 2 && name[0] == 'H' && name.find('.') != std::string::npos) {
    const std::size_t dot = name.find('.');
    std::size_t idx = 0;
    try {
      idx = std::stoul(name.substr(1, dot - 1));
    } catch (const std::exception&) {
      throw ValidationError("unknown parameter '" + name + "'");
    }
    if (idx < 1 || idx > d.hamiltonians.size() || !d.hamiltonians[idx - 1].is_family) {
      throw ValidationError("unknown parameter '" + name + "' (no such family Hamiltonian)");
    }
    set_in(d.hamiltonians[idx - 1].params, name.substr(dot + 1), "Hamiltonian family parameters");
    return d;
  }
  if (d.state.kind != StateSpec::Kind::Family) throw ValidationError("unknown parameter '" + name + "' (state is not a family)");
  set_in(d.state.params, name, "state family parameters");
  return d;
}

}  // namespace metrocommute
