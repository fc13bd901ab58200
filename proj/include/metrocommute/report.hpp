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

#include "metrocommute/conditions.hpp"
#include "metrocommute/descriptor.hpp"
#include "metrocommute/metrology.hpp"
#include "metrocommute/worked_examples.hpp"

#include <cstdio>

namespace metrocommute {

struct Analysis {
  ClassificationReport conditions;
  QfimResult fq;
  std::optional<double> qcr;
  std::optional<double> incompatibility;
  std::vector<std::string> notices;
  std::vector<double> theta;
  double rank_tol = kRankTol;
};

inline Analysis analyze(const Problem& p) {
  Analysis a;
  a.theta = p.theta;
  a.rank_tol = p.rank_tol;
  const EncodingPoint pt = encode(p.hams, p.theta);
  const SldSet sld = sld_rotated(p.rho.spectrum(), pt);
  a.conditions = classify(p.rho, pt, sld, p.zero_tol);
  a.conditions.commuting_hamiltonians = p.hams.commuting();
  a.fq = qfim(p.rho, sld);
  try {
    a.qcr = qcr_scalar(a.fq.matrix, p.weight ? *p.weight : WeightMatrix::identity(a.fq.matrix.rows()));
    a.incompatibility = incompatibility(a.fq.matrix, a.conditions.w).measure;
  } catch (const IdentifiabilityError& e) {
    a.notices.push_back(e.what());
  }
  if (a.conditions.gauge_dependent) {
    a.notices.push_back("state is rank-deficient: S and O use SLDs with a zero kernel-kernel block");
  }
  for (const auto& f : a.conditions.converse_failures) a.notices.push_back(f);
  return a;
}

namespace detail {

inline Json flag_block(double norm, bool holds) { return {{"norm", norm}, {"holds", holds}}; }

inline Json complex_matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(complex_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace detail

inline Json to_json(const Analysis& a) {
  const ClassificationReport& c = a.conditions;
  Json j;
  j["dim"] = c.dim;
  j["rank"] = c.rank;
  j["theta"] = a.theta;
  j["commuting_hamiltonians"] = c.commuting_hamiltonians;
  j["conditions"] = {{"weak", detail::flag_block(c.norm_w, c.wc)},
                     {"partial", detail::flag_block(c.norm_p, c.pc)},
                     {"one_sided", detail::flag_block(c.norm_o, c.oc)},
                     {"strong", detail::flag_block(c.norm_s, c.sc)}};
  j["hierarchy_consistent"] = c.hierarchy_consistent;
  j["W"] = detail::complex_matrix_json(c.w);
  j["qfim"] = {{"matrix", detail::real_matrix_json(a.fq.matrix)},
               {"rank", a.fq.rank},
               {"condition_number", std::isfinite(a.fq.condition_number) ? Json(a.fq.condition_number) : Json("inf")}};
  j["qcr_bound"] = a.qcr ? Json(*a.qcr) : Json(nullptr);
  j["incompatibility"] = a.incompatibility ? Json(*a.incompatibility) : Json(nullptr);
  j["notices"] = a.notices;
  j["tolerances"] = {{"rank", a.rank_tol}, {"zero", c.tolerance}, {"zero_scale", c.scale}};
  return j;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string to_text(const Analysis& a) {
  const ClassificationReport& c = a.conditions;
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "dim %ld, rank %d, commuting Hamiltonians: %s\n", static_cast<long>(c.dim), c.rank,
                yes_no(c.commuting_hamiltonians).c_str());
  out += line;
  out += "condition    norm          holds\n";
  const std::pair<const char*, std::pair<double, bool>> rows[] = {
      {"weak", {c.norm_w, c.wc}}, {"partial", {c.norm_p, c.pc}}, {"one-sided", {c.norm_o, c.oc}}, {"strong", {c.norm_s, c.sc}}};
  for (const auto& [name, v] : rows) {
    std::snprintf(line, sizeof line, "%-12s %-13.6e %s\n", name, v.first, yes_no(v.second).c_str());
    out += line;
  }
  out += "QFIM:\n";
  for (Eigen::Index i = 0; i < a.fq.matrix.rows(); ++i) {
    out += " ";
    for (Eigen::Index k = 0; k < a.fq.matrix.cols(); ++k) {
      std::snprintf(line, sizeof line, " %12.6f", a.fq.matrix(i, k));
      out += line;
    }
    out += "\n";
  }
  if (a.qcr) {
    std::snprintf(line, sizeof line, "QCR bound tr[M F^-1] = %.6f\nincompatibility E = %.6f\n", *a.qcr, *a.incompatibility);
    out += line;
  }
  for (const auto& n : a.notices) out += "note: " + n + "\n";
  std::snprintf(line, sizeof line, "tolerances: rank %g, zero %g (scale %g)\n", a.rank_tol, c.tolerance, c.scale);
  out += line;
  return out;
}

inline const char* kSweepHeader = "value,norm_W,norm_P,norm_O,norm_S,WC,PC,OC,SC,E";

inline std::string sweep_row(double value, const Analysis& a) {
  const ClassificationReport& c = a.conditions;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%.10g,%.10e,%.10e,%.10e,%.10e,%d,%d,%d,%d,", value, c.norm_w, c.norm_p, c.norm_o, c.norm_s,
                c.wc, c.pc, c.oc, c.sc);
  std::string row = buf;
  if (a.incompatibility) {
    std::snprintf(buf, sizeof buf, "%.10e", *a.incompatibility);
    row += buf;
  } else {
    row += "singular";
  }
  return row;
}

inline Json to_json(const ExampleReport& r) {
  Json values = Json::array();
  for (const auto& v : r.values) {
    values.push_back({{"name", v.name},
                      {"expected", detail::complex_json(v.expected)},
                      {"computed", detail::complex_json(v.computed)},
                      {"error", v.error()},
                      {"source", v.source}});
  }
  return {{"id", r.id}, {"title", r.title}, {"params", r.params}, {"values", values},
          {"max_abs_error", r.max_abs_error}, {"pass", r.pass}};
}

inline std::string format_complex(Complex z) {
  z += Complex(0.0, 0.0);  // drop negative zeros
  char buf[64];
  if (z.imag() == 0.0) std::snprintf(buf, sizeof buf, "%.10g", z.real());
  else std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
  return buf;
}

inline std::string to_text(const ExampleReport& r, bool verbose) {
  char line[512];
  std::string out;
  std::snprintf(line, sizeof line, "%-5s %-4s max|err| %.3e  %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.max_abs_error,
                r.title.c_str());
  out += line;
  if (!verbose && r.pass) return out;
  for (const auto& v : r.values) {
    if (!verbose && v.error() <= kExampleTol) continue;
    std::snprintf(line, sizeof line, "      %-44s expected %-28s computed %-28s err %.2e\n", v.name.c_str(),
                  format_complex(v.expected).c_str(), format_complex(v.computed).c_str(), v.error());
    out += line;
  }
  return out;
}

}  // namespace metrocommute
