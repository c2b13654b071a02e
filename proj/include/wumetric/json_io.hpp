#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wumetric/curvature.hpp"
#include "wumetric/kobayashi.hpp"
#include "wumetric/verify.hpp"
#include "wumetric/wu_metric.hpp"

namespace wumetric {

using json = nlohmann::ordered_json;

inline json to_json(const Complex& c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

inline json to_json(const CVec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(to_json(v[i]));
  return arr;
}

inline json to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const KobayashiBreakdown& b) {
  json out;
  out["value"] = b.value;
  out["regime"] = to_string(b.regime);
  if (b.w_infinite)
    out["w"] = "inf";
  else if (b.w)
    out["w"] = *b.w;
  else
    out["w"] = nullptr;
  const auto opt = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  out["t"] = opt(b.t);
  out["alpha"] = opt(b.alpha);
  out["k1"] = opt(b.k1);
  out["k2"] = opt(b.k2);
  out["w0"] = opt(b.w0);
  out["t0"] = opt(b.t0);
  out["x0"] = opt(b.x0);
  return out;
}

inline json to_json(const HermitianForm& f) {
  Eigen::SelfAdjointEigenSolver<CMat> es(f.h, Eigen::EigenvaluesOnly);
  json out;
  out["matrix"] = to_json(f.h);
  json eig = json::array();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) eig.push_back(es.eigenvalues()(i));
  out["eigenvalues"] = eig;
  out["base"] = to_json(f.base);
  return out;
}

inline json to_json(const EllipsoidFit& f) {
  return json{{"r1", f.r1},
              {"r2", f.r2},
              {"objective", f.objective},
              {"max_violation", f.max_violation},
              {"samples_used", f.samples_used}};
}

inline json to_json(const CheckResult& r) {
  return json{{"name", r.name}, {"passed", r.passed}, {"margin", r.margin}, {"details", r.details}};
}

inline json to_json(const std::vector<CheckResult>& rs) {
  json arr = json::array();
  for (const CheckResult& r : rs) arr.push_back(to_json(r));
  return arr;
}

}  // namespace wumetric
