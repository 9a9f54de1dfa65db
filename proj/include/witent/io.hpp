#pragma once

// JSON formats.
//
//   matrix / state: {"dims": [d1, ...], "re": [[...]], "im": [[...]]}, row-major
//   witness:        {"class", "n", "m", "trace_norm", "cuts": [[...]],
//                    "parts": {"P": matrix, "Q": [matrix, ...]}, "op": matrix}
//                   with null standing for an unbounded n or m
//   sdp problem:    {"blocks": [...], "C": [[[...]]], "b": [...],
//                    "A": [[{"block": k, "entries": [[row, col, value], ...]}]]}

#include <witent/herm.hpp>
#include <witent/measures.hpp>
#include <witent/sdp.hpp>
#include <witent/states.hpp>
#include <witent/witness.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace witent {

using json = nlohmann::json;

inline json matrix_to_json(const CMatrix& m, const std::optional<SystemShape>& shape = std::nullopt) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array(), ir = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ir.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  json out;
  out["dims"] = shape ? json(shape->local_dims()) : json::array({m.rows()});
  out["re"] = std::move(re);
  out["im"] = std::move(im);
  return out;
}
inline json matrix_to_json(const HermitianMatrix& h) { return matrix_to_json(h.mat(), h.shape_opt()); }

inline HermitianMatrix hermitian_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re")) throw std::invalid_argument("matrix JSON needs a \"re\" field");
  const auto& re = j.at("re");
  if (!re.is_array() || re.empty()) throw std::invalid_argument("matrix JSON: \"re\" must be a nonempty array");
  const auto n = static_cast<Eigen::Index>(re.size());
  const json* im = j.contains("im") ? &j.at("im") : nullptr;
  if (im && (!im->is_array() || static_cast<Eigen::Index>(im->size()) != n))
    throw std::invalid_argument("matrix JSON: \"im\" has the wrong number of rows");
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = re.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw std::invalid_argument("matrix JSON: row " + std::to_string(i) + " of \"re\" has the wrong length");
    for (Eigen::Index k = 0; k < n; ++k) {
      double imv = 0.0;
      if (im) {
        const auto& irow = im->at(static_cast<std::size_t>(i));
        if (!irow.is_array() || static_cast<Eigen::Index>(irow.size()) != n)
          throw std::invalid_argument("matrix JSON: row " + std::to_string(i) + " of \"im\" has the wrong length");
        imv = irow.at(static_cast<std::size_t>(k)).get<double>();
      }
      m(i, k) = cplx(row.at(static_cast<std::size_t>(k)).get<double>(), imv);
    }
  }
  std::optional<SystemShape> shape;
  if (j.contains("dims")) shape = SystemShape(j.at("dims").get<std::vector<std::size_t>>());
  return HermitianMatrix(m, shape);
}

inline json state_to_json(const DensityMatrix& rho) { return matrix_to_json(rho.op()); }
inline DensityMatrix state_from_json(const json& j) { return DensityMatrix(hermitian_from_json(j)); }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline json bound_to_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
inline double bound_from_json(const json& j) { return j.is_null() ? kUnbounded : j.get<double>(); }

inline json witness_to_json(const Witness& w) {
  json out;
  out["class"] = to_string(w.cls);
  out["n"] = bound_to_json(w.n);
  out["m"] = bound_to_json(w.m);
  out["trace_norm"] = to_string(w.trace_norm);
  json cuts = json::array();
  for (const auto& c : w.cuts) cuts.push_back(c.parties());
  out["cuts"] = std::move(cuts);
  json parts = json::object();
  if (w.P) parts["P"] = matrix_to_json(*w.P);
  json qs = json::array();
  for (const auto& q : w.Q) qs.push_back(matrix_to_json(q));
  parts["Q"] = std::move(qs);
  out["parts"] = std::move(parts);
  out["op"] = matrix_to_json(w.op);
  return out;
}

inline Witness witness_from_json(const json& j) {
  Witness w;
  w.op = hermitian_from_json(j.at("op"));
  w.cls = witness_class_from_string(j.value("class", std::string("operator")));
  w.n = j.contains("n") ? bound_from_json(j.at("n")) : kUnbounded;
  w.m = j.contains("m") ? bound_from_json(j.at("m")) : kUnbounded;
  w.trace_norm = trace_norm_from_string(j.value("trace_norm", std::string("none")));
  if (j.contains("cuts"))
    for (const auto& c : j.at("cuts")) w.cuts.emplace_back(c.get<std::vector<std::size_t>>());
  if (j.contains("parts")) {
    const auto& parts = j.at("parts");
    if (parts.contains("P")) w.P = hermitian_from_json(parts.at("P"));
    if (parts.contains("Q"))
      for (const auto& q : parts.at("Q")) w.Q.push_back(hermitian_from_json(q));
  }
  return w;
}

inline json certificate_to_json(const MixingCertificate& c) {
  return {{"s", c.s}, {"t", c.t}, {"sigma", state_to_json(c.sigma)}, {"pi1", state_to_json(c.pi1)},
          {"pi2", state_to_json(c.pi2)}};
}

inline json measure_result_to_json(const MeasureResult& r, bool include_witness = false) {
  json out;
  out["value"] = r.value;
  out["tolerance"] = r.tolerance;
  if (r.solver_iterations) out["solver_iterations"] = r.solver_iterations;
  if (include_witness && r.witness) out["witness"] = witness_to_json(*r.witness);
  if (include_witness && r.certificate) out["certificate"] = certificate_to_json(*r.certificate);
  return out;
}

inline json sdp_problem_to_json(const SdpProblem& p) {
  json out;
  out["blocks"] = p.block_dims;
  json c = json::array();
  for (const auto& blk : p.C) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < blk.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < blk.cols(); ++k) row.push_back(blk(i, k));
      rows.push_back(std::move(row));
    }
    c.push_back(std::move(rows));
  }
  out["C"] = std::move(c);
  json a = json::array();
  for (const auto& ai : p.A) {
    json blocks = json::array();
    for (const auto& sb : ai) {
      json entries = json::array();
      for (const auto& e : sb.entries) entries.push_back({e.row, e.col, e.value});
      blocks.push_back({{"block", sb.block}, {"entries", std::move(entries)}});
    }
    a.push_back(std::move(blocks));
  }
  out["A"] = std::move(a);
  out["b"] = std::vector<double>(p.b.data(), p.b.data() + p.b.size());
  return out;
}

inline SdpProblem sdp_problem_from_json(const json& j) {
  SdpProblem p;
  p.block_dims = j.at("blocks").get<std::vector<int>>();
  for (const auto& blk : j.at("C")) {
    const auto n = static_cast<Eigen::Index>(blk.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k)
        m(i, k) = blk.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(k)).get<double>();
    p.C.push_back(std::move(m));
  }
  for (const auto& ai : j.at("A")) {
    SparseSym s;
    for (const auto& sb : ai) {
      SparseBlock blk{sb.at("block").get<int>(), {}};
      for (const auto& e : sb.at("entries"))
        blk.entries.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
      s.push_back(std::move(blk));
    }
    p.A.push_back(std::move(s));
  }
  const auto b = j.at("b").get<std::vector<double>>();
  p.b = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  return p;
}

}  // namespace witent
