#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "barrier.hpp"
#include "bounds.hpp"
#include "jost.hpp"
#include "potentials.hpp"
#include "spectra.hpp"
#include "sums.hpp"

// JSON in and out. Complex numbers travel as [re, im].

namespace jostspec::io {

using json = nlohmann::ordered_json;

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t h) {
  static const char* d = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = d[h & 15];
  return s;
}

inline json cj(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx read_cplx(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw DomainError("complex number must be a number or [re, im]");
}

// ---------------------------------------------------------------------------
// potential descriptors

struct Descriptor {
  json source;
  Potential q = Potential::zero();
  std::optional<BarrierSpec> barrier;
};

inline Descriptor parse_potential(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw DomainError("potential descriptor needs a string \"kind\"");
  Descriptor d;
  d.source = j;
  auto kind = j["kind"].get<std::string>();
  auto num = [&](const char* key) {
    if (!j.contains(key) || !j[key].is_number()) throw DomainError(std::string("descriptor field \"") + key + "\" missing");
    return j[key].get<double>();
  };
  if (kind == "zero") {
    d.q = Potential::zero();
  } else if (kind == "barrier") {
    d.barrier = BarrierSpec(num("gamma"), num("R"));
    d.q = d.barrier->potential();
  } else if (kind == "step") {
    if (!j.contains("breakpoints") || !j.contains("values")) throw DomainError("step needs breakpoints and values");
    std::vector<double> bp;
    for (const auto& b : j["breakpoints"]) {
      if (!b.is_number()) throw DomainError("breakpoints must be numbers");
      bp.push_back(b.get<double>());
    }
    std::vector<cplx> v;
    for (const auto& x : j["values"]) v.push_back(read_cplx(x));
    d.q = Potential::step(bp, v);
  } else if (kind == "gaussian") {
    if (!j.contains("c")) throw DomainError("gaussian needs c");
    d.q = Potential::gaussian_bump(read_cplx(j["c"]), num("x0"), num("s"));
  } else {
    throw DomainError("unknown potential kind \"" + kind + "\"");
  }
  return d;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// inline JSON when the argument starts with '{', otherwise a path
inline std::string descriptor_text(const std::string& arg) {
  auto p = arg.find_first_not_of(" \t\n");
  if (p != std::string::npos && arg[p] == '{') return arg;
  return read_file(arg);
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(what + ": " + e.what());
  }
}

inline Descriptor load_potential(const std::string& arg) {
  return parse_potential(parse_json(descriptor_text(arg), "potential descriptor"));
}

// ---------------------------------------------------------------------------
// output records

inline json to_json(const JostEvaluation& e) {
  auto f = e.folded();
  json j;
  j["method"] = method_name(f.method);
  j["z"] = cj(f.z);
  j["value"] = cj(f.value);
  j["derivative"] = cj(f.derivative);
  j["log_scale"] = f.log_scale;
  j["error"] = f.error_estimate;
  j["terms"] = f.terms;
  return j;
}

inline json to_json(const Eigenvalue& e) {
  json j;
  j["lambda"] = cj(e.lambda);
  j["z"] = cj(e.z);
  j["multiplicity"] = e.multiplicity;
  j["residual"] = e.residual;
  return j;
}

inline json to_json(const UnresolvedRegion& u) {
  json j;
  j["box"] = {u.box.x0, u.box.x1, u.box.y0, u.box.y1};
  j["count"] = u.count;
  j["reason"] = u.reason;
  return j;
}

inline json to_json(const FixedPointSolution& s) {
  json j;
  j["j"] = s.j;
  j["w"] = cj(s.w);
  j["lambda"] = cj(s.lambda);
  j["z"] = cj(s.z);
  j["iterations"] = s.iterations;
  j["residual_fp"] = s.residual_fp;
  j["residual_phi"] = s.residual_phi;
  j["contraction"] = s.contraction;
  j["converged"] = s.converged;
  j["in_sector"] = s.in_sector;
  j["in_spectrum"] = s.in_spectrum;
  j["is_eigenvalue"] = s.is_eigenvalue;
  j["unguaranteed"] = s.unguaranteed;
  if (!s.error.empty()) j["error"] = s.error;
  return j;
}

inline json to_json(const SumReport& r) {
  json j;
  j["kind"] = sum_kind_name(r.spec.kind);
  if (r.spec.kind == SumKind::S_eps) j["eps"] = r.spec.eps;
  if (r.spec.kind == SumKind::S_alpha_beta) {
    j["alpha"] = r.spec.alpha;
    j["beta"] = r.spec.beta;
  }
  j["value"] = r.value;
  j["raw_sum"] = r.raw_sum;
  j["n_terms"] = r.n_terms;
  j["unresolved"] = r.unresolved_flag;
  return j;
}

inline json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json to_json(const BoundReport& r) {
  json j;
  j["name"] = r.name;
  j["direction"] = r.direction == BoundDirection::upper ? "upper" : "lower";
  j["lhs"] = finite_or_null(r.lhs);
  j["rhs"] = finite_or_null(r.rhs);
  j["margin"] = finite_or_null(r.margin);
  j["preconditions_met"] = r.preconditions_met;
  j["passed"] = r.passed();
  json in = json::object();
  for (const auto& [k, v] : r.inputs) in[k] = finite_or_null(v);
  j["inputs"] = in;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// ---------------------------------------------------------------------------
// spectra read back for sums: {"eigenvalues": [...]}, a bare array, or
// JSON lines from the barrier stream (only is_eigenvalue records count)

struct LoadedSpectrum {
  std::vector<Eigenvalue> eigenvalues;
  bool unresolved = false;
};

inline Eigenvalue read_eigenvalue(const json& r) {
  if (!r.contains("lambda")) throw DomainError("spectrum record without lambda");
  cplx lam = read_cplx(r["lambda"]);
  cplx z = r.contains("z") ? read_cplx(r["z"]) : sq_plus(lam);
  int m = r.contains("multiplicity") ? r["multiplicity"].get<int>() : 1;
  double res = r.contains("residual") ? r["residual"].get<double>() : 0.0;
  return {z, lam, m, res};
}

inline LoadedSpectrum parse_spectrum(const std::string& text) {
  LoadedSpectrum out;
  json doc;
  bool whole = true;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error&) {
    whole = false;
  }
  if (whole && (doc.is_array() || (doc.is_object() && doc.contains("eigenvalues")))) {
    const json& arr = doc.is_array() ? doc : doc["eigenvalues"];
    for (const auto& r : arr) out.eigenvalues.push_back(read_eigenvalue(r));
    if (doc.is_object() && doc.contains("unresolved")) out.unresolved = !doc["unresolved"].empty();
    return out;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto r = parse_json(line, "spectrum line");
    if (r.contains("is_eigenvalue") && !r["is_eigenvalue"].get<bool>()) continue;
    out.eigenvalues.push_back(read_eigenvalue(r));
  }
  return out;
}

}  // namespace jostspec::io
