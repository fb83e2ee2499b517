#pragma once

#include <string>

#include "json.hpp"

#include "freecheck.hpp"
#include "lattice.hpp"
#include "widthengine.hpp"

namespace latwidth {

// Simplex file: {"dim": d, "vertices": [[...], ...]}
inline nlohmann::json to_json(const Simplex &s) {
  nlohmann::json verts = nlohmann::json::array();
  for (const auto &v : s.vertices()) verts.push_back(v);
  return {{"dim", s.dim()}, {"vertices", verts}};
}

inline Simplex simplex_from_json(const nlohmann::json &j) {
  Simplex s(j.at("vertices").get<std::vector<IntVector>>());
  if (j.contains("dim")) require_same_dim(static_cast<std::size_t>(j.at("dim").get<int>()),
                                          static_cast<std::size_t>(s.dim()));
  return s;
}

// Lattice file: {"dim": d, "modulus": "m", "y": [...]}
inline nlohmann::json to_json(const CyclicLattice &m) {
  return {{"dim", m.dim()}, {"modulus", std::to_string(m.modulus())}, {"y", m.generator()}};
}

inline CyclicLattice cyclic_lattice_from_json(const nlohmann::json &j) {
  const auto &mod = j.at("modulus");
  BigInt m = mod.is_string() ? BigInt(mod.get<std::string>()) : BigInt(mod.get<std::int64_t>());
  CyclicLattice lattice(to_int64(m), j.at("y").get<IntVector>());
  if (j.contains("dim")) require_same_dim(static_cast<std::size_t>(j.at("dim").get<int>()),
                                          static_cast<std::size_t>(lattice.dim()));
  return lattice;
}

inline nlohmann::json to_json(const RationalPoint &p) {
  return {{"numerators", p.numerators}, {"denominator", std::to_string(p.denominator)}};
}

inline nlohmann::json to_json(const FreenessCertificate &c) {
  nlohmann::json j{{"verdict", to_string(c.verdict)}};
  if (c.witness) j["witness"] = to_json(*c.witness);
  return j;
}

inline nlohmann::json to_json(const WidthCertificate &c) {
  nlohmann::json j{{"width", std::to_string(c.width)}, {"xi", c.minimizer}};
  if (c.simplex_covector) j["u"] = *c.simplex_covector;
  return j;
}

inline WidthCertificate width_certificate_from_json(const nlohmann::json &j) {
  WidthCertificate c;
  c.width = std::stoll(j.at("width").get<std::string>());
  c.minimizer = j.at("xi").get<IntVector>();
  if (j.contains("u")) c.simplex_covector = j.at("u").get<IntVector>();
  return c;
}

} // namespace latwidth
