#pragma once

// JSON and DOT forms of the library types. Requires nlohmann/json.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lgcluster/comparison.hpp"

namespace lgcluster {

using Json = nlohmann::ordered_json;

// JSON integer when the value fits in 64 bits, decimal string otherwise.
inline Json coeff_to_json(const Coeff& c) {
  if (c >= INT64_MIN && c <= INT64_MAX) return static_cast<std::int64_t>(c);
  return c.str();
}

inline Coeff coeff_from_json(const Json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    const std::size_t digits = text.starts_with('-') ? 1 : 0;
    if (text.size() == digits || text.find_first_not_of("0123456789", digits) != std::string::npos) {
      throw InvalidArgument("malformed coefficient \"" + text + "\"");
    }
    return Coeff(text);
  }
  throw InvalidArgument("coefficient must be an integer or a decimal string");
}

// [{"exp":[...],"coeff":c}, ...] in canonical (ascending lex) order.
inline Json to_json(const LaurentPoly& f) {
  Json out = Json::array();
  for (const auto& [m, c] : f.terms()) out.push_back(Json{{"exp", m.exponents()}, {"coeff", coeff_to_json(c)}});
  return out;
}

inline LaurentPoly laurent_from_json(const Json& j, std::size_t nvars) {
  if (!j.is_array()) throw InvalidArgument("polynomial JSON must be an array of terms");
  LaurentPoly f(nvars);
  for (const auto& t : j) {
    auto exps = t.at("exp").get<std::vector<Exponent>>();
    if (exps.size() != nvars) throw VariableCountMismatch(nvars, exps.size());
    f.add_term(Monomial(std::move(exps)), coeff_from_json(t.at("coeff")));
  }
  return f;
}

inline Json to_json(const BMatrix& B) { return B.rows(); }

inline BMatrix bmatrix_from_json(const Json& j) {
  return BMatrix(j.get<std::vector<std::vector<std::int64_t>>>());
}

// {"vertices":n,"arrows":[[i,j,m],...]} with 1-based vertices.
inline Json to_json(const Quiver& q) {
  Json arrows = Json::array();
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (auto m = q.arrows(i, j); m > 0) arrows.push_back({i + 1, j + 1, m});
    }
  }
  return Json{{"vertices", q.size()}, {"arrows", arrows}};
}

inline std::vector<std::size_t> to_external(const std::vector<std::size_t>& seq) {
  std::vector<std::size_t> out(seq);
  for (auto& i : out) ++i;
  return out;
}

inline std::vector<std::size_t> to_internal(const std::vector<std::size_t>& seq) {
  std::vector<std::size_t> out(seq);
  for (auto& i : out) {
    if (i == 0) throw InvalidArgument("mutation indices are 1-based");
    --i;
  }
  return out;
}

// {"surface":..,"sequence":[1-based],"potential":[..],"directions":[[a,b],..]}
inline Json seed_to_json(Surface x, const std::vector<std::size_t>& seq, const LGSeed& s) {
  Json dirs = Json::array();
  for (const auto& d : s.directions()) dirs.push_back({d.a(), d.b()});
  return Json{{"surface", surface_name(x)},
              {"sequence", to_external(seq)},
              {"potential", to_json(s.potential())},
              {"directions", dirs}};
}

struct SeedRecord {
  Surface surface;
  std::vector<std::size_t> sequence;  // 0-based
  LGSeed seed;
};

inline SeedRecord seed_from_json(const Json& j) {
  const auto x = parse_surface(j.at("surface").get<std::string>());
  if (!x) throw InvalidArgument("unknown surface in seed JSON");
  std::vector<Direction> dirs;
  for (const auto& d : j.at("directions")) dirs.emplace_back(d.at(0).get<Exponent>(), d.at(1).get<Exponent>());
  return {*x, to_internal(j.at("sequence").get<std::vector<std::size_t>>()),
          LGSeed(laurent_from_json(j.at("potential"), 2), std::move(dirs))};
}

inline Json mode_to_json(const CheckMode& mode) {
  if (const auto* m = std::get_if<ModpMode>(&mode)) {
    return Json{{"modp", {{"prime", m->prime}, {"trials", m->trials}, {"rng_seed", m->rng_seed}}}};
  }
  return "exact";
}

inline Json report_to_json(const VerificationReport& r, bool with_timing = true) {
  Json j{{"check", r.check}};
  if (r.surface) j["surface"] = surface_name(*r.surface);
  j["sequence"] = to_external(r.sequence);
  if (r.direction) j["direction"] = *r.direction + 1;
  j["mode"] = mode_to_json(r.mode);
  j["outcome"] = r.passed ? "pass" : "fail";
  if (!r.passed) j["witness"] = r.witness;
  if (!r.note.empty()) j["note"] = r.note;
  if (with_timing) j["millis"] = r.millis;
  return j;
}

inline Json rep_data_to_json(const VirtualCharData& d) {
  return Json{{"f_polynomial", to_json(d.f_poly)}, {"f_text", d.f_poly.to_string("u")}, {"g_vector", d.g}};
}

// One edge per arrow class, labelled with its multiplicity. Vertices are
// numbered from 1.
inline std::string to_dot(const Quiver& q, const std::string& name = "Q") {
  std::string out = "digraph " + name + " {\n";
  for (std::size_t i = 0; i < q.size(); ++i) out += "  " + std::to_string(i + 1) + ";\n";
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (auto m = q.arrows(i, j); m > 0) {
        out += "  " + std::to_string(i + 1) + " -> " + std::to_string(j + 1) + " [label=" + std::to_string(m) +
               "];\n";
      }
    }
  }
  return out + "}\n";
}

}  // namespace lgcluster
