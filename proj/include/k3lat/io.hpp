#pragma once

// JSON schemas for lattices, models and reports. Integers are JSON numbers when
// they fit in 64 bits and decimal strings otherwise; fractions are "p/q"
// strings and never floats.

#include "k3lat/bm.hpp"
#include "k3lat/discform.hpp"
#include "k3lat/extmukai.hpp"
#include "k3lat/glue.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/mukai.hpp"
#include "k3lat/normal_form.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3lat::io {

using nlohmann::json;

/// Malformed input; the message starts with the offending field path.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

// ---- parsing -------------------------------------------------------------

inline Int parse_int(const json& j, const std::string& path) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    return Int(j.get<std::int64_t>());
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    const std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return Int(s);
  }
  throw ParseError(path, "expected an integer");
}

inline Vector parse_vector(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an integer array");
  Vector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_int(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline std::vector<Vector> parse_vectors(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of integer arrays");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_vector(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline IntMatrix parse_matrix(const json& j, const std::string& path) {
  const auto rows = parse_vectors(j, path);
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != cols) throw ParseError(path + "[" + std::to_string(i) + "]", "ragged matrix row");
  return IntMatrix::from_rows(rows, cols);
}

inline const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(path, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

/// {"gram": ..., "label": ...} | {"standard": name, "n"/"k": int} | {"sum": [...]}
/// | {"rescale": {"of": ..., "by": int}} | {"disc": m}
inline IntegralLattice parse_lattice(const json& j, const std::string& path = "$") {
  if (!j.is_object()) throw ParseError(path, "lattice must be a JSON object");
  std::string label;
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw ParseError(path + ".label", "expected a string");
    label = j["label"].get<std::string>();
  }
  if (j.contains("gram")) {
    IntegralLattice lat(parse_matrix(j["gram"], path + ".gram"), label);
    return lat;
  }
  if (j.contains("standard")) {
    if (!j["standard"].is_string()) throw ParseError(path + ".standard", "expected a string");
    const std::string name = j["standard"].get<std::string>();
    IntegralLattice lat;
    if (name == "U") {
      lat = j.contains("k") ? hyperbolic_plane(parse_int(j["k"], path + ".k")) : hyperbolic_plane();
    } else if (name == "E8") {
      lat = e8();
    } else if (name == "E8-" || name == "E8(-1)") {
      lat = e8_negative();
    } else if (name == "K3") {
      lat = k3_lattice();
    } else if (name == "Mukai") {
      lat = mukai_lattice();
    } else if (name == "K3n") {
      lat = k3n_lattice(parse_int(require(j, "n", path), path + ".n"));
    } else {
      throw ParseError(path + ".standard", "unknown standard lattice \"" + name + "\"");
    }
    return label.empty() ? lat : lat.with_label(label);
  }
  if (j.contains("sum")) {
    const json& parts = j["sum"];
    if (!parts.is_array() || parts.empty()) throw ParseError(path + ".sum", "expected a non-empty array");
    std::vector<IntegralLattice> lats;
    for (std::size_t i = 0; i < parts.size(); ++i)
      lats.push_back(parse_lattice(parts[i], path + ".sum[" + std::to_string(i) + "]"));
    IntegralLattice lat = direct_sum(lats);
    return label.empty() ? lat : lat.with_label(label);
  }
  if (j.contains("rescale")) {
    const json& r = j["rescale"];
    const std::string rp = path + ".rescale";
    IntegralLattice lat = rescale(parse_lattice(require(r, "of", rp), rp + ".of"), parse_int(require(r, "by", rp), rp + ".by"));
    return label.empty() ? lat : lat.with_label(label);
  }
  if (j.contains("disc")) {
    json m = j["disc"];
    if (m.is_string()) {
      std::string s = m.get<std::string>();
      if (s.size() >= 2 && s.front() == '<' && s.back() == '>') s = s.substr(1, s.size() - 2);
      m = s;
    }
    IntegralLattice lat = rank_one(parse_int(m, path + ".disc"));
    return label.empty() ? lat : lat.with_label(label);
  }
  throw ParseError(path, "expected one of gram, standard, sum, rescale, disc");
}

/// {"r": int, "E": [ints], "s": int}
inline MukaiVector parse_mukai_vector(const json& j, const std::string& path = "$") {
  if (!j.is_object()) throw ParseError(path, "Mukai vector must be a JSON object");
  return MukaiVector{parse_int(require(j, "r", path), path + ".r"), parse_vector(require(j, "E", path), path + ".E"),
                     parse_int(require(j, "s", path), path + ".s")};
}

/// {"ns_gram": [[...]], "ample": [...]} ("ns" may carry any lattice JSON instead).
inline K3Model parse_model(const json& j, const std::string& path = "$") {
  if (!j.is_object()) throw ParseError(path, "model must be a JSON object");
  IntegralLattice ns;
  if (j.contains("ns_gram"))
    ns = IntegralLattice(parse_matrix(j["ns_gram"], path + ".ns_gram"), "NS");
  else if (j.contains("ns"))
    ns = parse_lattice(j["ns"], path + ".ns");
  else
    throw ParseError(path, "missing field \"ns_gram\"");
  std::optional<Vector> ample;
  if (j.contains("ample")) ample = parse_vector(j["ample"], path + ".ample");
  return K3Model(std::move(ns), std::move(ample));
}

/// {"ns_gram": [[...]], "H": [...]}
inline BmConfig parse_bm_config(const json& j, const std::string& path = "$") {
  K3Model model = parse_model(j, path);
  return BmConfig(std::move(model), parse_vector(require(j, "H", path), path + ".H"));
}

// ---- serialisation -------------------------------------------------------

inline json to_json(const Int& a) {
  if (a >= std::numeric_limits<std::int64_t>::min() && a <= std::numeric_limits<std::int64_t>::max())
    return json(static_cast<std::int64_t>(a));
  return json(a.str());
}

inline json to_json(const Rational& r) { return json(to_string(r)); }

inline json to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline json to_json(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline json to_json(const std::vector<Vector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline json to_json(const SnfDecomposition& s) {
  return json{{"d", to_json(s.d)}, {"left", to_json(s.left)}, {"right", to_json(s.right)}};
}

inline json lattice_info(const IntegralLattice& lat) {
  const Signature sig = lat.signature();
  json j{{"rank", lat.rank()},
         {"det", to_json(lat.det())},
         {"abs_det", to_json(abs(lat.det()))},
         {"signature", json::array({sig.positive, sig.negative})},
         {"even", true},
         {"unimodular", lat.is_unimodular()},
         {"gram", to_json(lat.gram())}};
  if (!lat.label().empty()) j["label"] = lat.label();
  return j;
}

inline json to_json(const FiniteQuadraticForm& f) {
  json q = json::array();
  json gens = json::array();
  for (std::size_t i = 0; i < f.num_generators(); ++i) {
    q.push_back(to_json(f.table()(i, i)));
    gens.push_back(to_json(f.generators()[i]));
  }
  json pairing = json::array();
  for (std::size_t i = 0; i < f.num_generators(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < f.num_generators(); ++j)
      row.push_back(i == j ? to_json(mod_z(f.table()(i, i))) : to_json(f.table()(i, j)));
    pairing.push_back(std::move(row));
  }
  return json{{"invariant_factors", to_json(f.invariant_factors())},
              {"order", to_json(f.order())},
              {"generators", std::move(gens)},
              {"q", std::move(q)},
              {"pairing", std::move(pairing)}};
}

inline json to_json(const FiniteQuadraticForm& f, const DiscElement& e) {
  return json{{"coeffs", to_json(e.coeffs)},
              {"order", to_json(f.element_order(e))},
              {"q", to_json(f.q(e))},
              {"representative", to_json(f.lift(e))}};
}

inline json to_json(const Sublattice& s) {
  return json{{"rank", s.rank()}, {"basis", to_json(s.basis())}, {"gram", to_json(s.gram())}, {"det", to_json(s.det())}};
}

inline json to_json(const MukaiVector& v) { return json{{"r", to_json(v.r)}, {"E", to_json(v.e)}, {"s", to_json(v.s)}}; }

inline json to_json(const ModuliReport& r) {
  json existence{{"kind", to_string(r.existence.kind)}, {"reason", r.existence.reason}};
  if (r.existence.kind == ModuliKind::point || r.existence.kind == ModuliKind::hyperkaehler)
    existence["dimension"] = to_json(r.existence.dimension);
  json j{{"v", to_json(r.v)},
         {"v_square", to_json(r.v_square)},
         {"existence", std::move(existence)},
         {"nonempty", r.nonempty ? json(*r.nonempty) : json("unknown")},
         {"moduli_type", r.moduli_type},
         {"div_v", to_json(r.div_v)},
         {"fine", r.fine},
         {"obstruction_order", to_json(r.obstruction_order)},
         {"ses_kernel_order", to_json(r.ses_kernel_order)},
         {"discriminant_form", to_json(r.form)},
         {"caldararu_class", to_json(r.form, r.caldararu)},
         {"transcendental_caldararu", to_json(r.transcendental, r.transcendental_caldararu)},
         {"assumes_generic_polarisation", r.assumes_generic_polarisation}};
  if (r.dimension) j["dimension"] = to_json(*r.dimension);
  return j;
}

inline json to_json(const TorsorClass& t, const FiniteQuadraticForm& ns_form) {
  json j{{"d", to_json(t.d)}, {"zeta_value", to_json(t.zeta_value)}, {"order", to_json(t.order)}};
  j["divisor"] = t.divisor ? to_json(*t.divisor) : json(nullptr);
  j["representative"] = t.representative ? to_json(ns_form, *t.representative) : json(nullptr);
  return j;
}

inline json to_json(const BirationalityCertificate& c, const FiniteQuadraticForm& form) {
  return json{{"d", to_json(c.d)},
              {"e", to_json(c.e)},
              {"fibre_class", to_json(c.fibre_class)},
              {"gcd_d", to_json(c.gcd_d)},
              {"gcd_e", to_json(c.gcd_e)},
              {"caldararu_d", to_json(form, c.class_d)},
              {"caldararu_e", to_json(form, c.class_e)},
              {"h_over_div_d", to_json(form, c.h_over_div_d)},
              {"h_over_div_e", to_json(form, c.h_over_div_e)},
              {"obstruction_order_d", to_json(c.obstruction_order_d)},
              {"obstruction_order_e", to_json(c.obstruction_order_e)},
              {"verdict", c.birational ? "birational" : "not_birational"}};
}

inline json to_json(const ExtMukaiReport& r) {
  return json{{"g", to_json(r.g)},
              {"gram_M", to_json(r.gram_m)},
              {"gram_Mprime", to_json(r.gram_mprime)},
              {"disc_M", to_json(r.disc_m)},
              {"disc_Mprime", to_json(r.disc_mprime)},
              {"distinct", r.distinct},
              {"applicable", r.applicable},
              {"ns_block_matches", r.ns_block_matches}};
}

inline json to_json(const GlueReport& r) {
  json images = json::array();
  for (const auto& e : r.images) images.push_back(to_json(e.coeffs));
  return json{{"N", to_json(r.n)},
              {"T", to_json(r.t)},
              {"A_N", to_json(r.form_n)},
              {"A_T", to_json(r.form_t)},
              {"glue_images", std::move(images)},
              {"lifts", to_json(r.lifts)},
              {"isomorphism", r.isomorphism},
              {"anti_isometric", r.anti_isometric}};
}

inline json to_json(const CokernelReport& r) {
  return json{{"divisibility", to_json(r.divisibility)},
              {"index", to_json(r.index)},
              {"ambient_v", to_json(r.ambient_v)},
              {"generator", to_json(r.generator)},
              {"generator_pairing", to_json(r.generator_pairing)},
              {"contains_N", r.contains_n},
              {"consistent", r.consistent}};
}

}  // namespace k3lat::io
