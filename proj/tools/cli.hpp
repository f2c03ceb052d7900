#pragma once

// Command-line front end. run() is kept free of process state so the tests can
// drive it in-process; main() only forwards argv and the standard streams.

#include "k3lat/k3lat.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace k3lat::cli {

using nlohmann::json;
using io::ParseError;

namespace detail {

inline json load_json(const std::string& arg, const std::string& what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw ParseError(what, "cannot read file \"" + arg + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what, std::string("invalid JSON: ") + e.what());
  }
}

inline Rational parse_fraction(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      const Int den = io::parse_int(json(s.substr(slash + 1)), path);
      if (den == 0) throw ParseError(path, "zero denominator");
      return Rational(io::parse_int(json(s.substr(0, slash)), path), den);
    }
  }
  return Rational(io::parse_int(j, path));
}

inline RatVector parse_rational_vector(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of integers or \"p/q\" strings");
  RatVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_fraction(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    return;
  }
  rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
}

/// Indented JSON with arrays kept on one line, so Gram matrices stay readable.
inline void pretty(const json& j, int depth, std::string& out) {
  if (!j.is_object() || j.empty()) {
    out += j.dump();
    return;
  }
  const std::string pad(2 * (depth + 1), ' ');
  out += "{\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad + json(it.key()).dump() + ": ";
    pretty(it.value(), depth + 1, out);
  }
  out += "\n" + std::string(2 * depth, ' ') + "}";
}

inline std::string render_json(const json& j) {
  std::string out;
  pretty(j, 0, out);
  return out + "\n";
}

/// Aligned two-column table of the flattened report.
inline std::string render_text(const json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  std::size_t width = 0;
  for (const auto& r : rows) width = std::max(width, r.first.size());
  std::string out;
  for (const auto& [key, value] : rows) {
    out += key;
    out.append(width - key.size() + 2, ' ');
    out += value;
    out += '\n';
  }
  return out;
}

}  // namespace detail

/// Exit codes: 0 success, 1 domain error, 2 usage or parse error.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact lattice computations for moduli spaces of sheaves on K3 surfaces", "k3lat"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable JSON output");

  std::string lattice_arg, basis_arg, vector_arg, matrix_arg, element_arg;
  std::string model_arg, u_arg, witness_arg, config_arg, zeta_arg;
  bool negate = false;
  std::optional<long long> d_opt, e_opt;
  long long bound = 3;
  long long genus = 0;

  auto* lat = app.add_subcommand("lat", "Lattice computations")->require_subcommand(1)->fallthrough();
  auto* lat_info = lat->add_subcommand("info", "Rank, determinant, signature");
  lat_info->add_option("--lattice", lattice_arg, "Lattice JSON (file or inline)")->required();
  auto* lat_snf = lat->add_subcommand("snf", "Smith normal form of an integer matrix");
  lat_snf->add_option("--matrix", matrix_arg, "Integer matrix JSON (file or inline)")->required();
  auto* lat_disc = lat->add_subcommand("disc", "Discriminant form");
  lat_disc->add_option("--lattice", lattice_arg, "Lattice JSON")->required();
  lat_disc->add_option("--element", element_arg, "Dual vector to reduce, entries int or \"p/q\"");
  lat_disc->add_flag("--negate", negate, "Report the (-1)-twisted form");
  auto* lat_comp = lat->add_subcommand("comp", "Orthogonal complement of a sublattice");
  lat_comp->add_option("--lattice", lattice_arg, "Lattice JSON")->required();
  lat_comp->add_option("--basis", basis_arg, "Sublattice basis, array of vectors")->required();
  auto* lat_sat = lat->add_subcommand("sat", "Saturation of a sublattice");
  lat_sat->add_option("--lattice", lattice_arg, "Lattice JSON")->required();
  lat_sat->add_option("--basis", basis_arg, "Sublattice basis, array of vectors")->required();
  auto* lat_div = lat->add_subcommand("div", "Divisibility and primitivity of a vector");
  lat_div->add_option("--lattice", lattice_arg, "Lattice JSON")->required();
  lat_div->add_option("--v", vector_arg, "Vector JSON")->required();

  auto* moduli = app.add_subcommand("moduli", "Moduli space report for a Mukai vector");
  moduli->add_option("--model", model_arg, "K3 model JSON")->required();
  moduli->add_option("--v", vector_arg, "Mukai vector JSON")->required();
  moduli->add_option("--u", u_arg, "Second Mukai vector for the orbit test");
  moduli->add_option("--witness", witness_arg, "U+U witness in N(S) coordinates: [e1,f1,e2,f2]");

  auto* bm = app.add_subcommand("bm", "Beauville-Mukai systems Pic^d");
  bm->add_option("--config", config_arg, "BM config JSON")->required();
  bm->add_option("--d", d_opt, "Degree d");
  bm->add_option("--e", e_opt, "Second degree e");
  bm->add_option("--bound", bound, "Search bound for divisors and fibre classes")->capture_default_str();
  bm->add_option("--zeta", zeta_arg, "Dual vector of NS (int or \"p/q\" entries) to evaluate zeta_H on");

  auto* ext = app.add_subcommand("extmukai", "Extended Mukai lattice discriminants");
  ext->add_option("--g", genus, "Genus g >= 2")->required();

  auto* verify = app.add_subcommand("verify", "Structural oracles")->require_subcommand(1)->fallthrough();
  auto* glue = verify->add_subcommand("glue", "Discriminant-form gluing of N and its complement");
  glue->add_option("--lattice", lattice_arg, "Unimodular lattice JSON")->required();
  glue->add_option("--basis", basis_arg, "Sublattice basis")->required();
  auto* cokernel = verify->add_subcommand("cokernel", "Congruence-sublattice index against div_N(v)");
  cokernel->add_option("--lattice", lattice_arg, "Unimodular lattice JSON")->required();
  cokernel->add_option("--basis", basis_arg, "Sublattice basis")->required();
  cokernel->add_option("--v", vector_arg, "Vector in sublattice coordinates")->required();

  for (auto* sub : {lat_info, lat_snf, lat_disc, lat_comp, lat_sat, lat_div, moduli, bm, ext, glue, cokernel})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << "\n";
    return 2;
  }

  auto emit_error = [&](const std::string& code, const std::string& message) {
    if (as_json)
      out << detail::render_json(json{{"error", {{"code", code}, {"message", message}}}});
    else
      err << "error: " << code << ": " << message << "\n";
  };

  try {
    json report;
    auto lattice = [&] { return io::parse_lattice(detail::load_json(lattice_arg, "--lattice"), "--lattice"); };
    auto basis = [&] { return io::parse_vectors(detail::load_json(basis_arg, "--basis"), "--basis"); };

    if (*lat_info) {
      report = io::lattice_info(lattice());
    } else if (*lat_snf) {
      report = io::to_json(snf(io::parse_matrix(detail::load_json(matrix_arg, "--matrix"), "--matrix")));
    } else if (*lat_disc) {
      FiniteQuadraticForm form = discriminant_form(lattice());
      if (negate) form = negate_form(form);
      report = io::to_json(form);
      if (!element_arg.empty()) {
        const RatVector x = detail::parse_rational_vector(detail::load_json(element_arg, "--element"), "--element");
        report["element"] = io::to_json(form, form.element_of(x));
      }
    } else if (*lat_comp) {
      const IntegralLattice l = lattice();
      const Sublattice s(l, basis());
      const Sublattice t = orthogonal_complement(s);
      report = io::to_json(t);
      report["input_degenerate"] = s.is_degenerate();
      report["rank_sum"] = s.rank() + t.rank();
    } else if (*lat_sat) {
      const IntegralLattice l = lattice();
      const auto sat = saturate_with_index(Sublattice(l, basis()));
      report = io::to_json(sat.lattice);
      report["index"] = io::to_json(sat.index);
    } else if (*lat_div) {
      const IntegralLattice l = lattice();
      const Vector v = io::parse_vector(detail::load_json(vector_arg, "--v"), "--v");
      report = json{{"divisibility", io::to_json(divisibility(l, v))}, {"primitive", is_primitive(l, v)}};
    } else if (*moduli) {
      const K3Model model = io::parse_model(detail::load_json(model_arg, "--model"), "--model");
      const MukaiVector v = io::parse_mukai_vector(detail::load_json(vector_arg, "--v"), "--v");
      const ModuliReport r = moduli_report(model, v);
      report = io::to_json(r);
      report["extended_ns"] = io::lattice_info(extended_ns(model));
      if (r.v_square >= 0) report["ns_of_moduli"] = io::to_json(ns_of_moduli(model, v));
      if (!u_arg.empty()) {
        if (witness_arg.empty()) throw ParseError("--witness", "required together with --u");
        const MukaiVector u = io::parse_mukai_vector(detail::load_json(u_arg, "--u"), "--u");
        check_mukai_vector(model, u);
        const auto w = io::parse_vectors(detail::load_json(witness_arg, "--witness"), "--witness");
        if (w.size() != 4) throw ParseError("--witness", "expected four vectors e1, f1, e2, f2");
        report["orbit_equivalent"] =
            orbit_equivalent(extended_ns(model), v.coords(), u.coords(), HyperbolicWitness{w[0], w[1], w[2], w[3]});
      }
    } else if (*bm) {
      const BmConfig c = io::parse_bm_config(detail::load_json(config_arg, "--config"), "--config");
      const FiniteQuadraticForm ns_form = discriminant_form(c.ns());
      const auto dual = find_dual_divisor(c, bound);
      const auto fibre = elliptic_with_section(c.ns(), bound);
      report["config"] = json{{"H", io::to_json(c.h())},
                              {"H_square", io::to_json(c.ns().square(c.h()))},
                              {"g", io::to_json(c.genus())},
                              {"div_H", io::to_json(c.div_h())}};
      report["dual_divisor"] = dual ? io::to_json(*dual) : json("not_found");
      report["elliptic_fibre"] = fibre ? io::to_json(*fibre) : json("inconclusive");
      if (!zeta_arg.empty()) {
        const RatVector a = detail::parse_rational_vector(detail::load_json(zeta_arg, "--zeta"), "--zeta");
        report["zeta_H"] = io::to_json(zeta_h(c, ns_form, ns_form.element_of(a)));
      }
      if (d_opt) {
        const Int d = *d_opt;
        report["pic_d"] = json{{"v_d", io::to_json(v_d(c, d))},
                               {"div_v_d", io::to_json(div_vd(c, d))},
                               {"sha_kernel_order", io::to_json(sha_kernel_order(c, d))},
                               {"torsor_class", io::to_json(torsor_class(c, d, bound), ns_form)}};
        if (e_opt) {
          const Int e = *e_opt;
          const FiniteQuadraticForm n_form = discriminant_form(extended_ns(c.model()));
          json pair{{"torsor_equivalent", torsor_equivalent(c, d, e)},
                    {"obstruction_image_exponent", io::to_json(obstruction_image_exponent(c, d, e))}};
          try {
            pair["birationality"] = io::to_json(bm_birational(c, d, e, bound), n_form);
          } catch (const Error& err) {
            if (err.code() != "hypothesis") throw;
            pair["birationality"] = json{{"error", {{"code", err.code()}, {"message", err.what()}}}};
          }
          report["pair"] = std::move(pair);
        }
      } else if (e_opt) {
        throw ParseError("--e", "requires --d");
      }
    } else if (*ext) {
      report = io::to_json(derived_distinct(genus));
    } else if (*glue) {
      const IntegralLattice l = lattice();
      report = io::to_json(glue_check(l, Sublattice(l, basis())));
    } else if (*cokernel) {
      const IntegralLattice l = lattice();
      const Sublattice n(l, basis());
      report = io::to_json(
          transcendental_cokernel(l, n, io::parse_vector(detail::load_json(vector_arg, "--v"), "--v")));
    }

    if (as_json)
      out << detail::render_json(report);
    else
      out << detail::render_text(report);
    return 0;
  } catch (const ParseError& e) {
    emit_error("parse", e.what());
    return 2;
  } catch (const Error& e) {
    emit_error(e.code(), e.what());
    return 1;
  }
}

}  // namespace k3lat::cli
