#pragma once

// Command line front end. run_cli is the whole program minus process glue,
// so tests can drive it with argument vectors and capture the streams.
//
// Exit codes: 0 success (or verification pass), 1 verification failure,
// 2 usage or input error.

#include "hkcone/model_io.hpp"
#include "hkcone/mukai.hpp"
#include "hkcone/ray_analysis.hpp"
#include "hkcone/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace hkcone {

namespace cli_detail {

inline std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) throw ParseError("empty entry in integer list '" + text + "'");
    try {
      out.push_back(Int(cur));
    } catch (const std::runtime_error&) {
      throw ParseError("bad integer '" + cur + "' in '" + text + "'");
    }
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  flush();
  return out;
}

inline LatticePtr parse_surface_gram(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("surface Gram: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw ParseError("surface Gram must be a nonempty matrix");
  std::size_t n = j.size();
  RatMatrix g(n, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw ParseError("surface Gram must be square");
    for (std::size_t k = 0; k < n; ++k) {
      if (!j[i][k].is_number_integer()) throw ParseError("surface Gram entries must be integers");
      g.at(i, k) = Rat(Int(j[i][k].get<long long>()));
    }
    labels.push_back(n == 1 ? "f" : "b" + std::to_string(i));
  }
  return make_lattice("surface", std::move(labels), std::move(g), true);
}

inline MukaiVector parse_mukai_vector(const LatticePtr& surface, const std::string& text) {
  std::vector<Int> v = parse_int_list(text);
  if (v.size() != surface->rank() + 2)
    throw ParseError("Mukai vector needs " + std::to_string(surface->rank() + 2) +
                     " entries, got " + std::to_string(v.size()));
  std::vector<Int> c1(v.begin() + 1, v.end() - 1);
  return make_mukai_vector(surface, v.front(), std::move(c1), v.back());
}

inline std::string mukai_str(const MukaiVector& v) {
  std::string s = "(" + v.r.str() + ", (";
  for (std::size_t i = 0; i < v.c1.size(); ++i) {
    if (i) s += ",";
    s += v.c1[i].str();
  }
  s += "), " + v.s.str() + ")";
  return s;
}

inline std::string gram_str(const RatMatrix& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (i) s += ",";
    s += "[";
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (j) s += ",";
      s += rat_str(g.at(i, j));
    }
    s += "]";
  }
  return s + "]";
}

inline std::string markman_str(const MarkmanResult& r) {
  switch (r.status) {
    case MarkmanStatus::Admissible:
      return r.m ? "admissible(m=" + r.m->str() + ")" : "admissible";
    case MarkmanStatus::Inadmissible:
      return "inadmissible";
    case MarkmanStatus::NotApplicable:
      return "not applicable";
  }
  return "?";
}

inline nlohmann::json ray_report_json(const RayReport& rep) {
  nlohmann::json j;
  j["R"] = format_class(rep.r);
  j["square"] = rat_str(rep.sq);
  j["degree"] = rat_str(rep.degree);
  j["t"] = rep.t.str();
  j["rho"] = format_class(rep.rho);
  j["rho_square"] = rat_str(rep.rho_sq);
  j["divisibility"] = rep.divisibility.str();
  j["divisibility_scope"] = rep.divisibility_full ? "ambient" : "span";
  if (rep.k_bucket)
    j["k"] = *rep.k_bucket;
  else
    j["k"] = nullptr;
  j["divisorial_ok"] = rep.divisorial_ok;
  j["markman"] = markman_str(rep.markman);
  j["geometry"] = rep.geometry_label;
  j["in_conjectural_range"] = rep.in_conjectural_range;
  j["c_status"] = cstatus_name(rep.c_status);
  return j;
}

inline void ray_report_text(std::ostream& out, const RayReport& rep) {
  out << "R = " << format_class(rep.r) << "\n";
  out << "(R,R) = " << rat_str(rep.sq) << "\n";
  out << "degree = " << rat_str(rep.degree) << "\n";
  out << "t = " << rep.t.str() << "\n";
  out << "rho = " << format_class(rep.rho) << "\n";
  out << "(rho,rho) = " << rat_str(rep.rho_sq) << "\n";
  out << (rep.divisibility_full ? "(rho,H^2) = " : "(rho,N^1) = ") << rep.divisibility.str()
      << "\n";
  out << "k = " << (rep.k_bucket ? std::to_string(*rep.k_bucket) : std::string("-")) << "\n";
  out << "geometry = " << rep.geometry_label << "\n";
  out << "divisorial = " << (rep.divisorial_ok ? "yes" : "no") << "\n";
  out << "wall filter = " << markman_str(rep.markman) << "\n";
  out << "in range = " << (rep.in_conjectural_range ? "yes" : "no") << "\n";
  out << "c-status = " << cstatus_name(rep.c_status) << "\n";
}

inline void ray_report_line(std::ostream& out, const RayReport& rep) {
  out << "deg=" << rat_str(rep.degree) << " R=" << format_class(rep.r)
      << " (R,R)=" << rat_str(rep.sq) << " t=" << rep.t.str()
      << " rho=" << format_class(rep.rho) << " (rho,rho)=" << rat_str(rep.rho_sq)
      << " k=" << (rep.k_bucket ? std::to_string(*rep.k_bucket) : std::string("-"))
      << " geometry=" << rep.geometry_label << "\n";
}

inline nlohmann::json fixture_json(const FixtureResult& f) {
  nlohmann::json j;
  j["id"] = f.id;
  j["title"] = f.title;
  j["pass"] = f.pass();
  j["c_status"] = cstatus_name(f.c_status);
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : f.checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["computed"] = c.computed;
    cj["expected"] = c.expected;
    cj["ok"] = c.ok;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

inline int emit_report(const VerificationReport& rep, const std::string& format,
                       std::ostream& out) {
  if (format == "json") {
    nlohmann::json j;
    j["pass"] = rep.all_pass();
    j["fixtures"] = nlohmann::json::array();
    for (const auto& f : rep.fixtures) j["fixtures"].push_back(fixture_json(f));
    out << j.dump(2) << "\n";
  } else {
    for (const auto& f : rep.fixtures) {
      std::string status_tag =
          f.c_status == CStatus::Proven ? "" : " [" + cstatus_name(f.c_status) + "]";
      if (f.pass()) {
        out << "[ok]   " << f.id << status_tag << " " << f.title << "\n";
      } else {
        out << "[FAIL] " << f.id << status_tag << " " << f.title << "\n";
        for (const auto& c : f.checks)
          if (!c.ok)
            out << "       " << c.name << ": computed " << c.computed << ", expected "
                << c.expected << "\n";
      }
    }
    out << rep.fixtures.size() << " fixtures, " << rep.fail_count() << " failed\n";
  }
  return rep.all_pass() ? 0 : 1;
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"Exact lattice invariants of extremal rays on holomorphic symplectic manifolds"};
  app.require_subcommand(1);

  std::string model_path, x_lit, y_lit, space = "curve", floor_str, format = "text";
  long long max_degree = 12;

  auto* c_model = app.add_subcommand("model", "Load a model file and print its lattices");
  c_model->add_option("--model", model_path, "model JSON file")->required();

  auto* c_pair = app.add_subcommand("pair", "Pairing of two classes");
  c_pair->add_option("--model", model_path)->required();
  c_pair->add_option("--x", x_lit, "first class literal")->required();
  c_pair->add_option("--y", y_lit, "second class literal")->required();
  c_pair->add_option("--space", space, "curve or divisor lattice")
      ->check(CLI::IsMember({"curve", "divisor"}));

  auto* c_sat = app.add_subcommand("saturate", "Saturation of a curve class into N^1");
  c_sat->add_option("--model", model_path)->required();
  c_sat->add_option("--r", x_lit, "curve class literal")->required();

  auto* c_classify = app.add_subcommand("classify", "Full invariant report of a curve class");
  c_classify->add_option("--model", model_path)->required();
  c_classify->add_option("--r", x_lit, "curve class literal")->required();
  c_classify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* c_enum = app.add_subcommand("enumerate", "Negative-square classes of bounded degree");
  c_enum->add_option("--model", model_path)->required();
  c_enum->add_option("--max-degree", max_degree, "degree bound (default 12)");
  c_enum->add_option("--floor", floor_str, "square floor as p/q (default -c)");
  c_enum->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* c_ample = app.add_subcommand("ample", "Certify positivity against bounded candidates");
  // the class option is spelled --h, so help must not claim the short -h
  c_ample->set_help_flag("--help", "print this help and exit");
  c_ample->add_option("--model", model_path)->required();
  c_ample->add_option("--h", x_lit, "divisor class literal")->required();
  c_ample->add_option("--max-degree", max_degree, "degree bound (default 12)");

  auto* c_cone = app.add_subcommand("cone-member", "Bounded membership in the curve cone");
  c_cone->add_option("--model", model_path)->required();
  c_cone->add_option("--c", x_lit, "curve class literal")->required();
  c_cone->add_option("--max-degree", max_degree, "degree bound (default 12)");
  c_cone->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::string surface_str, v_str, w_str, c1_str;
  long long mk_r = 0, mk_c2 = 0;
  auto* c_mukai = app.add_subcommand("mukai", "Extended-lattice vector operations");
  c_mukai->require_subcommand(1);
  auto* mk_pair = c_mukai->add_subcommand("pair", "Pairing of two vectors");
  mk_pair->add_option("--surface", surface_str, "Picard Gram, e.g. [[4]]")->required();
  mk_pair->add_option("--v", v_str, "vector r,c1...,s")->required();
  mk_pair->add_option("--w", w_str, "vector r,c1...,s")->required();
  auto* mk_vec = c_mukai->add_subcommand("vector", "Vector of a sheaf from Chern data");
  mk_vec->add_option("--surface", surface_str)->required();
  mk_vec->add_option("--r", mk_r, "rank")->required();
  mk_vec->add_option("--c1", c1_str, "first Chern coordinates")->required();
  mk_vec->add_option("--c2", mk_c2, "second Chern number")->required();
  auto* mk_dim = c_mukai->add_subcommand("dim", "Moduli dimension <v,v> + 2");
  mk_dim->add_option("--surface", surface_str)->required();
  mk_dim->add_option("--v", v_str)->required();
  auto* mk_per = c_mukai->add_subcommand("period", "Period lattice of an isotropic vector");
  mk_per->add_option("--surface", surface_str)->required();
  mk_per->add_option("--v", v_str)->required();

  std::string suite;
  auto* c_verify = app.add_subcommand("verify", "Run the built-in reference suites");
  c_verify->add_option("suite", suite, "tables, examples or all")
      ->required()
      ->check(CLI::IsMember({"tables", "examples", "all"}));
  c_verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  // one spelling of help everywhere (ample already dropped -h above)
  for (CLI::App* a : {&app, c_model, c_pair, c_sat, c_classify, c_enum, c_ample, c_cone, c_mukai,
                      mk_pair, mk_vec, mk_dim, mk_per, c_verify})
    a->set_help_flag("--help", "print this help and exit");

  std::vector<const char*> argv;
  argv.push_back("hkcone");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (*c_model) {
      HKModel m = load_model(model_path);
      out << "type = " << type_name(m.dtype) << "\n";
      out << "c = " << rat_str(m.c.value) << " (" << cstatus_name(m.c.status) << ")\n";
      out << "surface = " << gram_str(m.surface->gram) << " on (";
      for (std::size_t i = 0; i < m.surface->rank(); ++i)
        out << (i ? "," : "") << m.surface->basis_labels[i];
      out << ")\n";
      out << "N^1 = " << gram_str(m.div_lattice->gram) << "\n";
      out << "N_1 = " << gram_str(m.curve_lattice->gram) << "\n";
      out << "g = " << format_class(m.g) << ", (g,g) = " << rat_str(square(m.g)) << "\n";
      out << "ambient unimodular = " << (m.surface->ambient_unimodular ? "yes" : "no") << "\n";
    } else if (*c_pair) {
      HKModel m = load_model(model_path);
      ClassVector x = space == "curve" ? parse_curve_literal(m, x_lit)
                                       : parse_divisor_literal(m, x_lit);
      ClassVector y = space == "curve" ? parse_curve_literal(m, y_lit)
                                       : parse_divisor_literal(m, y_lit);
      out << rat_str(pair(x, y)) << "\n";
    } else if (*c_sat) {
      HKModel m = load_model(model_path);
      Saturation s = saturate_to_sublattice(parse_curve_literal(m, x_lit), m.emb);
      out << "t = " << s.t.str() << "\n";
      out << "rho = " << format_class(s.rho) << "\n";
      out << "(rho,rho) = " << rat_str(square(s.rho)) << "\n";
    } else if (*c_classify) {
      HKModel m = load_model(model_path);
      RayReport rep = classify_ray(m, parse_curve_literal(m, x_lit));
      if (format == "json")
        out << ray_report_json(rep).dump(2) << "\n";
      else
        ray_report_text(out, rep);
    } else if (*c_enum) {
      HKModel m = load_model(model_path);
      std::optional<Rat> floor;
      if (!floor_str.empty()) floor = parse_rat(floor_str);
      auto reps = enumerate_ray_candidates(m, Int(max_degree), floor);
      if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : reps) j.push_back(ray_report_json(r));
        out << j.dump(2) << "\n";
      } else {
        for (const auto& r : reps) ray_report_line(out, r);
        out << reps.size() << " classes\n";
      }
    } else if (*c_ample) {
      HKModel m = load_model(model_path);
      AmpleResult res = ample_certify(m, parse_divisor_literal(m, x_lit), Int(max_degree));
      switch (res.kind) {
        case AmpleResult::Kind::NotBig:
          out << "not big: needs (h,h) > 0 and h.g > 0\n";
          break;
        case AmpleResult::Kind::Fails:
          out << "fails on a candidate (c-status: " << cstatus_name(res.c_status) << ")\n";
          ray_report_line(out, *res.violating);
          break;
        case AmpleResult::Kind::CertifiedUpTo:
          out << "positive on all candidates of degree <= " << res.max_degree.str()
              << " (c-status: " << cstatus_name(res.c_status) << ")\n";
          break;
      }
    } else if (*c_cone) {
      HKModel m = load_model(model_path);
      ConeVerdict v = cone_membership(m, parse_curve_literal(m, x_lit), Int(max_degree));
      if (format == "json") {
        nlohmann::json j;
        const char* names[] = {"generator", "inside_by_combination", "outside_certified_up_to",
                               "unknown"};
        j["status"] = names[static_cast<int>(v.status)];
        j["degree_bound"] = v.degree_bound.str();
        j["c_status"] = cstatus_name(v.c_status);
        if (v.status == MembershipStatus::InsideByCombination) {
          nlohmann::json cert = nlohmann::json::array();
          for (const auto& [coeff, gen] : v.certificate) {
            nlohmann::json e;
            e["coefficient"] = rat_str(coeff);
            e["generator"] = format_class(gen);
            cert.push_back(e);
          }
          j["certificate"] = cert;
        }
        if (v.status == MembershipStatus::OutsideCertifiedUpTo) {
          nlohmann::json f = nlohmann::json::array();
          for (const Rat& c : v.separating_functional) f.push_back(rat_str(c));
          j["separating_functional"] = f;
        }
        out << j.dump(2) << "\n";
      } else {
        switch (v.status) {
          case MembershipStatus::Generator:
            out << "generator (degree <= " << v.degree_bound.str() << ", c-status "
                << cstatus_name(v.c_status) << ")\n";
            break;
          case MembershipStatus::InsideByCombination:
            out << "inside: nonnegative combination of " << v.certificate.size()
                << " generators (c-status " << cstatus_name(v.c_status) << ")\n";
            for (const auto& [coeff, gen] : v.certificate)
              out << "  " << rat_str(coeff) << " * (" << format_class(gen) << ")\n";
            break;
          case MembershipStatus::OutsideCertifiedUpTo:
            out << "outside the cone of generators with degree <= " << v.degree_bound.str()
                << " (c-status " << cstatus_name(v.c_status) << ")\n";
            out << "  separating functional: (";
            for (std::size_t i = 0; i < v.separating_functional.size(); ++i)
              out << (i ? "," : "") << rat_str(v.separating_functional[i]);
            out << ")\n";
            break;
          case MembershipStatus::Unknown:
            out << "unknown at degree bound " << v.degree_bound.str() << "\n";
            break;
        }
      }
    } else if (*c_mukai) {
      LatticePtr surf = parse_surface_gram(surface_str);
      if (*mk_pair) {
        MukaiVector v = parse_mukai_vector(surf, v_str);
        MukaiVector w = parse_mukai_vector(surf, w_str);
        out << mukai_pair(v, w).str() << "\n";
      } else if (*mk_vec) {
        MukaiVector v = mukai_vector_from_chern(surf, Int(mk_r), parse_int_list(c1_str),
                                                Int(mk_c2));
        out << "v = " << mukai_str(v) << "\n";
        out << "chi = " << euler_characteristic(v).str() << "\n";
        out << "<v,v> = " << mukai_square(v).str() << "\n";
      } else if (*mk_dim) {
        out << moduli_dimension(parse_mukai_vector(surf, v_str)).str() << "\n";
      } else if (*mk_per) {
        LatticePtr per = period_lattice(parse_mukai_vector(surf, v_str));
        out << gram_str(per->gram) << "\n";
      }
    } else if (*c_verify) {
      VerificationReport rep;
      if (suite == "tables") {
        rep = run_table_suite();
      } else if (suite == "examples") {
        rep = run_example_suite();
      } else {
        rep = run_table_suite();
        VerificationReport ex = run_example_suite();
        rep.fixtures.insert(rep.fixtures.end(), ex.fixtures.begin(), ex.fixtures.end());
      }
      return emit_report(rep, format, out);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace hkcone
