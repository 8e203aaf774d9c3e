#pragma once

// Model files and class literals. A model is a small JSON object:
//
//   {
//     "type": "hilb" | "kummer" | "k3",
//     "n": 2,                      // omitted/ignored for "k3"
//     "surface_gram": [[4]],       // integer entries
//     "labels": ["f"],             // optional, defaults to b0, b1, ...
//     "g": [1, -1],                // surface block alone or all of N^1
//     "ambient_unimodular": true   // optional, defaults to true
//   }
//
// Class literals are signed integer combinations of basis labels, e.g.
// "2f-3deltav" or "f+E-2d"; "d" abbreviates the exceptional label of
// whichever side (divisor or curve) the class lives on.

#include "hkcone/errors.hpp"
#include "hkcone/hk_model.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace hkcone {

inline HKModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("model file must hold a JSON object");
  if (!j.contains("type") || !j.at("type").is_string())
    throw ParseError("missing string field 'type'");
  std::string type = j.at("type").get<std::string>();
  DeformationType dt;
  if (type == "k3") {
    dt = k3_type();
  } else if (type == "hilb" || type == "kummer") {
    if (!j.contains("n") || !j.at("n").is_number_integer())
      throw ParseError("'" + type + "' needs an integer field 'n'");
    int n = j.at("n").get<int>();
    if (n < 2) throw ParseError("'n' must be at least 2");
    dt = type == "hilb" ? hilb_type(n) : kummer_type(n);
  } else {
    throw ParseError("unknown model type '" + type + "'");
  }

  if (!j.contains("surface_gram") || !j.at("surface_gram").is_array())
    throw ParseError("missing array field 'surface_gram'");
  const auto& gj = j.at("surface_gram");
  std::size_t rank = gj.size();
  if (rank == 0) throw ParseError("'surface_gram' must be nonempty");
  RatMatrix gram(rank, rank);
  for (std::size_t i = 0; i < rank; ++i) {
    if (!gj[i].is_array() || gj[i].size() != rank)
      throw ParseError("'surface_gram' must be a square matrix");
    for (std::size_t k = 0; k < rank; ++k) {
      if (!gj[i][k].is_number_integer())
        throw ParseError("'surface_gram' entries must be integers");
      gram.at(i, k) = Rat(Int(gj[i][k].get<long long>()));
    }
  }

  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j.at("labels").is_array()) throw ParseError("'labels' must be an array of strings");
    for (const auto& l : j.at("labels")) {
      if (!l.is_string()) throw ParseError("'labels' must be an array of strings");
      labels.push_back(l.get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < rank; ++i) labels.push_back("b" + std::to_string(i));
  }
  if (labels.size() != rank) throw ParseError("'labels' must match the Gram rank");

  if (!j.contains("g") || !j.at("g").is_array()) throw ParseError("missing array field 'g'");
  std::vector<Int> g;
  for (const auto& c : j.at("g")) {
    if (!c.is_number_integer()) throw ParseError("'g' entries must be integers");
    g.push_back(Int(c.get<long long>()));
  }

  bool ambient = true;
  if (j.contains("ambient_unimodular")) {
    if (!j.at("ambient_unimodular").is_boolean())
      throw ParseError("'ambient_unimodular' must be a boolean");
    ambient = j.at("ambient_unimodular").get<bool>();
  }

  try {
    return build_model(dt, gram, std::move(labels), std::move(g), ambient);
  } catch (const Error& e) {
    throw ParseError("invalid model: " + std::string(e.what()));
  }
}

inline HKModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("model file '" + path + "': " + e.what());
  }
  return model_from_json(j);
}

inline nlohmann::json model_to_json(const HKModel& m) {
  nlohmann::json j;
  switch (m.dtype.kind) {
    case DeformKind::K3Surface:
      j["type"] = "k3";
      break;
    case DeformKind::HilbK3:
      j["type"] = "hilb";
      j["n"] = m.dtype.n;
      break;
    case DeformKind::Kummer:
      j["type"] = "kummer";
      j["n"] = m.dtype.n;
      break;
  }
  nlohmann::json gram = nlohmann::json::array();
  for (std::size_t i = 0; i < m.surface->rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < m.surface->rank(); ++k)
      row.push_back(static_cast<long long>(to_int(m.surface->gram.at(i, k))));
    gram.push_back(row);
  }
  j["surface_gram"] = gram;
  j["labels"] = m.surface->basis_labels;
  nlohmann::json g = nlohmann::json::array();
  for (const Rat& c : m.g.coords) g.push_back(static_cast<long long>(to_int(c)));
  j["g"] = g;
  j["ambient_unimodular"] = m.surface->ambient_unimodular;
  return j;
}

// Renders a class as a signed combination of its basis labels, e.g.
// "2f-5delta"; rational coefficients print as "p/q label".
inline std::string format_class(const ClassVector& x) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    const Rat& c = x.coords[i];
    if (c == 0) continue;
    Rat a = c < 0 ? Rat(-c) : c;
    out << (c < 0 ? "-" : (first ? "" : "+"));
    if (a != 1) out << rat_str(a);
    out << x.lattice->basis_labels[i];
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

// Parses a signed integer combination of the lattice's basis labels. The
// shorthand "d" resolves to the exceptional label when one exists.
inline ClassVector parse_class_literal(const LatticePtr& lattice, const std::string& text,
                                       const std::string& exceptional_alias_target = "") {
  std::vector<Rat> coords(lattice->rank());
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw ParseError("empty class literal");
  std::size_t pos = 0;
  bool any = false;
  while (pos < s.size()) {
    Int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    } else if (any) {
      throw ParseError("expected '+' or '-' at position " + std::to_string(pos) + " in '" +
                       text + "'");
    }
    std::size_t dstart = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    Int coeff = 1;
    if (pos > dstart) coeff = Int(s.substr(dstart, pos - dstart));
    // Longest label match at this position, aliases included.
    std::size_t best_len = 0;
    std::size_t best_idx = 0;
    for (std::size_t i = 0; i < lattice->rank(); ++i) {
      const std::string& l = lattice->basis_labels[i];
      if (l.size() > best_len && s.compare(pos, l.size(), l) == 0) {
        best_len = l.size();
        best_idx = i;
      }
    }
    if (!exceptional_alias_target.empty() && best_len == 0 && s.compare(pos, 1, "d") == 0) {
      for (std::size_t i = 0; i < lattice->rank(); ++i)
        if (lattice->basis_labels[i] == exceptional_alias_target) {
          best_len = 1;
          best_idx = i;
        }
    }
    if (best_len == 0) {
      if (pos > dstart && pos == s.size()) throw ParseError("trailing coefficient in '" + text + "'");
      throw ParseError("unknown basis label at position " + std::to_string(pos) + " in '" +
                       text + "'");
    }
    coords[best_idx] += Rat(sign * coeff);
    pos += best_len;
    any = true;
  }
  return make_class(lattice, std::move(coords));
}

inline ClassVector parse_divisor_literal(const HKModel& m, const std::string& text) {
  std::string alias = m.has_exceptional()
                          ? m.div_lattice->basis_labels[m.div_lattice->rank() - 1]
                          : "";
  return parse_class_literal(m.div_lattice, text, alias);
}

inline ClassVector parse_curve_literal(const HKModel& m, const std::string& text) {
  std::string alias = m.has_exceptional()
                          ? m.curve_lattice->basis_labels[m.curve_lattice->rank() - 1]
                          : "";
  return parse_class_literal(m.curve_lattice, text, alias);
}

}  // namespace hkcone
