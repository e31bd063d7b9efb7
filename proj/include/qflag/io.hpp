#pragma once

// Text formats: quivers and representations as JSON, filtrations, words,
// iso-class notation, and the built-in fixtures.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qflag/dynkin.hpp"

namespace qflag {

using json = nlohmann::json;

/// {"vertices": [ids], "arrows": [[id, src, tgt], ...]}
inline Quiver quiver_from_json(const json &j)
{
  try {
    if (!j.is_object() || !j.contains("vertices"))
      throw Error("quiver document needs a \"vertices\" array");
    std::vector<VertexLabel> v = j.at("vertices").get<std::vector<VertexLabel>>();
    std::vector<Quiver::ArrowSpec> a;
    if (j.contains("arrows"))
      for (auto const &e : j.at("arrows")) {
        if (!e.is_array() || e.size() != 3)
          throw Error("each arrow must be [id, source, target]");
        a.push_back({e[0].get<std::string>(), e[1].get<VertexLabel>(), e[2].get<VertexLabel>()});
      }
    return Quiver(std::move(v), a);
  } catch (const json::exception &ex) {
    throw Error(std::string("malformed quiver document: ") + ex.what());
  }
}

inline json quiver_to_json(const Quiver &q)
{
  json arrows = json::array();
  for (auto const &a : q.arrows())
    arrows.push_back({a.id, q.label(a.source), q.label(a.target)});
  return {{"vertices", q.labels()}, {"arrows", arrows}};
}

/// {"p": prime, "dim": [..], "matrices": {arrow id: row-major matrix}}; a
/// missing matrix is zero.
inline Representation representation_from_json(const QuiverPtr &q, const json &j)
{
  try {
    if (!j.is_object() || !j.contains("p") || !j.contains("dim"))
      throw Error("representation document needs \"p\" and \"dim\"");
    long long pl = j.at("p").get<long long>();
    if (pl < 2 || pl >= 65536 || !is_prime(static_cast<std::uint64_t>(pl)))
      throw Error("\"p\" must be a prime below 65536");
    const Elem p = static_cast<Elem>(pl);
    DimVector d(j.at("dim").get<std::vector<long long>>());
    q->check_dim(d);
    if (!d.is_nonnegative())
      throw Error("negative dimension");
    json mats = j.contains("matrices") ? j.at("matrices") : json::object();
    if (!mats.is_object())
      throw Error("\"matrices\" must be an object keyed by arrow id");
    for (auto it = mats.begin(); it != mats.end(); ++it)
      q->arrow_index(it.key());
    std::vector<FpMatrix> maps;
    for (auto const &a : q->arrows()) {
      const std::size_t rows = d[a.target], cols = d[a.source];
      if (!mats.contains(a.id)) {
        maps.emplace_back(p, rows, cols);
        continue;
      }
      auto entries = mats.at(a.id).get<std::vector<std::vector<long long>>>();
      if (entries.size() != rows)
        throw Error("matrix of arrow '" + a.id + "' needs " + std::to_string(rows) + " rows");
      for (auto const &r : entries)
        if (r.size() != cols)
          throw Error("matrix of arrow '" + a.id + "' needs " + std::to_string(cols) + " columns");
      maps.push_back(FpMatrix::from_rows(p, rows, cols, entries));
    }
    return Representation(q, p, std::move(d), std::move(maps));
  } catch (const json::exception &ex) {
    throw Error(std::string("malformed representation document: ") + ex.what());
  }
}

inline json representation_to_json(const Representation &m)
{
  json mats = json::object();
  for (std::size_t k = 0; k < m.quiver().arrow_count(); ++k) {
    const FpMatrix &a = m.map(k);
    json rows = json::array();
    for (std::size_t r = 0; r < a.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < a.cols(); ++c)
        row.push_back(a(r, c));
      rows.push_back(row);
    }
    mats[m.quiver().arrow(k).id] = rows;
  }
  return {{"p", m.p()}, {"dim", m.dim().values()}, {"matrices", mats}};
}

inline std::string read_file(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string &text, const std::string &what)
{
  try {
    return json::parse(text);
  } catch (const json::exception &ex) {
    throw Error("cannot parse " + what + ": " + ex.what());
  }
}

// Fixtures

inline QuiverPtr fixture_quiver(const std::string &name)
{
  if (name == "a1")
    return make_quiver(Quiver({1}, {}));
  if (name == "a2")
    return make_quiver(Quiver({1, 2}, {{"alpha", 1, 2}}));
  if (name == "a3")
    return make_quiver(Quiver({1, 2, 3}, {{"alpha", 1, 2}, {"beta", 2, 3}}));
  if (name == "d4")
    return make_quiver(Quiver({1, 2, 3, 4}, {{"alpha", 1, 2}, {"beta", 3, 2}, {"gamma", 4, 2}}));
  throw Error("unknown quiver fixture '" + name + "'");
}

inline bool is_quiver_fixture(const std::string &name)
{
  return name == "a1" || name == "a2" || name == "a3" || name == "d4";
}

/// Named quiver or a JSON file.
inline QuiverPtr load_quiver(const std::string &spec)
{
  if (is_quiver_fixture(spec))
    return fixture_quiver(spec);
  return make_quiver(quiver_from_json(parse_json(read_file(spec), "quiver file '" + spec + "'")));
}

/// Representations on A2 (1 -> 2): s1, s2, p = (k -> k), m22 with matrix
/// [[1,0],[0,0]], pp = p + p.
inline std::optional<Representation> fixture_representation(const std::string &name,
                                                            const QuiverPtr &q, Elem p)
{
  if (!(*q == *fixture_quiver("a2")))
    return std::nullopt;
  if (name == "s1")
    return Representation::simple(q, p, 0);
  if (name == "s2")
    return Representation::simple(q, p, 1);
  if (name == "p")
    return Representation(q, p, DimVector{1, 1}, {FpMatrix::from_rows(p, {{1}})});
  if (name == "pp")
    return Representation(q, p, DimVector{2, 2}, {FpMatrix::from_rows(p, {{1, 0}, {0, 1}})});
  if (name == "m22")
    return Representation(q, p, DimVector{2, 2}, {FpMatrix::from_rows(p, {{1, 0}, {0, 0}})});
  return std::nullopt;
}

inline bool is_representation_fixture(const std::string &name)
{
  return name == "s1" || name == "s2" || name == "p" || name == "pp" || name == "m22";
}

/// Named fixture (needs p) or a JSON file (p from the file; a given p must agree).
inline Representation load_representation(const std::string &spec, const QuiverPtr &q,
                                          std::optional<Elem> p)
{
  if (is_representation_fixture(spec)) {
    auto r = fixture_representation(spec, q, p.value_or(2));
    if (!r)
      throw Error("representation fixture '" + spec + "' lives on the a2 quiver");
    return *r;
  }
  Representation r =
      representation_from_json(q, parse_json(read_file(spec), "representation file '" + spec + "'"));
  if (p && *p != r.p())
    throw Error("--p " + std::to_string(*p) + " conflicts with p = " + std::to_string(r.p()) +
                " in '" + spec + "'");
  return r;
}

/// "G" (((0,0),(1,1),(2,2)) on two vertices), a JSON array of dimension
/// arrays, or a file holding one.
inline Filtration load_filtration(const std::string &spec, const Quiver &q)
{
  std::vector<DimVector> levels;
  if (spec == "G") {
    if (q.vertex_count() != 2)
      throw Error("fixture G needs a quiver with two vertices");
    levels = {DimVector{0, 0}, DimVector{1, 1}, DimVector{2, 2}};
  } else {
    std::string text = spec;
    auto first = spec.find_first_not_of(" \t");
    if (first == std::string::npos || spec[first] != '[')
      text = read_file(spec);
    json j = parse_json(text, "filtration");
    try {
      for (auto const &lvl : j)
        levels.emplace_back(lvl.get<std::vector<long long>>());
    } catch (const json::exception &ex) {
      throw Error(std::string("malformed filtration: ") + ex.what());
    }
  }
  for (auto const &l : levels)
    q.check_dim(l);
  return Filtration(std::move(levels));
}

inline std::vector<long long> parse_int_list(const std::string &text, const std::string &what)
{
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size())
        throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception &) {
      throw Error("bad " + what + " entry '" + item + "'");
    }
  }
  if (out.empty())
    throw Error("empty " + what);
  return out;
}

/// Comma-separated vertex labels.
inline Word parse_word(const std::string &text, const Quiver &q)
{
  Word w;
  for (long long l : parse_int_list(text, "word"))
    w.push_back(q.index_of(static_cast<VertexLabel>(l)));
  return w;
}

inline std::string format_word(const Word &w, const Quiver &q)
{
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i)
    s += (i ? "," : "") + std::to_string(q.label(w[i]));
  return s;
}

/// Name of a root: S<label> for simple roots (S alone on a one-vertex quiver),
/// otherwise d followed by the entries joined with '_'.
inline std::string root_name(const RootSystem &rs, std::size_t k)
{
  const Quiver &q = rs.quiver();
  const DimVector &r = rs.root(k);
  if (r.total() == 1) {
    if (q.vertex_count() == 1)
      return "S";
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] == 1)
        return "S" + std::to_string(q.label(i));
  }
  std::string s = "d";
  for (std::size_t i = 0; i < r.size(); ++i)
    s += (i ? "_" : "") + std::to_string(r[i]);
  return s;
}

/// Terms ROOT[.MULT] joined by '+' in root order; "0" for the zero class.
inline std::string format_class(const RootSystem &rs, const IsoClass &c)
{
  rs.check(c);
  std::string s;
  for (std::size_t k = 0; k < c.mult.size(); ++k) {
    if (c.mult[k] == 0)
      continue;
    if (!s.empty())
      s += "+";
    s += root_name(rs, k);
    if (c.mult[k] != 1)
      s += "." + std::to_string(c.mult[k]);
  }
  return s.empty() ? "0" : s;
}

inline IsoClass parse_class(const RootSystem &rs, const std::string &text)
{
  IsoClass c = rs.zero_class();
  if (text == "0")
    return c;
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, '+')) {
    std::string name = term;
    long long mult = 1;
    if (auto dot = term.find('.'); dot != std::string::npos) {
      name = term.substr(0, dot);
      try {
        std::size_t used = 0;
        mult = std::stoll(term.substr(dot + 1), &used);
        if (used != term.size() - dot - 1 || mult < 0)
          throw std::invalid_argument(term);
      } catch (const std::exception &) {
        throw Error("bad multiplicity in '" + term + "'");
      }
    }
    std::optional<std::size_t> idx;
    for (std::size_t k = 0; k < rs.size(); ++k)
      if (root_name(rs, k) == name)
        idx = k;
    if (!idx)
      throw Error("unknown root '" + name + "' in class '" + text + "'");
    c.mult[*idx] += mult;
  }
  return c;
}

/// The class as a list of [root, multiplicity] pairs in root order.
inline json class_to_json(const RootSystem &rs, const IsoClass &c)
{
  json out = json::array();
  for (std::size_t k = 0; k < c.mult.size(); ++k)
    if (c.mult[k] != 0)
      out.push_back({rs.root(k).values(), c.mult[k]});
  return out;
}

inline std::string format_sequence(const std::vector<long long> &v)
{
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

} // namespace qflag
