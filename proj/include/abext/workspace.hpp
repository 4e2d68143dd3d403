#pragma once

#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "abext/errors.hpp"
#include "abext/group.hpp"
#include "abext/hom.hpp"
#include "abext/ses.hpp"
#include "abext/splice.hpp"

namespace abext {

using Json = nlohmann::json;

namespace detail {

inline std::string trim_copy(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline Integer parse_decimal(const std::string& text, const std::string& where) {
  const std::string t = trim_copy(text);
  std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
  if (i == t.size())
    throw InputError(where + ": \"" + text + "\" is not a decimal integer");
  for (std::size_t k = i; k < t.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(t[k])))
      throw InputError(where + ": \"" + text + "\" is not a decimal integer");
  return Integer(t);
}

}  // namespace detail

/// Grammar: terms `0`, `Z`, `Z^r`, `Z/d` joined with `+`.
inline AbGroup group_from_shorthand(const std::string& text) {
  const std::string where = "group expression \"" + text + "\"";
  std::size_t rank = 0;
  IntVec factors;
  bool saw_term = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('+', pos);
    if (next == std::string::npos) next = text.size();
    const std::string term = detail::trim_copy(text.substr(pos, next - pos));
    pos = next + 1;
    if (term.empty()) throw InputError(where + ": empty term");
    saw_term = true;
    if (term == "0") continue;
    if (term == "Z") {
      ++rank;
    } else if (term.rfind("Z^", 0) == 0) {
      Integer r = detail::parse_decimal(term.substr(2), where);
      if (r < 0 || r > 100000) throw InputError(where + ": rank out of range");
      rank += r.convert_to<std::size_t>();
    } else if (term.rfind("Z/", 0) == 0) {
      Integer d = detail::parse_decimal(term.substr(2), where);
      if (d < 1) throw InputError(where + ": torsion order must be positive");
      factors.push_back(d);
    } else {
      throw InputError(where + ": unrecognized term \"" + term + "\"");
    }
    if (pos > text.size()) break;
  }
  if (!saw_term) throw InputError(where + ": empty expression");
  return AbGroup::from_factors(rank, factors);
}

inline Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) return detail::parse_decimal(j.get<std::string>(), where);
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long long>());
  if (j.is_number_integer()) return Integer(j.get<long long>());
  throw InputError(where + ": expected an integer or a decimal string");
}

inline std::size_t count_from_json(const Json& j, const std::string& where) {
  Integer v = integer_from_json(j, where);
  if (v < 0 || v > 100000) throw InputError(where + ": count out of range");
  return v.convert_to<std::size_t>();
}

/// Shape-checked parse of a row-major matrix of integers or decimal strings.
inline IntMatrix matrix_from_json(const Json& j, std::size_t rows,
                                  std::size_t cols, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a list of rows");
  if (j.size() != rows && !(j.empty() && rows == 0))
    throw InputError(where + ": expected " + std::to_string(rows) +
                     " rows, got " + std::to_string(j.size()));
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j.at(i);
    if (!row.is_array() || row.size() != cols)
      throw InputError(where + " row " + std::to_string(i) + ": expected " +
                       std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k)
      m(i, k) = integer_from_json(
          row.at(k), where + " entry (" + std::to_string(i) + "," +
                         std::to_string(k) + ")");
  }
  return m;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace detail {

inline void reject_unknown_keys(const Json& j,
                                std::initializer_list<const char*> allowed,
                                const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) ok = true;
    if (!ok) throw InputError(where + ": unknown key \"" + item.key() + "\"");
  }
}

}  // namespace detail

/// Accepts a shorthand string, {"rank": r, "factors": [...]}, or an explicit
/// presentation {"gens": n, "rels": [relation rows over the generators]}.
inline AbGroup group_from_json(const Json& j) {
  if (j.is_string()) return group_from_shorthand(j.get<std::string>());
  if (!j.is_object())
    throw InputError("expected a group expression or declaration object");
  if (j.contains("factors") || j.contains("rank")) {
    detail::reject_unknown_keys(j, {"factors", "rank"}, "group declaration");
    std::size_t rank =
        j.contains("rank") ? count_from_json(j.at("rank"), "rank") : 0;
    IntVec factors;
    if (j.contains("factors")) {
      const Json& fs = j.at("factors");
      if (!fs.is_array())
        throw InputError("\"factors\" must be a list of positive integers");
      for (std::size_t i = 0; i < fs.size(); ++i)
        factors.push_back(integer_from_json(
            fs.at(i), "factor " + std::to_string(i)));
    }
    return AbGroup::from_factors(rank, factors);
  }
  if (j.contains("gens")) {
    detail::reject_unknown_keys(j, {"gens", "rels"}, "group declaration");
    const std::size_t gens = count_from_json(j.at("gens"), "gens");
    IntMatrix rels(gens, 0);
    if (j.contains("rels")) {
      const Json& rs = j.at("rels");
      if (!rs.is_array()) throw InputError("\"rels\" must be a list of rows");
      rels = IntMatrix(gens, rs.size());
      for (std::size_t k = 0; k < rs.size(); ++k) {
        const Json& row = rs.at(k);
        if (!row.is_array() || row.size() != gens)
          throw InputError("relation " + std::to_string(k) + ": expected " +
                           std::to_string(gens) + " coefficients");
        for (std::size_t i = 0; i < gens; ++i)
          rels(i, k) = integer_from_json(
              row.at(i), "relation " + std::to_string(k) + " coefficient " +
                             std::to_string(i));
      }
    }
    return AbGroup(gens, rels);
  }
  throw InputError(
      "group declaration needs \"factors\"/\"rank\" or \"gens\"/\"rels\"");
}

/// Presentation-exact serialization; reparsing preserves same_presentation.
inline Json group_to_json(const AbGroup& g) {
  Json rels = Json::array();
  for (std::size_t k = 0; k < g.rels().cols(); ++k) {
    Json rel = Json::array();
    for (std::size_t i = 0; i < g.gens(); ++i)
      rel.push_back(g.rels()(i, k).str());
    rels.push_back(std::move(rel));
  }
  return Json{{"gens", g.gens()}, {"rels", std::move(rels)}};
}

/// Named groups, homs, short exact sequences, and chains. Every entry is
/// validated by its constructor when added, so a held document is coherent.
class WorkspaceDoc {
public:
  struct HomEntry {
    Hom hom;
    std::string src, tgt;
  };
  struct SesEntry {
    Ses ses;
    std::string incl, proj;
  };
  struct ChainEntry {
    ESChain chain;
    std::vector<std::string> links;
  };

  void add_group(const std::string& name, AbGroup g) {
    check_name(name, groups_.count(name), "group");
    groups_.emplace(name, std::move(g));
  }

  void add_hom(const std::string& name, Hom h, const std::string& src,
               const std::string& tgt) {
    check_name(name, homs_.count(name), "hom");
    if (!h.src().same_presentation(group(src)))
      throw InputError("hom \"" + name + "\": source does not match group \"" +
                       src + "\"");
    if (!h.tgt().same_presentation(group(tgt)))
      throw InputError("hom \"" + name + "\": target does not match group \"" +
                       tgt + "\"");
    homs_.emplace(name, HomEntry{std::move(h), src, tgt});
  }

  void add_ses_entry(const std::string& name, Ses s, const std::string& incl,
                     const std::string& proj) {
    check_name(name, sess_.count(name), "ses");
    sess_.emplace(name, SesEntry{std::move(s), incl, proj});
  }

  /// Adds a sequence together with fresh entries for its parts, named
  /// `<name>_left`, `<name>_incl`, and so on.
  void add_ses(const std::string& name, const Ses& s) {
    add_group(name + "_left", s.left());
    add_group(name + "_middle", s.middle());
    add_group(name + "_right", s.right());
    add_hom(name + "_incl", s.inclusion(), name + "_left", name + "_middle");
    add_hom(name + "_proj", s.projection(), name + "_middle", name + "_right");
    add_ses_entry(name, s, name + "_incl", name + "_proj");
  }

  void add_chain_entry(const std::string& name, ESChain c,
                       std::vector<std::string> links) {
    check_name(name, chains_.count(name), "chain");
    chains_.emplace(name, ChainEntry{std::move(c), std::move(links)});
  }

  void add_chain(const std::string& name, const ESChain& c) {
    std::vector<std::string> links;
    for (std::size_t i = 0; i < c.degree(); ++i) {
      const std::string link = name + "_link" + std::to_string(i);
      add_ses(link, c.links()[i]);
      links.push_back(link);
    }
    add_chain_entry(name, c, std::move(links));
  }

  bool has_group(const std::string& name) const { return groups_.count(name); }
  bool has_hom(const std::string& name) const { return homs_.count(name); }
  bool has_ses(const std::string& name) const { return sess_.count(name); }
  bool has_chain(const std::string& name) const { return chains_.count(name); }

  const AbGroup& group(const std::string& name) const {
    return lookup(groups_, name, "group");
  }
  const Hom& hom(const std::string& name) const {
    return lookup(homs_, name, "hom").hom;
  }
  const Ses& ses(const std::string& name) const {
    return lookup(sess_, name, "ses").ses;
  }
  const ESChain& chain(const std::string& name) const {
    return lookup(chains_, name, "chain").chain;
  }

  const std::map<std::string, AbGroup>& groups() const { return groups_; }
  const std::map<std::string, HomEntry>& homs() const { return homs_; }
  const std::map<std::string, SesEntry>& sess() const { return sess_; }
  const std::map<std::string, ChainEntry>& chains() const { return chains_; }

private:
  static void check_name(const std::string& name, bool taken,
                         const char* kind) {
    if (name.empty())
      throw InputError(std::string(kind) + " name must be nonempty");
    if (taken)
      throw InputError(std::string(kind) + " \"" + name +
                       "\" declared twice");
  }

  template <class Map>
  static const typename Map::mapped_type& lookup(const Map& m,
                                                 const std::string& name,
                                                 const char* kind) {
    auto it = m.find(name);
    if (it == m.end())
      throw InputError("workspace has no " + std::string(kind) + " named \"" +
                       name + "\"");
    return it->second;
  }

  std::map<std::string, AbGroup> groups_;
  std::map<std::string, HomEntry> homs_;
  std::map<std::string, SesEntry> sess_;
  std::map<std::string, ChainEntry> chains_;
};

/// A declared name wins over the shorthand reading of the same spelling.
inline AbGroup resolve_group(const WorkspaceDoc& doc, const std::string& ref) {
  if (doc.has_group(ref)) return doc.group(ref);
  try {
    return group_from_shorthand(ref);
  } catch (const InputError&) {
    throw InputError("unknown group \"" + ref +
                     "\" (not declared, and not a valid group expression)");
  }
}

inline WorkspaceDoc parse_workspace_json(const Json& j) {
  if (!j.is_object())
    throw InputError("workspace: top level must be an object");
  detail::reject_unknown_keys(j, {"groups", "homs", "sess", "chains"},
                              "workspace");
  const Json empty = Json::object();
  auto section = [&](const char* key) -> const Json& {
    if (!j.contains(key)) return empty;
    const Json& s = j.at(key);
    if (!s.is_object())
      throw InputError("workspace: \"" + std::string(key) +
                       "\" must be an object of named declarations");
    return s;
  };

  WorkspaceDoc doc;
  for (const auto& item : section("groups").items()) {
    try {
      doc.add_group(item.key(), group_from_json(item.value()));
    } catch (const Error& e) {
      throw InputError("group \"" + item.key() + "\": " + e.what());
    }
  }
  for (const auto& item : section("homs").items()) {
    const std::string& name = item.key();
    try {
      const Json& hj = item.value();
      if (!hj.is_object())
        throw InputError("expected an object with src, tgt, mat");
      detail::reject_unknown_keys(hj, {"src", "tgt", "mat"}, "declaration");
      for (const char* k : {"src", "tgt", "mat"})
        if (!hj.contains(k))
          throw InputError("missing \"" + std::string(k) + "\"");
      if (!hj.at("src").is_string() || !hj.at("tgt").is_string())
        throw InputError("src and tgt must be group names or expressions");
      const std::string sn = hj.at("src").get<std::string>();
      const std::string tn = hj.at("tgt").get<std::string>();
      AbGroup src = resolve_group(doc, sn);
      AbGroup tgt = resolve_group(doc, tn);
      IntMatrix m =
          matrix_from_json(hj.at("mat"), tgt.gens(), src.gens(), "mat");
      Hom h(src, tgt, m);
      if (!doc.has_group(sn)) doc.add_group(sn, src);
      if (!doc.has_group(tn)) doc.add_group(tn, tgt);
      doc.add_hom(name, std::move(h), sn, tn);
    } catch (const Error& e) {
      throw InputError("hom \"" + name + "\": " + e.what());
    }
  }
  for (const auto& item : section("sess").items()) {
    const std::string& name = item.key();
    try {
      const Json& sj = item.value();
      if (!sj.is_object())
        throw InputError("expected an object with incl, proj");
      detail::reject_unknown_keys(sj, {"incl", "proj"}, "declaration");
      for (const char* k : {"incl", "proj"})
        if (!sj.contains(k) || !sj.at(k).is_string())
          throw InputError("\"" + std::string(k) + "\" must name a hom");
      const std::string in = sj.at("incl").get<std::string>();
      const std::string pn = sj.at("proj").get<std::string>();
      doc.add_ses_entry(name, make_ses(doc.hom(in), doc.hom(pn)), in, pn);
    } catch (const Error& e) {
      throw InputError("ses \"" + name + "\": " + e.what());
    }
  }
  for (const auto& item : section("chains").items()) {
    const std::string& name = item.key();
    try {
      const Json& cj = item.value();
      if (!cj.is_object() || !cj.contains("links") ||
          !cj.at("links").is_array())
        throw InputError("expected an object with a \"links\" list");
      detail::reject_unknown_keys(cj, {"links"}, "declaration");
      std::vector<std::string> names;
      std::vector<Ses> links;
      for (const Json& l : cj.at("links")) {
        if (!l.is_string()) throw InputError("links must be ses names");
        names.push_back(l.get<std::string>());
        links.push_back(doc.ses(names.back()));
      }
      doc.add_chain_entry(name, ESChain(std::move(links)), std::move(names));
    } catch (const Error& e) {
      throw InputError("chain \"" + name + "\": " + e.what());
    }
  }
  return doc;
}

inline WorkspaceDoc parse_workspace(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("workspace syntax: ") + e.what());
  }
  return parse_workspace_json(j);
}

inline Json workspace_to_json(const WorkspaceDoc& doc) {
  Json root = Json::object();
  if (!doc.groups().empty()) {
    Json s = Json::object();
    for (const auto& [n, g] : doc.groups()) s[n] = group_to_json(g);
    root["groups"] = std::move(s);
  }
  if (!doc.homs().empty()) {
    Json s = Json::object();
    for (const auto& [n, e] : doc.homs())
      s[n] = Json{{"src", e.src},
                  {"tgt", e.tgt},
                  {"mat", matrix_to_json(e.hom.mat())}};
    root["homs"] = std::move(s);
  }
  if (!doc.sess().empty()) {
    Json s = Json::object();
    for (const auto& [n, e] : doc.sess())
      s[n] = Json{{"incl", e.incl}, {"proj", e.proj}};
    root["sess"] = std::move(s);
  }
  if (!doc.chains().empty()) {
    Json s = Json::object();
    for (const auto& [n, e] : doc.chains()) s[n] = Json{{"links", e.links}};
    root["chains"] = std::move(s);
  }
  return root;
}

inline std::string serialize_workspace(const WorkspaceDoc& doc) {
  return workspace_to_json(doc).dump(2) + "\n";
}

}  // namespace abext
