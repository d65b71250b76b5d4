#ifndef DRLSOFT_IO_HPP
#define DRLSOFT_IO_HPP

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "error.hpp"
#include "problem.hpp"

namespace drlsoft {

// Both formats are serialized canonically: sorted keys, no whitespace,
// element ids only, one trailing newline.

namespace detail {

using json = nlohmann::json;

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline std::string dump_canonical(const json& j) { return j.dump() + "\n"; }

inline const json& require(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key))
    throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  return obj.at(key);
}

inline std::size_t as_index(const json& v, const char* what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    throw Error(ErrorCode::ParseError, std::string(what) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

template <class T>
SquareTable<T> read_table(const json& rows, std::size_t n, const char* what, std::size_t limit) {
  if (!rows.is_array() || rows.size() != n)
    throw Error(ErrorCode::ParseError, std::string(what) + " must have " + std::to_string(n) + " rows");
  SquareTable<T> t(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto& row = rows[x];
    if (!row.is_array() || row.size() != n)
      throw Error(ErrorCode::ParseError, std::string(what) + " row " + std::to_string(x) + " must have " +
                                             std::to_string(n) + " entries");
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t v = as_index(row[y], what);
      if (v >= limit)
        throw Error(ErrorCode::ParseError, std::string(what) + " entry (" + std::to_string(x) + "," +
                                               std::to_string(y) + ") out of range");
      t(x, y) = static_cast<T>(v);
    }
  }
  return t;
}

template <class T>
json write_table(const SquareTable<T>& t) {
  json rows = json::array();
  for (std::size_t x = 0; x < t.size(); ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < t.size(); ++y) row.push_back(static_cast<std::size_t>(t(x, y)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace detail

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
  out << text;
}

// ---------------------------------------------------------------------------
// Algebra format:
//   {name, size, top, bottom, leq: [[0|1]], otimes: [[id]], meet?, join?, residuum?}

enum class AlgebraCheck {
  Full,       ///< reject anything that is not a DRL
  Structure,  ///< only shape and range checks; for auditing broken tables
};

inline FiniteDRL algebra_from_json(const nlohmann::json& j, AlgebraCheck check = AlgebraCheck::Full) {
  using detail::require;
  FiniteDRL a;
  a.name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "";
  a.size = detail::as_index(require(j, "size"), "size");
  if (a.size == 0) throw Error(ErrorCode::ParseError, "size must be positive");
  a.top = static_cast<Element>(detail::as_index(require(j, "top"), "top"));
  a.bottom = static_cast<Element>(detail::as_index(require(j, "bottom"), "bottom"));
  if (a.top >= a.size || a.bottom >= a.size) throw Error(ErrorCode::ParseError, "top/bottom out of range");
  a.leq = detail::read_table<std::uint8_t>(require(j, "leq"), a.size, "leq", 2);
  a.otimes = detail::read_table<Element>(require(j, "otimes"), a.size, "otimes", a.size);

  const bool has_meet = j.contains("meet"), has_join = j.contains("join");
  if (has_meet) a.meet = detail::read_table<Element>(j.at("meet"), a.size, "meet", a.size);
  if (has_join) a.join = detail::read_table<Element>(j.at("join"), a.size, "join", a.size);
  if (!has_meet || !has_join) {
    Lattice lat = derive_lattice(a.leq);
    if (!has_meet) a.meet = std::move(lat.meet);
    if (!has_join) a.join = std::move(lat.join);
  }
  if (j.contains("residuum"))
    a.residuum = detail::read_table<Element>(j.at("residuum"), a.size, "residuum", a.size);
  else
    a.residuum = sup_residuum(a.leq, a.join, a.otimes, a.bottom);

  // Supplied tables that disagree with the derivations fail the lattice or
  // residuation axioms, since those determine them uniquely.
  if (check == AlgebraCheck::Full) require_drl(a);
  return a;
}

inline nlohmann::json algebra_to_json(const FiniteDRL& a) {
  nlohmann::json j;
  j["name"] = a.name;
  j["size"] = a.size;
  j["top"] = a.top;
  j["bottom"] = a.bottom;
  j["leq"] = detail::write_table(a.leq);
  j["meet"] = detail::write_table(a.meet);
  j["join"] = detail::write_table(a.join);
  j["otimes"] = detail::write_table(a.otimes);
  j["residuum"] = detail::write_table(a.residuum);
  return j;
}

inline FiniteDRL load_algebra(std::string_view text, AlgebraCheck check = AlgebraCheck::Full) {
  return algebra_from_json(detail::parse_json(text), check);
}

inline std::string save_algebra(const FiniteDRL& a) { return detail::dump_canonical(algebra_to_json(a)); }

/// Reads a bare lattice order: {"leq": [[0|1]]} (any other fields ignored).
inline OrderTable load_order(std::string_view text) {
  const auto j = detail::parse_json(text);
  const auto& rows = detail::require(j, "leq");
  if (!rows.is_array() || rows.empty()) throw Error(ErrorCode::ParseError, "leq must be a nonempty array");
  return detail::read_table<std::uint8_t>(rows, rows.size(), "leq", 2);
}

// ---------------------------------------------------------------------------
// Problem format:
//   {algebra: <object or path>, domains: [sizes], constraints: [{scope, values}]}
// Values are listed in row-major tuple order.

struct ProblemSource {
  /// Directory against which an algebra path is resolved.
  std::filesystem::path base_dir = ".";
  /// When set, used instead of the file's "algebra" field.
  std::shared_ptr<const FiniteDRL> algebra;
};

inline RawProblem parse_problem(std::string_view text, const ProblemSource& source = {}) {
  using detail::require;
  const auto j = detail::parse_json(text);
  RawProblem raw;
  if (source.algebra) {
    raw.algebra = source.algebra;
  } else {
    const auto& alg = require(j, "algebra");
    if (alg.is_string()) {
      std::filesystem::path path = alg.get<std::string>();
      if (path.is_relative()) path = source.base_dir / path;
      raw.algebra = std::make_shared<const FiniteDRL>(load_algebra(read_file(path)));
    } else {
      raw.algebra = std::make_shared<const FiniteDRL>(algebra_from_json(alg));
    }
  }
  const auto& domains = require(j, "domains");
  if (!domains.is_array()) throw Error(ErrorCode::ParseError, "domains must be an array");
  for (const auto& d : domains) raw.domains.push_back(detail::as_index(d, "domain size"));

  const auto& constraints = require(j, "constraints");
  if (!constraints.is_array()) throw Error(ErrorCode::ParseError, "constraints must be an array");
  for (const auto& c : constraints) {
    Constraint con;
    const auto& scope = require(c, "scope");
    const auto& values = require(c, "values");
    if (!scope.is_array() || !values.is_array())
      throw Error(ErrorCode::ParseError, "scope and values must be arrays");
    for (const auto& v : scope) con.scope.push_back(detail::as_index(v, "scope variable"));
    for (const auto& v : values) {
      const std::size_t id = detail::as_index(v, "constraint value");
      if (id >= raw.algebra->size)
        throw Error(ErrorCode::ValueOutOfRange, "value " + std::to_string(id) + " is not an element", {id});
      con.values.push_back(static_cast<Element>(id));
    }
    if (con.scope.empty()) throw Error(ErrorCode::ScopeError, "constraints need a nonempty scope");
    raw.constraints.push_back(std::move(con));
  }
  raw.validate();
  return raw;
}

/// Parses and normalizes.
inline NormalizeOutcome load_problem(std::string_view text, const ProblemSource& source = {}) {
  return normalize(parse_problem(text, source));
}

inline std::string save_problem(const RawProblem& p) {
  nlohmann::json j;
  j["algebra"] = algebra_to_json(*p.algebra);
  j["domains"] = p.domains;
  j["constraints"] = nlohmann::json::array();
  for (const auto& c : p.constraints)
    j["constraints"].push_back({{"scope", c.scope}, {"values", c.values}});
  return detail::dump_canonical(j);
}

inline std::string save_problem(const Problem& p) { return save_problem(p.to_raw()); }

}  // namespace drlsoft

#endif  // DRLSOFT_IO_HPP
