#pragma once
// JSON loaders for complexes, groups, group cocycles, covers and gerbes,
// with lookup in the catalog directory.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dw.hpp"
#include "gerbes.hpp"

namespace dwcat::io {

using nlohmann::json;
namespace fs = std::filesystem;

inline fs::path catalog_dir() {
  if (const char* env = std::getenv("DWCAT_CATALOG"); env && *env) return env;
#ifdef DWCAT_CATALOG_DIR
  return DWCAT_CATALOG_DIR;
#else
  return "catalog";
#endif
}

inline json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) fail("cannot open '", p.string(), "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail("parse error in '", p.string(), "': ", e.what());
  }
}

// A path if it exists, else <catalog>/<kind>/<name>.json, else nullopt.
inline std::optional<fs::path> resolve(const std::string& name, const std::string& kind) {
  if (fs::exists(name) && fs::is_regular_file(name)) return fs::path(name);
  fs::path p = catalog_dir() / kind / (name + ".json");
  if (fs::exists(p)) return p;
  p = catalog_dir() / kind / name;
  if (fs::exists(p) && fs::is_regular_file(p)) return p;
  return std::nullopt;
}

template<typename T>
T field(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) fail(what, ": missing key '", key, "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(what, ": bad value for '", key, "': ", e.what());
  }
}

inline std::vector<int> parse_tuple(const std::string& s) {
  std::vector<int> t;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      t.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail("bad tuple key '", s, "'");
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

inline DeltaComplex complex_from_json(const json& j) {
  const std::string what = "complex file";
  int n = field<int>(j, "dim", what);
  if (n < 0) fail(what, ": negative dimension");
  DeltaComplex X;
  X.faces.resize(n + 1);
  const json& s = j.at("simplices");
  int nv = 0;
  if (s.contains("0")) {
    const json& v = s.at("0");
    nv = v.is_number() ? v.get<int>() : int(v.size());
  } else {
    nv = field<int>(j, "vertices", what);
  }
  X.faces[0].assign(nv, {});
  for (int k = 1; k <= n; ++k) {
    auto key = std::to_string(k);
    if (!s.contains(key)) fail(what, ": no simplices of dimension ", k);
    for (const auto& f : s.at(key)) {
      auto faces = f.get<std::vector<int>>();
      if (int(faces.size()) != k + 1) fail(what, ": a ", k, "-simplex needs ", k + 1, " faces");
      X.faces[k].push_back(faces);
    }
  }
  if (j.contains("orientation")) X.orientation = j.at("orientation").get<std::vector<int>>();
  if (j.contains("boundaries"))
    for (const auto& b : j.at("boundaries")) {
      Boundary B;
      B.name = field<std::string>(b, "name", what);
      auto role = field<std::string>(b, "role", what);
      if (role != "in" && role != "out") fail(what, ": boundary role must be 'in' or 'out'");
      B.incoming = role == "in";
      B.embed = face_closure(X, n - 1, field<std::vector<int>>(b, "top_simplices", what));
      X.boundaries.push_back(B);
    }
  validate(X);
  return X;
}

inline DeltaComplex load_complex(const std::string& name) {
  if (auto p = resolve(name, "complexes")) return complex_from_json(read_json(*p));
  return library::by_name(name);
}

inline FiniteGroup group_from_json(const json& j, const std::string& name) {
  int n = field<int>(j, "order", "group file");
  auto table = field<std::vector<std::vector<int>>>(j, "table", "group file");
  if (int(table.size()) != n) fail("group file: table has ", table.size(), " rows, order is ", n);
  return FiniteGroup(table, j.value("name", name));
}

inline FiniteGroup load_group(const std::string& name) {
  auto p = resolve(name, "groups");
  if (!p) fail("unknown group '", name, "'");
  return group_from_json(read_json(*p), fs::path(name).stem().string());
}

inline GroupCocycle cocycle_from_json(const json& j, const std::string& name) {
  const std::string what = "cocycle file";
  auto G = load_group(field<std::string>(j, "group", what));
  int k = field<int>(j, "degree", what);
  Int m = field<Int>(j, "modulus", what);
  std::map<std::vector<int>, Int> vals;
  if (j.contains("values"))
    for (const auto& [key, v] : j.at("values").items()) {
      auto t = parse_tuple(key);
      if (int(t.size()) != k) fail(what, ": key '", key, "' has ", t.size(), " entries, degree is ", k);
      for (int g : t)
        if (g < 0 || g >= G.order()) fail(what, ": element ", g, " out of range in '", key, "'");
      vals[t] = v.get<Int>();
    }
  return make_group_cocycle(
      G, k, m,
      [&](const std::vector<int>& t) {
        auto it = vals.find(t);
        return it == vals.end() ? Int(0) : it->second;
      },
      j.value("name", name));
}

// "trivial" is built in for every group and degree; other names are files.
inline GroupCocycle load_cocycle(const std::string& name, const std::string& group, int degree) {
  if (name == "trivial") return trivial_cocycle(load_group(group), degree);
  auto p = resolve(name, "cocycles");
  if (!p) p = resolve(group + "_" + name, "cocycles");
  if (!p) fail("unknown cocycle '", name, "' for group '", group, "'");
  auto w = cocycle_from_json(read_json(*p), fs::path(name).stem().string());
  if (w.G.table() != load_group(group).table()) fail("cocycle '", name, "' is defined on another group");
  if (w.args != degree) fail("cocycle '", name, "' has degree ", w.args, ", the complex needs ", degree);
  return w;
}

inline CechCover cover_from_json(const json& j) {
  int n = field<int>(j, "sets", "cover file");
  auto ne = field<std::vector<std::vector<int>>>(j, "nonempty", "cover file");
  return make_cover(n, ne);
}

inline CechCover load_cover(const std::string& name) {
  if (auto p = resolve(name, "covers")) return cover_from_json(read_json(*p));
  return covers::by_name(name);
}

// Values on the nonempty tuples of size n; keys in any order of distinct
// indices are moved to increasing order with the alternating sign.
inline AlternatingTable tuple_table(const json& j, const CechCover& U, size_t n) {
  AlternatingTable r;
  for (const auto& t : tuples_of_size(U, n)) r.v[t] = 0;
  for (const auto& [key, v] : j.items()) {
    Tuple t = parse_tuple(key);
    if (t.size() != n) fail("gerbe file: key '", key, "' should have ", n, " indices");
    Tuple s = t;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) fail("gerbe file: repeated index in '", key, "'");
    if (!r.v.count(s)) fail("gerbe file: ", tuple_str(t), " is not a nonempty intersection");
    r.v[s] = permutation_sign(t) * v.get<Int>();
  }
  return r;
}

// {"modulus": m, "labels": {"i,j": int}, "theta": {"i,j,k": int}} on the
// given cover; omitted entries are 0.
inline Gerbe1Data gerbe1_from_json(const json& j, const CechCover& U) {
  Gerbe1Data g;
  g.cover = U;
  g.m = field<Int>(j, "modulus", "gerbe file");
  if (g.m < 1) fail("gerbe file: modulus must be positive");
  g.labels = tuple_table(j.value("labels", json::object()), U, 2);
  g.theta = tuple_table(j.value("theta", json::object()), U, 3);
  validate(g);
  return g;
}

inline Gerbe1Data load_gerbe1(const std::string& name, const CechCover& U) {
  auto p = resolve(name, "gerbes");
  if (!p) fail("unknown gerbe '", name, "'");
  return gerbe1_from_json(read_json(*p), U);
}

}  // namespace dwcat::io
