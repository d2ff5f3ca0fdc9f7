// dwcat: command-line front end for the cohomology, cap, gerbe and
// Dijkgraaf-Witten computations.
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "dwcat/check.hpp"
#include "dwcat/io.hpp"

using namespace dwcat;
using nlohmann::json;

namespace {

struct Options {
  std::string complex, group = "z2", cocycle = "trivial", coeff = "lines", in, out, cover, gerbe;
  std::vector<std::string> groups;
  Int modulus = 2;
  int degree = 0, threads = 1;
  unsigned seed = 1;
  bool json = false;
  double max_search = 3e5;
};

std::vector<std::string> factors(const AbelianGroup& A) {
  std::vector<std::string> f(A.rank, "0");
  for (Int d : A.torsion) f.push_back(std::to_string(d));
  return f;
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.json)
    std::cout << j.dump() << "\n";
  else
    std::cout << text;
}

json matrix_json(const std::vector<std::vector<Cyclo>>& M) {
  json rows = json::array();
  for (const auto& r : M) {
    json row = json::array();
    for (const auto& c : r) row.push_back(c.str());
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_text(const std::vector<std::vector<Cyclo>>& M) {
  std::string s;
  for (const auto& r : M) {
    for (size_t i = 0; i < r.size(); ++i) s += (i ? "  " : "") + r[i].str();
    s += "\n";
  }
  return s;
}

int dw_closed(const Options& o) {
  auto X = io::load_complex(o.complex);
  if (!X.boundaries.empty()) fail("complex '", o.complex, "' has boundary; use 'dw cobordism'");
  auto w = io::load_cocycle(o.cocycle, o.group, X.dim());
  auto Z = partition_function(X, w, o.threads);
  emit(o, json{{"Z", Z.str()}}, "Z = " + Z.str() + "\n");
  return 0;
}

int dw_surface(const Options& o) {
  auto Y = io::load_complex(o.complex);
  auto w = io::load_cocycle(o.cocycle, o.group, Y.dim() + 1);
  StateSpace S(Y, w);
  json orbits = json::array();
  std::string text = "dimension " + std::to_string(S.dimension()) + "\n";
  for (int i = 0; i < int(S.orbits().size()); ++i) {
    const auto& orb = S.orbits()[i];
    orbits.push_back({{"anchor", S.anchor(i)},
                      {"stabilizer", orb.stabilizer.size()},
                      {"size", to_string(orb.size)},
                      {"holonomy", orb.holonomy},
                      {"basis", orb.holonomy_free}});
    text += std::string(orb.holonomy_free ? "  basis " : "  dropped ") + "orbit " + std::to_string(i) +
            ": size " + to_string(orb.size) + ", stabilizer " + std::to_string(orb.stabilizer.size()) + "\n";
  }
  emit(o, json{{"dimension", S.dimension()}, {"orbits", orbits}}, text);
  return 0;
}

void check_boundary(const std::optional<StateSpace>& S, const std::string& name, const char* role) {
  if (name.empty()) return;
  auto Y = io::load_complex(name);
  if (!S) fail("boundary mismatch: the cobordism has no ", role, " piece");
  if (S->complex().faces != Y.faces) fail("boundary mismatch: ", role, " piece is not the complex '", name, "'");
}

int dw_cobordism(const Options& o) {
  auto X = io::load_complex(o.complex);
  auto w = io::load_cocycle(o.cocycle, o.group, X.dim());
  auto M = cobordism_map(X, w, o.threads);
  check_boundary(M.in, o.in, "incoming");
  check_boundary(M.out, o.out, "outgoing");
  emit(o, json{{"rows", M.rows()}, {"cols", M.cols()}, {"matrix", matrix_json(M.matrix)}},
       std::to_string(M.rows()) + " x " + std::to_string(M.cols()) + "\n" + matrix_text(M.matrix));
  return 0;
}

std::vector<std::string> catalog_cocycles(const std::string& group) {
  std::vector<std::string> r{"trivial"};
  auto dir = io::catalog_dir() / "cocycles";
  if (!io::fs::exists(dir)) return r;
  std::vector<std::string> names;
  for (const auto& e : io::fs::directory_iterator(dir)) {
    auto stem = e.path().stem().string();
    if (stem.rfind(group + "_", 0) == 0) names.push_back(stem.substr(group.size() + 1));
  }
  std::sort(names.begin(), names.end());
  r.insert(r.end(), names.begin(), names.end());
  return r;
}

std::vector<std::string> catalog_groups() {
  std::vector<std::string> r;
  for (const auto& e : io::fs::directory_iterator(io::catalog_dir() / "groups")) r.push_back(e.path().stem().string());
  std::sort(r.begin(), r.end());
  return r;
}

int dw_check(const Options& o) {
  const std::vector<std::string> complexes{"s1", "cyl_s1", "s2", "t2", "s3", "s2xs1", "t3", "cyl_s2", "cyl_t2"};
  auto groups = o.groups.empty() ? catalog_groups() : o.groups;
  json cases = json::array();
  int failures = 0;
  std::mt19937 rng(o.seed);
  for (const auto& cname : complexes) {
    auto X = io::load_complex(cname);
    for (const auto& g : groups) {
      std::vector<GroupCocycle> ws;
      std::vector<std::string> names;
      for (const auto& cn : catalog_cocycles(g)) {
        try {
          ws.push_back(io::load_cocycle(cn, g, X.dim()));
          names.push_back(cn);
        } catch (const Error&) {
        }
      }
      auto rs = cross_check(X, ws, o.max_search, o.threads);
      for (size_t i = 0; i < rs.size(); ++i) {
        const auto& r = rs[i];
        if (r.verdict == Verdict::Fail) ++failures;
        cases.push_back({{"complex", cname},
                         {"group", g},
                         {"cocycle", names[i]},
                         {"verdict", verdict_name(r.verdict)},
                         {"detail", r.detail}});
        if (!o.json)
          std::cout << verdict_name(r.verdict) << " " << cname << " " << g << " " << names[i] << ": " << r.detail
                    << "\n";
      }
    }
  }
  // Line-of-field certificates for closed surfaces and every degree 3 cocycle.
  for (const auto& cname : {"s2", "t2"}) {
    auto Y = io::load_complex(cname);
    for (const auto& g : groups)
      for (const auto& cn : catalog_cocycles(g)) {
        auto w = io::load_cocycle(cn, g, 3);
        StateSpace S(Y, w);
        std::string verdict = "PASS", detail;
        Int cycles = 0;
        try {
          for (int i = 0; i < int(S.orbits().size()); ++i) {
            std::vector<int> h1(Y.count(0)), h2(Y.count(0) * 2);
            for (auto& x : h1) x = int(rng() % unsigned(w.G.order()));
            for (auto& x : h2) x = int(rng() % unsigned(w.G.order()));
            auto L = line_of_field(Y, w, S.anchor(i), h1, h2, 10, unsigned(rng()));
            cycles += L.cycles_checked;
          }
          detail = std::to_string(cycles) + " cycles without holonomy";
        } catch (const Error& e) {
          verdict = "FAIL";
          detail = e.what();
          ++failures;
        }
        cases.push_back({{"complex", std::string(cname) + " (line of field)"},
                         {"group", g},
                         {"cocycle", cn},
                         {"verdict", verdict},
                         {"detail", detail}});
        if (!o.json) std::cout << verdict << " line " << cname << " " << g << " " << cn << ": " << detail << "\n";
      }
  }
  if (o.json) std::cout << json{{"cases", cases}, {"failures", failures}}.dump() << "\n";
  return failures ? 1 : 0;
}

int cohomology_cmd(const Options& o) {
  auto X = io::load_complex(o.complex);
  CoeffGroupoid A = o.coeff == "lines" ? CoeffGroupoid::lines(o.modulus)
                    : o.coeff == "discrete"
                        ? (o.modulus == 0 ? CoeffGroupoid::integers() : CoeffGroupoid::cyclic(o.modulus))
                        : (fail("unknown coefficient kind '", o.coeff, "'"), CoeffGroupoid::integers());
  auto H = cohomology(X, A, o.degree);
  json j{{"coeff", A.name()},
         {"degree", o.degree},
         {"pi0", H.pi0.str()},
         {"pi0_factors", factors(H.pi0)},
         {"pi1", factors(H.pi1)},
         {"pi1_group", H.pi1.str()}};
  emit(o, j, "pi0 = " + H.pi0.str() + "\npi1 = " + H.pi1.str() + "\n");
  return 0;
}

int cap_cmd(const Options& o) {
  auto X = io::load_complex(o.complex);
  if (!X.boundaries.empty()) fail("cap needs a closed complex");
  auto A = CoeffGroupoid::lines(o.modulus);
  auto H = cohomology(X, A, o.degree);
  ChainContext ctx(X, A);
  int k = X.dim() - o.degree;
  auto Q = ctx.pi0_group(k);
  Chain z = fundamental_cycle(X);
  json images = json::array();
  std::string text = "H^" + std::to_string(o.degree) + " pi0 = " + H.pi0.str() + ", H_" + std::to_string(k) +
                     " pi0 = " + AbelianGroup{0, Q.orders}.str() + "\n";
  for (size_t i = 0; i < H.pi0_generators.size(); ++i) {
    auto c = ctx.pi0_coordinates(cap(X, ctx, z, H.pi0_generators[i]), Q);
    images.push_back(c);
    text += "  [X] cap g" + std::to_string(i) + " = " + tuple_str(std::vector<int>(c.begin(), c.end())) + "\n";
  }
  json j{{"cohomology", H.pi0.str()}, {"homology", factors(AbelianGroup{0, Q.orders})}, {"images", images}};
  emit(o, j, text);
  return 0;
}

int gerbe_trivialize(const Options& o) {
  auto U = io::load_cover(o.cover);
  auto g = io::load_gerbe1(o.gerbe, U);
  auto obj = find_object(g);
  json j;
  std::string text;
  if (!obj) {
    j = {{"object", nullptr}};
    text = "no object: the class is nonzero\n";
  } else {
    json L = json::object(), isos = json::object();
    for (auto [i, v] : obj->L) L[std::to_string(i)] = v;
    for (const auto& [t, v] : obj->isos.v) isos[tuple_str(t).substr(1, tuple_str(t).size() - 2)] = mod(v, g.m);
    j = {{"object", {{"L", L}, {"isos", isos}}}};
    text = "object found\n";
    for (auto [i, v] : obj->L) text += "  L_" + std::to_string(i) + " = " + std::to_string(v) + "\n";
  }
  emit(o, j, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Picard-groupoid cohomology and Dijkgraaf-Witten theory on finite complexes"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_flag("--json", o.json, "machine-readable output");
    c->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "seed for sampled checks");
  };
  auto dw = app.add_subcommand("dw", "Dijkgraaf-Witten theory");
  dw->require_subcommand(1);
  auto with_theory = [&](CLI::App* c, bool need_complex) {
    auto opt = c->add_option("--complex", o.complex, "library name or complex file");
    if (need_complex) opt->required();
    c->add_option("--group", o.group, "catalog group or group file");
    c->add_option("--cocycle", o.cocycle, "'trivial', catalog cocycle or cocycle file");
    common(c);
  };
  auto closed = dw->add_subcommand("closed", "partition function of a closed complex");
  with_theory(closed, true);
  auto surface = dw->add_subcommand("surface", "state space of a closed oriented complex");
  with_theory(surface, true);
  auto cob = dw->add_subcommand("cobordism", "matrix of a cobordism between state spaces");
  with_theory(cob, true);
  cob->add_option("--in", o.in, "expected incoming complex");
  cob->add_option("--out", o.out, "expected outgoing complex");
  auto chk = dw->add_subcommand("check", "compare against the brute-force state sum");
  common(chk);
  chk->add_option("--group", o.groups, "restrict to these groups");
  chk->add_option("--max-search", o.max_search, "largest brute-force search attempted");

  auto coh = app.add_subcommand("cohomology", "pi0 and pi1 of the cohomology groupoid");
  coh->add_option("--complex", o.complex)->required();
  coh->add_option("--coeff", o.coeff, "lines or discrete")->check(CLI::IsMember({"lines", "discrete"}));
  coh->add_option("--modulus", o.modulus, "phase modulus, or group order for discrete (0 for Z)");
  coh->add_option("--degree", o.degree)->required();
  common(coh);

  auto capc = app.add_subcommand("cap", "cap the fundamental class with the pi0 generators");
  capc->add_option("--complex", o.complex)->required();
  capc->add_option("--modulus", o.modulus);
  capc->add_option("--degree", o.degree)->required();
  common(capc);

  auto gerbe = app.add_subcommand("gerbe", "hermitian line gerbes on Cech nerves");
  gerbe->require_subcommand(1);
  auto triv = gerbe->add_subcommand("trivialize", "find an object compatible with a 1-gerbe");
  triv->add_option("--cover", o.cover)->required();
  triv->add_option("--gerbe", o.gerbe)->required();
  common(triv);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*closed) return dw_closed(o);
    if (*surface) return dw_surface(o);
    if (*cob) return dw_cobordism(o);
    if (*chk) return dw_check(o);
    if (*coh) return cohomology_cmd(o);
    if (*capc) return cap_cmd(o);
    if (*triv) return gerbe_trivialize(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
