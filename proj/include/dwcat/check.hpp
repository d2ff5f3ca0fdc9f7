#pragma once
// Comparison of the orbit pipeline with the brute-force state sum.
#include <string>

#include "dw.hpp"

namespace dwcat {

enum class Verdict { Pass, Fail, Skip };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skip: return "SKIP";
  }
  return "?";
}

struct CrossCheck {
  Verdict verdict = Verdict::Skip;
  std::string detail;
};

// Size of the brute-force search: |G| to the number of vertices not on the
// incoming piece.
inline double search_size(const DeltaComplex& X, const FiniteGroup& G) {
  const Boundary* in = X.find_boundary(true);
  int free = X.count(0) - (in ? int(in->embed[0].size()) : 0);
  double s = 1;
  for (int i = 0; i < free; ++i) s *= G.order();
  return s;
}

// Compares cobordism_map with the brute-force sums for several cocycles on
// one group. For cobordisms every matrix entry is compared, and on an evenly
// spaced sample of at most `transports` outgoing fields per column the
// field-level amplitude must equal the matrix entry times the transport
// phase, or vanish off the basis.
inline std::vector<CrossCheck> cross_check(const DeltaComplex& X, const std::vector<GroupCocycle>& ws,
                                           double max_search = 3e5, int threads = 1, int transports = 32) {
  std::vector<CrossCheck> out(ws.size());
  if (ws.empty()) return out;
  if (search_size(X, ws[0].G) > max_search) {
    for (auto& r : out) r.detail = "brute-force search too large";
    return out;
  }
  std::vector<CobordismMap> maps;
  for (const auto& w : ws) maps.push_back(cobordism_map(X, w, threads));
  if (X.boundaries.empty()) {
    auto Z = oracle::partition_functions(X, ws);
    for (size_t i = 0; i < ws.size(); ++i) {
      const auto& mine = maps[i].matrix[0][0];
      out[i].verdict = Z[i] == mine ? Verdict::Pass : Verdict::Fail;
      out[i].detail = "Z = " + mine.str() + ", oracle " + Z[i].str();
    }
    return out;
  }
  for (auto& r : out) r.verdict = Verdict::Pass;
  const auto& M0 = maps[0];
  int cols = M0.in ? M0.in->dimension() : 1;
  // Incoming bases may differ between cocycles; kernels are shared per
  // anchor field.
  std::map<Field, oracle::KernelTable> cache;
  auto kernel_for = [&](const Field& a) -> const oracle::KernelTable& {
    auto it = cache.find(a);
    if (it == cache.end()) it = cache.emplace(a, oracle::kernels(X, ws, a)).first;
    return it->second;
  };
  for (size_t i = 0; i < ws.size(); ++i) {
    const auto& M = maps[i];
    int Mo = int(ws[i].modulus);
    cols = M.in ? M.in->dimension() : 1;
    auto& r = out[i];
    for (int c = 0; c < cols && r.verdict == Verdict::Pass; ++c) {
      Field a = M.in ? M.in->anchor(M.in->basis()[c]) : Field{};
      const auto& K = kernel_for(a);
      for (int row = 0; row < M.rows(); ++row) {
        Cyclo expect(Mo);
        if (M.out) {
          int o = M.out->basis()[row];
          if (auto k = K.at(i, M.out->anchor(o))) expect = *k * M.out->orbits()[o].size;
        } else if (auto k = K.at(i, Field{})) {
          expect = *k;
        }
        if (!(expect == M.matrix[row][c])) {
          r.verdict = Verdict::Fail;
          r.detail = "entry (" + std::to_string(row) + "," + std::to_string(c) + ") = " + M.matrix[row][c].str() +
                     ", oracle " + expect.str();
          break;
        }
      }
      if (!M.out || r.verdict != Verdict::Pass) continue;
      size_t stride = std::max<size_t>(1, K.counts.size() / size_t(std::max(1, transports))), idx = 0;
      for (const auto& [f, raw] : K.counts) {
        if (idx++ % stride != 0) continue;
        Cyclo k = *K.at(i, f);
        auto [o, h] = M.out->locate(f);
        int row = M.out->basis_position(o);
        bool ok = row < 0 ? k.is_zero()
                          : k * M.out->orbits()[o].size == M.matrix[row][c] * Cyclo::root(Mo, M.out->transport(f));
        if (!ok) {
          r.verdict = Verdict::Fail;
          r.detail = std::string(row < 0 ? "nonzero amplitude on an orbit with holonomy"
                                         : "transport phase mismatch") +
                     " in column " + std::to_string(c);
          break;
        }
      }
    }
    if (r.verdict == Verdict::Pass)
      r.detail = std::to_string(M.rows()) + "x" + std::to_string(cols) + " matrix agrees";
  }
  return out;
}

inline CrossCheck cross_check(const DeltaComplex& X, const GroupCocycle& w, double max_search = 3e5,
                              int threads = 1, int transports = 32) {
  return cross_check(X, std::vector<GroupCocycle>{w}, max_search, threads, transports)[0];
}

}  // namespace dwcat
