// Full-count acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include "mcover/mcover.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>

using namespace mcover;

namespace {

struct Tally {
  long checks = 0;
  long failures = 0;
  std::string first;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what();
  }
};

std::string show(const std::vector<Rat>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i].str();
  return s + "]";
}

std::vector<SymbolBackend> local_backends() {
  return {SymbolBackend::real(),     SymbolBackend::padic(2), SymbolBackend::padic(3),
          SymbolBackend::padic(5),   SymbolBackend::padic(7), SymbolBackend::tame(7, 3)};
}

// Quadratic oracle value at the backend's place.
int oracle_symbol(const SymbolBackend& bk, const Rat& a, const Rat& b) {
  if (bk.kind() == SymbolBackend::Kind::RealQuadratic) return oracle::real_hilbert(a, b);
  return oracle::conic_hilbert(a, b, bk.p().get_si());
}

void symbol_axioms(const SymbolBackend& bk, const Rat& a, const Rat& b, const Rat& c, Tally& t) {
  const int n = bk.n();
  auto ctx = [&] { return bk.str() + " a,b,c=" + show({a, b, c}); };
  t.expect(symbol(bk, a * b, c) == symbol(bk, a, c) * symbol(bk, b, c), [&] { return "left bilinearity " + ctx(); });
  t.expect(symbol(bk, a, b * c) == symbol(bk, a, b) * symbol(bk, a, c), [&] { return "right bilinearity " + ctx(); });
  t.expect(symbol(bk, a, b).inverse() == symbol(bk, b, a), [&] { return "antisymmetry " + ctx(); });
  t.expect(symbol(bk, a.pow(n), b).is_identity(), [&] { return "(a^n,b) " + ctx(); });
  t.expect(symbol(bk, a, b.pow(n)).is_identity(), [&] { return "(a,b^n) " + ctx(); });
  t.expect(symbol(bk, a, -a).is_identity(), [&] { return "(a,-a) " + ctx(); });
}

// 1. Symbol axioms, exhaustive on transversals and on random triples; the
// quadratic symbols are also compared with the conic-solvability oracle.
Tally crit_symbol_axioms() {
  Tally t;
  std::vector<SymbolBackend> exhaustive = {SymbolBackend::padic(2), SymbolBackend::padic(3), SymbolBackend::padic(5),
                                           SymbolBackend::padic(7), SymbolBackend::tame(7, 3)};
  for (const auto& bk : exhaustive) {
    auto tr = bk.transversal();
    for (const Rat& a : tr)
      for (const Rat& b : tr) {
        for (const Rat& c : tr) symbol_axioms(bk, a, b, c, t);
        if (bk.n() == 2)
          t.expect(symbol(bk, a, b).exponent == oracle_symbol(bk, a, b),
                   [&] { return "conic oracle " + bk.str() + " " + show({a, b}); });
      }
  }
  Sampler rng(derive_seed(20240601, "acceptance/symbols"));
  auto bks = local_backends();
  for (long s = 0; s < 10000; ++s) {
    const auto& bk = bks[s % bks.size()];
    Rat a = rng.nonzero(40), b = rng.nonzero(40), c = rng.nonzero(40);
    symbol_axioms(bk, a, b, c, t);
    if (bk.n() == 2)
      t.expect(symbol(bk, a, b).exponent == oracle_symbol(bk, a, b),
               [&] { return "conic oracle " + bk.str() + " " + show({a, b}); });
  }
  return t;
}

// 2. Product of (a,b)_v over the places found by trial-division factorization.
Tally crit_global_hilbert() {
  Tally t;
  Sampler rng(derive_seed(20240601, "acceptance/global"));
  for (long s = 0; s < 10000; ++s) {
    Rat a = rng.nonzero(200), b = rng.nonzero(200);
    std::set<long> primes{2};
    for (const Int& z : {a.num(), a.den(), b.num(), b.den()})
      for (auto [p, e] : oracle::factor(z)) primes.insert(p);
    MuN prod = symbol(SymbolBackend::real(), a, b);
    for (long p : primes) prod *= symbol(SymbolBackend::padic(p), a, b);
    t.expect(prod.is_identity(), [&] { return "product is -1 for " + show({a, b}); });
    t.expect(global_symbol(a, b).is_identity(), [&] { return "global_symbol is -1 for " + show({a, b}); });
  }
  return t;
}

std::vector<CocycleParams> param_grid(int r, const std::vector<SymbolBackend>& bks) {
  std::vector<CocycleParams> out;
  for (const auto& bk : bks)
    for (int c = 0; c < std::min(bk.n(), 2); ++c) out.emplace_back(r, bk.n(), c, bk);
  return out;
}

std::vector<SymbolBackend> cocycle_backends() {
  return {SymbolBackend::real(), SymbolBackend::padic(2), SymbolBackend::padic(3), SymbolBackend::padic(5)};
}

// 3. sigma(g,g') sigma(gg',g'') = sigma(g,g'g'') sigma(g',g'') for every backend and c.
Tally crit_cocycle_identity() {
  Tally t;
  Sampler rng(derive_seed(20240601, "acceptance/cocycle"));
  for (auto [r, count] : {std::pair{2, 10000L}, std::pair{3, 1000L}}) {
    auto grid = param_grid(r, cocycle_backends());
    for (long s = 0; s < count; ++s) {
      MatQ a = rng.invertible(r), b = rng.invertible(r), d = rng.invertible(r);
      for (const auto& P : grid) {
        MuN lhs = sigma(a, b, P) * sigma(a * b, d, P), rhs = sigma(a, b * d, P) * sigma(b, d, P);
        t.expect(lhs == rhs, [&] { return P.backend.str() + " c=" + std::to_string(P.c) + " r=" + std::to_string(r); });
      }
      if (s % 2000 == 1999) default_evaluator().clear();
    }
    default_evaluator().clear();
  }
  return t;
}

std::vector<CocycleParams> full_grid(int r) {
  std::vector<CocycleParams> out;
  for (const auto& bk : local_backends())
    for (int c = 0; c < bk.n(); ++c) out.emplace_back(r, bk.n(), c, bk);
  return out;
}

std::vector<std::vector<int>> all_perms(int r) {
  std::vector<int> p(r);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Every diagonal matrix of size r with entries from the transversal.
std::vector<MatQ> torus_transversal(const std::vector<Rat>& tr, int r) {
  std::vector<MatQ> out;
  std::vector<std::size_t> idx(r, 0);
  while (true) {
    std::vector<Rat> d;
    for (auto i : idx) d.push_back(tr[i]);
    out.push_back(MatQ::diag(d));
    int k = 0;
    while (k < r && ++idx[k] == tr.size()) idx[k++] = 0;
    if (k == r) return out;
  }
}

// Torus-torus closed form, evaluated directly from the symbol.
MuN torus_formula(const MatQ& t, const MatQ& t2, const CocycleParams& P) {
  MuN acc = MuN::identity(P.n);
  for (int i = 0; i < P.r; ++i)
    for (int j = i + 1; j < P.r; ++j) acc *= symbol(P.backend, t(i, i), t2(j, j));
  return acc * symbol(P.backend, t.det(), t2.det()).pow(P.c);
}

// Eta-torus closed form over the inverted positive roots, read off the matrix.
MuN eta_torus_formula(const MatQ& eta, const MatQ& t, const CocycleParams& P) {
  auto perm = monomial_permutation(eta);
  MuN acc = MuN::identity(P.n);
  for (int i = 0; i < P.r; ++i)
    for (int j = i + 1; j < P.r; ++j)
      if (perm[i] > perm[j]) acc *= symbol(P.backend, -t(j, j), t(i, i));
  return acc * symbol(P.backend, Rat(1), t.det()).pow(P.c);
}

// 4. Unipotent invariance, the torus formulas and sigma(t, eta) = 1.
Tally crit_sigma_properties() {
  Tally t;
  Sampler rng(derive_seed(20240601, "acceptance/sigma"));
  std::map<int, std::vector<CocycleParams>> grids;
  for (int r = 1; r <= 3; ++r) grids[r] = full_grid(r);
  auto params = [&](long s, int r) {
    const auto& g = grids[r];
    return g[static_cast<std::size_t>(s) % g.size()];
  };
  for (long s = 0; s < 1000; ++s) {
    int r = 2 + static_cast<int>(s % 2);
    auto P = params(s / 2, r);
    MatQ g = rng.invertible(r), g2 = rng.invertible(r), u = rng.unipotent(r), u2 = rng.unipotent(r);
    t.expect(sigma(u * g, g2 * u2, P) == sigma(g, g2, P), [&] { return "(1) " + P.backend.str(); });
    t.expect(sigma(g * u, g2, P) == sigma(g, u * g2, P), [&] { return "(2) " + P.backend.str(); });
    EtaElement eta = rng.eta(r);
    MatQ d = rng.diagonal(r), d2 = rng.diagonal(r);
    t.expect(sigma(eta.matrix(), d, P) == eta_torus_formula(eta.matrix(), d, P), [&] { return "(3) " + P.backend.str(); });
    t.expect(sigma(d, d2, P) == torus_formula(d, d2, P), [&] { return "(4) " + P.backend.str(); });
    t.expect(sigma(d, eta.matrix(), P).is_identity(), [&] { return "(5) " + P.backend.str(); });
  }
  default_evaluator().clear();
  // Exhaustive on torus transversals.
  for (int r = 1; r <= 3; ++r)
    for (const auto& P : grids[r]) {
      auto tori = torus_transversal(P.backend.transversal(), r);
      auto perms = all_perms(r);
      for (const auto& d : tori) {
        for (const auto& p : perms) {
          MatQ eta = eta_from_perm(p).matrix();
          t.expect(sigma(eta, d, P) == eta_torus_formula(eta, d, P),
                   [&] { return "(3) exhaustive " + P.backend.str() + " t=" + show(d.diagonal()); });
          t.expect(sigma(d, eta, P).is_identity(),
                   [&] { return "(5) exhaustive " + P.backend.str() + " t=" + show(d.diagonal()); });
        }
        for (const auto& d2 : tori)
          t.expect(sigma(d, d2, P) == torus_formula(d, d2, P),
                   [&] { return "(4) exhaustive " + P.backend.str() + " t=" + show(d.diagonal()); });
      }
      default_evaluator().clear();
    }
  return t;
}

std::vector<std::vector<int>> levi_shapes() { return {{1, 1}, {2, 1}, {1, 2}, {2, 2}, {1, 1, 1}}; }

std::vector<LeviShape> shape_grid(const std::vector<int>& parts) {
  std::vector<LeviShape> out;
  for (const auto& bk : local_backends())
    for (int c = 0; c < std::min(bk.n(), 2); ++c) out.emplace_back(parts, bk.n(), c, bk);
  return out;
}

// 5. sigma(block_embed(m), block_embed(m')) against the block formula.
Tally crit_block_compat() {
  Tally t;
  Sampler rng(derive_seed(20240601, "acceptance/block"));
  for (const auto& parts : levi_shapes()) {
    auto grid = shape_grid(parts);
    for (long s = 0; s < 1000; ++s) {
      Blocks m = rng.blocks(grid[0]), m2 = rng.blocks(grid[0]);
      MatQ g = block_embed(m, grid[0]), g2 = block_embed(m2, grid[0]);
      for (const auto& sh : grid)
        t.expect(sigma(g, g2, sh.params()) == levi_cocycle(m, m2, sh), [&] { return sh.backend.str(); });
    }
    default_evaluator().clear();
  }
  return t;
}

// 6. sigma(g, aI) / sigma(aI, g) = (det g, a^{r-1+2cr}).
Tally crit_center_lemma() {
  Tally t;
  Sampler rng(derive_seed(20240601, "acceptance/center-lemma"));
  for (int r : {2, 3}) {
    auto grid = full_grid(r);
    for (long s = 0; s < 1000; ++s) {
      MatQ g = rng.invertible(r);
      Rat a = rng.nonzero();
      MatQ aI = MatQ::scalar(r, a);
      for (const auto& P : grid) {
        MuN want = symbol(P.backend, g.det(), a.pow(r - 1 + 2L * r * P.c));
        t.expect(sigma(g, aI, P) / sigma(aI, g, P) == want,
                 [&] { return P.backend.str() + " c=" + std::to_string(P.c) + " a=" + a.str(); });
      }
    }
    default_evaluator().clear();
  }
  return t;
}

// Brute-force commutation of z with (g, 1) over a generating set of the block group:
// iota(x) for x in the transversal (or x^n when restricted to M^(n)), simple
// reflections and elementary unipotents in every block.
bool commutes_with_block_generators(const CoverElement& z, const LeviShape& shape, bool nth_powers_only) {
  const auto tr = shape.backend.transversal();
  const auto P = shape.params();
  auto embed = [&](int blk, const MatQ& g) {
    Blocks b;
    for (int i = 0; i < shape.k(); ++i) b.push_back(i == blk ? g : MatQ::identity(shape.partition[i]));
    return CoverElement::lift(block_embed(b, shape), P);
  };
  auto commutes = [&](const CoverElement& y) { return mul(z, y) == mul(y, z); };
  for (int blk = 0; blk < shape.k(); ++blk) {
    int rb = shape.partition[blk];
    for (const Rat& x : tr) {
      Rat y = nth_powers_only ? x.pow(shape.n) : x;
      if (!commutes(embed(blk, iota(rb, y)))) return false;
      if (nth_powers_only && rb >= 2) {
        MatQ h = MatQ::identity(rb);
        h(0, 0) = x;
        h(1, 1) = x.inverse();
        if (!commutes(embed(blk, h))) return false;
      }
    }
    for (int i = 0; i + 1 < rb; ++i) {
      if (!commutes(embed(blk, simple_reflection(rb, i)))) return false;
      if (!commutes(embed(blk, MatQ::elementary(rb, i, i + 1, Rat(1))))) return false;
      if (!commutes(embed(blk, MatQ::elementary(rb, i + 1, i, Rat(1))))) return false;
    }
  }
  return true;
}

// 7. Closed-form centers against brute-force commutation, exhaustively over
// power-class representatives, plus Z(M~^(n)) = Z~_M cap M~^(n).
Tally crit_center_closed_forms() {
  Tally t;
  Sampler rng(derive_seed(20240601, "acceptance/center"));
  for (const auto& bk : local_backends()) {
    auto tr = bk.transversal();
    for (int c = 0; c < bk.n(); ++c) {
      for (int r = 1; r <= 3; ++r) {
        LeviShape shape({r}, bk.n(), c, bk);
        for (const Rat& a : tr) {
          auto z = CoverElement::lift(MatQ::scalar(r, a), shape.params());
          bool brute = commutes_with_block_generators(z, shape, false);
          t.expect(brute == in_center_GLr(a, shape.params()),
                   [&] { return "GL_" + std::to_string(r) + " " + bk.str() + " c=" + std::to_string(c) + " a=" + a.str(); });
        }
      }
      for (std::vector<int> parts : {std::vector<int>{1, 1}, {1, 2}, {2, 1}}) {
        LeviShape shape(parts, bk.n(), c, bk);
        for (const Rat& a1 : tr)
          for (const Rat& a2 : tr) {
            Blocks zb{MatQ::scalar(parts[0], a1), MatQ::scalar(parts[1], a2)};
            auto z = CoverElement::lift(block_embed(zb, shape), shape.params());
            auto where = [&] { return bk.str() + " c=" + std::to_string(c) + " a=" + show({a1, a2}); };
            bool brute = commutes_with_block_generators(z, shape, false);
            t.expect(brute == in_center_M({a1, a2}, shape), [&] { return "M center " + where(); });
            // z always commutes with M~^(n), so z is central there iff it lies in M~^(n).
            bool commutes_mn = commutes_with_block_generators(z, shape, true);
            Blocks mn = rng.mn_blocks(shape);
            auto y = CoverElement::lift(block_embed(mn, shape), shape.params());
            commutes_mn = commutes_mn && mul(z, y) == mul(y, z);
            bool in_mn = in_Mn(zb, shape);
            t.expect((in_mn && commutes_mn) == in_mn, [&] { return "Z(M~^(n)) equality " + where(); });
          }
      }
    }
  }
  default_evaluator().clear();
  return t;
}

// 8. phi_w(m) = 1 on M^(n) and phi_w(m m') = phi_w(m) phi_w(m').
Tally crit_weyl_twist() {
  Tally t;
  Sampler rng(derive_seed(20240601, "acceptance/weyl"));
  std::vector<std::vector<int>> shapes = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 1, 1}};
  for (const auto& parts : shapes) {
    auto grid = shape_grid(parts);
    for (const auto& perm : all_perms(static_cast<int>(parts.size()))) {
      for (long s = 0; s < 1000; ++s) {
        const auto& sh = grid[static_cast<std::size_t>(s) % grid.size()];
        BlockPerm bp(perm, sh);
        Blocks m = rng.mn_blocks(sh);
        MuN f = phi_w(m, bp);
        t.expect(f.is_identity(), [&] { return "phi_w = " + f.str() + " " + sh.backend.str(); });
        // Conjugation in the cover lands on (w m w^{-1}, 1).
        if (s % 10 == 0) {
          MatQ w = weyl_block_element(bp).w;
          auto P = sh.params();
          auto got = conj(CoverElement::lift(w, P), CoverElement::lift(block_embed(m, sh), P));
          t.expect(got == CoverElement::lift(w * block_embed(m, sh) * w.inverse(), P),
                   [&] { return "conjugation " + sh.backend.str(); });
        }
        if (s % 5 == 0) {
          Blocks m2 = rng.mn_blocks(sh), mm;
          for (int i = 0; i < sh.k(); ++i) mm.push_back(m[i] * m2[i]);
          t.expect(phi_w(mm, bp) == phi_w(m, bp) * phi_w(m2, bp), [&] { return "homomorphy " + sh.backend.str(); });
        }
      }
      default_evaluator().clear();
    }
  }
  return t;
}

// 9. conj((m,1),(u,1)) = (m u m^{-1}, 1) for u in the unipotent radical.
Tally crit_normalizer() {
  Tally t;
  Sampler rng(derive_seed(20240601, "acceptance/normalizer"));
  auto shapes = levi_shapes();
  for (long s = 0; s < 1000; ++s) {
    auto grid = shape_grid(shapes[s % shapes.size()]);
    const auto& sh = grid[static_cast<std::size_t>(s / shapes.size()) % grid.size()];
    MatQ m = block_embed(rng.blocks(sh), sh), u = rng.radical_unipotent(sh);
    auto P = sh.params();
    auto got = conj(CoverElement::lift(m, P), CoverElement::lift(u, P));
    t.expect(got == CoverElement::lift(m * u * m.inverse(), P), [&] { return sh.backend.str() + " xi=" + got.xi.str(); });
  }
  default_evaluator().clear();
  return t;
}

// 10. Product over places of sigma_v(g, g') is trivial; local factors at primes
// outside the support are checked to be trivial as well.
Tally crit_product_formula() {
  Tally t;
  Sampler rng(derive_seed(20240601, "acceptance/product"));
  for (auto [r, count] : {std::pair{2, 1000L}, std::pair{3, 100L}}) {
    for (long s = 0; s < count; ++s) {
      MatQ g = rng.invertible(r), g2 = rng.invertible(r);
      int c = static_cast<int>(s % 2);
      auto res = product_formula_sigma(g, g2, c);
      t.expect(res.product.is_identity(), [&] { return "r=" + std::to_string(r) + " c=" + std::to_string(c); });
      auto trace = sigma_trace(g, g2, CocycleParams(r, 2, c, SymbolBackend::real()));
      for (long p : {3L, 5L, 7L, 11L, 13L}) {
        bool listed = std::any_of(res.local.begin(), res.local.end(),
                                  [&](const LocalFactor& f) { return !f.place.is_infinite() && f.place.p() == p; });
        if (listed) continue;
        CocycleParams Pp(r, 2, c, SymbolBackend::padic(p));
        t.expect(sigma(g, g2, Pp).is_identity(), [&] { return "nontrivial factor outside support at p=" + std::to_string(p); });
      }
    }
    default_evaluator().clear();
  }
  return t;
}

// 11. Kubota's GL_2 cocycle equals sigma at r = 2.
Tally crit_kubota() {
  Tally t;
  Sampler rng(derive_seed(20240601, "acceptance/kubota"));
  auto grid = full_grid(2);
  for (long s = 0; s < 10000; ++s) {
    MatQ g = rng.invertible(2), g2 = rng.invertible(2);
    for (const auto& P : grid)
      t.expect(kubota_gl2(g, g2, P) == sigma(g, g2, P),
               [&] { return P.backend.str() + " c=" + std::to_string(P.c); });
    if (s % 2000 == 1999) default_evaluator().clear();
  }
  default_evaluator().clear();
  return t;
}

// 12. Hypothesis checkers against an independent gcd, n = 2 always satisfied,
// and the unit quotient orders.
Tally crit_hypothesis() {
  Tally t;
  struct Row {
    int n;
    std::vector<int> parts;
    int c;
  };
  std::vector<Row> table;
  const std::vector<std::vector<int>> partitions = {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {1, 4}, {3, 3}, {2, 4},
                                                    {1, 1, 1}, {2, 2, 2}, {4, 4}};
  for (int n : {2, 3, 4, 6, 12})
    for (std::size_t i = 0; i < partitions.size(); ++i) table.push_back({n, partitions[i], static_cast<int>(i % std::min(n, 3))});
  t.expect(table.size() == 50, [&] { return "table has " + std::to_string(table.size()) + " rows"; });
  for (const auto& row : table) {
    LeviShape sh(row.parts, row.n, row.c, SymbolBackend::trivial(row.n));
    auto rep = hypothesis_star(sh);
    long r = std::accumulate(row.parts.begin(), row.parts.end(), 0L);
    long d = oracle::euclid_gcd(row.n, r - 1 + 2 * row.c * r);
    bool all = true;
    for (int ri : row.parts) all = all && ri % d == 0;
    auto where = [&] { return "n=" + std::to_string(row.n) + " c=" + std::to_string(row.c) + " r=" + std::to_string(r); };
    t.expect(rep.d == d, [&] { return "d differs " + where(); });
    for (std::size_t i = 0; i < row.parts.size(); ++i)
      t.expect(rep.flags.at(i) == (row.parts[i] % d == 0), [&] { return "flag differs " + where(); });
    std::string want = all || row.n == 2 ? "satisfied" : "unknown";
    t.expect(rep.verdict == want, [&] { return "verdict " + rep.verdict + " " + where(); });
    if (row.n == 2) {
      auto rep2 = hypothesis_star2(sh);
      t.expect(rep2.verdict_star2 == "satisfied" && rep2.verdict_star3 == "satisfied",
               [&] { return "n=2 second hypothesis " + where(); });
      auto chain = a_chain_n2(sh);
      for (int i = 0; i < sh.k(); ++i) {
        int tail = std::accumulate(row.parts.begin() + i, row.parts.end(), 0);
        t.expect(chain[i].tail_rank == tail && chain[i].epsilon == (tail % 2 ? 1 : 2), [&] { return "chain " + where(); });
      }
    }
  }
  t.expect(quotient_order_Q(2) == 2, [] { return "quotient_order_Q(2)"; });
  t.expect(quotient_order_Q(1) == 1, [] { return "quotient_order_Q(1)"; });
  t.expect(quotient_order_Q(3) == 1, [] { return "quotient_order_Q(3)"; });
  return t;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Tally (*run)();
  };
  const Criterion criteria[] = {
      {"symbol axioms", crit_symbol_axioms},
      {"global Hilbert product formula", crit_global_hilbert},
      {"cocycle identity", crit_cocycle_identity},
      {"unipotent, torus and eta properties of sigma", crit_sigma_properties},
      {"block compatibility", crit_block_compat},
      {"center commutator lemma", crit_center_lemma},
      {"center closed forms vs commutation", crit_center_closed_forms},
      {"Weyl twist phi_w", crit_weyl_twist},
      {"normalizer of the unipotent radical", crit_normalizer},
      {"product formula for sigma", crit_product_formula},
      {"Kubota cocycle at r=2", crit_kubota},
      {"hypothesis checkers", crit_hypothesis},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    auto t0 = std::chrono::steady_clock::now();
    Tally t;
    try {
      t = c.run();
    } catch (const std::exception& e) {
      t.failures = 1;
      t.first = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = t.failures == 0;
    failed += !ok;
    std::printf("%s %2d %-46s checks=%-8ld failures=%-6ld %.1fs%s%s\n", ok ? "PASS" : "FAIL", index, c.name, t.checks,
                t.failures, secs, ok ? "" : "  first: ", ok ? "" : t.first.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
