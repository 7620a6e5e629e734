#pragma once

// Global computations over Q: the product formula for sigma, gcd hypothesis
// checks, the n = 2 chain of centers, Det_M and the unit quotient order.

#include "mcover/levi.hpp"

#include <set>

namespace mcover {

struct LocalFactor {
  Place place;
  MuN value;
};

struct ProductFormulaResult {
  MuN product;
  std::vector<LocalFactor> local;
};

/// Places where some symbol in the reduction of sigma(g, g2) can be nontrivial.
inline std::vector<Place> sigma_support(const SigmaTrace& trace, const MatQ& g, const MatQ& g2) {
  std::set<Int> primes{Int(2)};
  auto add = [&](const Rat& x) {
    for (const Int& z : {x.num(), x.den()})
      for (const auto& p : prime_divisors(z)) primes.insert(p);
  };
  for (const auto& step : trace.steps)
    for (const auto& f : step.factors) {
      add(f.a);
      add(f.b);
    }
  add(g.det());
  add(g2.det());
  std::vector<Place> out{Place::infinite()};
  for (const auto& p : primes) out.push_back(Place::finite(p));
  return out;
}

/// prod_v sigma_{r,v}(g, g2) over Q with n = 2; the product is always trivial.
inline ProductFormulaResult product_formula_sigma(const MatQ& g, const MatQ& g2, int c) {
  if (g.r() != g2.r()) throw domain_error("product_formula_sigma: size mismatch");
  if (c < 0 || c > 1) throw domain_error("product_formula_sigma: c must be 0 or 1 for n = 2");
  auto trace = default_evaluator().trace(g, g2);
  Rat dg = g.det(), dg2 = g2.det();
  ProductFormulaResult out{MuN::identity(2), {}};
  for (const auto& v : sigma_support(*trace, g, g2)) {
    SymbolBackend bk = quadratic_backend_at(v);
    MuN local = trace->evaluate(bk) * symbol(bk, dg, dg2).pow(c);
    out.local.push_back({v, local});
    out.product *= local;
  }
  return out;
}

struct HypothesisReport {
  long d = 1;
  std::vector<bool> flags;  // flag i: n | n r_i / d, i.e. d | r_i
  std::string verdict;      // "satisfied" or "unknown"
  std::string route;        // "gcd" when all flags hold, "n=2" when forced by n = 2, "none"
};

namespace detail {

inline long level_gcd(long n, long rank, long c) { return std::gcd(n, rank - 1 + 2 * c * rank); }

inline std::vector<bool> divisibility_flags(const std::vector<int>& parts, long d, std::size_t from, std::size_t to) {
  std::vector<bool> flags;
  for (std::size_t i = from; i < to; ++i) flags.push_back(parts[i] % d == 0);
  return flags;
}

inline void decide(HypothesisReport& rep, int n, bool extra = true) {
  bool all = extra;
  for (bool f : rep.flags) all = all && f;
  if (all) {
    rep.verdict = "satisfied";
    rep.route = "gcd";
  } else if (n == 2) {
    rep.verdict = "satisfied";
    rep.route = "n=2";
  } else {
    rep.verdict = "unknown";
    rep.route = "none";
  }
}

}  // namespace detail

/// d = gcd(n, r-1+2cr); the criterion asks d | r_i for every block.
inline HypothesisReport hypothesis_star(const LeviShape& shape) {
  HypothesisReport rep;
  rep.d = detail::level_gcd(shape.n, shape.r(), shape.c);
  rep.flags = detail::divisibility_flags(shape.partition, rep.d, 0, shape.partition.size());
  detail::decide(rep, shape.n);
  return rep;
}

struct Hypothesis2Report {
  HypothesisReport base;   // d = gcd(n, r-1+2cr), all blocks
  HypothesisReport lower;  // d_2 = gcd(n, (r-r_1)-1+2c(r-r_1)), blocks 2..k
  HypothesisReport upper;  // d_{k-1} = gcd(n, (r-r_{k-1})-1+2c(r-r_{k-1})), blocks 1..k-1
  std::string verdict_star2;
  std::string verdict_star3;
};

inline Hypothesis2Report hypothesis_star2(const LeviShape& shape) {
  const int k = shape.k();
  if (k < 2) throw domain_error("hypothesis_star2 needs at least two blocks");
  const auto& parts = shape.partition;
  Hypothesis2Report out;
  out.base = hypothesis_star(shape);

  out.lower.d = detail::level_gcd(shape.n, shape.r() - parts[0], shape.c);
  out.lower.flags = detail::divisibility_flags(parts, out.lower.d, 1, parts.size());
  detail::decide(out.lower, shape.n);

  out.upper.d = detail::level_gcd(shape.n, shape.r() - parts[k - 2], shape.c);
  out.upper.flags = detail::divisibility_flags(parts, out.upper.d, 0, parts.size() - 1);
  detail::decide(out.upper, shape.n);

  auto combine = [&](const HypothesisReport& a, const HypothesisReport& b) {
    if (shape.n == 2) return std::string("satisfied");
    bool ok = a.route == "gcd" && b.route == "gcd";
    return std::string(ok ? "satisfied" : "unknown");
  };
  out.verdict_star2 = combine(out.base, out.lower);
  out.verdict_star3 = combine(out.base, out.upper);
  return out;
}

struct ChainLink {
  int tail_rank;
  int epsilon;  // 1 if tail rank odd, 2 if even
};

/// For n = 2: the centers of GL_{r_i + ... + r_k}, i = 1..k, and their exponents.
inline std::vector<ChainLink> a_chain_n2(const LeviShape& shape) {
  if (shape.n != 2) throw domain_error("a_chain_n2 needs n = 2");
  std::vector<ChainLink> out;
  for (int i = 0; i < shape.k(); ++i) {
    int tail = 0;
    for (int j = i; j < shape.k(); ++j) tail += shape.partition[j];
    out.push_back({tail, tail % 2 == 1 ? 1 : 2});
  }
  return out;
}

/// Is diag(a_1 I, ..., a_k I) in Z_1 Z_2 ... Z_k? Writes a_j = b_1 ... b_j and
/// tests b_j in F^{x epsilon_j} at the backend place.
inline bool in_A_M(const std::vector<Rat>& a, const LeviShape& shape) {
  auto chain = a_chain_n2(shape);
  if (static_cast<int>(a.size()) != shape.k()) throw domain_error("in_A_M: one scalar per block expected");
  for (int j = 0; j < shape.k(); ++j) {
    if (a[j].is_zero()) throw domain_error("in_A_M: zero scalar");
    Rat b = j == 0 ? a[0] : a[j] / a[j - 1];
    if (chain[j].epsilon == 2 && !shape.backend.is_nth_power(b)) return false;
  }
  return true;
}

/// Classes of det(g_i) in F^x / F^{x n}; trivial exactly on M^{(n)}.
inline std::vector<PowerClass> det_M(const Blocks& m, const LeviShape& shape) {
  check_blocks(m, shape);
  std::vector<PowerClass> out;
  for (const auto& g : m) out.push_back(shape.backend.power_class(g.det()));
  return out;
}

/// Order of Q^{x m} \ G for F = Q: |{+-1} / {+-1}^m|.
inline int quotient_order_Q(int m) {
  if (m < 1) throw domain_error("quotient_order_Q needs m >= 1");
  return m % 2 == 0 ? 2 : 1;
}

}  // namespace mcover
