#pragma once

// Elements (g, xi) of the n-fold cover of GL_r and center membership tests.

#include "mcover/cocycle.hpp"

#include <numeric>

namespace mcover {

struct CoverElement {
  MatQ g;
  MuN xi;
  CocycleParams params;

  static CoverElement lift(const MatQ& g, const CocycleParams& params) { return {g, MuN::identity(params.n), params}; }
  static CoverElement identity(const CocycleParams& params) { return lift(MatQ::identity(params.r), params); }

  friend bool operator==(const CoverElement& a, const CoverElement& b) {
    return a.g == b.g && a.xi == b.xi && a.params == b.params;
  }
};

namespace detail {
inline void require_same(const CoverElement& x, const CoverElement& y) {
  if (!(x.params == y.params)) throw domain_error("cover elements carry different parameters");
}
}  // namespace detail

inline CoverElement mul(const CoverElement& x, const CoverElement& y) {
  detail::require_same(x, y);
  return {x.g * y.g, sigma(x.g, y.g, x.params) * x.xi * y.xi, x.params};
}

inline CoverElement inv(const CoverElement& x) {
  MatQ gi = x.g.inverse();
  return {gi, sigma(x.g, gi, x.params).inverse() * x.xi.inverse(), x.params};
}

/// x y x^{-1}
inline CoverElement conj(const CoverElement& x, const CoverElement& y) { return mul(mul(x, y), inv(x)); }

inline bool commute(const CoverElement& x, const CoverElement& y) { return mul(x, y) == mul(y, x); }

/// Exponent r - 1 + 2rc governing the center of the cover of GL_r.
inline long center_exponent(int r, int c) { return static_cast<long>(r) - 1 + 2L * r * c; }

namespace detail {

// a in F^{x n/d} with d = gcd(n, e): equivalent to a^e in F^{x n}
// because F^x / F^{x n} is a free Z/n-module for every supported backend.
inline bool in_root_form(const Rat& a, long e, const SymbolBackend& bk) {
  long d = std::gcd(static_cast<long>(bk.n()), e);
  if (d == 0) d = bk.n();
  long m = bk.n() / d;
  if (m == 1) return true;
  PowerClass cls = bk.power_class(a);
  if (bk.kind() == SymbolBackend::Kind::Trivial) return true;
  // cls lies in m * (F^x/F^{xn}) iff each coordinate is divisible by m,
  // in the basis where every coordinate has modulus n.
  for (std::size_t i = 0; i < cls.coords.size(); ++i)
    if (cls.moduli[i] == bk.n() && cls.coords[i] % m != 0) return false;
  return true;
}

}  // namespace detail

/// (aI, xi) is central in the cover of GL_r iff a^{r-1+2rc} is an n-th power.
inline bool in_center_GLr(const Rat& a, const CocycleParams& params) {
  if (a.is_zero()) throw domain_error("in_center_GLr: a = 0");
  long e = center_exponent(params.r, params.c);
  bool direct = params.backend.is_nth_power(a.pow(e));
  if (direct != detail::in_root_form(a, e, params.backend))
    throw std::logic_error("center criteria disagree for a=" + a.str());
  return direct;
}

/// Levi shape parameters shared by the levi and adelic modules.
struct LeviShape {
  std::vector<int> partition;
  int n = 2;
  int c = 0;
  SymbolBackend backend = SymbolBackend::real();

  LeviShape() = default;
  LeviShape(std::vector<int> parts, int n_, int c_, SymbolBackend bk)
      : partition(std::move(parts)), n(n_), c(c_), backend(std::move(bk)) {
    validate();
  }
  void validate() const {
    if (partition.empty()) throw domain_error("empty partition");
    for (int ri : partition)
      if (ri < 1) throw domain_error("partition parts must be positive");
    (void)params();
  }
  int r() const { return std::accumulate(partition.begin(), partition.end(), 0); }
  int k() const { return static_cast<int>(partition.size()); }
  int offset(int i) const { return std::accumulate(partition.begin(), partition.begin() + i, 0); }
  CocycleParams params() const { return CocycleParams(r(), n, c, backend); }
  CocycleParams block_params(int i) const { return CocycleParams(partition[i], n, c, backend); }
};

/// Closed form for the center of the cover of M: every a_i^{r-1+2cr} is an
/// n-th power and all ratios a_i / a_j are n-th powers.
inline bool in_center_M(const std::vector<Rat>& a, const LeviShape& shape) {
  if (static_cast<int>(a.size()) != shape.k()) throw domain_error("in_center_M: one scalar per block expected");
  long e = center_exponent(shape.r(), shape.c);
  for (const Rat& ai : a) {
    if (ai.is_zero()) throw domain_error("in_center_M: zero scalar");
    if (!shape.backend.is_nth_power(ai.pow(e))) return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (!shape.backend.is_nth_power(a[i] / a[j])) return false;
  return true;
}

/// Does (aI, 1) commute with (g, 1)? Requires det g to be an n-th power.
inline bool commutes_with_GLn(const Rat& a, const MatQ& g, const CocycleParams& params) {
  if (!params.backend.is_nth_power(g.det())) throw domain_error("commutes_with_GLn: det g is not an n-th power");
  CoverElement z = CoverElement::lift(MatQ::scalar(params.r, a), params);
  CoverElement y = CoverElement::lift(g, params);
  return conj(z, y) == y;
}

}  // namespace mcover
