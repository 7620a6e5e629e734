#pragma once

// Seeded generators for rationals, matrices and Levi data.

#include "mcover/levi.hpp"

#include <cstdint>
#include <random>

namespace mcover {

/// splitmix64 finalizer, used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
  for (char ch : label) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
  return mix_seed(seed ^ h);
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  // Uniform in [lo, hi]; avoids distribution objects so streams match across standard libraries.
  long uniform(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t lim = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = rng_();
    while (x >= lim);
    return lo + static_cast<long>(x % span);
  }
  bool chance(int percent) { return uniform(0, 99) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))]; }

  /// Nonzero rational with |numerator|, denominator <= bound.
  Rat nonzero(long bound = 20) {
    long num;
    do num = uniform(-bound, bound);
    while (num == 0);
    long den = chance(60) ? 1 : uniform(1, bound);
    return Rat(Int(num), Int(den));
  }
  /// Rational that is zero with the given probability.
  Rat entry(long bound = 20, int zero_percent = 30) { return chance(zero_percent) ? Rat(0) : nonzero(bound); }

  MatQ invertible(int r, long bound = 9, int zero_percent = 30) {
    while (true) {
      MatQ m(r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = entry(bound, zero_percent);
      if (!m.det().is_zero()) return m;
    }
  }
  MatQ unipotent(int r, long bound = 9) {
    MatQ m = MatQ::identity(r);
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) m(i, j) = entry(bound, 25);
    return m;
  }
  MatQ diagonal(int r, long bound = 20) {
    std::vector<Rat> d(r);
    for (auto& x : d) x = nonzero(bound);
    return MatQ::diag(d);
  }
  std::vector<int> permutation(int k) {
    std::vector<int> p(k);
    std::iota(p.begin(), p.end(), 0);
    for (int i = k - 1; i > 0; --i) std::swap(p[i], p[uniform(0, i)]);
    return p;
  }
  EtaElement eta(int r) { return eta_from_perm(permutation(r)); }

  Blocks blocks(const LeviShape& shape, long bound = 9) {
    Blocks b;
    for (int ri : shape.partition) b.push_back(invertible(ri, bound));
    return b;
  }
  /// Matrix whose determinant is a global n-th power: g iota(det g^{n-1}).
  MatQ nth_power_det(int r, int n, long bound = 9) {
    MatQ g = invertible(r, bound);
    return g * iota(r, g.det().pow(n - 1));
  }
  Blocks mn_blocks(const LeviShape& shape, long bound = 9) {
    Blocks b;
    for (int ri : shape.partition) b.push_back(nth_power_det(ri, shape.n, bound));
    return b;
  }
  /// Block upper unitriangular element of the unipotent radical of the parabolic.
  MatQ radical_unipotent(const LeviShape& shape, long bound = 9) {
    MatQ u = MatQ::identity(shape.r());
    for (int b = 0; b < shape.k(); ++b)
      for (int i = shape.offset(b); i < shape.offset(b) + shape.partition[b]; ++i)
        for (int j = shape.offset(b) + shape.partition[b]; j < shape.r(); ++j) u(i, j) = entry(bound, 25);
    return u;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace mcover
