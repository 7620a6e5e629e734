#pragma once

// Exact rationals, places of Q, p-adic valuations and n-th power classes.

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mcover {

/// Raised when an operation is applied outside its mathematical domain
/// (zero symbol argument, singular matrix, precondition violation).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for symbol/power-class setups that are deliberately not implemented
/// (wild higher symbols, n not dividing p-1).
class unsupported_backend : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Int = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
class Rat {
 public:
  Rat() = default;
  template <std::integral T>
  Rat(T v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rat(const Int& num) : q_(num) {}        // NOLINT(google-explicit-constructor)
  Rat(const Int& num, const Int& den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "a/b" or "a" (optional sign, decimal digits only).
  static Rat parse(std::string_view s) {
    auto trim = [](std::string_view v) {
      while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
      while (!v.empty() && (v.back() == ' ' || v.back() == '\t')) v.remove_suffix(1);
      return v;
    };
    s = trim(s);
    auto valid_int = [](std::string_view v) {
      if (!v.empty() && (v.front() == '-' || v.front() == '+')) v.remove_prefix(1);
      return !v.empty() && std::all_of(v.begin(), v.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    };
    auto slash = s.find('/');
    std::string_view num = trim(s.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
    if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
      throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
    std::string n(num);
    if (!n.empty() && n.front() == '+') n.erase(0, 1);
    return Rat(Int(n), Int(std::string(den)));
  }

  Int num() const { return q_.get_num(); }
  Int den() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  int sign() const { return sgn(q_); }
  const mpq_class& raw() const { return q_; }
  std::string str() const { return q_.get_str(); }

  Rat inverse() const {
    if (is_zero()) throw domain_error("inverse of zero");
    return Rat(mpq_class(1) / q_);
  }

  Rat pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rat(n, d);
  }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  mpq_class q_;
};

inline Rat abs(const Rat& x) { return x.sign() < 0 ? -x : x; }

// ---------------------------------------------------------------------------
// Integer helpers

inline bool is_probable_prime(const Int& p) {
  return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0;
}

namespace detail {

inline Int pollard_brent(const Int& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Int y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 64;
    auto f = [&](const Int& v) {
      Int out = v * v + c;
      mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
      return out;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Int diff = x - y;
          q = q * abs(diff) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Int diff = x - ys;
        diff = abs(diff);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(Int n, std::vector<Int>& out) {
  if (n < 2) return;
  for (unsigned long p = 2; p < 5000; ++p) {
    if (n < Int(p) * p) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      out.emplace_back(p);
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    }
  }
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  Int d = pollard_brent(n);
  Int rest = n / d;
  factor_into(d, out);
  factor_into(rest, out);
}

}  // namespace detail

/// Distinct prime divisors of |n|, ascending. Empty for |n| <= 1.
inline std::vector<Int> prime_divisors(Int n) {
  n = abs(n);
  std::vector<Int> out;
  detail::factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline long mod_floor(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

/// Smallest primitive root modulo an odd prime p (p fits in unsigned long).
inline unsigned long smallest_primitive_root(unsigned long p) {
  if (p == 2) return 1;
  auto qs = prime_divisors(Int(p - 1));
  for (unsigned long g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& q : qs) {
      Int e = Int(p - 1) / q, res;
      mpz_powm(res.get_mpz_t(), Int(g).get_mpz_t(), e.get_mpz_t(), Int(p).get_mpz_t());
      if (res == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw domain_error("no primitive root");
}

// ---------------------------------------------------------------------------
// Places

/// A place of Q: the infinite place or a finite prime p.
class Place {
 public:
  enum class Kind { Infinite, Finite };

  static Place infinite() { return Place(); }
  static Place finite(const Int& p) {
    if (!is_probable_prime(p)) throw domain_error("place p=" + p.get_str() + " is not prime");
    Place v;
    v.kind_ = Kind::Finite;
    v.p_ = p;
    return v;
  }

  Kind kind() const { return kind_; }
  bool is_infinite() const { return kind_ == Kind::Infinite; }
  const Int& p() const { return p_; }
  std::string str() const { return is_infinite() ? "inf" : p_.get_str(); }

  friend bool operator==(const Place& a, const Place& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }
  friend bool operator<(const Place& a, const Place& b) {
    if (a.kind_ != b.kind_) return a.is_infinite();
    return a.p_ < b.p_;
  }

 private:
  Place() = default;
  Kind kind_ = Kind::Infinite;
  Int p_ = 0;
};

/// n-th power test parameters. At the infinite place, n = 2 means R and
/// n > 2 means C (every element is an n-th power).
struct PowerClassParams {
  int n = 2;
  Place place = Place::infinite();

  PowerClassParams() = default;
  PowerClassParams(int n_, Place v) : n(n_), place(std::move(v)) {
    if (n < 2) throw domain_error("power class modulus must be >= 2");
  }
};

// ---------------------------------------------------------------------------
// Valuations

inline int valuation(const Rat& x, const Int& p) {
  if (x.is_zero()) throw domain_error("valuation of zero");
  Int num = x.num(), den = x.den(), tmp;
  long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t()));
  long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()));
  return static_cast<int>(vn - vd);
}

inline Rat unit_part(const Rat& x, const Int& p) {
  if (x.is_zero()) throw domain_error("unit part of zero");
  Int num = x.num(), den = x.den();
  mpz_remove(num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  mpz_remove(den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  return Rat(num, den);
}

/// Residue in [0, m) of a rational whose denominator is prime to m.
inline Int residue_mod(const Rat& x, const Int& m) {
  Int inv;
  Int den = x.den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw domain_error("denominator not invertible modulo " + m.get_str());
  Int r = x.num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r;
}

namespace detail {

// Raises a p-adic unit residue to (p-1)/n modulo p.
inline Int residue_power(const Rat& unit, const Int& p, long n) {
  Int res = residue_mod(unit, p), out;
  Int e = (p - 1) / n;
  mpz_powm(out.get_mpz_t(), res.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return out;
}

inline void check_tame(const Int& p, int n) {
  if (p == 2 && n == 2) return;
  if (mpz_divisible_ui_p(p.get_mpz_t(), static_cast<unsigned long>(n)) ||
      (n > 2 && p == 2))
    throw unsupported_backend("wild case p=" + p.get_str() + ", n=" + std::to_string(n) + " is not supported");
  Int pm1 = p - 1;
  if (!mpz_divisible_ui_p(pm1.get_mpz_t(), static_cast<unsigned long>(n)))
    throw unsupported_backend("n=" + std::to_string(n) + " does not divide p-1 for p=" + p.get_str());
}

}  // namespace detail

/// Membership of x in the n-th powers of the completion at the given place.
inline bool is_nth_power(const Rat& x, const PowerClassParams& params) {
  if (x.is_zero()) throw domain_error("is_nth_power of zero");
  const int n = params.n;
  if (params.place.is_infinite()) return n > 2 || x.sign() > 0;
  const Int& p = params.place.p();
  detail::check_tame(p, n);
  int v = valuation(x, p);
  if (mod_floor(v, n) != 0) return false;
  Rat u = unit_part(x, p);
  if (p == 2) return residue_mod(u, Int(8)) == 1;
  return detail::residue_power(u, p, n) == 1;
}

// ---------------------------------------------------------------------------
// Power classes F_v^x / F_v^{xn}

/// Element of the finite group F_v^x / F_v^{xn}, in coordinates:
///   tame p:      (v mod n, discrete log of the residue mod n)
///   p = 2, n = 2: (v mod 2, (u-1)/2 mod 2, (u^2-1)/8 mod 2)
///   real:        (sign bit)
///   complex:     ()
struct PowerClass {
  std::vector<int> coords;
  std::vector<int> moduli;

  bool trivial() const {
    return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
  }
  PowerClass operator*(const PowerClass& o) const {
    PowerClass out = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) out.coords[i] = (coords[i] + o.coords[i]) % moduli[i];
    return out;
  }
  PowerClass inverse() const {
    PowerClass out = *this;
    for (std::size_t i = 0; i < coords.size(); ++i) out.coords[i] = (moduli[i] - coords[i]) % moduli[i];
    return out;
  }
  friend bool operator==(const PowerClass& a, const PowerClass& b) { return a.coords == b.coords && a.moduli == b.moduli; }
  friend bool operator<(const PowerClass& a, const PowerClass& b) { return a.coords < b.coords; }
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + std::to_string(coords[i]);
    return s + ")";
  }
};

namespace detail {

inline int tame_dlog(const Rat& unit, const Int& p, int n, unsigned long g) {
  Int zeta, cur = 1;
  Int e = (p - 1) / n;
  mpz_powm(zeta.get_mpz_t(), Int(g).get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  Int target = residue_power(unit, p, n);
  for (int k = 0; k < n; ++k) {
    if (cur == target) return k;
    cur = cur * zeta % p;
  }
  throw domain_error("residue power is not an n-th root of unity");
}

}  // namespace detail

inline PowerClass power_class(const Rat& x, const PowerClassParams& params) {
  if (x.is_zero()) throw domain_error("power class of zero");
  const int n = params.n;
  if (params.place.is_infinite()) {
    if (n > 2) return {};
    return {{x.sign() < 0 ? 1 : 0}, {2}};
  }
  const Int& p = params.place.p();
  detail::check_tame(p, n);
  int v = valuation(x, p);
  Rat u = unit_part(x, p);
  if (p == 2) {
    long r = residue_mod(u, Int(8)).get_si();
    return {{static_cast<int>(mod_floor(v, 2)), static_cast<int>(((r - 1) / 2) % 2), static_cast<int>(((r * r - 1) / 8) % 2)},
            {2, 2, 2}};
  }
  unsigned long g = smallest_primitive_root(p.get_ui());
  return {{static_cast<int>(mod_floor(v, n)), detail::tame_dlog(u, p, n, g)}, {n, n}};
}

/// Canonical representative in Q of a power class.
inline Rat class_representative(const PowerClass& cls, const PowerClassParams& params) {
  if (params.place.is_infinite()) return cls.coords.empty() || cls.coords[0] == 0 ? Rat(1) : Rat(-1);
  const Int& p = params.place.p();
  if (p == 2) {
    static constexpr int units[2][2] = {{1, 5}, {7, 3}};  // [eps][omega]
    return Rat(2).pow(cls.coords[0]) * Rat(units[cls.coords[1]][cls.coords[2]]);
  }
  unsigned long g = smallest_primitive_root(p.get_ui());
  return Rat(p).pow(cls.coords[0]) * Rat(Int(g)).pow(cls.coords[1]);
}

/// One representative per class of F_v^x / F_v^{xn}.
inline std::vector<Rat> power_class_transversal(const PowerClassParams& params) {
  PowerClass proto = power_class(Rat(1), params);
  std::vector<Rat> out;
  std::vector<int> idx(proto.moduli.size(), 0);
  while (true) {
    PowerClass c{idx, proto.moduli};
    out.push_back(class_representative(c, params));
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < proto.moduli[i]) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
  }
  return out;
}

}  // namespace mcover
