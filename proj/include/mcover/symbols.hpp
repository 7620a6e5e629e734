#pragma once

// Hilbert / tame symbol backends with values in mu_n written additively as Z/n.

#include "mcover/arith.hpp"

#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace mcover {

/// Element of mu_n, stored as an exponent of a fixed generator.
struct MuN {
  int exponent = 0;
  int modulus = 2;

  MuN() = default;
  MuN(long e, int n) : exponent(static_cast<int>(mod_floor(e, n))), modulus(n) {
    if (n < 1) throw domain_error("mu_n modulus must be positive");
  }
  static MuN identity(int n) { return MuN(0, n); }

  bool is_identity() const { return exponent == 0; }
  MuN operator*(const MuN& o) const {
    check_same(o);
    return MuN(exponent + o.exponent, modulus);
  }
  MuN& operator*=(const MuN& o) { return *this = *this * o; }
  MuN operator/(const MuN& o) const { return *this * o.inverse(); }
  MuN inverse() const { return MuN(-exponent, modulus); }
  MuN pow(long k) const { return MuN(static_cast<long>(exponent) * mod_floor(k, modulus), modulus); }

  friend bool operator==(const MuN& a, const MuN& b) { return a.exponent == b.exponent && a.modulus == b.modulus; }
  std::string str() const { return std::to_string(exponent) + " mod " + std::to_string(modulus); }

 private:
  void check_same(const MuN& o) const {
    if (o.modulus != modulus) throw domain_error("mu_n modulus mismatch");
  }
};

/// Deliberate defects used to prove the verification harness can fail.
enum class Fault { None, BreakAntisymmetry };

class SymbolBackend {
 public:
  enum class Kind { RealQuadratic, PadicQuadratic, Tame, Trivial };

  static SymbolBackend real() { return SymbolBackend(Kind::RealQuadratic, 0, 2); }
  static SymbolBackend padic(const Int& p) {
    SymbolBackend b(Kind::PadicQuadratic, p, 2);
    b.place_ = Place::finite(p);
    return b;
  }
  static SymbolBackend tame(const Int& p, int n) {
    if (n < 2) throw domain_error("tame symbol needs n >= 2");
    Place v = Place::finite(p);
    if (p == 2) throw unsupported_backend("tame symbol needs an odd prime");
    Int pm1 = p - 1;
    if (!mpz_divisible_ui_p(pm1.get_mpz_t(), static_cast<unsigned long>(n)))
      throw unsupported_backend("tame symbol needs n | p-1 (p=" + p.get_str() + ", n=" + std::to_string(n) + ")");
    if (!p.fits_ulong_p()) throw unsupported_backend("tame prime too large");
    SymbolBackend b(Kind::Tame, p, n);
    b.place_ = v;
    b.root_ = smallest_primitive_root(p.get_ui());
    return b;
  }
  static SymbolBackend trivial(int n) {
    if (n < 1) throw domain_error("trivial backend needs n >= 1");
    return SymbolBackend(Kind::Trivial, 0, n);
  }

  /// Accepts "real", "padic:<p>", "tame:<p>:<n>", "trivial:<n>".
  static SymbolBackend parse(const std::string& s) {
    auto parts = split(s);
    try {
      if (parts.size() == 1 && (parts[0] == "real" || parts[0] == "inf")) return real();
      if (parts.size() == 2 && parts[0] == "padic") return padic(Int(parts[1]));
      if (parts.size() == 3 && parts[0] == "tame") return tame(Int(parts[1]), std::stoi(parts[2]));
      if (parts.size() == 2 && parts[0] == "trivial") return trivial(std::stoi(parts[1]));
    } catch (const std::invalid_argument& e) {
      if (dynamic_cast<const unsupported_backend*>(&e)) throw;
      throw std::invalid_argument("malformed backend '" + s + "'");
    }
    throw std::invalid_argument("unknown backend '" + s + "'");
  }

  SymbolBackend with_fault(Fault f) const {
    SymbolBackend b = *this;
    b.fault_ = f;
    return b;
  }

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  const Int& p() const { return p_; }
  Fault fault() const { return fault_; }
  unsigned long primitive_root() const { return root_; }
  /// The place the backend lives at; nullopt for the trivial backend.
  std::optional<Place> place() const {
    if (kind_ == Kind::Trivial) return std::nullopt;
    return place_;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::RealQuadratic: return "real";
      case Kind::PadicQuadratic: return "padic:" + p_.get_str();
      case Kind::Tame: return "tame:" + p_.get_str() + ":" + std::to_string(n_);
      case Kind::Trivial: return "trivial:" + std::to_string(n_);
    }
    return "?";
  }

  /// n-th power test in the local field of the backend (everything for Trivial).
  bool is_nth_power(const Rat& x) const {
    if (x.is_zero()) throw domain_error("is_nth_power of zero");
    if (kind_ == Kind::Trivial) return true;
    return mcover::is_nth_power(x, PowerClassParams(n_, place_));
  }
  PowerClass power_class(const Rat& x) const {
    if (x.is_zero()) throw domain_error("power class of zero");
    if (kind_ == Kind::Trivial) return {};
    return mcover::power_class(x, PowerClassParams(n_, place_));
  }
  std::vector<Rat> transversal() const {
    if (kind_ == Kind::Trivial) return {Rat(1)};
    return power_class_transversal(PowerClassParams(n_, place_));
  }

  friend bool operator==(const SymbolBackend& a, const SymbolBackend& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.n_ == b.n_ && a.fault_ == b.fault_;
  }

 private:
  SymbolBackend(Kind k, const Int& p, int n) : kind_(k), p_(p), n_(n) {}

  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) out.push_back(item);
    return out;
  }

  Kind kind_;
  Int p_;
  int n_;
  Place place_ = Place::infinite();
  unsigned long root_ = 0;
  Fault fault_ = Fault::None;
};

namespace detail {

inline int legendre(const Rat& unit, const Int& p) {
  Int res = residue_mod(unit, p);
  return mpz_legendre(res.get_mpz_t(), p.get_mpz_t());
}

inline int quadratic_padic(const Rat& a, const Rat& b, const Int& p) {
  int al = valuation(a, p), be = valuation(b, p);
  Rat u = unit_part(a, p), v = unit_part(b, p);
  if (p == 2) {
    long ur = residue_mod(u, Int(8)).get_si(), vr = residue_mod(v, Int(8)).get_si();
    auto eps = [](long x) { return ((x - 1) / 2) % 2; };
    auto omega = [](long x) { return ((x * x - 1) / 8) % 2; };
    long e = eps(ur) * eps(vr) + mod_floor(al, 2) * omega(vr) + mod_floor(be, 2) * omega(ur);
    return static_cast<int>(e % 2);
  }
  long e = 0;
  Int half = (p - 1) / 2;
  if (mod_floor(al, 2) && mod_floor(be, 2) && mpz_odd_p(half.get_mpz_t())) e += 1;
  if (mod_floor(be, 2) && legendre(u, p) < 0) e += 1;
  if (mod_floor(al, 2) && legendre(v, p) < 0) e += 1;
  return static_cast<int>(e % 2);
}

inline int tame_symbol(const Rat& a, const Rat& b, const Int& p, int n, unsigned long g) {
  int al = valuation(a, p), be = valuation(b, p);
  // (-1)^{al*be} a^be / b^al is a p-adic unit.
  Rat c = a.pow(be) / b.pow(al);
  if (mod_floor(static_cast<long>(al) * be, 2)) c = -c;
  return tame_dlog(c, p, n, g);
}

}  // namespace detail

/// Local symbol (a, b) in mu_n for the given backend.
inline MuN symbol(const SymbolBackend& bk, const Rat& a, const Rat& b) {
  if (a.is_zero() || b.is_zero()) throw domain_error("symbol argument is zero");
  int e = 0;
  switch (bk.kind()) {
    case SymbolBackend::Kind::RealQuadratic: e = (a.sign() < 0 && b.sign() < 0) ? 1 : 0; break;
    case SymbolBackend::Kind::PadicQuadratic: e = detail::quadratic_padic(a, b, bk.p()); break;
    case SymbolBackend::Kind::Tame: e = detail::tame_symbol(a, b, bk.p(), bk.n(), bk.primitive_root()); break;
    case SymbolBackend::Kind::Trivial: e = 0; break;
  }
  if (bk.fault() == Fault::BreakAntisymmetry && a > b) e += 1;
  return MuN(e, bk.n());
}

/// Places where a quadratic symbol of a, b over Q can be nontrivial: inf, 2, and primes of a, b.
inline std::vector<Place> support_places(const Rat& a, const Rat& b) {
  if (a.is_zero() || b.is_zero()) throw domain_error("support of zero");
  std::set<Int> primes{Int(2)};
  for (const Int& x : {a.num(), a.den(), b.num(), b.den()})
    for (const auto& p : prime_divisors(x)) primes.insert(p);
  std::vector<Place> out{Place::infinite()};
  for (const auto& p : primes) out.push_back(Place::finite(p));
  return out;
}

inline SymbolBackend quadratic_backend_at(const Place& v) {
  return v.is_infinite() ? SymbolBackend::real() : SymbolBackend::padic(v.p());
}

/// Per-place quadratic symbols of a, b over Q on the support set.
inline std::vector<std::pair<Place, MuN>> global_symbol_detail(const Rat& a, const Rat& b) {
  std::vector<std::pair<Place, MuN>> out;
  for (const auto& v : support_places(a, b)) out.emplace_back(v, symbol(quadratic_backend_at(v), a, b));
  return out;
}

/// Product over all places of Q of the quadratic Hilbert symbol (a, b)_v.
inline MuN global_symbol(const Rat& a, const Rat& b) {
  MuN acc = MuN::identity(2);
  for (const auto& [v, s] : global_symbol_detail(a, b)) acc *= s;
  return acc;
}

}  // namespace mcover
