#pragma once

// The block-compatible cocycle sigma_r^{(c)} on GL_r(F).
//
// Evaluation multiplies normal forms inside the cover. The cover element (g, 1)
// equals (n1,1)(t,1)(eta,1)(n2,1) for the Bruhat form of g, so the product
// (g,1)(g2,1) is rewritten one generator of g2 at a time (unipotent, torus,
// simple reflections of eta2, unipotent) until it is again in normal form.
// Every symbol picked up on the way is recorded in a backend-free trace;
// the trace is then evaluated for any symbol backend.

#include "mcover/matq.hpp"
#include "mcover/symbols.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mcover {

struct CocycleParams {
  int r = 2;
  int n = 2;
  int c = 0;
  SymbolBackend backend = SymbolBackend::real();

  CocycleParams() = default;
  CocycleParams(int r_, int n_, int c_, SymbolBackend bk) : r(r_), n(n_), c(c_), backend(std::move(bk)) { validate(); }

  void validate() const {
    if (r < 1) throw domain_error("rank must be positive");
    if (backend.n() != n) throw domain_error("backend modulus " + std::to_string(backend.n()) + " differs from n=" + std::to_string(n));
    if (c < 0 || c >= n) throw domain_error("twist parameter c must lie in [0, n)");
  }
  friend bool operator==(const CocycleParams& a, const CocycleParams& b) {
    return a.r == b.r && a.n == b.n && a.c == b.c && a.backend == b.backend;
  }
};

using Cocycle = std::function<MuN(const MatQ&, const MatQ&)>;
using Cochain1 = std::function<MuN(const MatQ&)>;

// ---------------------------------------------------------------------------
// Closed forms on the torus and on signed permutations

inline MuN sigma_tt(const MatQ& t, const MatQ& t2, const CocycleParams& params) {
  if (!t.is_diagonal() || !t2.is_diagonal()) throw domain_error("sigma_tt expects diagonal matrices");
  MuN acc = MuN::identity(params.n);
  for (int i = 0; i < t.r(); ++i)
    for (int j = i + 1; j < t.r(); ++j) acc *= symbol(params.backend, t(i, i), t2(j, j));
  return acc * symbol(params.backend, t.det(), t2.det()).pow(params.c);
}

inline MuN sigma_eta_t(const EtaElement& eta, const MatQ& t, const CocycleParams& params) {
  if (!t.is_diagonal()) throw domain_error("sigma_eta_t expects a diagonal matrix");
  MuN acc = MuN::identity(params.n);
  for (int i = 0; i < eta.r(); ++i)
    for (int j = i + 1; j < eta.r(); ++j)
      if (eta.perm[i] > eta.perm[j]) acc *= symbol(params.backend, -t(j, j), t(i, i));
  return acc * symbol(params.backend, Rat(1), t.det()).pow(params.c);
}

/// Kubota's cocycle on GL_2, x(h) = h21 if nonzero, else h22.
inline MuN kubota_gl2(const MatQ& g, const MatQ& g2, const CocycleParams& params) {
  if (g.r() != 2 || g2.r() != 2) throw domain_error("kubota_gl2 needs 2x2 matrices");
  auto x = [](const MatQ& h) { return h(1, 0).is_zero() ? h(1, 1) : h(1, 0); };
  MatQ gg = g * g2;
  Rat xg = x(gg);
  Rat dg = g.det(), dg2 = g2.det();
  if (dg.is_zero() || dg2.is_zero()) throw domain_error("kubota_gl2: singular matrix");
  MuN base = symbol(params.backend, xg / x(g), xg / (x(g2) * dg));
  return base * symbol(params.backend, dg, dg2).pow(params.c);
}

// ---------------------------------------------------------------------------
// Traces

enum class Rule {
  R1_Unipotent,   // absorb a unipotent into the right unipotent factor
  R3_EtaTorus,    // sigma(eta, s) = prod (-s_j, s_i) over inverted roots
  R4_TorusTorus,  // sigma(t, s) = prod_{i<j} (t_i, s_j)
  R6_LengthAdd,   // eta * w_alpha with lengths adding, no symbol
  R7_RankOne,     // GL_2 block evaluated by Kubota's cocycle
  Twist,          // (det g, det g2)^c
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::R1_Unipotent: return "R1";
    case Rule::R3_EtaTorus: return "R3";
    case Rule::R4_TorusTorus: return "R4";
    case Rule::R6_LengthAdd: return "R6";
    case Rule::R7_RankOne: return "R7";
    case Rule::Twist: return "twist";
  }
  return "?";
}

struct SymbolFactor {
  Rat a, b;
  int power = 1;
};

struct TraceStep {
  Rule rule;
  std::vector<SymbolFactor> factors;
};

struct SigmaTrace {
  std::vector<TraceStep> steps;

  MuN evaluate(const SymbolBackend& bk) const {
    MuN acc = MuN::identity(bk.n());
    for (const auto& s : steps)
      for (const auto& f : s.factors) acc *= symbol(bk, f.a, f.b).pow(f.power);
    return acc;
  }
  std::size_t factor_count() const {
    std::size_t k = 0;
    for (const auto& s : steps) k += s.factors.size();
    return k;
  }
};

namespace detail {

/// A write-once memo table safe for concurrent readers and writers.
template <class V>
class MemoTable {
 public:
  explicit MemoTable(std::size_t cap) : cap_(cap) {}

  std::shared_ptr<const V> find(const std::string& key) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : it->second;
  }
  std::shared_ptr<const V> insert(const std::string& key, std::shared_ptr<const V> v) {
    std::unique_lock lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    if (map_.size() < cap_) map_.emplace(key, v);
    return v;
  }
  std::size_t size() const {
    std::shared_lock lock(mu_);
    return map_.size();
  }
  void clear() {
    std::unique_lock lock(mu_);
    map_.clear();
  }

 private:
  std::size_t cap_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<const V>> map_;
};

/// (n1, t, eta, n2) while multiplying generators on the right.
class NormalForm {
 public:
  explicit NormalForm(const BruhatForm& b)
      : r_(b.n1.r()), n1_(b.n1), t_(b.t.diagonal()), eta_(b.eta), n2_(b.n2) {}

  void unipotent(const MatQ& u) {
    if (u.is_identity()) return;
    n2_ = n2_ * u;
    trace_.steps.push_back({Rule::R1_Unipotent, {}});
  }

  void torus(const std::vector<Rat>& s) {
    for (int i = 0; i < r_; ++i)
      for (int j = i + 1; j < r_; ++j)
        if (!n2_(i, j).is_zero()) n2_(i, j) *= s[j] / s[i];
    torus_through_eta(s);
  }

  void reflection(int i) {
    const Rat u = n2_(i, i + 1);
    MatQ nn = n2_;
    if (!u.is_zero())
      for (int k = 0; k < r_; ++k) nn(i, k) -= u * nn(i + 1, k);
    MatQ w = simple_reflection(r_, i);
    MatQ rest = w.transpose() * nn * w;
    std::vector<int> perm0 = eta_.perm;
    std::swap(perm0[i], perm0[i + 1]);
    if (eta_.perm[i] < eta_.perm[i + 1]) {
      if (!u.is_zero()) push_left(eta_, i, u);
      eta_ = eta_from_perm(perm0);
      n2_ = std::move(rest);
      trace_.steps.push_back({Rule::R6_LengthAdd, {}});
      return;
    }
    EtaElement eta = eta_;
    EtaElement eta0 = eta_from_perm(perm0);
    std::vector<Rat> h(r_, Rat(1));
    if (u.is_zero()) {
      trace_.steps.push_back({Rule::R7_RankOne, {{Rat(-1), Rat(-1), 1}}});
      h[i] = -1;
      h[i + 1] = -1;
      eta_ = eta0;
      torus_through_eta(h);
      n2_ = std::move(rest);
      return;
    }
    // w x(u) w = x(-1/u) diag(1/u, u) w x(-1/u) in the GL_2 block
    trace_.steps.push_back({Rule::R7_RankOne, {{u, u, 1}}});
    const Rat v = -u.inverse();
    push_left(eta0, i, v);
    h[i] = u.inverse();
    h[i + 1] = u;
    eta_ = eta0;
    torus_through_eta(h);
    eta_ = std::move(eta);
    for (int k = 0; k < r_; ++k) rest(i, k) += v * rest(i + 1, k);
    n2_ = std::move(rest);
  }

  MatQ assemble() const { return n1_ * MatQ::diag(t_) * eta_.matrix() * n2_; }
  SigmaTrace take_trace() { return std::move(trace_); }

 private:
  // Moves x_alpha(u) (alpha = (i, i+1)) left across e and t into n1.
  // Requires e to send alpha to a positive root.
  void push_left(const EtaElement& e, int i, const Rat& u) {
    int a = e.perm[i], b = e.perm[i + 1];
    Rat coef = u * Rat(e.signs[i] * e.signs[i + 1]) * t_[a] / t_[b];
    for (int k = 0; k < r_; ++k)
      if (!n1_(k, a).is_zero()) n1_(k, b) += coef * n1_(k, a);
  }

  void torus_through_eta(const std::vector<Rat>& s) {
    TraceStep r3{Rule::R3_EtaTorus, {}};
    for (int i = 0; i < r_; ++i)
      for (int j = i + 1; j < r_; ++j)
        if (eta_.perm[i] > eta_.perm[j]) add(r3, -s[j], s[i]);
    if (!r3.factors.empty()) trace_.steps.push_back(std::move(r3));
    std::vector<Rat> sp(r_);
    for (int j = 0; j < r_; ++j) sp[eta_.perm[j]] = s[j];
    TraceStep r4{Rule::R4_TorusTorus, {}};
    for (int i = 0; i < r_; ++i)
      for (int j = i + 1; j < r_; ++j) add(r4, t_[i], sp[j]);
    if (!r4.factors.empty()) trace_.steps.push_back(std::move(r4));
    for (int i = 0; i < r_; ++i) t_[i] *= sp[i];
  }

  static void add(TraceStep& step, const Rat& a, const Rat& b) {
    if (a.is_one() || b.is_one()) return;
    step.factors.push_back({a, b, 1});
  }

  int r_;
  MatQ n1_;
  std::vector<Rat> t_;
  EtaElement eta_;
  MatQ n2_;
  SigmaTrace trace_;
};

}  // namespace detail

/// Memoizing evaluator for sigma_r^{(c)}. Safe to share between threads.
class CocycleEvaluator {
 public:
  explicit CocycleEvaluator(std::size_t cache_cap = 1u << 16) : bruhat_cache_(cache_cap), trace_cache_(cache_cap) {}

  std::shared_ptr<const BruhatForm> bruhat_of(const MatQ& g) {
    std::string k = g.key();
    if (auto hit = bruhat_cache_.find(k)) return hit;
    return bruhat_cache_.insert(k, std::make_shared<const BruhatForm>(bruhat(g)));
  }

  /// Backend-independent symbol trace of the untwisted cocycle.
  std::shared_ptr<const SigmaTrace> trace(const MatQ& g, const MatQ& g2) {
    if (g.r() != g2.r()) throw domain_error("cocycle arguments have different sizes");
    std::string k = g.key() + "|" + g2.key();
    if (auto hit = trace_cache_.find(k)) return hit;
    auto b1 = bruhat_of(g);
    auto b2 = bruhat_of(g2);
    detail::NormalForm nf(*b1);
    nf.unipotent(b2->n1);
    nf.torus(b2->t.diagonal());
    for (int i : b2->eta.word) nf.reflection(i);
    nf.unipotent(b2->n2);
    if (!(nf.assemble() == g * g2)) throw std::logic_error("cocycle normal form does not reassemble g*g2");
    return trace_cache_.insert(k, std::make_shared<const SigmaTrace>(nf.take_trace()));
  }

  MuN sigma(const MatQ& g, const MatQ& g2, const CocycleParams& params) {
    if (g.r() != params.r || g2.r() != params.r) throw domain_error("matrix size differs from rank r");
    MuN base = trace(g, g2)->evaluate(params.backend);
    if (params.c == 0) return base;
    return base * symbol(params.backend, g.det(), g2.det()).pow(params.c);
  }

  std::size_t cached_traces() const { return trace_cache_.size(); }
  void clear() {
    bruhat_cache_.clear();
    trace_cache_.clear();
  }

 private:
  detail::MemoTable<BruhatForm> bruhat_cache_;
  detail::MemoTable<SigmaTrace> trace_cache_;
};

inline CocycleEvaluator& default_evaluator() {
  static CocycleEvaluator ev;
  return ev;
}

/// sigma_r^{(c)}(g, g2) for the given parameters.
inline MuN sigma(const MatQ& g, const MatQ& g2, const CocycleParams& params) {
  return default_evaluator().sigma(g, g2, params);
}

/// Full trace including the twist factor, for reporting.
inline SigmaTrace sigma_trace(const MatQ& g, const MatQ& g2, const CocycleParams& params) {
  SigmaTrace tr = *default_evaluator().trace(g, g2);
  if (params.c != 0) tr.steps.push_back({Rule::Twist, {{g.det(), g2.det(), params.c}}});
  return tr;
}

inline Cocycle as_cocycle(const CocycleParams& params) {
  return [params](const MatQ& g, const MatQ& g2) { return sigma(g, g2, params); };
}

/// (g, g2) -> base(g, g2) s(g) s(g2) / s(g g2)
inline Cocycle coboundary_twist(Cocycle base, Cochain1 s) {
  return [base = std::move(base), s = std::move(s)](const MatQ& g, const MatQ& g2) {
    return base(g, g2) * s(g) * s(g2) / s(g * g2);
  };
}

}  // namespace mcover
