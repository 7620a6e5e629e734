#pragma once

// Randomized and exhaustive property suites driven by the CLI `verify` command.
// Each suite checks one identity; a failing case is shrunk before it is reported.

#include "mcover/adelic.hpp"
#include "mcover/random.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <future>
#include <map>
#include <optional>
#include <thread>

namespace mcover {

/// A test case: small integer context (backend index, c, rank, ...) plus rational payload.
struct Case {
  std::vector<int> ctx;
  std::vector<Rat> vals;
};

struct Counterexample {
  std::string layout;
  std::vector<int> ctx;
  std::vector<std::string> values;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::string certifies;
  long cases = 0;
  bool passed = true;
  std::optional<Counterexample> counterexample;
};

struct RunConfig {
  std::uint64_t seed = 20240601;
  long samples = 200;
  std::vector<std::string> suites;  // empty selects every suite
  std::vector<SymbolBackend> backends = default_backends();
  Fault fault = Fault::None;
  unsigned threads = 0;  // 0: hardware concurrency

  static std::vector<SymbolBackend> default_backends() {
    return {SymbolBackend::real(), SymbolBackend::padic(2), SymbolBackend::padic(3), SymbolBackend::padic(5),
            SymbolBackend::tame(7, 3)};
  }
  std::vector<SymbolBackend> effective_backends() const {
    std::vector<SymbolBackend> out;
    for (const auto& b : backends) out.push_back(b.with_fault(fault));
    return out;
  }
};

namespace verify_detail {

using Check = std::function<std::optional<std::string>(const Case&)>;

// Safe evaluation: inputs that leave the domain (singular after shrinking) are not failures.
inline std::optional<std::string> run_check(const Check& check, const Case& c) {
  try {
    return check(c);
  } catch (const domain_error&) {
    return std::nullopt;
  } catch (const unsupported_backend&) {
    return std::nullopt;
  }
}

inline long complexity(const Rat& x) {
  Int s = abs(x.num()) + x.den();
  return s.fits_slong_p() ? s.get_si() : LONG_MAX;
}

inline std::vector<Rat> simpler(const Rat& x) {
  std::vector<Rat> out{Rat(0), Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(x.num()), Rat(Int(1), x.den()), -x};
  Int half = x.num() / 2;
  if (half != 0) out.emplace_back(half, x.den());
  for (const auto& p : prime_divisors(x.num())) out.push_back(x / Rat(p));
  for (const auto& p : prime_divisors(x.den())) out.push_back(x * Rat(p));
  std::vector<Rat> keep;
  for (auto& y : out)
    if (complexity(y) < complexity(x) || (complexity(y) == complexity(x) && y.sign() > x.sign())) keep.push_back(y);
  return keep;
}

/// Greedy shrink: replace payload entries by simpler rationals while the case still fails.
inline Case shrink(const Check& check, Case c, std::string& detail) {
  for (int round = 0; round < 200; ++round) {
    bool improved = false;
    for (std::size_t i = 0; i < c.vals.size() && !improved; ++i)
      for (const Rat& y : simpler(c.vals[i])) {
        Case trial = c;
        trial.vals[i] = y;
        if (auto fail = run_check(check, trial)) {
          c = std::move(trial);
          detail = *fail;
          improved = true;
          break;
        }
      }
    if (!improved) break;
  }
  return c;
}

struct Suite {
  std::string name;
  std::string certifies;
  std::string layout;
  // Produces all cases (exhaustive suites) or samples of them.
  std::function<std::vector<Case>(Sampler&, long samples)> cases;
  Check check;
};

inline SuiteResult run_suite(const Suite& s, std::uint64_t seed, long samples) {
  Sampler rng(derive_seed(seed, s.name));
  SuiteResult res{s.name, s.certifies, 0, true, std::nullopt};
  for (const auto& c : s.cases(rng, samples)) {
    ++res.cases;
    if (auto fail = run_check(s.check, c)) {
      std::string detail = *fail;
      Case small = shrink(s.check, c, detail);
      Counterexample ce{s.layout, small.ctx, {}, detail};
      for (const auto& v : small.vals) ce.values.push_back(v.str());
      res.passed = false;
      res.counterexample = std::move(ce);
      break;
    }
  }
  return res;
}

inline void push_matrix(std::vector<Rat>& out, const MatQ& m) { out.insert(out.end(), m.entries().begin(), m.entries().end()); }

inline MatQ take_matrix(const std::vector<Rat>& v, std::size_t& pos, int r) {
  std::size_t len = static_cast<std::size_t>(r) * r;
  if (pos + len > v.size()) throw domain_error("case payload too short");
  MatQ m(r, std::vector<Rat>(v.begin() + static_cast<long>(pos), v.begin() + static_cast<long>(pos + len)));
  pos += len;
  return m;
}

inline std::string mismatch(const MuN& got, const MuN& want) {
  return "got exponent " + std::to_string(got.exponent) + ", expected " + std::to_string(want.exponent) + " (mod " +
         std::to_string(want.modulus) + ")";
}

inline std::vector<LeviShape> shapes_for(const SymbolBackend& bk, int c) {
  std::vector<LeviShape> out;
  for (std::vector<int> p : {std::vector<int>{1, 1}, {2, 1}, {1, 2}, {2, 2}, {1, 1, 1}})
    out.emplace_back(p, bk.n(), c % bk.n(), bk);
  return out;
}

inline std::vector<Suite> all_suites(const RunConfig& cfg) {
  const auto bks = cfg.effective_backends();
  const int nb = static_cast<int>(bks.size());
  auto bk_of = [bks](const Case& c) -> const SymbolBackend& { return bks.at(static_cast<std::size_t>(c.ctx.at(0))); };
  auto params_of = [bk_of](const Case& c, int r) {
    const auto& bk = bk_of(c);
    return CocycleParams(r, bk.n(), c.ctx.at(1) % bk.n(), bk);
  };
  // ctx = {backend, c, r}; payload = k matrices of size r
  auto matrix_cases = [nb](int count) {
    return [nb, count](Sampler& rng, long samples) {
      std::vector<Case> out;
      for (long s = 0; s < samples; ++s) {
        int r = s % 3 == 2 ? 3 : 2;
        Case c{{static_cast<int>(s % nb), static_cast<int>((s / nb) % 2), r}, {}};
        for (int i = 0; i < count; ++i) push_matrix(c.vals, rng.invertible(r));
        out.push_back(std::move(c));
      }
      return out;
    };
  };

  std::vector<Suite> suites;

  suites.push_back({"symbol-axioms",
                    "(ab,c)=(a,c)(b,c); (a,b)(b,a)=1; (a^n,b)=(a,b^n)=1; (a,-a)=1; (a,1-a)=1",
                    "ctx=[backend]; values=[a,b,c]",
                    [nb](Sampler& rng, long samples) {
                      std::vector<Case> out;
                      for (long s = 0; s < samples; ++s)
                        out.push_back({{static_cast<int>(s % nb)}, {rng.nonzero(), rng.nonzero(), rng.nonzero()}});
                      return out;
                    },
                    [bk_of](const Case& cs) -> std::optional<std::string> {
                      const auto& bk = bk_of(cs);
                      const Rat &a = cs.vals.at(0), &b = cs.vals.at(1), &c = cs.vals.at(2);
                      if (a.is_zero() || b.is_zero() || c.is_zero()) return std::nullopt;
                      if (!(symbol(bk, a * b, c) == symbol(bk, a, c) * symbol(bk, b, c))) return "bilinearity fails";
                      if (!symbol(bk, a, b).operator*(symbol(bk, b, a)).is_identity()) return "antisymmetry fails";
                      if (!symbol(bk, a.pow(bk.n()), b).is_identity()) return "(a^n,b) is not trivial";
                      if (!symbol(bk, a, b.pow(bk.n())).is_identity()) return "(a,b^n) is not trivial";
                      if (!symbol(bk, a, -a).is_identity()) return "(a,-a) is not trivial";
                      if (!a.is_one() && !symbol(bk, a, Rat(1) - a).is_identity()) return "(a,1-a) is not trivial";
                      if (!(symbol(bk, a * c.pow(bk.n()), b) == symbol(bk, a, b))) return "symbol is not constant on power classes";
                      return std::nullopt;
                    }});

  suites.push_back({"global-hilbert", "prod_v (a,b)_v = 1 over Q, n = 2", "values=[a,b]",
                    [](Sampler& rng, long samples) {
                      std::vector<Case> out;
                      for (long s = 0; s < samples; ++s) out.push_back({{}, {rng.nonzero(60), rng.nonzero(60)}});
                      return out;
                    },
                    [](const Case& cs) -> std::optional<std::string> {
                      if (!global_symbol(cs.vals.at(0), cs.vals.at(1)).is_identity()) return "product over places is -1";
                      return std::nullopt;
                    }});

  suites.push_back({"cocycle-identity", "sigma(g,g')sigma(gg',g'') = sigma(g,g'g'')sigma(g',g'')",
                    "ctx=[backend,c,r]; values=g,g',g'' row-major", matrix_cases(3),
                    [params_of](const Case& cs) -> std::optional<std::string> {
                      int r = cs.ctx.at(2);
                      auto P = params_of(cs, r);
                      std::size_t pos = 0;
                      MatQ a = take_matrix(cs.vals, pos, r), b = take_matrix(cs.vals, pos, r), d = take_matrix(cs.vals, pos, r);
                      MuN lhs = sigma(a, b, P) * sigma(a * b, d, P), rhs = sigma(a, b * d, P) * sigma(b, d, P);
                      if (!(lhs == rhs)) return mismatch(lhs, rhs);
                      return std::nullopt;
                    }});

  suites.push_back({"sigma-unipotent-outer", "sigma(n g, g' n') = sigma(g, g') for n, n' in N_B",
                    "ctx=[backend,c,r]; values=g,g',n,n'",
                    [nb](Sampler& rng, long samples) {
                      std::vector<Case> out;
                      for (long s = 0; s < samples; ++s) {
                        int r = s % 3 == 2 ? 3 : 2;
                        Case c{{static_cast<int>(s % nb), static_cast<int>((s / nb) % 2), r}, {}};
                        push_matrix(c.vals, rng.invertible(r));
                        push_matrix(c.vals, rng.invertible(r));
                        push_matrix(c.vals, rng.unipotent(r));
                        push_matrix(c.vals, rng.unipotent(r));
                        out.push_back(std::move(c));
                      }
                      return out;
                    },
                    [params_of](const Case& cs) -> std::optional<std::string> {
                      int r = cs.ctx.at(2);
                      auto P = params_of(cs, r);
                      std::size_t pos = 0;
                      MatQ g = take_matrix(cs.vals, pos, r), g2 = take_matrix(cs.vals, pos, r);
                      MatQ u = take_matrix(cs.vals, pos, r), u2 = take_matrix(cs.vals, pos, r);
                      if (!u.is_upper_unitriangular() || !u2.is_upper_unitriangular()) return std::nullopt;
                      MuN got = sigma(u * g, g2 * u2, P), want = sigma(g, g2, P);
                      if (!(got == want)) return mismatch(got, want);
                      return std::nullopt;
                    }});

  suites.push_back({"sigma-unipotent-inner", "sigma(g n, g') = sigma(g, n g') for n in N_B",
                    "ctx=[backend,c,r]; values=g,g',n",
                    [nb](Sampler& rng, long samples) {
                      std::vector<Case> out;
                      for (long s = 0; s < samples; ++s) {
                        int r = s % 3 == 2 ? 3 : 2;
                        Case c{{static_cast<int>(s % nb), static_cast<int>((s / nb) % 2), r}, {}};
                        push_matrix(c.vals, rng.invertible(r));
                        push_matrix(c.vals, rng.invertible(r));
                        push_matrix(c.vals, rng.unipotent(r));
                        out.push_back(std::move(c));
                      }
                      return out;
                    },
                    [params_of](const Case& cs) -> std::optional<std::string> {
                      int r = cs.ctx.at(2);
                      auto P = params_of(cs, r);
                      std::size_t pos = 0;
                      MatQ g = take_matrix(cs.vals, pos, r), g2 = take_matrix(cs.vals, pos, r), u = take_matrix(cs.vals, pos, r);
                      if (!u.is_upper_unitriangular()) return std::nullopt;
                      MuN got = sigma(g * u, g2, P), want = sigma(g, u * g2, P);
                      if (!(got == want)) return mismatch(got, want);
                      return std::nullopt;
                    }});

  // ctx = {backend, c, r, perm...}; values = torus diagonal
  auto eta_torus_cases = [nb](Sampler& rng, long samples) {
    std::vector<Case> out;
    for (long s = 0; s < samples; ++s) {
      int r = 2 + static_cast<int>(s % 2);
      Case c{{static_cast<int>(s % nb), static_cast<int>((s / nb) % 2), r}, {}};
      for (int x : rng.permutation(r)) c.ctx.push_back(x);
      for (int i = 0; i < r; ++i) c.vals.push_back(rng.nonzero());
      for (int i = 0; i < r; ++i) c.vals.push_back(rng.nonzero());
      out.push_back(std::move(c));
    }
    return out;
  };
  auto eta_of = [](const Case& cs) {
    int r = cs.ctx.at(2);
    return eta_from_perm(std::vector<int>(cs.ctx.begin() + 3, cs.ctx.begin() + 3 + r));
  };
  auto diag_of = [](const Case& cs, int which) {
    int r = cs.ctx.at(2);
    std::vector<Rat> d(cs.vals.begin() + which * r, cs.vals.begin() + (which + 1) * r);
    return MatQ::diag(d);
  };

  suites.push_back({"sigma-eta-torus", "sigma(eta, t) = prod_{i<j, eta(i)>eta(j)} (-t_j, t_i)",
                    "ctx=[backend,c,r,perm...]; values=t,(unused)", eta_torus_cases,
                    [params_of, eta_of, diag_of](const Case& cs) -> std::optional<std::string> {
                      auto P = params_of(cs, cs.ctx.at(2));
                      auto eta = eta_of(cs);
                      MatQ t = diag_of(cs, 0);
                      MuN got = sigma(eta.matrix(), t, P), want = sigma_eta_t(eta, t, P);
                      if (!(got == want)) return mismatch(got, want);
                      return std::nullopt;
                    }});

  suites.push_back({"sigma-torus-torus", "sigma(t, t') = prod_{i<j} (t_i, t'_j) (det t, det t')^c",
                    "ctx=[backend,c,r,perm...]; values=t,t'", eta_torus_cases,
                    [params_of, diag_of](const Case& cs) -> std::optional<std::string> {
                      auto P = params_of(cs, cs.ctx.at(2));
                      MatQ t = diag_of(cs, 0), t2 = diag_of(cs, 1);
                      MuN got = sigma(t, t2, P), want = sigma_tt(t, t2, P);
                      if (!(got == want)) return mismatch(got, want);
                      return std::nullopt;
                    }});

  suites.push_back({"sigma-torus-eta", "sigma(t, eta) = 1", "ctx=[backend,c,r,perm...]; values=t,(unused)",
                    eta_torus_cases,
                    [params_of, eta_of, diag_of](const Case& cs) -> std::optional<std::string> {
                      auto P = params_of(cs, cs.ctx.at(2));
                      MuN got = sigma(diag_of(cs, 0), eta_of(cs).matrix(), P);
                      if (!got.is_identity()) return mismatch(got, MuN::identity(P.n));
                      return std::nullopt;
                    }});

  suites.push_back({"kubota-differential",
                    "sigma_2(g,g') = (x(gg')/x(g), x(gg')/(x(g') det g)) (det g, det g')^c",
                    "ctx=[backend,c,2]; values=g,g'",
                    [nb](Sampler& rng, long samples) {
                      std::vector<Case> out;
                      for (long s = 0; s < samples; ++s) {
                        Case c{{static_cast<int>(s % nb), static_cast<int>((s / nb) % 2), 2}, {}};
                        push_matrix(c.vals, rng.invertible(2));
                        push_matrix(c.vals, rng.invertible(2));
                        out.push_back(std::move(c));
                      }
                      return out;
                    },
                    [params_of](const Case& cs) -> std::optional<std::string> {
                      auto P = params_of(cs, 2);
                      std::size_t pos = 0;
                      MatQ g = take_matrix(cs.vals, pos, 2), g2 = take_matrix(cs.vals, pos, 2);
                      MuN got = sigma(g, g2, P), want = kubota_gl2(g, g2, P);
                      if (!(got == want)) return mismatch(got, want);
                      return std::nullopt;
                    }});

  // Levi suites: ctx = {backend, c, shape index, perm...}
  auto levi_cases = [nb, bks](int mats, bool mn, bool with_perm) {
    return [=](Sampler& rng, long samples) {
      std::vector<Case> out;
      for (long s = 0; s < samples; ++s) {
        int bi = static_cast<int>(s % nb);
        int c = static_cast<int>((s / nb) % 2);
        int si = static_cast<int>((s / (2 * nb)) % 5);
        LeviShape shape = shapes_for(bks[bi], c)[si];
        Case cs{{bi, c, si}, {}};
        if (with_perm)
          for (int x : rng.permutation(shape.k())) cs.ctx.push_back(x);
        for (int i = 0; i < mats; ++i)
          for (const auto& b : mn ? rng.mn_blocks(shape) : rng.blocks(shape)) push_matrix(cs.vals, b);
        out.push_back(std::move(cs));
      }
      return out;
    };
  };
  auto shape_of = [bks](const Case& cs) { return shapes_for(bks.at(cs.ctx.at(0)), cs.ctx.at(1))[cs.ctx.at(2)]; };
  auto take_blocks = [](const Case& cs, std::size_t& pos, const LeviShape& shape) {
    Blocks b;
    for (int ri : shape.partition) b.push_back(take_matrix(cs.vals, pos, ri));
    return b;
  };

  suites.push_back({"block-compat",
                    "sigma(diag(g_i), diag(g'_i)) = prod sigma_{r_i}(g_i,g'_i) prod_{i<j} (det g_i, det g'_j) "
                    "prod_{i!=j} (det g_i, det g'_j)^c",
                    "ctx=[backend,c,shape]; values=blocks of m, blocks of m'", levi_cases(2, false, false),
                    [shape_of, take_blocks](const Case& cs) -> std::optional<std::string> {
                      auto shape = shape_of(cs);
                      std::size_t pos = 0;
                      Blocks m = take_blocks(cs, pos, shape), m2 = take_blocks(cs, pos, shape);
                      MuN got = sigma(block_embed(m, shape), block_embed(m2, shape), shape.params());
                      MuN want = levi_cocycle(m, m2, shape);
                      if (!(got == want)) return mismatch(got, want);
                      return std::nullopt;
                    }});

  suites.push_back({"center-lemma", "sigma(g, aI) sigma(aI, g)^{-1} = (det g, a^{r-1+2cr})",
                    "ctx=[backend,c,r]; values=g,a",
                    [nb](Sampler& rng, long samples) {
                      std::vector<Case> out;
                      for (long s = 0; s < samples; ++s) {
                        int r = s % 2 == 0 ? 2 : 3;
                        Case c{{static_cast<int>(s % nb), static_cast<int>((s / nb) % 2), r}, {}};
                        push_matrix(c.vals, rng.invertible(r));
                        c.vals.push_back(rng.nonzero());
                        out.push_back(std::move(c));
                      }
                      return out;
                    },
                    [params_of](const Case& cs) -> std::optional<std::string> {
                      int r = cs.ctx.at(2);
                      auto P = params_of(cs, r);
                      std::size_t pos = 0;
                      MatQ g = take_matrix(cs.vals, pos, r);
                      Rat a = cs.vals.at(pos);
                      MatQ aI = MatQ::scalar(r, a);
                      MuN got = sigma(g, aI, P) / sigma(aI, g, P);
                      MuN want = symbol(P.backend, g.det(), a.pow(center_exponent(r, P.c)));
                      if (!(got == want)) return mismatch(got, want);
                      return std::nullopt;
                    }});

  suites.push_back({"weyl-twist", "(w,1)(m,1)(w,1)^{-1} = (w m w^{-1}, 1) for m in M^(n), and phi_w(mm') = phi_w(m) phi_w(m')",
                    "ctx=[backend,c,shape,perm...]; values=blocks of m, blocks of m'", levi_cases(2, true, true),
                    [shape_of, take_blocks](const Case& cs) -> std::optional<std::string> {
                      auto shape = shape_of(cs);
                      BlockPerm bp(std::vector<int>(cs.ctx.begin() + 3, cs.ctx.end()), shape);
                      std::size_t pos = 0;
                      Blocks m = take_blocks(cs, pos, shape), m2 = take_blocks(cs, pos, shape);
                      MuN f = phi_w(m, bp);
                      if (!f.is_identity()) return "phi_w(m) = " + f.str();
                      Blocks mm;
                      for (int i = 0; i < shape.k(); ++i) mm.push_back(m[i] * m2[i]);
                      if (!(phi_w(mm, bp) == phi_w(m, bp) * phi_w(m2, bp))) return "phi_w is not multiplicative";
                      return std::nullopt;
                    }});

  suites.push_back({"normalizer", "(m,1)(u,1)(m,1)^{-1} = (m u m^{-1}, 1) for m in M, u in N_P",
                    "ctx=[backend,c,shape]; values=blocks of m, u",
                    [nb, bks](Sampler& rng, long samples) {
                      std::vector<Case> out;
                      for (long s = 0; s < samples; ++s) {
                        int bi = static_cast<int>(s % nb), c = static_cast<int>((s / nb) % 2);
                        int si = static_cast<int>((s / (2 * nb)) % 5);
                        LeviShape shape = shapes_for(bks[bi], c)[si];
                        Case cs{{bi, c, si}, {}};
                        for (const auto& b : rng.blocks(shape)) push_matrix(cs.vals, b);
                        push_matrix(cs.vals, rng.radical_unipotent(shape));
                        out.push_back(std::move(cs));
                      }
                      return out;
                    },
                    [shape_of, take_blocks](const Case& cs) -> std::optional<std::string> {
                      auto shape = shape_of(cs);
                      std::size_t pos = 0;
                      Blocks m = take_blocks(cs, pos, shape);
                      MatQ u = take_matrix(cs.vals, pos, shape.r());
                      if (!u.is_upper_unitriangular()) return std::nullopt;
                      MatQ mm = block_embed(m, shape);
                      auto P = shape.params();
                      CoverElement got = conj(CoverElement::lift(mm, P), CoverElement::lift(u, P));
                      if (!got.xi.is_identity()) return "conjugate carries " + got.xi.str();
                      return std::nullopt;
                    }});

  suites.push_back({"product-formula", "prod_v sigma_{r,v}(g, g') = 1 over Q, n = 2", "ctx=[c,r]; values=g,g'",
                    [](Sampler& rng, long samples) {
                      std::vector<Case> out;
                      for (long s = 0; s < samples; ++s) {
                        int r = s % 4 == 3 ? 3 : 2;
                        Case c{{static_cast<int>(s % 2), r}, {}};
                        push_matrix(c.vals, rng.invertible(r));
                        push_matrix(c.vals, rng.invertible(r));
                        out.push_back(std::move(c));
                      }
                      return out;
                    },
                    [](const Case& cs) -> std::optional<std::string> {
                      int r = cs.ctx.at(1);
                      std::size_t pos = 0;
                      MatQ g = take_matrix(cs.vals, pos, r), g2 = take_matrix(cs.vals, pos, r);
                      auto res = product_formula_sigma(g, g2, cs.ctx.at(0));
                      if (!res.product.is_identity()) return "global product is nontrivial";
                      return std::nullopt;
                    }});

  // Exhaustive over power-class transversals: closed forms vs commutation in the cover.
  suites.push_back({"center-closed-form",
                    "(aI,1) central iff a^{r-1+2rc} in F^{xn}; diag(a_i I) central in M~ iff a_i^{r-1+2cr} in F^{xn} "
                    "and a_i/a_j in F^{xn}; Z(M~^(n)) = Z~_M cap M~^(n)",
                    "ctx=[backend,c,shape or -r]; values=a_1..a_k",
                    [nb, bks](Sampler&, long) {
                      std::vector<Case> out;
                      for (int bi = 0; bi < nb; ++bi)
                        for (int c = 0; c < 2; ++c) {
                          auto tr = bks[bi].transversal();
                          for (int r = 2; r <= 3; ++r)
                            for (const Rat& a : tr) out.push_back({{bi, c, -r}, {a}});
                          for (int si : {0, 1, 2})
                            for (const Rat& a : tr)
                              for (const Rat& b : tr) out.push_back({{bi, c, si}, {a, b}});
                        }
                      return out;
                    },
                    [bk_of, shape_of](const Case& cs) -> std::optional<std::string> {
                      const auto& bk = bk_of(cs);
                      int c = cs.ctx.at(1) % bk.n();
                      auto tr = bk.transversal();
                      if (cs.ctx.at(2) < 0) {
                        int r = -cs.ctx.at(2);
                        CocycleParams P(r, bk.n(), c, bk);
                        auto z = CoverElement::lift(MatQ::scalar(r, cs.vals.at(0)), P);
                        bool brute = true;
                        for (const Rat& x : tr) brute = brute && commute(z, CoverElement::lift(iota(r, x), P));
                        for (int i = 0; i + 1 < r; ++i) {
                          brute = brute && commute(z, CoverElement::lift(simple_reflection(r, i), P));
                          brute = brute && commute(z, CoverElement::lift(MatQ::elementary(r, i, i + 1, Rat(1)), P));
                        }
                        if (brute != in_center_GLr(cs.vals.at(0), P)) return "closed form disagrees with commutation";
                        return std::nullopt;
                      }
                      LeviShape shape = shape_of(cs);
                      auto P = shape.params();
                      std::vector<Rat> a = cs.vals;
                      Blocks zb;
                      for (int i = 0; i < shape.k(); ++i) zb.push_back(MatQ::scalar(shape.partition[i], a[i]));
                      auto z = CoverElement::lift(block_embed(zb, shape), P);
                      auto embed_in = [&](int blk, const MatQ& g) {
                        Blocks b;
                        for (int i = 0; i < shape.k(); ++i)
                          b.push_back(i == blk ? g : MatQ::identity(shape.partition[i]));
                        return CoverElement::lift(block_embed(b, shape), P);
                      };
                      bool central_M = true, commutes_Mn = true;
                      for (int blk = 0; blk < shape.k(); ++blk) {
                        int rb = shape.partition[blk];
                        for (const Rat& x : tr) {
                          central_M = central_M && commute(z, embed_in(blk, iota(rb, x)));
                          commutes_Mn = commutes_Mn && commute(z, embed_in(blk, iota(rb, x.pow(bk.n()))));
                          if (rb >= 2) {
                            MatQ pair = MatQ::identity(rb);
                            pair(0, 0) = x;
                            pair(1, 1) = x.inverse();
                            commutes_Mn = commutes_Mn && commute(z, embed_in(blk, pair));
                          }
                        }
                        for (int i = 0; i + 1 < rb; ++i) {
                          auto w = embed_in(blk, simple_reflection(rb, i));
                          auto u = embed_in(blk, MatQ::elementary(rb, i, i + 1, Rat(1)));
                          central_M = central_M && commute(z, w) && commute(z, u);
                          commutes_Mn = commutes_Mn && commute(z, w) && commute(z, u);
                        }
                      }
                      if (central_M != in_center_M(a, shape)) return "M closed form disagrees with commutation";
                      if (!commutes_Mn) return "Z_M does not commute with M^(n)";
                      bool in_mn = in_Mn(zb, shape);
                      bool in_center_mn = in_mn && commutes_Mn;
                      if (in_center_mn != in_mn) return "center of M~^(n) differs from Z~_M cap M~^(n)";
                      return std::nullopt;
                    }});

  std::sort(suites.begin(), suites.end(), [](const Suite& a, const Suite& b) { return a.name < b.name; });
  return suites;
}

}  // namespace verify_detail

inline std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : verify_detail::all_suites(RunConfig{})) out.push_back(s.name);
  return out;
}

/// Runs the selected suites; results are sorted by suite name and depend only on the config.
inline std::vector<SuiteResult> run_verify(const RunConfig& cfg) {
  if (cfg.samples < 1) throw domain_error("sample count must be at least 1");
  auto suites = verify_detail::all_suites(cfg);
  std::vector<const verify_detail::Suite*> chosen;
  for (const auto& s : suites) {
    bool want = cfg.suites.empty() || std::find(cfg.suites.begin(), cfg.suites.end(), s.name) != cfg.suites.end();
    if (want) chosen.push_back(&s);
  }
  for (const auto& name : cfg.suites)
    if (name != "none" && std::none_of(suites.begin(), suites.end(), [&](const auto& s) { return s.name == name; }))
      throw std::invalid_argument("unknown suite '" + name + "'");

  std::vector<SuiteResult> results(chosen.size());
  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < chosen.size();) {
      try {
        results[i] = verify_detail::run_suite(*chosen[i], cfg.seed, cfg.samples);
      } catch (const std::exception& e) {
        results[i] = {chosen[i]->name, chosen[i]->certifies, 0, false,
                      Counterexample{chosen[i]->layout, {}, {}, std::string("exception: ") + e.what()}};
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(threads, chosen.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace mcover
