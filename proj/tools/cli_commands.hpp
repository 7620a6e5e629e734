#pragma once

#include "json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace mcover::cli {

using io::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  int r = 0;
  int n = 0;
  int c = 0;
  std::string backend = "real";
  std::string verify_backend = "all";
  std::string g, g2, a, shape, perm, m, m2, x, y;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::vector<std::string> suites;
  long samples = 200;
  std::string out_path;
  std::string fault;
  unsigned threads = 0;
  std::vector<std::string> positional;
};

inline std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw std::invalid_argument(std::string("malformed ") + what + " list '" + s + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string("empty ") + what + " list");
  return out;
}

inline SymbolBackend backend_of(const Options& o) {
  SymbolBackend bk = SymbolBackend::parse(o.backend);
  if (o.n != 0 && o.n != bk.n())
    throw std::invalid_argument("--n " + std::to_string(o.n) + " does not match backend modulus " + std::to_string(bk.n()));
  return bk;
}

inline CocycleParams params_of(const Options& o, int r) {
  SymbolBackend bk = backend_of(o);
  if (o.r != 0 && o.r != r) throw std::invalid_argument("--r does not match the matrix size");
  return CocycleParams(r, bk.n(), o.c, bk);
}

inline LeviShape shape_of(const Options& o) {
  if (o.shape.empty()) throw std::invalid_argument("--shape is required");
  SymbolBackend bk = backend_of(o);
  LeviShape shape(parse_int_list(o.shape, "shape"), bk.n(), o.c, bk);
  if (o.r != 0 && o.r != shape.r()) throw std::invalid_argument("--r does not match the shape");
  return shape;
}

inline MatQ required_matrix(const std::string& text, const char* flag) {
  if (text.empty()) throw std::invalid_argument(std::string(flag) + " is required");
  return io::parse_matrix(text);
}

inline CoverElement parse_element(const std::string& text, const Options& o, const char* flag) {
  if (text.empty()) throw std::invalid_argument(std::string(flag) + " is required");
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  int xi = 0;
  json gj = j;
  if (j.is_object()) {
    if (!j.contains("g")) throw std::invalid_argument(std::string(flag) + " object needs a \"g\" field");
    gj = j["g"];
    if (j.contains("xi")) {
      if (!j["xi"].is_number_integer()) throw std::invalid_argument("xi must be an integer exponent");
      xi = j["xi"].get<int>();
    }
  }
  MatQ g = io::matrix_from_json(gj);
  CocycleParams P = params_of(o, g.r());
  if (g.det().is_zero()) throw domain_error("matrix is singular");
  return {g, MuN(xi, P.n), P};
}

inline json element_json(const CoverElement& e) { return {{"g", io::to_json(e.g)}, {"xi", e.xi.exponent}}; }

inline json header(const std::string& command) { return {{"schema", 1}, {"command", command}}; }

// ---------------------------------------------------------------------------

inline json cmd_cocycle(const Options& o) {
  MatQ g = required_matrix(o.g, "--g"), g2 = required_matrix(o.g2, "--g2");
  auto P = params_of(o, g.r());
  MuN v = sigma(g, g2, P);
  json j = header("cocycle");
  j.update({{"r", P.r}, {"n", P.n}, {"c", P.c}, {"backend", io::backend_json(P.backend)}, {"exponent", v.exponent},
            {"trace", io::to_json(sigma_trace(g, g2, P), P.backend)}});
  return j;
}

inline json cmd_kubota(const Options& o) {
  MatQ g = required_matrix(o.g, "--g"), g2 = required_matrix(o.g2, "--g2");
  auto P = params_of(o, g.r());
  json j = header("kubota");
  j.update({{"n", P.n}, {"c", P.c}, {"backend", io::backend_json(P.backend)},
            {"exponent", kubota_gl2(g, g2, P).exponent}, {"sigma_exponent", sigma(g, g2, P).exponent}});
  return j;
}

inline json cmd_center(const Options& o) {
  if (o.a.empty()) throw std::invalid_argument("--a is required");
  json j = header("center");
  if (!o.shape.empty()) {
    LeviShape shape = shape_of(o);
    std::vector<Rat> a;
    std::stringstream ss(o.a);
    for (std::string item; std::getline(ss, item, ',');) a.push_back(Rat::parse(item));
    j.update({{"shape", shape.partition}, {"backend", io::backend_json(shape.backend)},
              {"exponent", center_exponent(shape.r(), shape.c)}, {"in_center_M", in_center_M(a, shape)}});
    return j;
  }
  if (o.r == 0) throw std::invalid_argument("--r is required");
  auto P = params_of(o, o.r);
  Rat a = Rat::parse(o.a);
  long e = center_exponent(P.r, P.c);
  long d = std::gcd(static_cast<long>(P.n), e);
  j.update({{"r", P.r}, {"n", P.n}, {"c", P.c}, {"backend", io::backend_json(P.backend)}, {"a", a.str()},
            {"exponent", e}, {"d", d}, {"root_exponent", P.n / d}, {"in_center", in_center_GLr(a, P)}});
  return j;
}

inline json cmd_mul(const Options& o, bool conjugate) {
  CoverElement x = parse_element(o.x, o, "--x"), y = parse_element(o.y, o, "--y");
  CoverElement z = conjugate ? conj(x, y) : mul(x, y);
  json j = header(conjugate ? "conj" : "mul");
  j.update({{"backend", io::backend_json(x.params.backend)}, {"c", x.params.c}, {"result", element_json(z)}});
  return j;
}

inline json cmd_weyl_twist(const Options& o) {
  LeviShape shape = shape_of(o);
  if (o.perm.empty()) throw std::invalid_argument("--perm is required");
  std::vector<int> perm;
  for (int v : parse_int_list(o.perm, "perm")) perm.push_back(v - 1);
  BlockPerm bp(perm, shape);
  auto wb = weyl_block_element(bp);
  json j = header("weyl-twist");
  j.update({{"shape", shape.partition}, {"target_shape", bp.target_shape().partition}, {"w", io::to_json(wb.w)},
            {"eta_w", io::to_json(wb.eta_w)}, {"t_w", io::to_json(wb.t_w)}, {"backend", io::backend_json(shape.backend)}});
  if (!o.m.empty()) {
    Blocks m = io::parse_blocks(o.m, shape);
    j["in_Mn"] = in_Mn(m, shape);
    j["phi_exponent"] = phi_w(m, bp).exponent;
  }
  return j;
}

inline json cmd_levi_cocycle(const Options& o) {
  LeviShape shape = shape_of(o);
  if (o.m.empty() || o.m2.empty()) throw std::invalid_argument("--m and --m2 are required");
  Blocks m = io::parse_blocks(o.m, shape), m2 = io::parse_blocks(o.m2, shape);
  json j = header("levi-cocycle");
  j.update({{"shape", shape.partition}, {"backend", io::backend_json(shape.backend)}, {"c", shape.c},
            {"exponent", levi_cocycle(m, m2, shape).exponent},
            {"sigma_exponent", sigma(block_embed(m, shape), block_embed(m2, shape), shape.params()).exponent}});
  return j;
}

inline json cmd_coset(const Options& o) {
  LeviShape shape = shape_of(o);
  if (o.m.empty()) throw std::invalid_argument("--m is required");
  Blocks m = io::parse_blocks(o.m, shape);
  auto dec = coset_decompose(m, shape);
  json classes = json::array();
  for (const auto& cl : det_M(m, shape)) classes.push_back(io::to_json(cl));
  json j = header("coset");
  j.update({{"shape", shape.partition}, {"backend", io::backend_json(shape.backend)}, {"rep", io::to_json(dec.rep)},
            {"mn", io::to_json(dec.mn)}, {"mn_in_Mn", in_Mn(dec.mn, shape)}, {"det_classes", classes}});
  return j;
}

inline json cmd_hypothesis(const Options& o) {
  if (o.shape.empty()) throw std::invalid_argument("--shape is required");
  int n = o.n ? o.n : 2;
  if (n < 2) throw std::invalid_argument("--n must be at least 2");
  if (o.c < 0 || o.c >= n) throw std::invalid_argument("--c must lie in [0, n)");
  LeviShape shape(parse_int_list(o.shape, "shape"), n, o.c, SymbolBackend::trivial(n));
  auto star = hypothesis_star(shape);
  json j = header("hypothesis");
  j.update({{"shape", shape.partition}, {"n", n}, {"c", o.c}, {"star", io::report_json(star)},
            {"verdict", star.verdict}});
  if (shape.k() >= 2) {
    auto s2 = hypothesis_star2(shape);
    j["star2"] = {{"lower", io::report_json(s2.lower)}, {"verdict", s2.verdict_star2}};
    j["star3"] = {{"upper", io::report_json(s2.upper)}, {"verdict", s2.verdict_star3}};
  }
  if (n == 2) {
    json chain = json::array();
    for (const auto& l : a_chain_n2(shape)) chain.push_back({{"tail_rank", l.tail_rank}, {"epsilon", l.epsilon}});
    j["a_chain"] = chain;
  }
  return j;
}

inline json cmd_product_formula(const Options& o) {
  MatQ g = required_matrix(o.g, "--g"), g2 = required_matrix(o.g2, "--g2");
  if (o.r != 0 && o.r != g.r()) throw std::invalid_argument("--r does not match the matrix size");
  if (o.n != 0 && o.n != 2) throw std::invalid_argument("product formula is implemented for n = 2");
  auto res = product_formula_sigma(g, g2, o.c);
  json places = json::array();
  for (const auto& lf : res.local) places.push_back({{"place", lf.place.str()}, {"exponent", lf.value.exponent}});
  json j = header("product-formula");
  j.update({{"r", g.r()}, {"n", 2}, {"c", o.c}, {"product", res.product.exponent}, {"places", places}});
  return j;
}

inline json cmd_symbol(const Options& o) {
  if (o.positional.size() != 2) throw std::invalid_argument("symbol takes exactly two rationals after --");
  SymbolBackend bk = backend_of(o);
  Rat a = Rat::parse(o.positional[0]), b = Rat::parse(o.positional[1]);
  json j = header("symbol");
  j.update({{"backend", io::backend_json(bk)}, {"a", a.str()}, {"b", b.str()}, {"exponent", symbol(bk, a, b).exponent}});
  return j;
}

inline std::uint64_t default_seed() {
  if (const char* env = std::getenv("MCOVER_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("MCOVER_SEED is not an unsigned integer");
    }
  }
  return RunConfig{}.seed;
}

inline json verify_report(const RunConfig& cfg, const std::vector<SuiteResult>& results, bool all_passed) {
  json suites = json::array();
  for (const auto& r : results) {
    json s = {{"name", r.name}, {"certifies", r.certifies}, {"cases", r.cases}, {"status", r.passed ? "pass" : "fail"}};
    if (r.counterexample)
      s["counterexample"] = {{"layout", r.counterexample->layout}, {"context", r.counterexample->ctx},
                             {"values", r.counterexample->values}, {"detail", r.counterexample->detail}};
    suites.push_back(s);
  }
  json backends = json::array();
  for (const auto& b : cfg.backends) backends.push_back(io::backend_json(b));
  json j = header("verify");
  j.update({{"seed", cfg.seed}, {"samples", cfg.samples}, {"backends", backends},
            {"fault", cfg.fault == Fault::None ? "none" : "antisymmetry"}, {"passed", all_passed}, {"suites", suites}});
  return j;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  RunConfig cfg;
  cfg.seed = o.seed_given ? o.seed : default_seed();
  if (o.samples < 1) throw std::invalid_argument("--samples must be at least 1");
  cfg.samples = o.samples;
  cfg.threads = o.threads;
  for (const auto& s : o.suites) {
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) cfg.suites.push_back(item);
  }
  if (o.verify_backend != "all") cfg.backends = {SymbolBackend::parse(o.verify_backend)};
  if (!o.fault.empty()) {
    if (o.fault != "antisymmetry") throw std::invalid_argument("unknown fault '" + o.fault + "'");
    cfg.fault = Fault::BreakAntisymmetry;
  }
  std::vector<SuiteResult> results;
  bool none = std::find(cfg.suites.begin(), cfg.suites.end(), "none") != cfg.suites.end();
  if (!none) results = run_verify(cfg);
  bool ok = std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed; });
  std::string text = verify_report(cfg, results, ok).dump(2) + "\n";
  out << text;
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write " + o.out_path);
    f << text;
  }
  return ok ? kExitOk : kExitFailure;
}

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact cocycles for n-fold metaplectic covers of GL_r", "mcover"};
  app.require_subcommand(1);
  Options o;

  auto add_params = [&](CLI::App* sub, bool with_r = true) {
    if (with_r) sub->add_option("--r", o.r, "rank r");
    sub->add_option("--n", o.n, "symbol modulus n (defaults to the backend's)");
    sub->add_option("--c", o.c, "twist parameter c in [0, n)");
    sub->add_option("--backend", o.backend, "real | padic:<p> | tame:<p>:<n> | trivial:<n>");
  };

  auto* cocycle = app.add_subcommand("cocycle", "evaluate sigma_r^(c)(g, g2) with its reduction trace");
  add_params(cocycle);
  cocycle->add_option("--g", o.g, "JSON matrix")->required();
  cocycle->add_option("--g2", o.g2, "JSON matrix")->required();

  auto* kubota = app.add_subcommand("kubota", "Kubota's GL_2 cocycle");
  add_params(kubota);
  kubota->add_option("--g", o.g)->required();
  kubota->add_option("--g2", o.g2)->required();

  auto* center = app.add_subcommand("center", "center membership of aI (or diag(a_i I) with --shape)");
  add_params(center);
  center->add_option("--a", o.a, "rational, or comma list with --shape")->required();
  center->add_option("--shape", o.shape);

  auto* mulc = app.add_subcommand("mul", "product of cover elements");
  auto* conjc = app.add_subcommand("conj", "x y x^{-1} in the cover");
  for (auto* sub : {mulc, conjc}) {
    add_params(sub);
    sub->add_option("--x", o.x, "JSON matrix or {\"g\": matrix, \"xi\": k}")->required();
    sub->add_option("--y", o.y)->required();
  }

  auto* weyl = app.add_subcommand("weyl-twist", "block Weyl element and phi_w(m)");
  add_params(weyl);
  weyl->add_option("--shape", o.shape)->required();
  weyl->add_option("--perm", o.perm, "1-based block permutation")->required();
  weyl->add_option("--m", o.m, "JSON blocks or block-diagonal matrix");

  auto* levi = app.add_subcommand("levi-cocycle", "block formula for the Levi cocycle");
  add_params(levi);
  levi->add_option("--shape", o.shape)->required();
  levi->add_option("--m", o.m)->required();
  levi->add_option("--m2", o.m2)->required();

  auto* coset = app.add_subcommand("coset", "split m into M^(n) part and iota part");
  add_params(coset);
  coset->add_option("--shape", o.shape)->required();
  coset->add_option("--m", o.m)->required();

  auto* hyp = app.add_subcommand("hypothesis", "gcd criteria for the restriction hypotheses");
  hyp->add_option("--shape", o.shape)->required();
  hyp->add_option("--n", o.n);
  hyp->add_option("--c", o.c);

  auto* prod = app.add_subcommand("product-formula", "prod_v sigma_v(g, g2) over Q with n = 2");
  prod->add_option("--r", o.r);
  prod->add_option("--n", o.n);
  prod->add_option("--c", o.c);
  prod->add_option("--g", o.g)->required();
  prod->add_option("--g2", o.g2)->required();

  auto* sym = app.add_subcommand("symbol", "local symbol (a, b); pass the rationals after --");
  sym->add_option("--backend", o.backend);
  sym->add_option("--n", o.n);
  sym->add_option("values", o.positional, "a b");

  auto* ver = app.add_subcommand("verify", "run the property suites");
  auto* seed_opt = ver->add_option("--seed", o.seed, "64-bit seed (default: $MCOVER_SEED)");
  ver->add_option("--suite", o.suites, "suite names (comma separated, repeatable); 'none' for an empty run");
  ver->add_option("--samples", o.samples, "random cases per suite");
  ver->add_option("--out", o.out_path, "also write the report here");
  ver->add_option("--backend", o.verify_backend, "restrict to one backend, or 'all'");
  ver->add_option("--inject-fault", o.fault, "antisymmetry");
  ver->add_option("--threads", o.threads, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  o.seed_given = seed_opt->count() > 0;

  try {
    json result;
    if (*cocycle) result = cmd_cocycle(o);
    else if (*kubota) result = cmd_kubota(o);
    else if (*center) result = cmd_center(o);
    else if (*mulc) result = cmd_mul(o, false);
    else if (*conjc) result = cmd_mul(o, true);
    else if (*weyl) result = cmd_weyl_twist(o);
    else if (*levi) result = cmd_levi_cocycle(o);
    else if (*coset) result = cmd_coset(o);
    else if (*hyp) result = cmd_hypothesis(o);
    else if (*prod) result = cmd_product_formula(o);
    else if (*sym) result = cmd_symbol(o);
    else if (*ver) return cmd_verify(o, out);
    out << result.dump(2) << "\n";
    return kExitOk;
  } catch (const std::invalid_argument& e) {  // includes unsupported_backend
    err << json{{"error", e.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << json{{"error", e.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << json{{"error", e.what()}}.dump() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << json{{"error", e.what()}}.dump() << "\n";
    return kExitFailure;
  }
}

}  // namespace mcover::cli
