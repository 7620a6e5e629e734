#include "mcover/random.hpp"
#include "mcover/symbols.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace mcover;

namespace {
Rat q(const char* s) { return Rat::parse(s); }
}  // namespace

TEST(MuN, GroupOperations) {
  MuN a(2, 3), b(2, 3);
  EXPECT_EQ((a * b).exponent, 1);
  EXPECT_EQ(a.inverse().exponent, 1);
  EXPECT_EQ(a.pow(-1), a.inverse());
  EXPECT_EQ(MuN(-1, 4).exponent, 3);
  EXPECT_TRUE((a / a).is_identity());
  EXPECT_THROW(MuN(1, 2) * MuN(1, 3), domain_error);
}

TEST(Symbol, SpecExamples) {
  EXPECT_EQ(symbol(SymbolBackend::real(), Rat(-1), Rat(-1)).exponent, 1);
  EXPECT_EQ(symbol(SymbolBackend::padic(5), Rat(2), Rat(5)).exponent, 1);
  for (const auto& bk : {SymbolBackend::real(), SymbolBackend::padic(2), SymbolBackend::tame(7, 3)}) {
    EXPECT_TRUE(symbol(bk, q("-3/7"), q("3/7")).is_identity());
    EXPECT_TRUE(symbol(bk, Rat(5).pow(bk.n()), Rat(6)).is_identity());
  }
}

TEST(Symbol, ZeroArgumentIsRejected) {
  EXPECT_THROW(symbol(SymbolBackend::padic(3), Rat(0), Rat(2)), domain_error);
  EXPECT_THROW(symbol(SymbolBackend::real(), Rat(2), Rat(0)), domain_error);
}

TEST(Backend, ConstructionAndParsing) {
  EXPECT_THROW(SymbolBackend::tame(5, 3), unsupported_backend);
  EXPECT_THROW(SymbolBackend::tame(2, 2), unsupported_backend);
  EXPECT_THROW(SymbolBackend::padic(4), domain_error);
  EXPECT_EQ(SymbolBackend::parse("tame:7:3"), SymbolBackend::tame(7, 3));
  EXPECT_EQ(SymbolBackend::parse("padic:11"), SymbolBackend::padic(11));
  EXPECT_EQ(SymbolBackend::parse("real").str(), "real");
  EXPECT_THROW(SymbolBackend::parse("padic"), std::invalid_argument);
  EXPECT_THROW(SymbolBackend::parse("tame:7:x"), std::invalid_argument);
  EXPECT_THROW(SymbolBackend::parse("tame:11:3"), unsupported_backend);
  EXPECT_EQ(SymbolBackend::tame(7, 3).primitive_root(), 3u);
  EXPECT_FALSE(SymbolBackend::trivial(4).place().has_value());
}

TEST(Symbol, QuadraticMatchesConicOracleOnTransversals) {
  for (long p : {2L, 3L, 5L, 7L}) {
    auto bk = SymbolBackend::padic(p);
    for (const Rat& a : bk.transversal())
      for (const Rat& b : bk.transversal())
        EXPECT_EQ(symbol(bk, a, b).exponent, oracle::conic_hilbert(a, b, p)) << p << ": " << a.str() << "," << b.str();
  }
  auto real = SymbolBackend::real();
  for (const Rat& a : real.transversal())
    for (const Rat& b : real.transversal()) EXPECT_EQ(symbol(real, a, b).exponent, oracle::real_hilbert(a, b));
}

TEST(Symbol, QuadraticMatchesConicOracleOnRandomPairs) {
  Sampler rng(21);
  for (int s = 0; s < 600; ++s) {
    Rat a = rng.nonzero(60), b = rng.nonzero(60);
    for (long p : {2L, 3L, 5L})
      ASSERT_EQ(symbol(SymbolBackend::padic(p), a, b).exponent, oracle::conic_hilbert(a, b, p))
          << p << ": " << a.str() << "," << b.str();
  }
}

TEST(Symbol, TameWithNEqualTwoIsTheHilbertSymbol) {
  Sampler rng(22);
  for (long p : {3L, 5L, 7L, 11L, 13L})
    for (int s = 0; s < 200; ++s) {
      Rat a = rng.nonzero(100), b = rng.nonzero(100);
      ASSERT_EQ(symbol(SymbolBackend::tame(p, 2), a, b), symbol(SymbolBackend::padic(p), a, b));
    }
}

TEST(Symbol, TameValueOnUniformizerAndGenerator) {
  // (g, p) for the generator g of F_p^x is zeta^{-1} or zeta depending on the
  // sign convention; in either case it generates mu_n.
  auto bk = SymbolBackend::tame(7, 3);
  MuN v = symbol(bk, Rat(3), Rat(7));
  EXPECT_FALSE(v.is_identity());
  EXPECT_EQ(symbol(bk, Rat(7), Rat(3)), v.inverse());
  EXPECT_TRUE(symbol(bk, Rat(2), Rat(3)).is_identity());  // units pair trivially
}

TEST(Symbol, AxiomsOnRandomTriples) {
  Sampler rng(23);
  std::vector<SymbolBackend> bks = {SymbolBackend::real(), SymbolBackend::padic(2), SymbolBackend::padic(3),
                                    SymbolBackend::tame(7, 3), SymbolBackend::tame(13, 4), SymbolBackend::tame(31, 5)};
  for (const auto& bk : bks)
    for (int s = 0; s < 400; ++s) {
      Rat a = rng.nonzero(50), b = rng.nonzero(50), c = rng.nonzero(50);
      ASSERT_EQ(symbol(bk, a * b, c), symbol(bk, a, c) * symbol(bk, b, c)) << bk.str();
      ASSERT_EQ(symbol(bk, a, b) * symbol(bk, b, a), MuN::identity(bk.n())) << bk.str();
      ASSERT_TRUE(symbol(bk, a, -a).is_identity()) << bk.str();
      ASSERT_TRUE(symbol(bk, a.pow(bk.n()), b).is_identity()) << bk.str();
      if (!a.is_one()) {
        ASSERT_TRUE(symbol(bk, a, Rat(1) - a).is_identity()) << bk.str() << " a=" << a.str();
      }
    }
}

TEST(Symbol, InjectedFaultBreaksAntisymmetry) {
  auto bk = SymbolBackend::padic(3).with_fault(Fault::BreakAntisymmetry);
  EXPECT_FALSE((symbol(bk, Rat(2), Rat(1)) * symbol(bk, Rat(1), Rat(2))).is_identity());
}

TEST(GlobalSymbol, SupportExamples) {
  auto names = [](const std::vector<Place>& ps) {
    std::vector<std::string> out;
    for (const auto& v : ps) out.push_back(v.str());
    return out;
  };
  using V = std::vector<std::string>;
  EXPECT_EQ(names(support_places(Rat(1), Rat(1))), (V{"inf", "2"}));
  EXPECT_EQ(names(support_places(Rat(6), Rat(5))), (V{"inf", "2", "3", "5"}));
  EXPECT_EQ(names(support_places(q("-7/3"), Rat(10))), (V{"inf", "2", "3", "5", "7"}));
}

TEST(GlobalSymbol, ProductFormulaExamples) {
  auto detail = global_symbol_detail(Rat(-1), Rat(-1));
  ASSERT_EQ(detail.size(), 2u);
  EXPECT_EQ(detail[0].second.exponent, 1);
  EXPECT_EQ(detail[1].second.exponent, 1);
  EXPECT_TRUE(global_symbol(Rat(-1), Rat(-1)).is_identity());
  EXPECT_TRUE(global_symbol(Rat(1), q("-17/6")).is_identity());
  EXPECT_TRUE(global_symbol(Rat(2), Rat(3)).is_identity());
  auto d23 = global_symbol_detail(Rat(2), Rat(3));
  int nontrivial = 0;
  for (const auto& [v, s] : d23) nontrivial += s.exponent;
  EXPECT_EQ(nontrivial, 2);  // -1 at 2 and at 3
}
