#include "hermod/graded_ring.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace hermod;

namespace {

HermIndex G(long m, long a, long b, long n) { return HermIndex::gaussian(m, a, b, n); }

const GeneratorSet& gens() {
  static const GeneratorSet g = build_generators(6);
  return g;
}

std::vector<std::string> names(int k) {
  std::vector<std::string> out;
  for (const auto& m : monomial_exponents(k)) out.push_back(m.name());
  return out;
}

}  // namespace

TEST(Generators, Metadata) {
  const GeneratorSet& g = gens();
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(g.generator(i).weight, generator_weights()[i]);
    EXPECT_EQ(g.generator(i).trace_bound, 6);
    EXPECT_TRUE(g.generator(i).check_symmetric()) << generator_names()[i];
  }
  EXPECT_EQ(*g.E4.char_tag, 2);
  EXPECT_EQ(*g.E6.char_tag, 3);
  EXPECT_EQ(*g.chi8.char_tag, 0);
  EXPECT_EQ(*g.F10.char_tag % 2, 1);
  EXPECT_EQ(*g.F12.char_tag % 2, 0);
  EXPECT_FALSE(g.E6.in_theorem_range);
  EXPECT_EQ(g.chi8_scale, Rational(230400, 61));
  EXPECT_EQ(mul(g.E4, g.E4).coeff(G(1, 1, 1, 1)), 5760);
}

TEST(Generators, Examples) {
  const GeneratorSet& g = gens();
  EXPECT_EQ(g.chi8.coeff(G(1, 0, 0, 1)), 4);
  EXPECT_EQ(g.chi8.coeff(G(1, 1, 1, 1)), 1);
  EXPECT_TRUE(siegel_phi(g.F12).coeffs.empty());
  EXPECT_TRUE(siegel_phi(g.chi8).coeffs.empty());
  EXPECT_TRUE(g.F12.all_integral());
  for (const auto& [s, v] : restrict_siegel(g.chi8)) EXPECT_EQ(v, 0) << to_string(s);
  EXPECT_EQ(g.leech.coeff(HermIndex::zero(-4)), 1);
  EXPECT_EQ(siegel_phi(g.E6).coeff(1), -504);
}

TEST(Generators, RejectsBadBounds) {
  EXPECT_THROW(build_generators(1), std::invalid_argument);
  EXPECT_THROW(build_generators(9), std::invalid_argument);
}

TEST(Monomials, Examples) {
  EXPECT_EQ(names(8), (std::vector<std::string>{"E4^2", "chi8"}));
  EXPECT_EQ(names(10), (std::vector<std::string>{"E4*E6", "F10"}));
  EXPECT_EQ(names(12), (std::vector<std::string>{"E4^3", "E6^2", "E4*chi8", "F12"}));
  EXPECT_EQ(names(0), (std::vector<std::string>{"1"}));
  EXPECT_TRUE(monomial_exponents(2).empty());
  EXPECT_THROW(monomial_exponents(7), std::invalid_argument);
}

TEST(Express, Examples) {
  const GeneratorSet& g = gens();
  FourierExpansion e4sq = mul(g.E4, g.E4);
  FourierExpansion h2 = linear_combine({{1, &e4sq}, {-3072, &g.chi8}});
  auto c = express(h2, {e4sq, g.chi8});
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ((*c)[0], 1);
  EXPECT_EQ((*c)[1], -3072);
  auto p8 = express(g.psi8, {e4sq, g.E8});
  ASSERT_TRUE(p8.has_value());
  EXPECT_EQ((*p8)[0], Rational(14, 75));
  EXPECT_EQ((*p8)[1], Rational(61, 75));
  FourierExpansion e4cube = mul(e4sq, g.E4), e4e8 = mul(g.E4, g.E8);
  auto lc = express(g.leech, {g.psi12, e4cube, e4e8, g.E12});
  ASSERT_TRUE(lc.has_value());
  auto a = leech_relation();
  for (int i = 0; i < 4; ++i) EXPECT_EQ((*lc)[i], a[i]);
  EXPECT_EQ(a[0], Rational(1470105, 8511808));
  // inconsistent system
  EXPECT_FALSE(express(g.E4, {g.chi8}).has_value());
}

TEST(Express, SpanningAtDeskScale) {
  const GeneratorSet& g = gens();
  auto b8 = monomial_basis(g, 8);
  EXPECT_TRUE(express(g.E8, b8).has_value());
  EXPECT_TRUE(express(g.psi8, b8).has_value());
  auto b12 = monomial_basis(g, 12);
  EXPECT_TRUE(express(g.E12, b12).has_value());
  EXPECT_TRUE(express(g.leech, b12).has_value());
  EXPECT_TRUE(express(g.psi12, b12).has_value());
  auto closed = express(g.leech, b12);
  EXPECT_EQ((*closed)[0], Rational(7, 12));
  EXPECT_EQ((*closed)[1], Rational(5, 12));
  EXPECT_EQ((*closed)[2], -10080);
  EXPECT_EQ((*closed)[3], -60480);
  EXPECT_EQ(expansion_rank(b12, 4), 4u);
}

TEST(Leech, PhiIsE4CubedMinus720Delta) {
  EllipticQExp phi = siegel_phi(gens().leech);
  EllipticQExp e4 = elliptic_eisenstein(4, 6);
  EllipticQExp want = elliptic_combine(1, elliptic_mul(elliptic_mul(e4, e4), e4), -720, elliptic_delta(6));
  EXPECT_EQ(phi.coeffs, want.coeffs);
  EXPECT_EQ(phi.coeff(1), 0);
  EXPECT_EQ(phi.coeff(2), 196560);
}

TEST(GeneratorCache, RoundTripAndCoherence) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "hermod-generator-cache-test";
  fs::remove_all(dir);
  GeneratorSet g = build_generators(3);
  save_generators(g, dir.string());
  auto back = load_generators(dir.string(), 3);
  ASSERT_TRUE(back.has_value());
  for (int i = 0; i < 5; ++i) EXPECT_EQ(back->generator(i).coeffs, g.generator(i).coeffs);
  EXPECT_EQ(back->leech.coeffs, g.leech.coeffs);
  EXPECT_EQ(back->chi8_scale, g.chi8_scale);
  EXPECT_EQ(back->calibration.to_string(), g.calibration.to_string());
  EXPECT_FALSE(load_generators(dir.string(), 4).has_value());
  EXPECT_FALSE(load_generators(dir.string(), 3, ThetaCalibration{ThetaCalibration::Kappa::PiI, g.calibration.phase}).has_value());
  fs::remove_all(dir);
}
