#include "hermod/congruence.hpp"

#include <gtest/gtest.h>

using namespace hermod;

namespace {

HermIndex G(long m, long a, long b, long n) { return HermIndex::gaussian(m, a, b, n); }

const GeneratorSet& gens() {
  static const GeneratorSet g = build_generators(6);
  return g;
}

FourierExpansion E4(long T = 6) { return krieg_expansion(KriegParams(QuadField::gaussian(), 4), T); }

}  // namespace

TEST(SturmBound, Examples) {
  EXPECT_EQ(*sturm_trace_bound(24, QuadField::gaussian()), 6);
  EXPECT_EQ(*sturm_trace_bound(16, QuadField::gaussian()), 4);
  EXPECT_EQ(*sturm_trace_bound(24, QuadField::eisenstein()), 4);
  EXPECT_FALSE(sturm_trace_bound(12, QuadField::make(-20)).has_value());
}

TEST(VerifyZero, Examples) {
  Verdict v = verify_zero_mod_p(Rational(7) * E4(), 7, 4);
  EXPECT_EQ(v.status, Status::ProvedViaSturm);
  EXPECT_EQ(v.bound_used, 0);
  const GeneratorSet& g = gens();
  FourierExpansion e4sq = mul(g.E4, g.E4);
  FourierExpansion z = linear_combine({{1, &e4sq}, {-1, &g.E8}, {-g.chi8_scale, &g.chi8}});
  EXPECT_TRUE(z.coeffs.empty());
  EXPECT_EQ(verify_zero_mod_p(z, 5, 8).status, Status::ProvedViaSturm);
  // E4 = 1 mod 5 (240 and -960 are multiples of 5), so Theta(E4) = 0 mod 5
  Verdict t5 = verify_zero_mod_p(theta_op(E4()), 5, 10);
  EXPECT_EQ(t5.status, Status::ProvedViaSturm);
  EXPECT_EQ(t5.bound_used, 2);
  // Theta(E4) at [1,1+i,1] and its conjugate is 1440 = 10 mod 11
  Verdict t = verify_zero_mod_p(theta_op(E4()), 11, 16);
  EXPECT_EQ(t.status, Status::Refuted);
  EXPECT_EQ(to_string(*t.witness), "[1,-1-i,1]");
  EXPECT_EQ(t.witness_residue, 10);
  EXPECT_THROW(verify_zero_mod_p(Rational(1, 5) * E4(), 5, 4), NotPIntegral);
}

TEST(VerifyZero, Downgrades) {
  FourierExpansion z = Rational(7) * E4();
  FourierExpansion q5 = Rational(7) * krieg_expansion(KriegParams(QuadField::make(-20), 4), 2);
  EXPECT_EQ(verify_zero_mod_p(q5, 7, 4).status, Status::CheckedToBound);
  FourierExpansion unknown = z;
  unknown.char_tag.reset();
  EXPECT_EQ(verify_zero_mod_p(unknown, 7, 4).status, Status::CheckedToBound);
  FourierExpansion asym = z;
  asym.symmetric = false;
  EXPECT_EQ(verify_zero_mod_p(asym, 7, 4).status, Status::CheckedToBound);
  // det^3 (weight 6) against det^0 at weight 8
  FourierExpansion e6 = Rational(7) * krieg_expansion(KriegParams(QuadField::gaussian(), 6), 6);
  EXPECT_EQ(verify_zero_mod_p(e6, 7, 8).status, Status::CheckedToBound);
  EXPECT_EQ(verify_zero_mod_p(z, 7, 8).status, Status::ProvedViaSturm);
  FourierExpansion short_z = Rational(7) * E4(2);
  EXPECT_EQ(verify_zero_mod_p(short_z, 7, 24).status, Status::CheckedToBound);
  EXPECT_EQ(verify_zero_mod_p(Rational(3) * E4(), 3, 4).status, Status::CheckedToBound);
}

TEST(VerifyZero, RefutationIsMonotone) {
  FourierExpansion th = theta_op(E4());
  Verdict first = verify_zero_mod_p(truncate(th, 2), 7, 12);
  ASSERT_EQ(first.status, Status::Refuted);
  for (long T = 2; T <= 6; ++T) {
    Verdict v = verify_zero_mod_p(truncate(th, T), 7, 12);
    EXPECT_EQ(v.status, Status::Refuted);
    EXPECT_EQ(*v.witness, *first.witness);
  }
}

TEST(ThetaKernel, Examples) {
  QuadField K = QuadField::gaussian();
  Verdict e8 = theta_kernel_verify(krieg_expansion(KriegParams(K, 8), 4), 7);
  EXPECT_EQ(e8.status, Status::ProvedViaSturm);
  EXPECT_EQ(e8.bound_used, 4);
  Verdict e4 = theta_kernel_verify(E4(), 7);
  EXPECT_EQ(e4.status, Status::Refuted);
  EXPECT_EQ(e4.witness->trace(), 2);
  EXPECT_EQ(residue(theta_op(E4()).coeff(G(1, 1, 1, 1)), 7), 5);
  const GeneratorSet& g = gens();
  FourierExpansion e4sq = mul(g.E4, g.E4);
  FourierExpansion h1 = linear_combine({{1, &e4sq}, {-5760, &g.chi8}});
  EXPECT_EQ(theta_kernel_verify(h1, 7).status, Status::ProvedViaSturm);
}

TEST(ThetaKernel, Errors) {
  QuadField K = QuadField::gaussian();
  try {
    theta_kernel_verify(krieg_expansion(KriegParams(K, 8), 2), 7);
    FAIL() << "expected InsufficientBound";
  } catch (const InsufficientBound& e) {
    EXPECT_EQ(e.required, 4);
  }
  EXPECT_THROW(theta_kernel_verify(E4(), 2), PreconditionError);
  EXPECT_THROW(theta_kernel_verify(krieg_expansion(KriegParams(QuadField::make(-7), 4), 2), 7),
               PreconditionError);
  EXPECT_THROW(theta_kernel_verify(E4(), 9), PreconditionError);
}

TEST(ThetaKernel, OtherFieldsOnlyCheckToBound) {
  QuadField K = QuadField::make(-20);
  Verdict v = theta_kernel_verify(krieg_expansion(KriegParams(K, 12), 4), 11);
  EXPECT_EQ(v.status, Status::CheckedToBound);
  EXPECT_EQ(v.checked_bound, 4);
  Verdict q3 = theta_kernel_verify(krieg_expansion(KriegParams(QuadField::eisenstein(), 12), 4), 11);
  EXPECT_EQ(q3.status, Status::ProvedViaSturm);
  EXPECT_FALSE(q3.note.empty());
}

TEST(ModPSingular, Examples) {
  Verdict a = mod_p_singular_verify(krieg_expansion(KriegParams(QuadField::make(-11), 6), 6), 11);
  EXPECT_EQ(a.status, Status::CheckedToBound);
  Verdict b = mod_p_singular_verify(krieg_expansion(KriegParams(QuadField::make(-19), 10), 4), 19);
  EXPECT_EQ(b.status, Status::CheckedToBound);
  Verdict c = mod_p_singular_verify(E4(), 7);
  EXPECT_EQ(c.status, Status::Refuted);
  EXPECT_EQ(c.witness->rank(), 2);
  EXPECT_EQ(residue(E4().coeff(G(1, 0, 0, 1)), 7), 1);
  EXPECT_TRUE(singular_prefactor_vanishes(11));
  EXPECT_TRUE(singular_prefactor_vanishes(19));
}

TEST(CuspOrder, TimesUnit) {
  const GeneratorSet& g = gens();
  for (long p : {5L, 7L, 11L})
    for (const FourierExpansion* F : {&g.E4, &g.E6}) {
      ASSERT_EQ(*ord_p(*F, p).index, HermIndex::zero(-4));
      OrderResult o = ord_p(mul(g.chi8, *F), p);
      EXPECT_EQ(*o.index, *ord_p(g.chi8, p).index);
    }
  EXPECT_EQ(*ord_p(g.chi8, 5).index, G(1, -1, -1, 1));
}

TEST(Registry, AllChecksPassWithoutExternalData) {
  CheckContext ctx;
  ctx.use_external = false;
  ctx.set_generators(gens());
  auto results = run_named_checks(ctx);
  EXPECT_GE(results.size(), 12u);
  for (const auto& r : results) {
    EXPECT_TRUE(r.passed) << r.id;
    if (r.id == "mass-lattice") EXPECT_TRUE(r.skipped);
  }
  EXPECT_THROW(run_named_checks(ctx, "nope"), std::invalid_argument);
  auto j = report_json(results);
  EXPECT_EQ(j.size(), results.size());
  EXPECT_EQ(j[0]["check"], results[0].id);
}
