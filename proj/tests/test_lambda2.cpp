#include "hermod/lambda2.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

#include <set>
#include <tuple>

using namespace hermod;

namespace {

HermIndex G(long m, long a, long b, long n) { return HermIndex::gaussian(m, a, b, n); }

}  // namespace

TEST(HermIndex, Ndet) {
  EXPECT_EQ(G(1, 1, 1, 1).ndet(), 2);
  EXPECT_EQ(G(2, 1, 0, 2).ndet(), 15);
  EXPECT_EQ(G(1, 0, 0, 0).ndet(), 0);
  EXPECT_EQ(G(3, 3, 3, 3).ndet(), 18);
}

TEST(HermIndex, Epsilon) {
  EXPECT_EQ(G(1, 1, 1, 1).epsilon(), 1);
  EXPECT_EQ(G(2, 2, 2, 2).epsilon(), 2);
  EXPECT_EQ(G(4, 0, 0, 2).epsilon(), 2);
  EXPECT_THROW(HermIndex::zero(-4).epsilon(), std::invalid_argument);
}

TEST(HermIndex, EpsilonIsDefiningMaximum) {
  for (long disc : {-4L, -3L, -20L})
    for (const auto& h : enumerate_psd(QuadField::make(disc), 4)) {
      if (h.is_zero()) continue;
      long best = 0;
      for (long l = 1; l <= h.trace(); ++l)
        if (h.m % l == 0 && h.n % l == 0 && h.x % l == 0 && h.y % l == 0) best = l;
      EXPECT_EQ(h.epsilon(), best) << h;
    }
}

TEST(HermIndex, Scaling) {
  for (const auto& h : enumerate_psd(QuadField::gaussian(), 4)) {
    if (h.is_zero()) continue;
    for (long l = 1; l <= 5; ++l) {
      EXPECT_EQ(h.scaled(l).epsilon(), l * h.epsilon());
      EXPECT_EQ(h.scaled(l).ndet(), l * l * h.ndet());
    }
  }
}

TEST(HermIndex, ConjugatePreservesNdet) {
  for (long disc : {-4L, -3L, -7L})
    for (const auto& h : enumerate_psd(QuadField::make(disc), 4)) {
      EXPECT_EQ(h.conjugate().ndet(), h.ndet());
      EXPECT_EQ(h.conjugate().conjugate(), h);
    }
  EXPECT_EQ(G(1, 1, 1, 1).conjugate(), G(1, 1, -1, 1));
}

TEST(HermIndex, TextRoundTrip) {
  EXPECT_EQ(to_string(G(1, 1, 1, 1)), "[1,1+i,1]");
  EXPECT_EQ(to_string(G(2, 1, -1, 2)), "[2,1-i,2]");
  EXPECT_EQ(to_string(G(1, 0, 2, 1)), "[1,2i,1]");
  EXPECT_EQ(to_string(G(0, 0, 0, 0)), "[0,0,0]");
  for (const auto& h : enumerate_psd(QuadField::gaussian(), 4)) EXPECT_EQ(parse_gaussian_index(to_string(h)), h);
  EXPECT_EQ(parse_gaussian_index("[1, 1+i, 1]"), G(1, 1, 1, 1));
  EXPECT_THROW(parse_gaussian_index("[1,1+j,1]"), std::invalid_argument);
}

TEST(Enumerate, Examples) {
  QuadField K = QuadField::gaussian();
  auto t1 = enumerate_psd(K, 1);
  ASSERT_EQ(t1.size(), 3u);
  EXPECT_EQ(t1[0], HermIndex::zero(-4));
  auto t2 = enumerate_psd(K, 2);
  auto has = [&](const HermIndex& h) { return std::find(t2.begin(), t2.end(), h) != t2.end(); };
  EXPECT_TRUE(has(G(1, 1, 1, 1)));
  EXPECT_TRUE(has(G(1, 2, 0, 1)));
  EXPECT_FALSE(has(G(1, 2, 1, 1)));
  QuadField K3 = QuadField::eisenstein();
  int ones = 0;
  for (const auto& h : enumerate_psd(K3, 2)) ones += h.m == 1 && h.n == 1;
  EXPECT_EQ(ones, 13);  // |c|^2 <= 3 in Z[omega]: 1 + 6 + 6
}

TEST(Enumerate, MatchesBruteForce) {
  for (long disc : {-4L, -3L, -7L, -20L})
    for (long T = 0; T <= 4; ++T) {
      std::set<std::tuple<long, long, long, long>> got;
      for (const auto& h : enumerate_psd(QuadField::make(disc), T)) {
        EXPECT_TRUE(got.insert({h.m, h.x, h.y, h.n}).second) << "duplicate " << h;
      }
      EXPECT_EQ(got, oracle::brute_psd(disc, T)) << disc << " T=" << T;
    }
}

TEST(LexOrder, Examples) {
  EXPECT_TRUE(lex_cmp(G(1, 1, 0, 1), G(2, 2, 0, 1)) < 0);
  EXPECT_TRUE(lex_cmp(G(1, 0, 0, 1), G(1, 1, 0, 1)) < 0);
  EXPECT_TRUE(lex_cmp(G(1, 1, 0, 1), G(1, 1, 1, 1)) < 0);
  EXPECT_TRUE(lex_cmp(G(1, 1, 1, 1), G(1, 1, 1, 1)) == 0);
  EXPECT_THROW(lex_cmp(G(1, 0, 0, 1), HermIndex::make(-3, 1, 0, 0, 1)), std::invalid_argument);
}

TEST(LexOrder, TotalOrder) {
  for (long disc : {-4L, -3L}) {
    auto v = enumerate_psd(QuadField::make(disc), 6);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) ASSERT_TRUE(lex_cmp(v[i], v[i + 1]) < 0) << v[i] << " " << v[i + 1];
    for (std::size_t i = 0; i < v.size(); i += 37)
      for (std::size_t j = 0; j < v.size(); j += 41) {
        auto c = lex_cmp(v[i], v[j]);
        EXPECT_EQ(c == 0, i == j);
        EXPECT_EQ(c < 0, i < j);
        EXPECT_TRUE(lex_cmp(v[j], v[i]) == (0 <=> c));
      }
  }
}

TEST(Decompose, Examples) {
  auto d1 = decompose_pairs(G(1, 0, 0, 0));
  EXPECT_EQ(d1.size(), 2u);
  auto d2 = decompose_pairs(G(1, 0, 0, 1));
  ASSERT_EQ(d2.size(), 4u);
  std::set<std::pair<std::string, std::string>> got;
  for (auto& [a, b] : d2) got.insert({to_string(a), to_string(b)});
  std::set<std::pair<std::string, std::string>> want = {{"[0,0,0]", "[1,0,1]"},
                                                        {"[1,0,1]", "[0,0,0]"},
                                                        {"[1,0,0]", "[0,0,1]"},
                                                        {"[0,0,1]", "[1,0,0]"}};
  EXPECT_EQ(got, want);
  EXPECT_EQ(decompose_pairs(G(1, 1, 1, 1)).size(), 2u);
}

TEST(Decompose, SymmetricClosedAndComplete) {
  for (long disc : {-4L, -3L})
    for (const auto& h : enumerate_psd(QuadField::make(disc), 4)) {
      auto pairs = decompose_pairs(h);
      std::set<std::tuple<long, long, long, long, long, long, long, long>> s;
      for (auto& [a, b] : pairs) {
        EXPECT_EQ(a + b, h);
        EXPECT_TRUE(a.is_psd() && b.is_psd());
        s.insert({a.m, a.x, a.y, a.n, b.m, b.x, b.y, b.n});
      }
      for (auto& [a, b] : pairs) EXPECT_TRUE(s.count({b.m, b.x, b.y, b.n, a.m, a.x, a.y, a.n}));
      // brute recount over the coordinate box
      std::size_t count = 0;
      long lim = std::labs(h.x) + std::labs(h.y) + h.D() * h.trace() + 2;
      for (long m1 = 0; m1 <= h.m; ++m1)
        for (long n1 = 0; n1 <= h.n; ++n1)
          for (long x = -lim; x <= lim; ++x)
            for (long y = -lim; y <= lim; ++y) {
              HermIndex a{m1, x, y, n1, disc};
              if (a.is_psd() && (h - a).is_psd()) ++count;
            }
      EXPECT_EQ(count, pairs.size()) << h;
    }
}

TEST(Siegel, Psd) {
  EXPECT_TRUE((SiegelIndex{1, 2, 1}.is_psd()));
  EXPECT_FALSE((SiegelIndex{1, 3, 1}.is_psd()));
}
