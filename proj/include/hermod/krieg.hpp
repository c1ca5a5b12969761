#pragma once

// Explicit Fourier coefficients of the Hermitian Eisenstein series F_{k,K}.

#include "hermod/qseries.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace hermod {

/// a_D(N) = prod_{q | D_K} (1 + chi_q(-N)).
inline long a_D(const QuadField& K, long N) {
  long r = 1;
  for (long q : prime_divisors(K.D)) r *= 1 + chi_q_factor(K, q)(-N);
  return r;
}

namespace detail {

inline Rational finish_gk(const QuadField& K, long s, long N, const Integer& total) {
  long a = a_D(K, N);
  if (a == 0) {
    if (total != 0) {
      std::ostringstream msg;
      msg << "G_K(" << s << ";" << N << ") over " << K.name()
          << ": a_D(N) = 0 but the divisor sum is " << total;
      throw std::logic_error(msg.str());
    }
    return 0;
  }
  Rational r(total, Integer(a));
  r.canonicalize();
  return r;
}

}  // namespace detail

/// G_K(s;N) = (1/a_D(N)) sum_{d | N} sum_{mn = D_K, (m,n)=1} psi_m(-N/d) psi_n(d) d^s.
inline Rational gk_direct(const QuadField& K, long s, long N) {
  if (N <= 0 || s < 0) throw std::invalid_argument("gk_direct: need s >= 0, N > 0");
  Integer total = 0;
  std::vector<std::pair<DirichletChar, DirichletChar>> pairs;
  for (long m : unitary_divisors(K)) pairs.emplace_back(psi_character(K, m), psi_character(K, K.D / m));
  for (long d : divisors(N)) {
    Integer ds = ipow(Integer(d), static_cast<unsigned long>(s));
    for (const auto& [pm, pn] : pairs) {
      int e = pm(-N / d) * pn(d);
      if (e > 0)
        total += ds;
      else if (e < 0)
        total -= ds;
    }
  }
  return detail::finish_gk(K, s, N, total);
}

/// Same value through the factorization N = N1 * N2 into ramified and unramified parts.
inline Rational gk_product(const QuadField& K, long s, long N) {
  if (N <= 0 || s < 0) throw std::invalid_argument("gk_product: need s >= 0, N > 0");
  auto fac = factorize(N);
  long N2 = 1;
  std::vector<std::pair<long, int>> ramified;
  Integer unram = 1;
  for (auto [q, beta] : fac) {
    if (K.D % q == 0) {
      ramified.emplace_back(q, beta);
      continue;
    }
    for (int t = 0; t < beta; ++t) N2 *= q;
    Integer local = 0;
    int chi = kronecker_chi(K, q);
    for (int t = 0; t <= beta; ++t) {
      Integer term = ipow(Integer(q), static_cast<unsigned long>(s * t));
      if (chi < 0 && t % 2 == 1) term = -term;
      local += term;
    }
    unram *= local;
  }
  Integer pairsum = 0;
  for (long m : unitary_divisors(K)) {
    long n = K.D / m;
    DirichletChar pm = psi_character(K, m), pn = psi_character(K, n);
    Integer term = pm(-1) * pm(N2);
    for (auto [q, beta] : ramified) {
      if (m % q == 0) {
        int v = pn(q);
        Integer f = (beta % 2 == 0) ? Integer(v * v) : Integer(v);
        term *= f * ipow(Integer(q), static_cast<unsigned long>(s * beta));
      } else {
        int v = pm(q);
        term *= (beta % 2 == 0) ? Integer(v * v) : Integer(v);
      }
    }
    pairsum += term;
  }
  return detail::finish_gk(K, s, N, unram * pairsum);
}

struct KriegParams {
  QuadField K = QuadField::gaussian();
  int k = 4;

  KriegParams() = default;
  KriegParams(const QuadField& field, int weight) : K(field), k(weight) {
    if (weight < 4 || weight % 2 != 0)
      throw std::invalid_argument("Eisenstein weight must be even and >= 4, got " + std::to_string(weight));
  }
  bool in_theorem_range() const { return k > 4 && k % K.w == 0; }
};

/// 4k(k-1) / (B_k B_{k-1,chi_K}).
inline Rational krieg_prefactor(const QuadField& K, int k) {
  Rational den = bernoulli(k) * gen_bernoulli(k - 1, kronecker_character(K));
  if (den == 0) throw std::domain_error("krieg_prefactor: vanishing Bernoulli product");
  return Rational(4 * k * (k - 1)) / den;
}

/// -2k / B_k.
inline Rational rank_one_prefactor(int k) { return Rational(-2 * k) / bernoulli(k); }

/// The exponent l of the character det^l carried by F_{k,K}, as a residue mod w_K.
inline int krieg_char_tag(const QuadField& K, int k) {
  if (K.d == -3) return tag_mod(k, K.w);
  return tag_mod(k / 2, K.w);
}

namespace detail {

inline Rational krieg_from_invariants(const KriegParams& P, int rank, long eps, long ndet,
                                      const Rational& prefactor) {
  if (rank == 0) return 1;
  if (rank == 1) return rank_one_prefactor(P.k) * Rational(divisor_power_sum(eps, P.k - 1));
  Rational s = 0;
  for (long d : divisors(eps)) {
    if (ndet % (d * d) != 0) throw std::logic_error("krieg_coeff: D_K det(H)/d^2 not integral");
    s += Rational(ipow(Integer(d), P.k - 1)) * gk_direct(P.K, P.k - 2, ndet / (d * d));
  }
  return prefactor * s;
}

}  // namespace detail

inline Rational krieg_coeff(const KriegParams& P, const HermIndex& h) {
  if (!h.is_psd()) throw std::invalid_argument("krieg_coeff: index not psd");
  int r = h.rank();
  if (r == 0) return 1;
  Rational pref = r == 2 ? krieg_prefactor(P.K, P.k) : Rational(0);
  return detail::krieg_from_invariants(P, r, h.epsilon(), h.ndet(), pref);
}

inline FourierExpansion krieg_expansion(const KriegParams& P, long T) {
  FourierExpansion F;
  F.field = P.K;
  F.weight = P.k;
  F.char_tag = krieg_char_tag(P.K, P.k);
  F.trace_bound = T;
  F.symmetric = true;
  F.in_theorem_range = P.in_theorem_range();
  Rational pref = krieg_prefactor(P.K, P.k);
  std::map<std::pair<long, long>, Rational> memo;  // (eps, ndet) -> value
  for (const HermIndex& h : enumerate_psd(P.K, T)) {
    int r = h.rank();
    if (r == 0) {
      F.set(h, 1);
      continue;
    }
    auto key = std::make_pair(h.epsilon(), r == 2 ? h.ndet() : -1);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, detail::krieg_from_invariants(P, r, key.first, h.ndet(), pref)).first;
    F.set(h, it->second);
  }
  return F;
}

}  // namespace hermod
