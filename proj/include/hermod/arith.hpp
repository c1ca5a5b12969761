#pragma once

// Exact integer/rational helpers shared by every module.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hermod {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when a mod-p statement is applied to a rational whose denominator
/// is divisible by p.
class NotPIntegral : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational rpow(const Rational& base, unsigned long e) {
  Rational r(1);
  for (unsigned long i = 0; i < e; ++i) r *= base;
  return r;
}

inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long pos_mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

/// Distinct prime divisors of |n| in increasing order.
inline std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  if (n < 0) n = -n;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// (prime, exponent) pairs of |n|, n != 0.
inline std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> out;
  if (n < 0) n = -n;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      int e = 0;
      while (n % q == 0) {
        n /= q;
        ++e;
      }
      out.emplace_back(q, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_squarefree(long n) {
  for (auto [q, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

inline std::vector<long> divisors(long n) {
  std::vector<long> out;
  if (n < 0) n = -n;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_p_integral(const Rational& q, long p) {
  return mpz_divisible_ui_p(q.get_den_mpz_t(), static_cast<unsigned long>(p)) == 0;
}

/// p-adic valuation of a nonzero rational.
inline long valuation(const Rational& q, long p) {
  if (q == 0) throw std::domain_error("valuation of zero");
  long v = 0;
  Integer num = q.get_num(), den = q.get_den();
  while (mpz_divisible_ui_p(num.get_mpz_t(), p)) {
    num /= p;
    ++v;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
    den /= p;
    --v;
  }
  return v;
}

/// Image of a p-integral rational in Z/pZ, as a value in [0, p).
inline long residue(const Rational& q, long p) {
  if (!is_p_integral(q, p))
    throw NotPIntegral(q.get_str() + " is not " + std::to_string(p) + "-integral");
  Integer P(p);
  Integer num = q.get_num() % P;
  if (num < 0) num += P;
  Integer den = q.get_den() % P;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
  Integer r = (num * inv) % P;
  return r.get_si();
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace hermod
