#pragma once

// Quadratic characters, Bernoulli numbers and class numbers for imaginary
// quadratic fields.

#include "hermod/arith.hpp"

#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hermod {

/// Kronecker symbol (a/n) for arbitrary integers a, n.
inline int kronecker(long a, long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int res = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) res = -res;
  }
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    long r8 = pos_mod(a, 8);
    if (r8 == 3 || r8 == 5) res = -res;
  }
  // Jacobi symbol (a/n) with n odd and positive.
  long x = pos_mod(a, n), m = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      long r8 = m % 8;
      if (r8 == 3 || r8 == 5) res = -res;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) res = -res;
    x %= m;
  }
  return m == 1 ? res : 0;
}

inline bool is_fundamental_discriminant(long d) {
  if (d == 0 || d == 1) return false;
  long r = pos_mod(d, 4);
  if (r == 1) return is_squarefree(d);
  if (r == 0) {
    long m = d / 4;
    long rm = pos_mod(m, 4);
    return (rm == 2 || rm == 3) && is_squarefree(m);
  }
  return false;
}

/// Number of reduced primitive positive definite forms of discriminant d < 0.
inline long class_number(long d) {
  if (d >= 0 || !is_fundamental_discriminant(d))
    throw std::invalid_argument("class_number: " + std::to_string(d) +
                                " is not a negative fundamental discriminant");
  long count = 0;
  long D = -d;
  for (long a = 1; 3 * a * a <= D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - d;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

/// A real Dirichlet character n -> (disc / n) attached to a fundamental
/// discriminant; disc = 1 is the trivial character.
class DirichletChar {
 public:
  DirichletChar() = default;
  explicit DirichletChar(long disc) : disc_(disc) {
    if (disc != 1 && !is_fundamental_discriminant(disc))
      throw std::invalid_argument("DirichletChar: " + std::to_string(disc) +
                                  " is not a fundamental discriminant");
  }

  static DirichletChar trivial() { return DirichletChar(); }

  long modulus() const { return disc_ < 0 ? -disc_ : disc_; }
  long discriminant() const { return disc_; }
  bool is_trivial() const { return disc_ == 1; }

  int operator()(long n) const { return disc_ == 1 ? 1 : kronecker(disc_, n); }

  DirichletChar operator*(const DirichletChar& other) const {
    if (std::gcd(modulus(), other.modulus()) != 1)
      throw std::invalid_argument("DirichletChar: product needs coprime moduli");
    DirichletChar out;
    out.disc_ = disc_ * other.disc_;
    return out;
  }

  bool operator==(const DirichletChar&) const = default;

 private:
  long disc_ = 1;
};

/// An imaginary quadratic field K = Q(sqrt(d)), d a negative fundamental
/// discriminant. O_K has Z-basis {1, omega} with omega = sqrt(d)/2 when
/// d = 0 mod 4 and (1 + sqrt(d))/2 when d = 1 mod 4.
struct QuadField {
  long d = -4;  // d_K
  long D = 4;   // D_K = -d_K
  long h = 1;   // class number
  int w = 4;    // number of units

  static QuadField make(long d) {
    if (d >= 0 || !is_fundamental_discriminant(d))
      throw std::invalid_argument("QuadField: " + std::to_string(d) +
                                  " is not a negative fundamental discriminant");
    QuadField K;
    K.d = d;
    K.D = -d;
    K.h = class_number(d);
    K.w = d == -3 ? 6 : (d == -4 ? 4 : 2);
    return K;
  }
  static QuadField gaussian() { return make(-4); }
  static QuadField eisenstein() { return make(-3); }

  long omega_trace() const { return omega_trace_of(d); }
  long omega_norm() const { return omega_norm_of(d); }
  static long omega_trace_of(long d) { return pos_mod(d, 4) == 0 ? 0 : 1; }
  static long omega_norm_of(long d) { return pos_mod(d, 4) == 0 ? -d / 4 : (1 - d) / 4; }

  /// Norm of x + y*omega.
  long norm(long x, long y) const { return norm_of(d, x, y); }
  static long norm_of(long d, long x, long y) {
    return x * x + omega_trace_of(d) * x * y + omega_norm_of(d) * y * y;
  }

  std::string name() const {
    if (d == -4) return "Q(i)";
    long r = pos_mod(d, 4) == 0 ? -d / 4 : -d;
    return "Q(sqrt(-" + std::to_string(r) + "))";
  }

  bool operator==(const QuadField& o) const { return d == o.d; }
};

/// chi_K(n) = (d_K / n).
inline int kronecker_chi(const QuadField& K, long n) { return kronecker(K.d, n); }

inline DirichletChar kronecker_character(const QuadField& K) { return DirichletChar(K.d); }

/// Prime discriminant of the q-part of d_K: -4, 8, -8 for q = 2 and
/// (-1)^((q-1)/2) q for odd q.
inline long prime_discriminant(const QuadField& K, long q) {
  if (!is_prime(q) || K.D % q != 0)
    throw std::invalid_argument("prime_discriminant: " + std::to_string(q) +
                                " is not a prime divisor of D_K = " + std::to_string(K.D));
  if (q != 2) return q % 4 == 1 ? q : -q;
  long rest = K.d;
  for (long r : prime_divisors(K.D))
    if (r != 2) rest /= (r % 4 == 1 ? r : -r);
  return rest;
}

/// The q-factor chi_q of chi_K.
inline DirichletChar chi_q_factor(const QuadField& K, long q) {
  return DirichletChar(prime_discriminant(K, q));
}

/// psi_m = prod_{q | m} chi_q, for a coprime factorization D_K = m * (D_K/m).
inline DirichletChar psi_character(const QuadField& K, long m) {
  if (m <= 0 || K.D % m != 0 || std::gcd(m, K.D / m) != 1)
    throw std::invalid_argument("psi_m: " + std::to_string(m) +
                                " is not a unitary divisor of D_K = " + std::to_string(K.D));
  DirichletChar out;
  for (long q : prime_divisors(m)) out = out * chi_q_factor(K, q);
  return out;
}

inline int psi_m(const QuadField& K, long m, long n) { return psi_character(K, m)(n); }

/// Unitary divisors m of D_K (gcd(m, D_K/m) = 1), increasing.
inline std::vector<long> unitary_divisors(const QuadField& K) {
  std::vector<long> out;
  for (long m : divisors(K.D))
    if (std::gcd(m, K.D / m) == 1) out.push_back(m);
  return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

/// Bernoulli number B_n with B_1 = -1/2, from sum_{k<=n} C(n+1,k) B_k = 0.
inline Rational bernoulli(unsigned n) {
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    unsigned i = static_cast<unsigned>(table.size());
    Rational acc(0);
    for (unsigned k = 0; k < i; ++k) acc += Rational(binomial(i + 1, k)) * table[k];
    acc /= Rational(i + 1);
    table.push_back(-acc);
  }
  return table[n];
}

/// Bernoulli polynomial B_n(x) = sum_k C(n,k) B_k x^(n-k).
inline Rational bernoulli_poly(unsigned n, const Rational& x) {
  Rational acc(0);
  Rational xp(1);  // x^(n-k), built from k = n downwards
  for (unsigned k = n + 1; k-- > 0;) {
    acc += Rational(binomial(n, k)) * bernoulli(k) * xp;
    xp *= x;
  }
  return acc;
}

/// Generalized Bernoulli number B_{n,chi} = f^(n-1) sum_{a=1}^{f} chi(a) B_n(a/f).
inline Rational gen_bernoulli(unsigned n, const DirichletChar& chi) {
  long f = chi.modulus();
  Rational acc(0);
  for (long a = 1; a <= f; ++a) {
    int c = chi(a);
    if (c == 0) continue;
    Rational term = bernoulli_poly(n, make_rational(a, f));
    if (c > 0)
      acc += term;
    else
      acc -= term;
  }
  if (n >= 1)
    acc *= Rational(ipow(Integer(f), n - 1));
  else
    acc /= Rational(f);
  return acc;
}

}  // namespace hermod
