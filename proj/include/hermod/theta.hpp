#pragma once

// Hermitian lattice theta series and the even theta constants over Q(i).

#include "hermod/krieg.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace hermod {

/// x + y*omega in O_K.
struct OKElem {
  long x = 0;
  long y = 0;
  bool operator==(const OKElem&) const = default;
  auto operator<=>(const OKElem&) const = default;
};

struct OKRing {
  long disc = -4;
  long tr() const { return QuadField::omega_trace_of(disc); }
  long nm() const { return QuadField::omega_norm_of(disc); }

  OKElem add(OKElem u, OKElem v) const { return {u.x + v.x, u.y + v.y}; }
  OKElem sub(OKElem u, OKElem v) const { return {u.x - v.x, u.y - v.y}; }
  // omega^2 = tr * omega - nm
  OKElem mul(OKElem u, OKElem v) const {
    long yy = u.y * v.y;
    return {u.x * v.x - nm() * yy, u.x * v.y + u.y * v.x + tr() * yy};
  }
  OKElem conj(OKElem u) const { return {u.x + tr() * u.y, -u.y}; }
  long norm(OKElem u) const { return QuadField::norm_of(disc, u.x, u.y); }
  bool is_rational(OKElem u) const { return u.y == 0; }
};

/// Thrown for malformed or non-Hermitian Gram input.
class GramFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
/// Thrown for Gram matrices that are not even or not positive definite.
class GramMathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Element of K as rational coordinates over {1, omega}.
struct KElem {
  Rational x, y;
};

inline KElem kmul(const OKRing& R, const KElem& u, const KElem& v) {
  Rational yy = u.y * v.y;
  return {u.x * v.x - Rational(R.nm()) * yy, u.x * v.y + u.y * v.x + Rational(R.tr()) * yy};
}
inline KElem kconj(const OKRing& R, const KElem& u) { return {u.x + Rational(R.tr()) * u.y, -u.y}; }
inline Rational knorm(const OKRing& R, const KElem& u) {
  return u.x * u.x + Rational(R.tr()) * u.x * u.y + Rational(R.nm()) * u.y * u.y;
}
inline KElem kinv(const OKRing& R, const KElem& u) {
  Rational n = knorm(R, u);
  KElem c = kconj(R, u);
  return {c.x / n, c.y / n};
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace detail

struct GramMatrix {
  QuadField field = QuadField::gaussian();
  int rank = 0;
  std::vector<OKElem> entries;  // row-major rank x rank
  std::string label;

  OKElem at(int i, int j) const { return entries[static_cast<std::size_t>(i * rank + j)]; }
  OKElem& at(int i, int j) { return entries[static_cast<std::size_t>(i * rank + j)]; }
  OKRing ring() const { return OKRing{field.d}; }

  static GramMatrix make(const QuadField& K, int r, std::vector<OKElem> e, std::string label = "") {
    if (static_cast<int>(e.size()) != r * r) throw GramFormatError("Gram: wrong number of entries");
    GramMatrix G;
    G.field = K;
    G.rank = r;
    G.entries = std::move(e);
    G.label = std::move(label);
    return G;
  }

  /// Gaussian entries given as a + b i.
  static GramMatrix gaussian(int r, const std::vector<std::pair<long, long>>& ab, std::string label = "") {
    std::vector<OKElem> e;
    for (auto [a, b] : ab) e.push_back({a, b});
    return make(QuadField::gaussian(), r, std::move(e), std::move(label));
  }

  bool is_hermitian() const {
    OKRing R = ring();
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j)
        if (!(at(j, i) == R.conj(at(i, j)))) return false;
    return true;
  }

  bool is_even() const {
    for (int i = 0; i < rank; ++i)
      if (at(i, i).y != 0 || at(i, i).x % 2 != 0) return false;
    return true;
  }

  /// Exact Hermitian determinant (a rational integer).
  Rational determinant() const {
    OKRing R = ring();
    std::vector<detail::KElem> a;
    for (const auto& e : entries) a.push_back({Rational(e.x), Rational(e.y)});
    detail::KElem det{1, 0};
    int r = rank;
    for (int c = 0; c < r; ++c) {
      int piv = -1;
      for (int i = c; i < r; ++i)
        if (a[i * r + c].x != 0 || a[i * r + c].y != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      if (piv != c) {
        for (int j = 0; j < r; ++j) std::swap(a[c * r + j], a[piv * r + j]);
        det = {-det.x, -det.y};
      }
      det = detail::kmul(R, det, a[c * r + c]);
      detail::KElem inv = detail::kinv(R, a[c * r + c]);
      for (int i = c + 1; i < r; ++i) {
        detail::KElem f = detail::kmul(R, a[i * r + c], inv);
        for (int j = c; j < r; ++j) {
          detail::KElem p = detail::kmul(R, f, a[c * r + j]);
          a[i * r + j] = {a[i * r + j].x - p.x, a[i * r + j].y - p.y};
        }
      }
    }
    if (det.y != 0) throw std::logic_error("Hermitian determinant is not rational");
    return det.x;
  }

  bool is_unimodular() const { return determinant() == 1; }

  /// Real quadratic form z^T Q z = (1/2) v* G v on coordinates z = (x_1, y_1, ..., x_r, y_r).
  std::vector<Rational> transfer_form() const {
    int n = 2 * rank;
    std::vector<Rational> Q(static_cast<std::size_t>(n * n));
    auto half_norm = [&](const std::vector<OKElem>& v) { return half_norm_of(v); };
    std::vector<Rational> diag(n);
    for (int i = 0; i < n; ++i) {
      std::vector<OKElem> v(rank);
      (i % 2 ? v[i / 2].y : v[i / 2].x) = 1;
      diag[i] = half_norm(v);
      Q[i * n + i] = diag[i];
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        std::vector<OKElem> v(rank);
        (i % 2 ? v[i / 2].y : v[i / 2].x) += 1;
        (j % 2 ? v[j / 2].y : v[j / 2].x) += 1;
        Rational off = (half_norm(v) - diag[i] - diag[j]) / 2;
        Q[i * n + j] = off;
        Q[j * n + i] = off;
      }
    return Q;
  }

  /// (1/2) v* G v as an exact rational.
  Rational half_norm_of(const std::vector<OKElem>& v) const {
    OKElem s = inner(v, v);
    if (s.y != 0) throw std::logic_error("v* G v is not rational");
    return make_rational(s.x, 2);
  }

  /// v* G w in O_K.
  OKElem inner(const std::vector<OKElem>& v, const std::vector<OKElem>& w) const {
    OKRing R = ring();
    OKElem s{0, 0};
    for (int i = 0; i < rank; ++i) {
      OKElem gw{0, 0};
      for (int j = 0; j < rank; ++j) gw = R.add(gw, R.mul(at(i, j), w[j]));
      s = R.add(s, R.mul(R.conj(v[i]), gw));
    }
    return s;
  }

  /// Leading principal minors of the transferred form are all positive.
  bool is_positive_definite() const {
    std::vector<Rational> Q = transfer_form();
    int n = 2 * rank;
    for (int c = 0; c < n; ++c) {
      if (Q[c * n + c] <= 0) return false;
      for (int i = c + 1; i < n; ++i) {
        Rational f = Q[i * n + c] / Q[c * n + c];
        for (int j = c; j < n; ++j) Q[i * n + j] -= f * Q[c * n + j];
      }
    }
    return true;
  }

  /// Throws GramFormatError / GramMathError on a bad matrix.
  void validate() const {
    if (!is_hermitian()) throw GramFormatError("Gram matrix " + label + " is not Hermitian");
    if (!is_even()) throw GramMathError("Gram matrix " + label + " is not even");
    if (!is_positive_definite()) throw GramMathError("Gram matrix " + label + " is not positive definite");
  }
};

inline GramMatrix direct_sum(const GramMatrix& A, const GramMatrix& B, std::string label = "") {
  if (!(A.field == B.field)) throw std::invalid_argument("direct_sum: field mismatch");
  int r = A.rank + B.rank;
  std::vector<OKElem> e(static_cast<std::size_t>(r * r));
  for (int i = 0; i < A.rank; ++i)
    for (int j = 0; j < A.rank; ++j) e[i * r + j] = A.at(i, j);
  for (int i = 0; i < B.rank; ++i)
    for (int j = 0; j < B.rank; ++j) e[(A.rank + i) * r + A.rank + j] = B.at(i, j);
  return GramMatrix::make(A.field, r, std::move(e), std::move(label));
}

// Gram file:
//   hermod-gram 1
//   disc <d> rank <r> unimodular <0|1> label <text>
//   r lines of r entries "x,y" (x + y*omega)
//   [checksum <fnv1a-64 hex of the entry lines>]

inline std::string gram_body(const GramMatrix& G) {
  std::ostringstream os;
  for (int i = 0; i < G.rank; ++i) {
    for (int j = 0; j < G.rank; ++j) os << (j ? " " : "") << G.at(i, j).x << ',' << G.at(i, j).y;
    os << '\n';
  }
  return os.str();
}

inline void write_gram(std::ostream& os, const GramMatrix& G) {
  std::string body = gram_body(G);
  os << "hermod-gram 1\n";
  os << "disc " << G.field.d << " rank " << G.rank << " unimodular " << (G.is_unimodular() ? 1 : 0)
     << " label " << (G.label.empty() ? "-" : G.label) << "\n";
  os << body;
  std::ostringstream hex;
  hex << std::hex << detail::fnv1a(body);
  os << "checksum " << hex.str() << "\n";
}

inline GramMatrix read_gram(std::istream& is) {
  auto fail = [](const std::string& what) -> void { throw GramFormatError("Gram file: " + what); };
  std::string line;
  if (!std::getline(is, line) || line.rfind("hermod-gram 1", 0) != 0) fail("missing 'hermod-gram 1' header");
  if (!std::getline(is, line)) fail("missing parameter line");
  std::istringstream ps(line);
  std::string kw;
  long d = 0;
  int r = 0, uni = -1;
  std::string label;
  if (!(ps >> kw >> d) || kw != "disc") fail("expected disc");
  if (!(ps >> kw >> r) || kw != "rank" || r <= 0 || r > 64) fail("expected rank");
  if (!(ps >> kw >> uni) || kw != "unimodular") fail("expected unimodular flag");
  if (!(ps >> kw >> label) || kw != "label") fail("expected label");
  QuadField K;
  try {
    K = QuadField::make(d);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  std::vector<OKElem> e;
  std::string body;
  for (int i = 0; i < r; ++i) {
    if (!std::getline(is, line)) fail("truncated matrix");
    body += line + "\n";
    std::istringstream rs(line);
    std::string tok;
    int cnt = 0;
    while (rs >> tok) {
      auto comma = tok.find(',');
      if (comma == std::string::npos) fail("entry '" + tok + "' is not 'x,y'");
      try {
        std::size_t p1 = 0, p2 = 0;
        long x = std::stol(tok.substr(0, comma), &p1);
        long y = std::stol(tok.substr(comma + 1), &p2);
        if (p1 != comma || p2 != tok.size() - comma - 1) fail("entry '" + tok + "' is malformed");
        e.push_back({x, y});
      } catch (const std::logic_error&) {
        fail("entry '" + tok + "' is malformed");
      }
      ++cnt;
    }
    if (cnt != r) fail("row " + std::to_string(i + 1) + " has " + std::to_string(cnt) + " entries");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream cs(line);
    std::string hex;
    if (!(cs >> kw >> hex) || kw != "checksum") fail("unexpected trailing line '" + line + "'");
    std::ostringstream want;
    want << std::hex << detail::fnv1a(body);
    if (want.str() != hex) fail("checksum mismatch");
  }
  GramMatrix G = GramMatrix::make(K, r, std::move(e), label == "-" ? "" : label);
  if (!G.is_hermitian()) fail("matrix is not Hermitian");
  if (uni == 1 && !G.is_unimodular()) fail("unimodular flag set but determinant is not 1");
  return G;
}

inline GramMatrix read_gram_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GramFormatError("cannot open Gram file " + path);
  return read_gram(in);
}

using LatticeVector = std::vector<OKElem>;

namespace detail {

/// Calls visit(z, t) for every coordinate vector z in Z^(2r) with half-norm t <= B
/// (Fincke-Pohst with double pruning and exact integer acceptance).
template <class Visit>
void for_each_short_vector(const GramMatrix& G, long B, Visit&& visit) {
  if (!G.is_positive_definite()) throw GramMathError("short_vectors: Gram matrix is not positive definite");
  int n = 2 * G.rank;
  std::vector<Rational> Q = G.transfer_form();

  // Integer form for exact acceptance: den * q(z) = z^T Qi z.
  Integer den = 1;
  for (const auto& q : Q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<long> Qi(Q.size());
  for (std::size_t i = 0; i < Q.size(); ++i) {
    Rational s = Q[i] * Rational(den);
    Qi[i] = s.get_num().get_si();
  }
  long dl = den.get_si();

  // Exact LDL: q(z) = sum_i d_i (z_i + sum_{j>i} mu_ij z_j)^2.
  std::vector<Rational> a = Q;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      a[j * n + i] = a[i * n + j];
      a[i * n + j] /= a[i * n + i];
    }
    for (int k = i + 1; k < n; ++k)
      for (int l = k; l < n; ++l) a[k * n + l] -= a[k * n + i] * a[i * n + l];
  }
  std::vector<double> d(n), mu(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    d[i] = a[i * n + i].get_d();
    for (int j = i + 1; j < n; ++j) mu[i * n + j] = a[i * n + j].get_d();
  }

  std::vector<long> z(n, 0);
  const double margin = 1e-6;
  std::function<void(int, double)> rec = [&](int i, double used) {
    if (i < 0) {
      long s = 0;
      for (int p = 0; p < n; ++p) {
        if (z[p] == 0) continue;
        long row = 0;
        for (int q = 0; q < n; ++q) row += Qi[p * n + q] * z[q];
        s += z[p] * row;
      }
      if (s % dl != 0) throw std::logic_error("short_vectors: half-norm not integral (lattice not even)");
      long t = s / dl;
      if (t <= B) visit(static_cast<const std::vector<long>&>(z), t);
      return;
    }
    double c = 0;
    for (int j = i + 1; j < n; ++j) c -= mu[i * n + j] * static_cast<double>(z[j]);
    double room = static_cast<double>(B) - used;
    if (room < -margin) return;
    double w = std::sqrt(std::max(0.0, room) / d[i]) + margin;
    long lo = static_cast<long>(std::ceil(c - w)), hi = static_cast<long>(std::floor(c + w));
    for (long v = lo; v <= hi; ++v) {
      z[i] = v;
      double e = static_cast<double>(v) - c;
      rec(i - 1, used + d[i] * e * e);
    }
    z[i] = 0;
  };
  rec(n - 1, 0.0);
}

inline std::vector<OKElem> units_of(long disc) {
  std::vector<OKElem> out;
  for (auto [x, y] : elements_of_norm_at_most(disc, 1))
    if (QuadField::norm_of(disc, x, y) == 1) out.push_back({x, y});
  return out;
}

}  // namespace detail

/// Every v in O_K^r with (1/2) v* G v = t <= B, bucketed by t and sorted.
inline std::map<long, std::vector<LatticeVector>> short_vectors(const GramMatrix& G, long B) {
  std::map<long, std::vector<LatticeVector>> out;
  for (long t = 0; t <= B; ++t) out[t];
  detail::for_each_short_vector(G, B, [&](const std::vector<long>& z, long t) {
    LatticeVector v(G.rank);
    for (int k = 0; k < G.rank; ++k) v[k] = {z[2 * k], z[2 * k + 1]};
    out[t].push_back(std::move(v));
  });
  for (auto& [t, vs] : out) std::sort(vs.begin(), vs.end());
  return out;
}

/// Degree-2 theta series sum_{X in O_K^(r,2)} q^{(1/2) X* G X}.
///
/// Pairs are enumerated on one representative per unit orbit on each side: (u1 v1, u2 v2)
/// has inner product conj(u1) u2 s, so each unit multiple of s occurs w times per pair.
inline FourierExpansion theta_series(const GramMatrix& G, long T) {
  if (!G.is_hermitian()) throw GramFormatError("theta_series: Gram matrix is not Hermitian");
  if (!G.is_even()) throw GramMathError("theta_series: Gram matrix is not even");
  const QuadField& K = G.field;
  OKRing R = G.ring();
  const std::vector<OKElem> units = detail::units_of(K.d);
  const long w = static_cast<long>(units.size());
  const int r = G.rank;

  // reps[t]: flat coordinates (2r longs per vector) of orbit representatives with half-norm t.
  std::vector<std::vector<long>> reps(static_cast<std::size_t>(T + 1));
  std::vector<long> total(static_cast<std::size_t>(T + 1), 0);
  detail::for_each_short_vector(G, T, [&](const std::vector<long>& z, long t) {
    ++total[t];
    if (t == 0 || t == T) return;
    // keep z when it is the lexicographic maximum of its unit orbit
    for (const auto& u : units) {
      if (u.x == 1 && u.y == 0) continue;
      for (int k = 0; k < r; ++k) {
        OKElem m = R.mul(u, {z[2 * k], z[2 * k + 1]});
        if (m.x != z[2 * k]) {
          if (m.x > z[2 * k]) return;
          break;
        }
        if (m.y != z[2 * k + 1]) {
          if (m.y > z[2 * k + 1]) return;
          break;
        }
      }
    }
    reps[t].insert(reps[t].end(), z.begin(), z.end());
  });

  FourierExpansion F;
  F.field = K;
  F.weight = r;
  F.char_tag = krieg_char_tag(K, r % 2 == 0 ? r : 0);
  if (r % 2 != 0) F.char_tag.reset();
  F.trace_bound = T;
  F.symmetric = true;
  F.set(HermIndex::zero(K.d), 1);
  for (long t = 1; t <= T; ++t) {
    if (total[t] == 0) continue;
    F.set(HermIndex{t, 0, 0, 0, K.d}, Rational(total[t]));
    F.set(HermIndex{0, 0, 0, t, K.d}, Rational(total[t]));
  }

  // c = sqrt(d_K) * s / 2 with s = v1* G v2 and sqrt(d_K) = 2 omega - tr(omega).
  OKElem sqrtd{-R.tr(), 2};
  auto add = [&](long t1, OKElem s, long t2, long count) {
    for (const auto& u : units) {
      OKElem c2 = R.mul(sqrtd, R.mul(u, s));
      if (c2.x % 2 != 0 || c2.y % 2 != 0) throw std::logic_error("theta_series: off-diagonal outside Lambda_2");
      HermIndex h{t1, c2.x / 2, c2.y / 2, t2, K.d};
      F.add(h, Rational(count));
    }
  };
  for (long t1 = 1; 2 * t1 <= T; ++t1)
    for (long t2 = t1; t1 + t2 <= T; ++t2) {
      const auto& A = reps[t1];
      const auto& Bv = reps[t2];
      std::size_t na = A.size() / (2 * r), nb = Bv.size() / (2 * r);
      if (na == 0 || nb == 0) continue;
      // |s|^2 <= (2 t1)(2 t2); coordinates over {1, omega} are bounded by 4 sqrt(t1 t2) + 2
      long rad = 4 * static_cast<long>(std::ceil(std::sqrt(static_cast<double>(t1 * t2)))) + 2;
      long side = 2 * rad + 1;
      std::vector<long> hist(static_cast<std::size_t>(side * side), 0);
      std::vector<long> gb(2 * r);
      for (std::size_t j = 0; j < nb; ++j) {
        const long* v2 = &Bv[j * 2 * r];
        for (int i = 0; i < r; ++i) {
          OKElem acc{0, 0};
          for (int k = 0; k < r; ++k) acc = R.add(acc, R.mul(G.at(i, k), {v2[2 * k], v2[2 * k + 1]}));
          gb[2 * i] = acc.x;
          gb[2 * i + 1] = acc.y;
        }
        for (std::size_t a = 0; a < na; ++a) {
          const long* v1 = &A[a * 2 * r];
          OKElem s{0, 0};
          for (int i = 0; i < r; ++i) s = R.add(s, R.mul(R.conj({v1[2 * i], v1[2 * i + 1]}), {gb[2 * i], gb[2 * i + 1]}));
          if (std::labs(s.x) > rad || std::labs(s.y) > rad) throw std::logic_error("theta_series: inner product out of range");
          ++hist[static_cast<std::size_t>((s.x + rad) * side + (s.y + rad))];
        }
      }
      for (long x = -rad; x <= rad; ++x)
        for (long y = -rad; y <= rad; ++y) {
          long cnt = hist[static_cast<std::size_t>((x + rad) * side + (y + rad))];
          if (cnt == 0) continue;
          add(t1, {x, y}, t2, cnt * w);
          if (t1 != t2) add(t2, R.conj({x, y}), t1, cnt * w);
        }
    }
  return F;
}

// ---------------------------------------------------------------------------
// Theta constants over Q(i)

/// Characteristic (a1, a2, b1, b2) in {0,1}^4.
struct ThetaCharacteristic {
  std::array<int, 4> v{};
  int a(int j) const { return v[static_cast<std::size_t>(j)]; }
  int b(int j) const { return v[static_cast<std::size_t>(2 + j)]; }
  std::string to_string() const {
    return std::to_string(v[0]) + std::to_string(v[1]) + std::to_string(v[2]) + std::to_string(v[3]);
  }
  bool operator==(const ThetaCharacteristic&) const = default;
};

inline const std::vector<ThetaCharacteristic>& even_characteristics() {
  static const std::vector<ThetaCharacteristic> set = {
      {{0, 0, 0, 0}}, {{0, 0, 0, 1}}, {{0, 0, 1, 0}}, {{0, 0, 1, 1}}, {{0, 1, 0, 0}},
      {{0, 1, 1, 0}}, {{1, 0, 0, 0}}, {{1, 0, 0, 1}}, {{1, 1, 0, 0}}, {{1, 1, 1, 1}}};
  return set;
}

inline bool is_even_characteristic(const ThetaCharacteristic& m) {
  for (const auto& e : even_characteristics())
    if (e == m) return true;
  return false;
}

/// Normalization of the theta-constant exponent: exp(kappa/2 * (Z{x} + phase term)).
struct ThetaCalibration {
  enum class Kappa { PiI, TwoPiI };
  enum class Phase { ShiftedVector, Literal };
  Kappa kappa = Kappa::TwoPiI;
  Phase phase = Phase::ShiftedVector;

  /// Index scale: H = Y / scale with Y = y y*, y = 2x.
  long scale() const { return kappa == Kappa::TwoPiI ? 8 : 16; }
  std::string to_string() const {
    return std::string(kappa == Kappa::TwoPiI ? "kappa=2*pi*i" : "kappa=pi*i") +
           (phase == Phase::ShiftedVector ? ",phase=shifted-vector" : ",phase=literal");
  }
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("theta coefficient overflow");
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("theta coefficient overflow");
  return r;
}

/// Z[zeta_8] element c0 + c1 z + c2 z^2 + c3 z^3 with z^4 = -1.
struct Cyclo8 {
  std::array<std::int64_t, 4> c{};
  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }
  bool is_integer() const { return c[1] == 0 && c[2] == 0 && c[3] == 0; }
  static Cyclo8 zeta_power(long e) {
    Cyclo8 r;
    long k = pos_mod(e, 8);
    r.c[static_cast<std::size_t>(k % 4)] = k < 4 ? 1 : -1;
    return r;
  }
  Cyclo8& operator+=(const Cyclo8& o) {
    for (int i = 0; i < 4; ++i) c[i] = checked_add(c[i], o.c[i]);
    return *this;
  }
  Cyclo8 operator*(const Cyclo8& o) const {
    Cyclo8 r;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        std::int64_t p = checked_mul(c[i], o.c[j]);
        int k = i + j;
        if (k >= 4)
          r.c[k - 4] = checked_add(r.c[k - 4], -p);
        else
          r.c[k] = checked_add(r.c[k], p);
      }
    return r;
  }
};

}  // namespace detail

/// Generalized q-expansion on the fine key Y = (|y1|^2, |y2|^2, y1 conj(y2)), truncated at
/// Y11 + Y22 <= limit. Coefficients in Z (Coef = int64) or Z[zeta_8].
template <class Coef>
struct FineSeries {
  struct Key {
    long y11 = 0, y22 = 0, re = 0, im = 0;
    bool operator==(const Key&) const = default;
    auto operator<=>(const Key&) const = default;
  };
  long limit = 0;
  std::map<Key, Coef> coeffs;

  static std::uint64_t pack(const Key& k) {
    auto u = [](long v) { return static_cast<std::uint64_t>(v + (1 << 15)) & 0xffff; };
    return (u(k.y11) << 48) | (u(k.y22) << 32) | (u(k.re) << 16) | u(k.im);
  }
};

namespace detail {

inline bool coef_zero(std::int64_t v) { return v == 0; }
inline bool coef_zero(const Cyclo8& v) { return v.is_zero(); }
inline std::int64_t coef_mul(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
inline Cyclo8 coef_mul(const Cyclo8& a, const Cyclo8& b) { return a * b; }
inline void coef_add(std::int64_t& a, std::int64_t b) { a = checked_add(a, b); }
inline void coef_add(Cyclo8& a, const Cyclo8& b) { a += b; }

}  // namespace detail

template <class Coef>
FineSeries<Coef> fine_mul(const FineSeries<Coef>& F, const FineSeries<Coef>& G) {
  using S = FineSeries<Coef>;
  S out;
  out.limit = std::min(F.limit, G.limit);
  std::vector<std::pair<typename S::Key, Coef>> fs(F.coeffs.begin(), F.coeffs.end()),
      gs(G.coeffs.begin(), G.coeffs.end());
  auto by_trace = [](const auto& p, const auto& q) {
    return p.first.y11 + p.first.y22 < q.first.y11 + q.first.y22;
  };
  std::sort(fs.begin(), fs.end(), by_trace);
  std::sort(gs.begin(), gs.end(), by_trace);
  std::unordered_map<std::uint64_t, std::size_t> slot;
  std::vector<typename S::Key> keys;
  std::vector<Coef> acc;
  for (const auto& [k1, c1] : fs) {
    long room = out.limit - (k1.y11 + k1.y22);
    if (room < 0) break;
    for (const auto& [k2, c2] : gs) {
      if (k2.y11 + k2.y22 > room) break;
      typename S::Key k{k1.y11 + k2.y11, k1.y22 + k2.y22, k1.re + k2.re, k1.im + k2.im};
      auto [it, fresh] = slot.try_emplace(S::pack(k), keys.size());
      if (fresh) {
        keys.push_back(k);
        acc.emplace_back();
      }
      detail::coef_add(acc[it->second], detail::coef_mul(c1, c2));
    }
  }
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (!detail::coef_zero(acc[i])) out.coeffs.emplace(keys[i], acc[i]);
  return out;
}

/// into += F; into.limit must already be set.
template <class Coef>
void fine_accumulate(FineSeries<Coef>& into, const FineSeries<Coef>& F) {
  into.limit = std::min(into.limit, F.limit);
  for (const auto& [k, c] : F.coeffs) {
    auto [it, fresh] = into.coeffs.try_emplace(k, c);
    if (!fresh) {
      detail::coef_add(it->second, c);
      if (detail::coef_zero(it->second)) into.coeffs.erase(it);
    }
  }
}

/// theta_m(Z) = sum_{g in Z[i]^2} exp(kappa/2 (Z{x} + 2 Re((1+i)/2 tb x))), x = g + (1+i) a / 2,
/// with the phase argument read per the calibration. box_factor > 1 enlarges the g-box.
inline FineSeries<detail::Cyclo8> theta_constant_fine(const ThetaCharacteristic& m, long T,
                                                      const ThetaCalibration& cal, long box_factor = 1) {
  if (!is_even_characteristic(m))
    throw std::invalid_argument("theta_constant: characteristic " + m.to_string() + " is not even");
  FineSeries<detail::Cyclo8> out;
  long limit = cal.scale() * T;
  out.limit = limit;
  long R = box_factor * (static_cast<long>(std::sqrt(static_cast<double>(limit))) + 2);
  // y_j = 2 g_j + (1+i) a_j; coordinates (u, w) = (Re y, Im y).
  std::vector<std::pair<long, long>> ys[2];
  for (int j = 0; j < 2; ++j)
    for (long gr = -R; gr <= R; ++gr)
      for (long gi = -R; gi <= R; ++gi) {
        long u = 2 * gr + m.a(j), w = 2 * gi + m.a(j);
        if (u * u + w * w <= limit) ys[j].emplace_back(u, w);
      }
  for (auto [u1, w1] : ys[0])
    for (auto [u2, w2] : ys[1]) {
      long n1 = u1 * u1 + w1 * w1, n2 = u2 * u2 + w2 * w2;
      if (n1 + n2 > limit) continue;
      // y1 * conj(y2)
      long re = u1 * u2 + w1 * w2, im = w1 * u2 - u1 * w2;
      // Re((1+i) z) = Re z - Im z.
      long phase_arg;
      if (cal.phase == ThetaCalibration::Phase::ShiftedVector)
        phase_arg = m.b(0) * (u1 - w1) + m.b(1) * (u2 - w2);
      else
        phase_arg = 2 * (m.b(0) * m.a(0) + m.b(1) * m.a(1));
      // kappa = 2 pi i: exp(pi i phase_arg / 2) = zeta_8^(2 phase_arg); kappa = pi i halves it.
      long e = cal.kappa == ThetaCalibration::Kappa::TwoPiI ? 2 * phase_arg : phase_arg;
      FineSeries<detail::Cyclo8>::Key k{n1, n2, re, im};
      auto [it, fresh] = out.coeffs.try_emplace(k);
      it->second += detail::Cyclo8::zeta_power(e);
      if (it->second.is_zero()) out.coeffs.erase(it);
    }
  return out;
}

/// Drops to integer coefficients; throws if a non-real root of unity survives.
inline FineSeries<std::int64_t> to_integer_series(const FineSeries<detail::Cyclo8>& F) {
  FineSeries<std::int64_t> out;
  out.limit = F.limit;
  for (const auto& [k, c] : F.coeffs) {
    if (!c.is_integer()) throw std::domain_error("theta constant has non-rational coefficients");
    out.coeffs.emplace(FineSeries<std::int64_t>::Key{k.y11, k.y22, k.re, k.im}, c.c[0]);
  }
  return out;
}

/// Collects a fine series on Lambda_2(Q(i)); returns nullopt if any key is off the lattice.
template <class Coef>
std::optional<FourierExpansion> fine_to_expansion(const FineSeries<Coef>& F, long scale, const Rational& factor,
                                                  int weight) {
  FourierExpansion out;
  out.field = QuadField::gaussian();
  out.weight = weight;
  out.char_tag = krieg_char_tag(out.field, weight % 2 == 0 ? weight : 0);
  if (weight % 2 != 0) out.char_tag.reset();
  out.trace_bound = F.limit / scale;
  long half = scale / 2;
  for (const auto& [k, c] : F.coeffs) {
    if (k.y11 % scale || k.y22 % scale || k.re % half || k.im % half) return std::nullopt;
    Rational v;
    if constexpr (std::is_same_v<Coef, std::int64_t>) {
      v = Rational(Integer(static_cast<long>(c)));
    } else {
      if (!c.is_integer()) return std::nullopt;
      v = Rational(Integer(static_cast<long>(c.c[0])));
    }
    out.set(HermIndex::gaussian(k.y11 / scale, k.re / half, k.im / half, k.y22 / scale), factor * v);
  }
  return out;
}

template <class Coef>
FineSeries<Coef> fine_power(const FineSeries<Coef>& F, unsigned e) {
  if (e == 0) throw std::invalid_argument("fine_power: exponent must be positive");
  FineSeries<Coef> result, base = F;
  bool have = false;
  while (e) {
    if (e & 1) {
      result = have ? fine_mul(result, base) : base;
      have = true;
    }
    e >>= 1;
    if (e) base = fine_mul(base, base);
  }
  return result;
}

/// psi_{kk} = (1/4) sum over the even characteristics of theta_m^kk, under a given calibration.
inline std::optional<FourierExpansion> psi_series_with(long kk, long T, const ThetaCalibration& cal) {
  if (kk <= 0 || kk % 4 != 0) throw std::invalid_argument("psi_series: weight must be a positive multiple of 4");
  FineSeries<detail::Cyclo8> sum;
  sum.limit = cal.scale() * T;
  for (const auto& m : even_characteristics())
    fine_accumulate(sum, fine_power(theta_constant_fine(m, T, cal), static_cast<unsigned>(kk)));
  auto F = fine_to_expansion(sum, cal.scale(), Rational(1, 4), static_cast<int>(kk));
  if (F) F->trace_bound = T;
  return F;
}

struct CalibrationReport {
  ThetaCalibration chosen;
  std::vector<std::pair<std::string, std::string>> tried;  // (candidate, outcome)
};

/// Selects the unique exponent normalization with psi_4 supported on Lambda_2 and psi_4 = E_4 to trace T.
inline CalibrationReport calibrate_theta_constants(long T = 2) {
  using C = ThetaCalibration;
  FourierExpansion e4 = krieg_expansion(KriegParams(QuadField::gaussian(), 4), T);
  CalibrationReport rep;
  int hits = 0;
  for (C::Kappa k : {C::Kappa::PiI, C::Kappa::TwoPiI})
    for (C::Phase p : {C::Phase::ShiftedVector, C::Phase::Literal}) {
      C cal{k, p};
      auto psi4 = psi_series_with(4, T, cal);
      std::string outcome;
      if (!psi4)
        outcome = "support off Lambda_2 or non-rational";
      else if (!same_coefficients(*psi4, e4))
        outcome = "psi_4 != E_4";
      else {
        outcome = "psi_4 = E_4";
        rep.chosen = cal;
        ++hits;
      }
      rep.tried.emplace_back(cal.to_string(), outcome);
    }
  if (hits != 1)
    throw std::logic_error("theta-constant calibration: " + std::to_string(hits) + " candidates match E_4");
  return rep;
}

/// Integer theta constants and their powers for a fixed calibration and trace bound.
class ThetaConstants {
 public:
  ThetaConstants(long T, const ThetaCalibration& cal) : T_(T), cal_(cal) {
    for (const auto& m : even_characteristics()) base_.push_back(to_integer_series(theta_constant_fine(m, T, cal)));
  }

  long trace_bound() const { return T_; }
  const ThetaCalibration& calibration() const { return cal_; }
  const FineSeries<std::int64_t>& theta(std::size_t i) const { return base_.at(i); }

  /// theta_m as a fine series (index H = Y / scale).
  const FineSeries<std::int64_t>& theta(const ThetaCharacteristic& m) const {
    const auto& ev = even_characteristics();
    for (std::size_t i = 0; i < ev.size(); ++i)
      if (ev[i] == m) return base_[i];
    throw std::invalid_argument("theta: characteristic " + m.to_string() + " is not even");
  }

  /// theta_m^e, memoized for e in {4, 8, 12, ...}.
  const FineSeries<std::int64_t>& power(std::size_t i, unsigned e) {
    auto key = std::make_pair(i, e);
    auto it = powers_.find(key);
    if (it != powers_.end()) return it->second;
    FineSeries<std::int64_t> r;
    if (e == 4) {
      auto sq = fine_mul(base_[i], base_[i]);
      r = fine_mul(sq, sq);
    } else if (e % 4 == 0 && e > 4) {
      r = fine_mul(power(i, e - 4), power(i, 4));
    } else {
      r = fine_power(base_[i], e);
    }
    return powers_.emplace(key, std::move(r)).first->second;
  }

  FourierExpansion psi(long kk) {
    if (kk <= 0 || kk % 4 != 0) throw std::invalid_argument("psi_series: weight must be a positive multiple of 4");
    FineSeries<std::int64_t> sum;
    sum.limit = cal_.scale() * T_;
    for (std::size_t i = 0; i < base_.size(); ++i) fine_accumulate(sum, power(i, static_cast<unsigned>(kk)));
    auto F = fine_to_expansion(sum, cal_.scale(), Rational(1, 4), static_cast<int>(kk));
    if (!F) throw std::logic_error("psi_" + std::to_string(kk) + " has support off Lambda_2");
    F->trace_bound = T_;
    return *F;
  }

  /// F_10 = 2^-12 prod_m theta_m.
  FourierExpansion f10() {
    FineSeries<std::int64_t> prod = base_[0];
    for (std::size_t i = 1; i < base_.size(); ++i) prod = fine_mul(prod, base_[i]);
    auto F = fine_to_expansion(prod, cal_.scale(), Rational(1, 4096), 10);
    if (!F) throw std::logic_error("F_10 has support off Lambda_2");
    F->trace_bound = T_;
    return *F;
  }

 private:
  long T_;
  ThetaCalibration cal_;
  std::vector<FineSeries<std::int64_t>> base_;
  std::map<std::pair<std::size_t, unsigned>, FineSeries<std::int64_t>> powers_;
};

/// theta_m under the calibrated normalization, on the fine key (H = Y / scale).
inline FineSeries<std::int64_t> theta_constant(const ThetaCharacteristic& m, long T) {
  return to_integer_series(theta_constant_fine(m, T, calibrate_theta_constants().chosen));
}

inline FourierExpansion psi_series(long kk, long T) {
  ThetaConstants tc(T, calibrate_theta_constants().chosen);
  return tc.psi(kk);
}

inline FourierExpansion f10_series(long T) {
  ThetaConstants tc(T, calibrate_theta_constants().chosen);
  return tc.f10();
}

}  // namespace hermod
