#pragma once

// Half-integral Hermitian 2x2 indices [m, c, n] over O_K.

#include "hermod/number_theory.hpp"

#include <cmath>
#include <compare>
#include <cstdlib>
#include <ostream>
#include <regex>
#include <string>
#include <utility>
#include <vector>

namespace hermod {

/// H = [[m, h12], [conj(h12), n]] with sqrt(d_K) * h12 = x + y*omega.
/// For Q(i) this is [m, a+bi, n] with h12 = (a+bi)/2, so x = -b and y = a.
struct HermIndex {
  long m = 0;
  long x = 0;
  long y = 0;
  long n = 0;
  long disc = -4;

  static HermIndex make(long disc, long m, long x, long y, long n) {
    return HermIndex{m, x, y, n, disc};
  }
  /// [m, a+bi, n] over Q(i).
  static HermIndex gaussian(long m, long a, long b, long n) {
    return HermIndex{m, -b, a, n, -4};
  }
  static HermIndex zero(long disc) { return HermIndex{0, 0, 0, 0, disc}; }

  long a() const { return y; }
  long b() const { return -x; }

  long D() const { return -disc; }
  long trace() const { return m + n; }
  long norm_c() const { return QuadField::norm_of(disc, x, y); }

  /// D_K * det(H) = D_K m n - Nm(c).
  long ndet() const { return D() * m * n - norm_c(); }

  bool is_zero() const { return m == 0 && n == 0 && x == 0 && y == 0; }
  bool is_psd() const { return m >= 0 && n >= 0 && ndet() >= 0; }

  int rank() const {
    if (is_zero()) return 0;
    return ndet() > 0 ? 2 : 1;
  }

  /// Largest l with H / l still in Lambda_2.
  long epsilon() const {
    if (is_zero()) throw std::invalid_argument("epsilon of the zero index");
    long g = std::gcd(std::gcd(m, n), std::gcd(std::labs(x), std::labs(y)));
    return g;
  }

  /// Transpose: h12 -> conj(h12), i.e. c -> -conj(c).
  HermIndex conjugate() const {
    return HermIndex{m, -x - QuadField::omega_trace_of(disc) * y, y, n, disc};
  }

  HermIndex scaled(long l) const { return HermIndex{l * m, l * x, l * y, l * n, disc}; }

  HermIndex operator+(const HermIndex& o) const {
    if (disc != o.disc) throw std::invalid_argument("HermIndex: mixed fields");
    return HermIndex{m + o.m, x + o.x, y + o.y, n + o.n, disc};
  }
  HermIndex operator-(const HermIndex& o) const {
    if (disc != o.disc) throw std::invalid_argument("HermIndex: mixed fields");
    return HermIndex{m - o.m, x - o.x, y - o.y, n - o.n, disc};
  }

  bool operator==(const HermIndex&) const = default;
};

/// Lexicographic rule (tr, m, a, b) ascending; over other fields (tr, m, x, y).
inline std::strong_ordering lex_cmp(const HermIndex& h, const HermIndex& g) {
  if (h.disc != g.disc) throw std::invalid_argument("lex_cmp: indices over different fields");
  if (auto c = h.trace() <=> g.trace(); c != 0) return c;
  if (auto c = h.m <=> g.m; c != 0) return c;
  if (h.disc == -4) {
    if (auto c = h.a() <=> g.a(); c != 0) return c;
    return h.b() <=> g.b();
  }
  if (auto c = h.x <=> g.x; c != 0) return c;
  return h.y <=> g.y;
}

struct LexLess {
  bool operator()(const HermIndex& h, const HermIndex& g) const { return lex_cmp(h, g) < 0; }
};

inline std::string gaussian_to_string(long a, long b) {
  if (b == 0) return std::to_string(a);
  std::string im = b == 1 ? "i" : (b == -1 ? "-i" : std::to_string(b) + "i");
  if (a == 0) return im;
  return std::to_string(a) + (b > 0 ? "+" : "") + im;
}

/// "[m,a+bi,n]" over Q(i); "[m,x+yw,n]" (w = omega) elsewhere.
inline std::string to_string(const HermIndex& h) {
  std::string mid;
  if (h.disc == -4) {
    mid = gaussian_to_string(h.a(), h.b());
  } else if (h.y == 0) {
    mid = std::to_string(h.x);
  } else {
    std::string w = h.y == 1 ? "w" : (h.y == -1 ? "-w" : std::to_string(h.y) + "w");
    mid = h.x == 0 ? w : std::to_string(h.x) + (h.y > 0 ? "+" : "") + w;
  }
  return "[" + std::to_string(h.m) + "," + mid + "," + std::to_string(h.n) + "]";
}

inline std::ostream& operator<<(std::ostream& os, const HermIndex& h) { return os << to_string(h); }

/// Parses "[m, a+bi, n]" over Q(i) (spaces allowed).
inline HermIndex parse_gaussian_index(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  static const std::regex re(R"(^\[(-?\d+),(.+),(-?\d+)\]$)");
  std::smatch mt;
  if (!std::regex_match(s, mt, re)) throw std::invalid_argument("bad index: " + text);
  long m = std::stol(mt[1]), n = std::stol(mt[3]);
  std::string c = mt[2];
  static const std::regex imag(R"(^([+-]?)(\d*)i$)"), mixed(R"(^(-?\d+)(?:([+-])(\d*)i)?$)");
  std::smatch cm;
  long a = 0, b = 0;
  auto coef = [](const std::string& sign, const std::string& mag) {
    long v = mag.empty() ? 1 : std::stol(mag);
    return sign == "-" ? -v : v;
  };
  if (std::regex_match(c, cm, imag)) {
    b = coef(cm[1], cm[2]);
  } else if (std::regex_match(c, cm, mixed)) {
    a = std::stol(cm[1]);
    if (cm[2].matched) b = coef(cm[2], cm[3]);
  } else {
    throw std::invalid_argument("bad off-diagonal: " + c);
  }
  return HermIndex::gaussian(m, a, b, n);
}

/// Half-integral Siegel index [m, r, n] (off-diagonal r/2).
struct SiegelIndex {
  long m = 0;
  long r = 0;
  long n = 0;
  bool is_psd() const { return m >= 0 && n >= 0 && 4 * m * n - r * r >= 0; }
  auto operator<=>(const SiegelIndex&) const = default;
};

inline std::string to_string(const SiegelIndex& s) {
  return "[" + std::to_string(s.m) + "," + std::to_string(s.r) + "," + std::to_string(s.n) + "]";
}

/// All c = x + y*omega with Nm(c) <= bound, in (x, y) order.
inline std::vector<std::pair<long, long>> elements_of_norm_at_most(long disc, long bound) {
  std::vector<std::pair<long, long>> out;
  if (bound < 0) return out;
  long D = -disc;
  long tr = QuadField::omega_trace_of(disc);
  // Nm(x + y w) = (x + tr y / 2)^2 + (D/4) y^2.
  long ymax = static_cast<long>(std::sqrt(4.0 * bound / D)) + 1;
  for (long y = -ymax; y <= ymax; ++y) {
    long xmax = static_cast<long>(std::sqrt(static_cast<double>(bound))) + 2;
    for (long x = -xmax - tr * std::labs(y); x <= xmax + tr * std::labs(y); ++x)
      if (QuadField::norm_of(disc, x, y) <= bound) out.emplace_back(x, y);
  }
  return out;
}

/// Every psd H with tr(H) <= T, sorted by lex_cmp.
inline std::vector<HermIndex> enumerate_psd(const QuadField& K, long T) {
  std::vector<HermIndex> out;
  for (long m = 0; m <= T; ++m)
    for (long n = 0; m + n <= T; ++n)
      for (auto [x, y] : elements_of_norm_at_most(K.d, K.D * m * n))
        out.push_back(HermIndex{m, x, y, n, K.d});
  std::sort(out.begin(), out.end(), LexLess{});
  return out;
}

/// Ordered pairs (H1, H2) of psd indices with H1 + H2 = H.
inline std::vector<std::pair<HermIndex, HermIndex>> decompose_pairs(const HermIndex& h) {
  std::vector<std::pair<HermIndex, HermIndex>> out;
  for (long m1 = 0; m1 <= h.m; ++m1)
    for (long n1 = 0; n1 <= h.n; ++n1)
      for (auto [x, y] : elements_of_norm_at_most(h.disc, h.D() * m1 * n1)) {
        HermIndex h1{m1, x, y, n1, h.disc};
        HermIndex h2 = h - h1;
        if (h2.is_psd()) out.emplace_back(h1, h2);
      }
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
    return lex_cmp(p.first, q.first) < 0;
  });
  return out;
}

}  // namespace hermod
