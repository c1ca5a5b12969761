#pragma once

// Truncated Fourier expansions sum a(H) q^H over psd H with tr(H) <= T.

#include "hermod/lambda2.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace hermod {

struct FourierExpansion {
  QuadField field = QuadField::gaussian();
  int weight = 0;
  std::optional<int> char_tag = 0;  // l in det^l, mod w_K
  long trace_bound = 0;
  bool symmetric = true;
  bool in_theorem_range = true;
  std::optional<int> theta_source_weight;  // set on images of the theta operator
  std::map<HermIndex, Rational, LexLess> coeffs;  // nonzero entries only

  Rational coeff(const HermIndex& h) const {
    auto it = coeffs.find(h);
    return it == coeffs.end() ? Rational(0) : it->second;
  }
  void set(const HermIndex& h, const Rational& v) {
    if (v == 0)
      coeffs.erase(h);
    else
      coeffs[h] = v;
  }
  void add(const HermIndex& h, const Rational& v) {
    if (v == 0) return;
    auto [it, fresh] = coeffs.try_emplace(h, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) coeffs.erase(it);
    }
  }

  bool is_theta_image() const { return theta_source_weight.has_value(); }

  /// a(H) = a(conj H) on every stored index.
  bool check_symmetric() const {
    for (const auto& [h, v] : coeffs)
      if (coeff(h.conjugate()) != v) return false;
    return true;
  }

  bool is_cusp() const {
    for (const auto& [h, v] : coeffs)
      if (h.rank() < 2) return false;
    return true;
  }

  bool all_integral() const {
    for (const auto& [h, v] : coeffs)
      if (v.get_den() != 1) return false;
    return true;
  }
};

inline int tag_mod(long tag, int w) { return static_cast<int>(pos_mod(tag, w)); }

inline FourierExpansion constant_expansion(const QuadField& K, long T, const Rational& value = 1) {
  FourierExpansion F;
  F.field = K;
  F.trace_bound = T;
  F.set(HermIndex::zero(K.d), value);
  return F;
}

/// Coefficients of F restricted to tr(H) <= T.
inline FourierExpansion truncate(const FourierExpansion& F, long T) {
  FourierExpansion out = F;
  out.trace_bound = std::min(T, F.trace_bound);
  for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
    it = it->first.trace() > out.trace_bound ? out.coeffs.erase(it) : std::next(it);
  return out;
}

/// Equal coefficients on all indices with trace <= min of both bounds.
inline bool same_coefficients(const FourierExpansion& F, const FourierExpansion& G) {
  long T = std::min(F.trace_bound, G.trace_bound);
  for (const auto& [h, v] : F.coeffs)
    if (h.trace() <= T && G.coeff(h) != v) return false;
  for (const auto& [h, v] : G.coeffs)
    if (h.trace() <= T && F.coeff(h) != v) return false;
  return true;
}

struct LinearTerm {
  Rational scale;
  const FourierExpansion* expansion;
};

inline FourierExpansion linear_combine(const std::vector<LinearTerm>& terms, bool allow_mixed = false) {
  if (terms.empty()) throw std::invalid_argument("linear_combine: no terms");
  const FourierExpansion& first = *terms.front().expansion;
  FourierExpansion out;
  out.field = first.field;
  out.weight = first.weight;
  out.char_tag = first.char_tag;
  out.trace_bound = first.trace_bound;
  out.symmetric = true;
  out.in_theorem_range = true;
  out.theta_source_weight = first.theta_source_weight;
  for (const auto& t : terms) {
    const FourierExpansion& F = *t.expansion;
    if (!(F.field == first.field)) throw std::invalid_argument("linear_combine: field mismatch");
    if (F.weight != first.weight && !allow_mixed)
      throw std::invalid_argument("linear_combine: weight mismatch (" + std::to_string(F.weight) +
                                  " vs " + std::to_string(first.weight) + ")");
    if (F.char_tag != out.char_tag) out.char_tag.reset();
    if (F.theta_source_weight != out.theta_source_weight) out.theta_source_weight.reset();
    out.trace_bound = std::min(out.trace_bound, F.trace_bound);
    out.symmetric = out.symmetric && F.symmetric;
    out.in_theorem_range = out.in_theorem_range && F.in_theorem_range;
  }
  for (const auto& t : terms)
    for (const auto& [h, v] : t.expansion->coeffs)
      if (h.trace() <= out.trace_bound) out.add(h, t.scale * v);
  return out;
}

inline FourierExpansion operator*(const Rational& c, const FourierExpansion& F) {
  return linear_combine({{c, &F}});
}
inline FourierExpansion operator+(const FourierExpansion& F, const FourierExpansion& G) {
  return linear_combine({{1, &F}, {1, &G}});
}
inline FourierExpansion operator-(const FourierExpansion& F, const FourierExpansion& G) {
  return linear_combine({{1, &F}, {-1, &G}});
}

namespace detail {

inline std::uint64_t pack_index(const HermIndex& h) {
  constexpr std::int64_t off = 1 << 15;
  auto u = [](std::int64_t v) { return static_cast<std::uint64_t>(v + off) & 0xffff; };
  return (u(h.m) << 48) | (u(h.n) << 32) | (u(h.x) << 16) | u(h.y);
}

}  // namespace detail

/// Product of truncated expansions; a(FG; H) sums over H1 + H2 = H.
inline FourierExpansion mul(const FourierExpansion& F, const FourierExpansion& G) {
  if (!(F.field == G.field)) throw std::invalid_argument("mul: field mismatch");
  FourierExpansion out;
  out.field = F.field;
  out.weight = F.weight + G.weight;
  if (F.char_tag && G.char_tag)
    out.char_tag = tag_mod(*F.char_tag + *G.char_tag, F.field.w);
  else
    out.char_tag.reset();
  out.trace_bound = std::min(F.trace_bound, G.trace_bound);
  out.symmetric = F.symmetric && G.symmetric;
  out.in_theorem_range = F.in_theorem_range && G.in_theorem_range;
  long T = out.trace_bound;

  std::vector<std::pair<HermIndex, const Rational*>> gs;
  for (const auto& [h, v] : G.coeffs)
    if (h.trace() <= T) gs.emplace_back(h, &v);  // already sorted by trace

  std::unordered_map<std::uint64_t, std::size_t> slot;
  std::vector<HermIndex> keys;
  std::vector<Rational> acc;
  Rational prod;
  for (const auto& [h1, v1] : F.coeffs) {
    long room = T - h1.trace();
    if (room < 0) break;
    for (const auto& [h2, v2] : gs) {
      if (h2.trace() > room) break;
      HermIndex h = h1 + h2;
      if (!h.is_psd()) continue;
      auto [it, fresh] = slot.try_emplace(detail::pack_index(h), keys.size());
      if (fresh) {
        keys.push_back(h);
        acc.emplace_back(0);
      }
      mpq_mul(prod.get_mpq_t(), v1.get_mpq_t(), v2->get_mpq_t());
      acc[it->second] += prod;
    }
  }
  for (std::size_t i = 0; i < keys.size(); ++i)
    if (acc[i] != 0) out.coeffs.emplace(keys[i], std::move(acc[i]));
  return out;
}

inline FourierExpansion power(const FourierExpansion& F, unsigned e) {
  FourierExpansion out = constant_expansion(F.field, F.trace_bound);
  out.symmetric = F.symmetric;
  for (unsigned i = 0; i < e; ++i) out = mul(out, F);
  return out;
}

/// Theta operator: a(H) -> a(H) * det(H), with det(H) = ndet(H) / D_K.
inline FourierExpansion theta_op(const FourierExpansion& F) {
  FourierExpansion out = F;
  out.coeffs.clear();
  out.theta_source_weight = F.weight;
  for (const auto& [h, v] : F.coeffs) out.set(h, v * make_rational(h.ndet(), h.D()));
  return out;
}

/// One-variable q-expansion sum c(t) q^t, t <= bound.
struct EllipticQExp {
  int weight = 0;
  long bound = 0;
  std::map<long, Rational> coeffs;

  Rational coeff(long t) const {
    auto it = coeffs.find(t);
    return it == coeffs.end() ? Rational(0) : it->second;
  }
  void set(long t, const Rational& v) {
    if (v == 0)
      coeffs.erase(t);
    else
      coeffs[t] = v;
  }
  bool operator==(const EllipticQExp& o) const { return bound == o.bound && coeffs == o.coeffs; }
};

inline EllipticQExp siegel_phi(const FourierExpansion& F) {
  EllipticQExp out;
  out.weight = F.weight;
  out.bound = F.trace_bound;
  for (const auto& [h, v] : F.coeffs)
    if (h.n == 0 && h.x == 0 && h.y == 0) out.set(h.m, v);
  return out;
}

inline Integer divisor_power_sum(long t, unsigned e) {
  Integer s = 0;
  for (long d : divisors(t)) s += ipow(Integer(d), e);
  return s;
}

/// Normalized elliptic Eisenstein series 1 - (2k/B_k) sum sigma_{k-1}(t) q^t.
inline EllipticQExp elliptic_eisenstein(int k, long bound) {
  EllipticQExp out;
  out.weight = k;
  out.bound = bound;
  out.set(0, 1);
  Rational lead = Rational(-2 * k) / bernoulli(k);
  for (long t = 1; t <= bound; ++t) out.set(t, lead * Rational(divisor_power_sum(t, k - 1)));
  return out;
}

inline EllipticQExp elliptic_mul(const EllipticQExp& f, const EllipticQExp& g) {
  EllipticQExp out;
  out.weight = f.weight + g.weight;
  out.bound = std::min(f.bound, g.bound);
  for (const auto& [s, a] : f.coeffs)
    for (const auto& [t, b] : g.coeffs)
      if (s + t <= out.bound) out.set(s + t, out.coeff(s + t) + a * b);
  return out;
}

inline EllipticQExp elliptic_combine(const Rational& a, const EllipticQExp& f, const Rational& b,
                                     const EllipticQExp& g) {
  EllipticQExp out;
  out.weight = f.weight;
  out.bound = std::min(f.bound, g.bound);
  for (long t = 0; t <= out.bound; ++t) out.set(t, a * f.coeff(t) + b * g.coeff(t));
  return out;
}

/// Delta = (E4^3 - E6^2) / 1728.
inline EllipticQExp elliptic_delta(long bound) {
  EllipticQExp e4 = elliptic_eisenstein(4, bound), e6 = elliptic_eisenstein(6, bound);
  EllipticQExp d = elliptic_combine(Rational(1, 1728), elliptic_mul(elliptic_mul(e4, e4), e4),
                                    Rational(-1, 1728), elliptic_mul(e6, e6));
  d.weight = 12;
  return d;
}

/// Restriction to the Siegel half-space over Q(i): a([m,r,n]) = sum_b a([m, r+bi, n]).
inline std::map<SiegelIndex, Rational> restrict_siegel(const FourierExpansion& F) {
  if (F.field.d != -4) throw std::invalid_argument("restrict_siegel: field must be Q(i)");
  std::map<SiegelIndex, Rational> out;
  long T = F.trace_bound;
  for (long m = 0; m <= T; ++m)
    for (long n = 0; m + n <= T; ++n) {
      long L = 4 * m * n;
      for (long r = 0; r * r <= L; ++r)
        for (long sgn : {1L, -1L}) {
          if (r == 0 && sgn < 0) continue;
          Rational s = 0;
          for (long b = 0; r * r + b * b <= L; ++b) {
            s += F.coeff(HermIndex::gaussian(m, sgn * r, b, n));
            if (b > 0) s += F.coeff(HermIndex::gaussian(m, sgn * r, -b, n));
          }
          out[SiegelIndex{m, sgn * r, n}] = s;
        }
    }
  return out;
}

/// Coefficientwise reduction mod p; throws NotPIntegral naming the index.
inline std::map<HermIndex, long, LexLess> reduce_mod(const FourierExpansion& F, long p) {
  std::map<HermIndex, long, LexLess> out;
  for (const auto& [h, v] : F.coeffs) {
    if (!is_p_integral(v, p))
      throw NotPIntegral("coefficient " + v.get_str() + " at " + to_string(h) + " is not " +
                         std::to_string(p) + "-integral");
    long r = residue(v, p);
    out.emplace(h, r);
  }
  return out;
}

struct OrderResult {
  std::optional<HermIndex> index;  // empty means infinity up to bound
  long bound = 0;
  long residue = 0;
};

/// Lex-minimal index with nonzero residue mod p.
inline OrderResult first_nonzero_mod_p(const FourierExpansion& F, long p, long bound) {
  OrderResult res;
  res.bound = bound;
  for (const auto& [h, v] : F.coeffs) {
    if (h.trace() > bound) break;
    if (!is_p_integral(v, p))
      throw NotPIntegral("coefficient " + v.get_str() + " at " + to_string(h) + " is not " +
                         std::to_string(p) + "-integral");
    long r = residue(v, p);
    if (r != 0) {
      res.index = h;
      res.residue = r;
      return res;
    }
  }
  return res;
}

inline OrderResult ord_p(const FourierExpansion& F, long p) {
  if (F.field.d != -4 && F.field.d != -3)
    throw std::invalid_argument("ord_p: the order is only defined over Q(i) and Q(sqrt(-3))");
  return first_nonzero_mod_p(F, p, F.trace_bound);
}

// Text format:
//   hermod-expansion 1
//   disc <d> weight <k> char_tag <l|none> trace_bound <T> symmetric <0|1>
//   in_theorem_range <0|1> theta_source_weight <k|none>
//   records <N>
//   m x y n num den        (N lines, lex order)

inline void write_expansion(std::ostream& os, const FourierExpansion& F) {
  auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("none"); };
  os << "hermod-expansion 1\n";
  os << "disc " << F.field.d << " weight " << F.weight << " char_tag " << opt(F.char_tag)
     << " trace_bound " << F.trace_bound << " symmetric " << (F.symmetric ? 1 : 0) << "\n";
  os << "in_theorem_range " << (F.in_theorem_range ? 1 : 0) << " theta_source_weight "
     << opt(F.theta_source_weight) << "\n";
  os << "records " << F.coeffs.size() << "\n";
  for (const auto& [h, v] : F.coeffs)
    os << h.m << ' ' << h.x << ' ' << h.y << ' ' << h.n << ' ' << v.get_num().get_str() << ' '
       << v.get_den().get_str() << '\n';
}

inline FourierExpansion read_expansion(std::istream& is) {
  auto fail = [](const std::string& what) { throw std::runtime_error("expansion file: " + what); };
  auto expect = [&](const char* word) {
    std::string w;
    if (!(is >> w) || w != word) fail(std::string("expected '") + word + "'");
  };
  auto opt = [&](const std::string& s) -> std::optional<int> {
    if (s == "none") return std::nullopt;
    return std::stoi(s);
  };
  FourierExpansion F;
  int version = 0;
  expect("hermod-expansion");
  if (!(is >> version) || version != 1) fail("unsupported version");
  long d;
  std::string tag, tsw;
  int sym, itr;
  std::size_t count;
  expect("disc");
  is >> d;
  expect("weight");
  is >> F.weight;
  expect("char_tag");
  is >> tag;
  expect("trace_bound");
  is >> F.trace_bound;
  expect("symmetric");
  is >> sym;
  expect("in_theorem_range");
  is >> itr;
  expect("theta_source_weight");
  is >> tsw;
  expect("records");
  is >> count;
  if (!is) fail("truncated header");
  F.field = QuadField::make(d);
  F.char_tag = opt(tag);
  F.theta_source_weight = opt(tsw);
  F.symmetric = sym != 0;
  F.in_theorem_range = itr != 0;
  for (std::size_t i = 0; i < count; ++i) {
    HermIndex h;
    h.disc = d;
    std::string num, den;
    if (!(is >> h.m >> h.x >> h.y >> h.n >> num >> den)) fail("truncated record");
    Rational v{Integer(num), Integer(den)};
    v.canonicalize();
    F.set(h, v);
  }
  return F;
}

inline std::string expansion_to_string(const FourierExpansion& F) {
  std::ostringstream os;
  write_expansion(os, F);
  return os.str();
}

}  // namespace hermod
