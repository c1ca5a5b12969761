#pragma once

// Generators E4, E6, chi8, F10, F12 over Q(i) and linear algebra on expansions.

#include "hermod/theta.hpp"

#include <array>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace hermod {

/// Coefficients of the Leech theta series in psi_12, E4^3, E4 E8, E12.
inline std::array<Rational, 4> leech_relation() {
  return {make_rational(1470105, 8511808), make_rational(167218051, 638385600), make_rational(-147340193, 212795200),
          make_rational(802930253, 638385600)};
}

struct GeneratorSet {
  long trace_bound = 0;
  FourierExpansion E4, E6, chi8, F10, F12;
  FourierExpansion E8, E12, psi8, psi12, leech;
  Rational chi8_scale;  // c with chi8 = (E4^2 - E8) / c
  ThetaCalibration calibration;
  CalibrationReport calibration_report;

  const FourierExpansion& generator(int i) const {
    switch (i) {
      case 0: return E4;
      case 1: return E6;
      case 2: return chi8;
      case 3: return F10;
      case 4: return F12;
    }
    throw std::out_of_range("generator index");
  }
};

inline const std::array<int, 5>& generator_weights() {
  static const std::array<int, 5> w = {4, 6, 8, 10, 12};
  return w;
}
inline const std::array<const char*, 5>& generator_names() {
  static const std::array<const char*, 5> n = {"E4", "E6", "chi8", "F10", "F12"};
  return n;
}

class GeneratorError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Builds and validates the generators up to trace T.
inline GeneratorSet build_generators(long T = 6) {
  if (T < 2 || T > 8) throw std::invalid_argument("build_generators: trace bound must be in [2, 8]");
  auto check = [](bool ok, const std::string& what) {
    if (!ok) throw GeneratorError("generator validation failed: " + what);
  };
  const QuadField K = QuadField::gaussian();
  GeneratorSet g;
  g.trace_bound = T;
  g.E4 = krieg_expansion(KriegParams(K, 4), T);
  g.E6 = krieg_expansion(KriegParams(K, 6), T);
  g.E8 = krieg_expansion(KriegParams(K, 8), T);
  g.E12 = krieg_expansion(KriegParams(K, 12), T);

  FourierExpansion e4sq = mul(g.E4, g.E4);
  FourierExpansion diff = e4sq - g.E8;
  g.chi8_scale = diff.coeff(HermIndex::gaussian(1, 1, 1, 1));
  check(g.chi8_scale != 0, "a(E4^2 - E8; [1,1+i,1]) = 0");
  g.chi8 = Rational(1) / g.chi8_scale * diff;
  check(g.chi8.is_cusp(), "chi8 is not a cusp form");
  check(g.chi8.coeff(HermIndex::gaussian(1, 1, 1, 1)) == 1, "a(chi8; [1,1+i,1]) != 1");
  for (const auto& [s, v] : restrict_siegel(g.chi8)) check(v == 0, "chi8 restricted to S_2 is nonzero");

  g.calibration_report = calibrate_theta_constants(std::min<long>(T, 2));
  g.calibration = g.calibration_report.chosen;
  ThetaConstants tc(T, g.calibration);
  FourierExpansion psi4 = tc.psi(4);
  check(same_coefficients(psi4, g.E4), "psi4 != E4");
  g.psi8 = tc.psi(8);
  FourierExpansion psi8_rel = linear_combine({{Rational(14, 75), &e4sq}, {Rational(61, 75), &g.E8}});
  check(same_coefficients(g.psi8, psi8_rel), "psi8 != (14/75) E4^2 + (61/75) E8");
  g.psi12 = tc.psi(12);
  g.F10 = tc.f10();
  check(g.F10.is_cusp(), "F10 is not a cusp form");

  FourierExpansion e4cube = mul(e4sq, g.E4);
  FourierExpansion e4e8 = mul(g.E4, g.E8);
  auto a = leech_relation();
  g.leech = linear_combine({{a[0], &g.psi12}, {a[1], &e4cube}, {a[2], &e4e8}, {a[3], &g.E12}});
  g.leech.symmetric = true;
  check(g.leech.all_integral(), "Leech theta has non-integral coefficients");
  check(g.leech.coeff(HermIndex::zero(-4)) == 1, "Leech theta constant term != 1");

  FourierExpansion e6sq = mul(g.E6, g.E6);
  FourierExpansion e4chi8 = mul(g.E4, g.chi8);
  FourierExpansion num = linear_combine({{Rational(7, 12), &e4cube},
                                         {Rational(5, 12), &e6sq},
                                         {Rational(-10080), &e4chi8},
                                         {Rational(-1), &g.leech}});
  g.F12 = Rational(1, 60480) * num;
  g.F12.in_theorem_range = true;
  check(g.F12.is_cusp(), "F12 is not a cusp form");
  check(g.F12.all_integral(), "F12 has non-integral coefficients");

  g.chi8.in_theorem_range = true;
  return g;
}

namespace detail {

inline std::vector<std::pair<std::string, FourierExpansion GeneratorSet::*>> generator_fields() {
  return {{"E4", &GeneratorSet::E4},     {"E6", &GeneratorSet::E6},       {"chi8", &GeneratorSet::chi8},
          {"F10", &GeneratorSet::F10},   {"F12", &GeneratorSet::F12},     {"E8", &GeneratorSet::E8},
          {"E12", &GeneratorSet::E12},   {"psi8", &GeneratorSet::psi8},   {"psi12", &GeneratorSet::psi12},
          {"leech", &GeneratorSet::leech}};
}

inline std::string generator_dir_name(long T) { return "generators-T" + std::to_string(T); }

}  // namespace detail

// Cache layout: <dir>/generators-T<T>/{manifest.txt, <name>.hexp}. The manifest records the
// format version, trace bound, calibration and the chi8 scale.

inline void save_generators(const GeneratorSet& g, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::path root = fs::path(dir) / detail::generator_dir_name(g.trace_bound);
  fs::create_directories(root);
  for (const auto& [name, field] : detail::generator_fields()) {
    std::ofstream out(root / (name + ".hexp"));
    write_expansion(out, g.*field);
    if (!out) throw std::runtime_error("cannot write " + (root / (name + ".hexp")).string());
  }
  std::ofstream man(root / "manifest.txt");
  man << "hermod-generators 1\n";
  man << "trace_bound " << g.trace_bound << "\n";
  man << "calibration " << g.calibration.to_string() << "\n";
  man << "chi8_scale " << g.chi8_scale.get_str() << "\n";
  for (const auto& [cand, outcome] : g.calibration_report.tried) man << "tried " << cand << " " << outcome << "\n";
}

/// Loads a cached set when its manifest matches T and the calibration; nullopt otherwise.
inline std::optional<GeneratorSet> load_generators(const std::string& dir, long T,
                                                   const ThetaCalibration& cal = ThetaCalibration{}) {
  namespace fs = std::filesystem;
  fs::path root = fs::path(dir) / detail::generator_dir_name(T);
  std::ifstream man(root / "manifest.txt");
  if (!man) return std::nullopt;
  GeneratorSet g;
  std::string line;
  bool version_ok = false, trace_ok = false, cal_ok = false;
  while (std::getline(man, line)) {
    std::istringstream ls(line);
    std::string key, value;
    ls >> key;
    std::getline(ls >> std::ws, value);
    if (key == "hermod-generators") version_ok = value == "1";
    if (key == "trace_bound") trace_ok = value == std::to_string(T);
    if (key == "calibration") cal_ok = value == cal.to_string();
    if (key == "chi8_scale") g.chi8_scale = Rational(value);
    if (key == "tried") {
      auto sp = value.find(' ');
      g.calibration_report.tried.emplace_back(value.substr(0, sp), value.substr(sp + 1));
    }
  }
  if (!version_ok || !trace_ok || !cal_ok) return std::nullopt;
  g.trace_bound = T;
  g.calibration = cal;
  g.calibration_report.chosen = cal;
  for (const auto& [name, field] : detail::generator_fields()) {
    std::ifstream in(root / (name + ".hexp"));
    if (!in) return std::nullopt;
    g.*field = read_expansion(in);
    if ((g.*field).trace_bound != T) return std::nullopt;
  }
  return g;
}

struct Monomial {
  std::array<int, 5> exponents{};  // powers of E4, E6, chi8, F10, F12
  std::string name() const {
    std::string s;
    for (int i = 0; i < 5; ++i) {
      if (exponents[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += generator_names()[i];
      if (exponents[i] > 1) s += "^" + std::to_string(exponents[i]);
    }
    return s.empty() ? "1" : s;
  }
};

/// Exponent vectors with sum_i w_i e_i = k, ordered by (e_F12, e_F10, e_chi8, e_E6, e_E4).
inline std::vector<Monomial> monomial_exponents(int k) {
  if (k < 0 || k % 2 != 0 || k > 24) throw std::invalid_argument("monomial_basis: need even 0 <= k <= 24");
  std::vector<Monomial> out;
  const auto& w = generator_weights();
  for (int e12 = 0; 12 * e12 <= k; ++e12)
    for (int e10 = 0; 12 * e12 + 10 * e10 <= k; ++e10)
      for (int e8 = 0; 12 * e12 + 10 * e10 + 8 * e8 <= k; ++e8)
        for (int e6 = 0; 12 * e12 + 10 * e10 + 8 * e8 + 6 * e6 <= k; ++e6) {
          int rest = k - 12 * e12 - 10 * e10 - 8 * e8 - 6 * e6;
          if (rest % w[0] != 0) continue;
          out.push_back(Monomial{{rest / w[0], e6, e8, e10, e12}});
        }
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    for (int i = 4; i >= 0; --i)
      if (a.exponents[i] != b.exponents[i]) return a.exponents[i] < b.exponents[i];
    return false;
  });
  return out;
}

inline FourierExpansion monomial_expansion(const GeneratorSet& g, const Monomial& mono) {
  FourierExpansion out = constant_expansion(QuadField::gaussian(), g.trace_bound);
  for (int i = 0; i < 5; ++i)
    for (int e = 0; e < mono.exponents[i]; ++e) out = mul(out, g.generator(i));
  return out;
}

inline std::vector<FourierExpansion> monomial_basis(const GeneratorSet& g, int k) {
  std::vector<FourierExpansion> out;
  for (const auto& m : monomial_exponents(k)) out.push_back(monomial_expansion(g, m));
  return out;
}

/// Exact solution c of F = sum c_j basis_j on every index up to the common bound, or nullopt.
/// Fraction-free (Bareiss) elimination; free variables, if any, are set to 0.
inline std::optional<std::vector<Rational>> express(const FourierExpansion& F,
                                                    const std::vector<FourierExpansion>& basis) {
  long T = F.trace_bound;
  for (const auto& B : basis) {
    if (!(B.field == F.field)) throw std::invalid_argument("express: field mismatch");
    T = std::min(T, B.trace_bound);
  }
  std::size_t ncol = basis.size();
  std::vector<HermIndex> rows;
  {
    std::map<HermIndex, bool, LexLess> seen;
    for (const auto& [h, v] : F.coeffs)
      if (h.trace() <= T) seen[h] = true;
    for (const auto& B : basis)
      for (const auto& [h, v] : B.coeffs)
        if (h.trace() <= T) seen[h] = true;
    for (const auto& [h, b] : seen) rows.push_back(h);
  }
  std::size_t nrow = rows.size();
  std::size_t w = ncol + 1;
  std::vector<Integer> M(nrow * w);
  for (std::size_t i = 0; i < nrow; ++i) {
    std::vector<Rational> r(w);
    for (std::size_t j = 0; j < ncol; ++j) r[j] = basis[j].coeff(rows[i]);
    r[ncol] = F.coeff(rows[i]);
    Integer l = 1;
    for (const auto& q : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t j = 0; j < w; ++j) {
      Rational s = r[j] * Rational(l);
      M[i * w + j] = s.get_num();
    }
  }
  Integer prev = 1;
  std::size_t r = 0;
  std::vector<std::size_t> pivcols;
  for (std::size_t c = 0; c < w && r < nrow; ++c) {
    std::size_t piv = nrow;
    for (std::size_t i = r; i < nrow; ++i)
      if (M[i * w + c] != 0) {
        piv = i;
        break;
      }
    if (piv == nrow) continue;
    if (c == ncol) return std::nullopt;  // pivot in the right-hand side: inconsistent
    if (piv != r)
      for (std::size_t j = 0; j < w; ++j) std::swap(M[r * w + j], M[piv * w + j]);
    for (std::size_t i = r + 1; i < nrow; ++i) {
      for (std::size_t j = c + 1; j < w; ++j) {
        Integer t = M[r * w + c] * M[i * w + j] - M[i * w + c] * M[r * w + j];
        if (!mpz_divisible_p(t.get_mpz_t(), prev.get_mpz_t()))
          throw std::logic_error("express: inexact fraction-free step");
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        M[i * w + j] = t;
      }
      M[i * w + c] = 0;
    }
    prev = M[r * w + c];
    pivcols.push_back(c);
    ++r;
  }
  std::vector<Rational> x(ncol, Rational(0));
  for (std::size_t k = pivcols.size(); k-- > 0;) {
    std::size_t c = pivcols[k];
    Rational s(M[k * w + ncol]);
    for (std::size_t j = c + 1; j < ncol; ++j) s -= Rational(M[k * w + j]) * x[j];
    x[c] = s / Rational(M[k * w + c]);
  }
  // The solution has to reproduce every coefficient.
  for (std::size_t i = 0; i < nrow; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < ncol; ++j) s += x[j] * basis[j].coeff(rows[i]);
    if (s != F.coeff(rows[i])) return std::nullopt;
  }
  return x;
}

/// Rank of a family of expansions on the indices with trace <= T.
inline std::size_t expansion_rank(const std::vector<FourierExpansion>& basis, long T) {
  std::vector<HermIndex> rows;
  std::map<HermIndex, bool, LexLess> seen;
  for (const auto& B : basis)
    for (const auto& [h, v] : B.coeffs)
      if (h.trace() <= T) seen[h] = true;
  std::vector<std::vector<Rational>> M;
  for (const auto& [h, b] : seen) {
    std::vector<Rational> r;
    for (const auto& B : basis) r.push_back(B.coeff(h));
    M.push_back(std::move(r));
  }
  std::size_t rank = 0, ncol = basis.size();
  for (std::size_t c = 0; c < ncol && rank < M.size(); ++c) {
    std::size_t piv = M.size();
    for (std::size_t i = rank; i < M.size(); ++i)
      if (M[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == M.size()) continue;
    std::swap(M[rank], M[piv]);
    for (std::size_t i = rank + 1; i < M.size(); ++i) {
      if (M[i][c] == 0) continue;
      Rational f = M[i][c] / M[rank][c];
      for (std::size_t j = c; j < ncol; ++j) M[i][j] -= f * M[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace hermod
