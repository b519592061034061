#pragma once

// Level aggregates and the three monotone functionals on a harmonic model.
//
// Everything here is templated on the accumulation scalar T: Rational for
// exact evaluation (integer p only) or Real for float mode. Model values are
// always exact; differences are formed exactly and converted to T before the
// power is taken.
//
// Notation, with V_k the vertices at distance k from the root:
//   H_k = sum_{v in V_k} |u(v)|^p
//   D_k = sum over edges V_k -> V_{k+1} of |u(a) - u(b)|^p  (all d root edges at k = 0)
//   N_k = H_{k+1} - (d-1) H_k
//   C_k = sum_{v in V_k} u(v) u(v_p)                        (p = 2, k >= 1)
//   R_k = sum_{v in V_k} sum_{i<j} (u(c_i) - u(c_j))^2      (p = 2, k >= 1)

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "harmtree/model.hpp"
#include "harmtree/scalar.hpp"

namespace harmtree {

enum class FunctionalName { G, F, W_d, W_2, almgren_N, energy };

std::string to_string(FunctionalName name);

template <class T>
struct LevelAggregates {
  int k = 0;
  Rational p;
  T D;
  T H;
  T N;
  std::optional<T> C;
  std::optional<T> R;
};

/// H_0..H_L and D_0..D_{L-1} for one exponent, computed in a single pass.
template <class T>
struct PowerSums {
  int d = 0;
  Rational p;
  std::vector<T> H;
  std::vector<T> D;

  int max_level() const noexcept { return static_cast<int>(H.size()) - 1; }
};

template <class T>
struct FunctionalSeries {
  FunctionalName name = FunctionalName::G;
  Rational p;
  int start = 0;  // functional index of values.front()
  std::vector<T> values;

  int last() const noexcept { return start + static_cast<int>(values.size()) - 1; }
  const T& at(int k) const { return values.at(static_cast<std::size_t>(k - start)); }
};

template <class T>
struct MonotonicityVerdict {
  bool pass = true;
  bool strictly_increasing = true;
  bool float_verified = false;  // verdict used a relative tolerance
  std::optional<int> first_violation;
  T deficit = T(0);  // values[k-1] - values[k] at the first violation
};

inline constexpr double default_relative_tolerance = 1e-12;

namespace detail {

template <class T>
T scaled(T x, std::size_t) {
  return x;
}

template <class T>
T scaled(T x, const Integer& m) {
  if constexpr (is_exact_v<T>) {
    x *= Rational(m);
  } else {
    x *= T(m);
  }
  return x;
}

template <class T>
T power_of_difference(const Rational& a, const Rational& b, const Rational& p) {
  return abs_pow(from_rational<T>(Rational(a - b)), p);
}

/// Exact sum of m * |num/den|^e over many terms. Numerators are summed per
/// denominator, so rational normalization runs once per distinct denominator
/// instead of once per term.
class PowerAccumulator {
 public:
  explicit PowerAccumulator(unsigned long e) : e_(e), last_(by_denominator_.end()) {}
  PowerAccumulator(const PowerAccumulator&) = delete;
  PowerAccumulator& operator=(const PowerAccumulator&) = delete;

  void add(const Rational& x, std::size_t) { add(x, nullptr); }
  void add(const Rational& x, const Integer& m) { add(x, &m); }
  /// Adds m * |a - b|^e.
  void add_difference(const Rational& a, const Rational& b, std::size_t) { add_difference(a, b, nullptr); }
  void add_difference(const Rational& a, const Rational& b, const Integer& m) { add_difference(a, b, &m); }

  Rational total() const;

 private:
  void add(const Rational& x, const Integer* m);
  void add_difference(const Rational& a, const Rational& b, const Integer* m);
  void add_parts(mpz_srcptr num, mpz_srcptr den, const Integer* m);

  unsigned long e_;
  std::map<Integer, Integer> by_denominator_;
  std::map<Integer, Integer>::iterator last_;
  Integer term_;
  Integer diff_;
};

template <class T>
T level_H(const LevelState& lvl, const Rational& p) {
  if constexpr (is_exact_v<T>) {
    PowerAccumulator acc(integral_exponent(p));
    lvl.for_each_class([&](const Rational& u, const Rational&, const auto& m) { acc.add(u, m); });
    return acc.total();
  } else {
    T sum(0);
    lvl.for_each_class([&](const Rational& u, const Rational&, const auto& m) {
      sum += scaled(abs_pow(from_rational<T>(u), p), m);
    });
    return sum;
  }
}

template <class T>
T level_D(const LevelState& upper, const LevelState& lower, const Rational& p) {
  if constexpr (is_exact_v<T>) {
    PowerAccumulator acc(integral_exponent(p));
    for_each_family(upper, lower,
                    [&](const Rational& u, const Rational&, std::span<const Rational> kids, const auto& m) {
                      for (const auto& c : kids) acc.add_difference(c, u, m);
                    });
    return acc.total();
  } else {
    T sum(0);
    for_each_family(upper, lower,
                    [&](const Rational& u, const Rational&, std::span<const Rational> kids, const auto& m) {
                      T local(0);
                      for (const auto& c : kids) local += power_of_difference<T>(c, u, p);
                      sum += scaled(std::move(local), m);
                    });
    return sum;
  }
}

inline void require_exponent(const Rational& p) {
  if (p < 1) throw Error(ErrorKind::unsupported_p, "exponent must satisfy p >= 1, got " + to_string(p));
}

template <class T>
T level_weight(int d, const Rational& p, int level) {
  return weight_pow<T>(d - 1, Rational((p - 1) * level));
}

}  // namespace detail

/// Power sums up to level `max_level`; needs model depth >= max_level.
template <class T>
PowerSums<T> power_sums(const HarmonicModel& model, const Rational& p, int max_level) {
  detail::require_exponent(p);
  if constexpr (is_exact_v<T>) integral_exponent(p);
  model.require_depth(max_level, "power sums");
  PowerSums<T> sums;
  sums.d = model.degree();
  sums.p = p;
  sums.H.reserve(static_cast<std::size_t>(max_level) + 1);
  for (int k = 0; k <= max_level; ++k) {
    sums.H.push_back(detail::level_H<T>(model.level(k), p));
    if (k < max_level) sums.D.push_back(detail::level_D<T>(model.level(k), model.level(k + 1), p));
  }
  return sums;
}

template <class T>
PowerSums<T> power_sums(const HarmonicModel& model, const Rational& p) {
  return power_sums<T>(model, p, model.depth());
}

template <class T>
LevelAggregates<T> aggregates(const HarmonicModel& model, const Rational& p, int k) {
  detail::require_exponent(p);
  if (k < 0) throw Error(ErrorKind::invalid_config, "negative level");
  model.require_depth(k + 1, "aggregates at level " + std::to_string(k));
  const LevelState& upper = model.level(k);
  const LevelState& lower = model.level(k + 1);
  const int d = model.degree();

  LevelAggregates<T> agg;
  agg.k = k;
  agg.p = p;
  agg.H = detail::level_H<T>(upper, p);
  agg.D = detail::level_D<T>(upper, lower, p);
  agg.N = detail::level_H<T>(lower, p) - T(d - 1) * agg.H;

  if (p == 2 && k >= 1) {
    T c(0);
    upper.for_each_class([&](const Rational& u, const Rational& up, const auto& m) {
      c += detail::scaled(from_rational<T>(Rational(u * up)), m);
    });
    agg.C = std::move(c);

    T r(0);
    for_each_family(upper, lower,
                    [&](const Rational&, const Rational&, std::span<const Rational> kids, const auto& m) {
                      Rational local(0);
                      for (std::size_t i = 0; i < kids.size(); ++i) {
                        for (std::size_t j = i + 1; j < kids.size(); ++j) {
                          const Rational diff = kids[i] - kids[j];
                          local += diff * diff;
                        }
                      }
                      r += detail::scaled(from_rational<T>(local), m);
                    });
    agg.R = std::move(r);
  }
  return agg;
}

// --- Functionals from precomputed power sums --------------------------------

/// F(l) = (d-1)^{(p-1) l} D_l.
template <class T>
T F_level(const PowerSums<T>& sums, int level) {
  return detail::level_weight<T>(sums.d, sums.p, level) * sums.D.at(static_cast<std::size_t>(level));
}

/// G(k) = (1/k) sum_{l<k} F(l), k >= 1.
template <class T>
T dirichlet_G(const PowerSums<T>& sums, int k) {
  if (k < 1) throw Error(ErrorKind::invalid_config, "G is defined for k >= 1");
  T total(0);
  for (int l = 0; l < k; ++l) total += F_level(sums, l);
  return total / T(k);
}

/// W(k) = sum_{j<k} (d-1)^j D_j - ((d-2)/2) H_k / (d-1)^{k-1}, d >= 3, p = 2 sums.
template <class T>
T weiss_W(const PowerSums<T>& sums, int k) {
  if (sums.d < 3) throw Error(ErrorKind::wrong_degree, "W_d needs d >= 3; use W_2 on the 2-regular tree");
  if (sums.p != 2) throw Error(ErrorKind::unsupported_p, "the Weiss functional uses p = 2 sums");
  if (k < 1) throw Error(ErrorKind::invalid_config, "W is defined for k >= 1");
  T total(0);
  for (int j = 0; j < k; ++j) total += ipow(T(sums.d - 1), static_cast<unsigned long>(j)) * sums.D.at(j);
  const T boundary = T(sums.d - 2) * sums.H.at(static_cast<std::size_t>(k)) /
                     (T(2) * ipow(T(sums.d - 1), static_cast<unsigned long>(k - 1)));
  return total - boundary;
}

/// W(k) = (1/k) sum_{j<k} D_j - H_k / (2k^2), d = 2, p = 2 sums.
template <class T>
T weiss_W2(const PowerSums<T>& sums, int k) {
  if (sums.d != 2) throw Error(ErrorKind::wrong_degree, "W_2 is the 2-regular Weiss functional");
  if (sums.p != 2) throw Error(ErrorKind::unsupported_p, "the Weiss functional uses p = 2 sums");
  if (k < 1) throw Error(ErrorKind::invalid_config, "W is defined for k >= 1");
  T total(0);
  for (int j = 0; j < k; ++j) total += sums.D.at(static_cast<std::size_t>(j));
  return total / T(k) - sums.H.at(static_cast<std::size_t>(k)) / T(2 * k * k);
}

/// N(k) = H_{k+1}/(d-1) - H_k, k >= 0.
template <class T>
T almgren_N(const PowerSums<T>& sums, int k) {
  if (k < 0) throw Error(ErrorKind::invalid_config, "N is defined for k >= 0");
  return sums.H.at(static_cast<std::size_t>(k) + 1) / T(sums.d - 1) - sums.H.at(static_cast<std::size_t>(k));
}

/// Unweighted cumulative energy sum_{j<k} D_j.
template <class T>
T partial_energy(const PowerSums<T>& sums, int k) {
  T total(0);
  for (int j = 0; j < k; ++j) total += sums.D.at(static_cast<std::size_t>(j));
  return total;
}

// --- Functionals straight from a model --------------------------------------

template <class T>
T F_level(const HarmonicModel& model, const Rational& p, int level) {
  if (level < 0) throw Error(ErrorKind::invalid_config, "negative level");
  model.require_depth(level + 1, "F(" + std::to_string(level) + ")");
  return F_level(power_sums<T>(model, p, level + 1), level);
}

template <class T>
T dirichlet_G(const HarmonicModel& model, const Rational& p, int k) {
  if (k < 1) throw Error(ErrorKind::invalid_config, "G is defined for k >= 1");
  model.require_depth(k, "G(" + std::to_string(k) + ")");
  return dirichlet_G(power_sums<T>(model, p, k), k);
}

template <class T>
T weiss_W(const HarmonicModel& model, int k) {
  if (model.degree() < 3) throw Error(ErrorKind::wrong_degree, "W_d needs d >= 3; use W_2 on the 2-regular tree");
  if (k < 1) throw Error(ErrorKind::invalid_config, "W is defined for k >= 1");
  model.require_depth(k, "W(" + std::to_string(k) + ")");
  return weiss_W(power_sums<T>(model, Rational(2), k), k);
}

template <class T>
T weiss_W2(const HarmonicModel& model, int k) {
  if (model.degree() != 2) throw Error(ErrorKind::wrong_degree, "W_2 is the 2-regular Weiss functional");
  if (k < 1) throw Error(ErrorKind::invalid_config, "W is defined for k >= 1");
  model.require_depth(k, "W(" + std::to_string(k) + ")");
  return weiss_W2(power_sums<T>(model, Rational(2), k), k);
}

template <class T>
T almgren_N(const HarmonicModel& model, const Rational& p, int k) {
  if (k < 0) throw Error(ErrorKind::invalid_config, "N is defined for k >= 0");
  model.require_depth(k + 1, "N(" + std::to_string(k) + ")");
  return almgren_N(power_sums<T>(model, p, k + 1), k);
}

// --- Series and verdicts ----------------------------------------------------

/// Every index of `name` computable from `sums`: G, W_d, W_2 for k = 1..L;
/// N and F for k = 0..L-1; energy for k = 0..L.
template <class T>
FunctionalSeries<T> series(const PowerSums<T>& sums, FunctionalName name) {
  const int L = sums.max_level();
  FunctionalSeries<T> s;
  s.name = name;
  s.p = sums.p;
  switch (name) {
    case FunctionalName::G:
      s.start = 1;
      for (int k = 1; k <= L; ++k) s.values.push_back(dirichlet_G(sums, k));
      break;
    case FunctionalName::W_d:
      s.start = 1;
      for (int k = 1; k <= L; ++k) s.values.push_back(weiss_W(sums, k));
      break;
    case FunctionalName::W_2:
      s.start = 1;
      for (int k = 1; k <= L; ++k) s.values.push_back(weiss_W2(sums, k));
      break;
    case FunctionalName::almgren_N:
      s.start = 0;
      for (int k = 0; k < L; ++k) s.values.push_back(almgren_N(sums, k));
      break;
    case FunctionalName::F:
      s.start = 0;
      for (int l = 0; l < L; ++l) s.values.push_back(F_level(sums, l));
      break;
    case FunctionalName::energy:
      s.start = 0;
      for (int k = 0; k <= L; ++k) s.values.push_back(partial_energy(sums, k));
      break;
  }
  return s;
}

namespace detail {

/// prev > cur beyond tolerance. Exact mode ignores the tolerance.
template <class T>
bool decreases(const T& prev, const T& cur, double tolerance) {
  if constexpr (is_exact_v<T>) {
    return cur < prev;
  } else {
    if (!(cur < prev)) return false;
    const T scale = std::max(T(abs(prev)), T(abs(cur)));
    return T(prev - cur) > T(tolerance) * scale;
  }
}

}  // namespace detail

template <class T>
MonotonicityVerdict<T> monotonicity_report(const FunctionalSeries<T>& s,
                                           double tolerance = default_relative_tolerance) {
  if (s.values.size() < 2) throw Error(ErrorKind::invalid_config, "monotonicity needs at least two entries");
  MonotonicityVerdict<T> v;
  v.float_verified = !is_exact_v<T>;
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    const T& prev = s.values[i - 1];
    const T& cur = s.values[i];
    if (!(prev < cur)) v.strictly_increasing = false;
    if (v.pass && detail::decreases(prev, cur, tolerance)) {
      v.pass = false;
      v.first_violation = s.start + static_cast<int>(i);
      v.deficit = prev - cur;
    }
  }
  return v;
}

/// flags[i] is true iff values[0..i] are non-decreasing.
template <class T>
std::vector<bool> cumulative_monotone(const FunctionalSeries<T>& s, double tolerance = default_relative_tolerance) {
  std::vector<bool> flags;
  flags.reserve(s.values.size());
  bool ok = true;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (i > 0 && detail::decreases(s.values[i - 1], s.values[i], tolerance)) ok = false;
    flags.push_back(ok);
  }
  return flags;
}

}  // namespace harmtree
