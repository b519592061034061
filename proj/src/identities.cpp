#include "harmtree/identities.hpp"

#include <random>

namespace harmtree {

namespace {

struct P2Table {
  std::vector<Rational> H;  // 0..K
  std::vector<Rational> D;  // 0..K-1
  std::vector<Rational> C;  // 1..K (C[0] unused)
  std::vector<Rational> R;  // 1..K-1 (R[0] unused)
};

P2Table p2_table(const HarmonicModel& model, int max_level) {
  model.require_depth(max_level, "identity checks");
  const Rational two(2);
  P2Table t;
  t.H.resize(static_cast<std::size_t>(max_level) + 1);
  t.C.resize(static_cast<std::size_t>(max_level) + 1);
  t.D.resize(static_cast<std::size_t>(max_level));
  t.R.resize(static_cast<std::size_t>(max_level));
  for (int k = 0; k <= max_level; ++k) {
    const auto i = static_cast<std::size_t>(k);
    t.H[i] = detail::level_H<Rational>(model.level(k), two);
    if (k >= 1) {
      Rational c(0);
      model.level(k).for_each_class([&](const Rational& u, const Rational& up, const auto& m) {
        c += detail::scaled(Rational(u * up), m);
      });
      t.C[i] = c;
    }
    if (k < max_level) {
      const LevelAggregates<Rational> agg = aggregates<Rational>(model, two, k);
      t.D[i] = agg.D;
      if (agg.R) t.R[i] = *agg.R;
    }
  }
  return t;
}

Rational pw(long base, int e) { return ipow(Rational(base), static_cast<unsigned long>(e)); }

std::string eq_witness(const std::string& lhs_name, const Rational& lhs, const std::string& rhs_name,
                       const Rational& rhs) {
  return lhs_name + " = " + to_string(lhs) + ", " + rhs_name + " = " + to_string(rhs);
}

class Recorder {
 public:
  Recorder(IdentityReport& report, Identity id) : report_(report), id_(id) {}

  void check(bool ok, int k, const std::function<std::string()>& witness) {
    ++report_.checked[id_];
    if (!ok) report_.failures.push_back(IdentityFailure{id_, k, witness()});
  }

 private:
  IdentityReport& report_;
  Identity id_;
};

void run_model_identity(const HarmonicModel& model, Identity id, int k_max, const P2Table& t,
                        IdentityReport& report) {
  const int d = model.degree();
  const long b = d - 1;
  Recorder rec(report, id);
  auto D = [&](int k) -> const Rational& { return t.D.at(static_cast<std::size_t>(k)); };
  auto H = [&](int k) -> const Rational& { return t.H.at(static_cast<std::size_t>(k)); };
  auto C = [&](int k) -> const Rational& { return t.C.at(static_cast<std::size_t>(k)); };
  auto R = [&](int k) -> const Rational& { return t.R.at(static_cast<std::size_t>(k)); };
  auto N = [&](int k) { return Rational(H(k + 1) - Rational(b) * H(k)); };
  const auto ks = [](int k) { return std::to_string(k); };

  switch (id) {
    case Identity::Ak:
      for (int k = 1; k <= k_max; ++k) {
        const Rational rhs = (D(k - 1) + R(k)) / Rational(b);
        rec.check(D(k) == rhs, k, [&] { return eq_witness("D_" + ks(k), D(k), "(D_{k-1}+R_k)/(d-1)", rhs); });
      }
      break;
    case Identity::Ak2:
      for (int k = 1; k <= k_max; ++k) {
        const Rational lhs = pw(b, k) * D(k) - pw(b, k - 1) * D(k - 1);
        const Rational rhs = pw(b, k - 1) * R(k);
        rec.check(lhs == rhs && lhs >= 0, k,
                  [&] { return eq_witness("(d-1)^k D_k - (d-1)^{k-1} D_{k-1}", lhs, "(d-1)^{k-1} R_k", rhs); });
      }
      break;
    case Identity::Ck:
      if (k_max >= 1) {
        const Rational base = Rational(d) * H(0);
        rec.check(C(1) == base, 1, [&] { return eq_witness("C_1", C(1), "d H_0", base); });
      }
      for (int k = 2; k <= k_max; ++k) {
        const Rational rhs = Rational(d) * H(k - 1) - C(k - 1);
        rec.check(C(k) == rhs, k, [&] { return eq_witness("C_" + ks(k), C(k), "d H_{k-1} - C_{k-1}", rhs); });
      }
      break;
    case Identity::newDk:
      for (int k = 1; k <= k_max; ++k) {
        const Rational rhs = H(k + 1) - Rational(d + 1) * H(k) + 2 * C(k);
        rec.check(D(k) == rhs, k,
                  [&] { return eq_witness("D_" + ks(k), D(k), "H_{k+1} - (d+1) H_k + 2 C_k", rhs); });
      }
      break;
    case Identity::XkA:
      for (int k = 2; k <= k_max; ++k) {
        const Rational lhs = N(k);
        const Rational rhs = D(k) + D(k - 1) + N(k - 1);
        rec.check(lhs == rhs, k, [&] { return eq_witness("N_" + ks(k), lhs, "D_k + D_{k-1} + N_{k-1}", rhs); });
      }
      break;
    case Identity::X1:
      if (k_max >= 1) {
        const Rational lhs = N(1);
        const Rational rhs = D(1) + 2 * D(0);
        rec.check(lhs == rhs, 1, [&] { return eq_witness("N_1", lhs, "D_1 + 2 D_0", rhs); });
      }
      break;
    case Identity::doubling2:
      for (int k = 0; k <= k_max; ++k) {
        for (int j = 0; j <= k; ++j) {
          const Rational bound = pw(b, k - j) * D(k);
          rec.check(D(j) <= bound, k, [&] {
            return "D_" + ks(j) + " = " + to_string(D(j)) + " exceeds (d-1)^{k-j} D_k = " + to_string(bound);
          });
        }
      }
      break;
    case Identity::XkAk: {
      const Rational c_d = Rational(2) + Rational(2, d - 2);
      for (int k = 1; k <= k_max; ++k) {
        const Rational lhs = N(k);
        const Rational bound = c_d * pw(b, k) * D(k);
        rec.check(lhs <= bound, k, [&] {
          return "N_" + ks(k) + " = " + to_string(lhs) + " exceeds C_d (d-1)^k D_k = " + to_string(bound);
        });
      }
      break;
    }
    default:
      break;
  }
}

void run_scalar_identity(int d, Identity id, const IdentitySuiteOptions& opts, IdentityReport& report) {
  Recorder rec(report, id);
  std::mt19937_64 rng(mix_seed(opts.seed, static_cast<std::uint64_t>(id)));
  auto draw = [&] { return draw_rational(rng, opts.magnitude, opts.denominator); };
  const Rational dd(d);
  const Rational b(d - 1);

  for (std::size_t s = 0; s < opts.scalar_samples; ++s) {
    switch (id) {
      case Identity::ineq: {
        std::vector<Rational> a(static_cast<std::size_t>(d - 1));
        for (auto& x : a) x = draw();
        Rational squares(0);
        Rational total(0);
        Rational pairs(0);
        for (std::size_t i = 0; i < a.size(); ++i) {
          squares += a[i] * a[i];
          total += a[i];
          for (std::size_t j = i + 1; j < a.size(); ++j) pairs += (a[i] - a[j]) * (a[i] - a[j]);
        }
        const Rational rhs = total * total / b + pairs / b;
        rec.check(squares == rhs, -1, [&] { return eq_witness("sum A_j^2", squares, "rhs", rhs); });
        break;
      }
      case Identity::Jensen: {
        const Rational A = draw();
        const Rational B = draw();
        for (int p = 1; p <= 3; ++p) {
          const Rational pr(p);
          const Rational lhs = abs_pow(Rational((dd * A - B) / b), pr);
          const Rational rhs = dd / b * abs_pow(A, pr) - abs_pow(B, pr) / b;
          rec.check(lhs >= rhs, -1, [&] {
            return "p=" + std::to_string(p) + " A=" + to_string(A) + " B=" + to_string(B) + ": " +
                   eq_witness("lhs", lhs, "rhs", rhs);
          });
        }
        break;
      }
      case Identity::numberstuff: {
        const Rational c = draw();
        const Rational e = draw();
        for (int p = 1; p <= 3; ++p) {
          const Rational pr(p);
          const Rational lhs = abs_pow(Rational(c + e), pr) + abs_pow(Rational(c - e), pr);
          const Rational rhs = 2 * abs_pow(c, pr);
          rec.check(lhs >= rhs, -1, [&] {
            return "p=" + std::to_string(p) + " c=" + to_string(c) + " e=" + to_string(e) + ": " +
                   eq_witness("lhs", lhs, "rhs", rhs);
          });
        }
        break;
      }
      default:
        return;
    }
  }
}

bool is_scalar_identity(Identity id) {
  return id == Identity::ineq || id == Identity::Jensen || id == Identity::numberstuff;
}

template <class T>
EdgeInequalityVerdict edge_inequality(const HarmonicModel& model, const Rational& p, double tolerance) {
  const int d = model.degree();
  const T divisor = weight_pow<T>(d - 1, Rational(p - 1));
  EdgeInequalityVerdict v;
  for (int k = 1; k < model.depth() && v.pass; ++k) {
    for_each_family(model.level(k), model.level(k + 1),
                    [&](const Rational& u, const Rational& up, std::span<const Rational> kids, const auto&) {
                      if (!v.pass) return;
                      ++v.checked;
                      T lhs(0);
                      for (const auto& c : kids) lhs += detail::power_of_difference<T>(c, u, p);
                      const T rhs = detail::power_of_difference<T>(u, up, p) / divisor;
                      if (detail::decreases(rhs, lhs, tolerance)) {
                        v.pass = false;
                        v.level = k;
                        v.witness = "vertex value " + to_string(u) + ", parent " + to_string(up) + " at level " +
                                    std::to_string(k);
                      }
                    });
  }
  return v;
}

CheckResult monotone_check(const std::string& name, bool pass, const std::string& detail) {
  return CheckResult{name, pass, detail};
}

template <class T>
std::string render(const T& value) {
  if constexpr (is_exact_v<T>) {
    return to_string(value);
  } else {
    return to_decimal(value, 20);
  }
}

template <class T>
CheckResult series_check(const FunctionalSeries<T>& s, double tolerance) {
  const std::string name = "monotone:" + to_string(s.name);
  if (s.values.size() < 2) return monotone_check(name, true, "fewer than two values; nothing to compare");
  const MonotonicityVerdict<T> v = monotonicity_report(s, tolerance);
  std::string detail = "k=" + std::to_string(s.start) + ".." + std::to_string(s.last());
  if (v.float_verified) detail += " (float-verified)";
  if (!v.pass) detail += "; first violation at k=" + std::to_string(*v.first_violation) + ", deficit " + render(v.deficit);
  return monotone_check(name, v.pass, detail);
}

template <class T>
void exponent_checks(const HarmonicModel& model, const Rational& p, double tolerance, VerificationReport& report) {
  const PowerSums<T> sums = power_sums<T>(model, p);
  for (FunctionalName name : {FunctionalName::G, FunctionalName::F, FunctionalName::almgren_N}) {
    report.checks.push_back(series_check(series(sums, name), tolerance));
  }
  const FunctionalSeries<T> n = series(sums, FunctionalName::almgren_N);
  CheckResult nonneg{"N_nonnegative", true, "k=0.." + std::to_string(n.last())};
  for (std::size_t i = 0; i < n.values.size(); ++i) {
    if (detail::decreases(T(0), n.values[i], tolerance)) {
      nonneg.pass = false;
      nonneg.detail = "N(" + std::to_string(i) + ") = " + render(n.values[i]) + " < 0";
      break;
    }
  }
  report.checks.push_back(nonneg);

  const EdgeInequalityVerdict edge = edge_inequality<T>(model, p, tolerance);
  report.checks.push_back(CheckResult{"edge_inequality(ACF3)", edge.pass,
                                      edge.pass ? std::to_string(edge.checked) + " records checked" : edge.witness});
}

}  // namespace

std::string to_string(Identity id) {
  switch (id) {
    case Identity::ineq: return "ineq";
    case Identity::Ak: return "Ak";
    case Identity::Ak2: return "Ak2";
    case Identity::Ck: return "Ck";
    case Identity::newDk: return "newDk";
    case Identity::XkA: return "XkA";
    case Identity::X1: return "X1";
    case Identity::doubling2: return "doubling2";
    case Identity::XkAk: return "XkAk";
    case Identity::Jensen: return "Jensen";
    case Identity::numberstuff: return "numberstuff";
  }
  return "unknown";
}

bool needs_degree_three(Identity id) {
  return id == Identity::Ak || id == Identity::Ak2 || id == Identity::Ck || id == Identity::newDk ||
         id == Identity::XkAk;
}

IdentityReport check_identity(const HarmonicModel& model, Identity id, int k_max, const IdentitySuiteOptions& opts) {
  if (needs_degree_three(id) && model.degree() < 3) {
    throw Error(ErrorKind::wrong_degree, "identity " + to_string(id) + " needs d >= 3");
  }
  IdentityReport report;
  if (is_scalar_identity(id)) {
    run_scalar_identity(model.degree(), id, opts, report);
    return report;
  }
  model.require_depth(k_max + 1, "identity " + to_string(id));
  run_model_identity(model, id, k_max, p2_table(model, k_max + 1), report);
  return report;
}

IdentityReport identity_suite(const HarmonicModel& model, int k_max, const IdentitySuiteOptions& opts) {
  model.require_depth(k_max + 1, "identity suite");
  const P2Table table = p2_table(model, k_max + 1);
  IdentityReport report;
  for (Identity id : all_identities) {
    if (needs_degree_three(id) && model.degree() < 3) {
      report.not_applicable.push_back(id);
      continue;
    }
    if (is_scalar_identity(id)) {
      run_scalar_identity(model.degree(), id, opts, report);
    } else {
      run_model_identity(model, id, k_max, table, report);
    }
  }
  return report;
}

EdgeInequalityVerdict check_edge_inequality(const HarmonicModel& model, const Rational& p, Mode mode,
                                            double tolerance) {
  if (mode == Mode::exact) return edge_inequality<Rational>(model, p, tolerance);
  return edge_inequality<Real>(model, p, tolerance);
}

bool VerificationReport::pass() const noexcept {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

VerificationReport verify_model(const HarmonicModel& model, const Rational& p, int k_max, const VerifyOptions& opts) {
  model.require_depth(k_max + 1, "verification");
  VerificationReport report;

  const HarmonicVerdict harmonic = check_harmonic(model);
  report.checks.push_back(CheckResult{"harmonicity(c1c2v)", harmonic.pass,
                                      harmonic.pass ? "levels 0.." + std::to_string(model.depth() - 1)
                                                    : "level " + std::to_string(harmonic.level) + ": " +
                                                          harmonic.detail});
  if (!harmonic.pass) return report;

  if (opts.run_identities) {
    const IdentityReport ids = identity_suite(model, k_max, opts.identities);
    for (Identity id : all_identities) {
      CheckResult c{"identity:" + to_string(id), true, ""};
      if (std::find(ids.not_applicable.begin(), ids.not_applicable.end(), id) != ids.not_applicable.end()) {
        c.detail = "not applicable for d=" + std::to_string(model.degree());
      } else {
        const auto it = ids.checked.find(id);
        c.detail = std::to_string(it == ids.checked.end() ? 0 : it->second) + " instances";
        for (const auto& f : ids.failures) {
          if (f.id == id) {
            c.pass = false;
            c.detail = "k=" + std::to_string(f.k) + ": " + f.witness;
            break;
          }
        }
      }
      report.checks.push_back(c);
    }
  }

  if (opts.mode == Mode::exact) {
    exponent_checks<Rational>(model, p, opts.tolerance, report);
  } else {
    exponent_checks<Real>(model, p, opts.tolerance, report);
  }

  const PowerSums<Rational> sums2 = power_sums<Rational>(model, Rational(2));
  const FunctionalName weiss = model.degree() == 2 ? FunctionalName::W_2 : FunctionalName::W_d;
  report.checks.push_back(series_check(series(sums2, weiss), opts.tolerance));

  if (model.degree() == 2) {
    const Rational a = model.root().children.front() - model.root().u0;
    const Rational& b = model.root().u0;
    CheckResult limit{"W_2_limit", true, "W_2(k) - a^2 = -b^2/k^2 for k=1.." + std::to_string(model.depth())};
    for (int k = 1; k <= model.depth(); ++k) {
      const Rational gap = weiss_W2(sums2, k) - a * a;
      const Rational expected = -(b * b) / Rational(k * k);
      if (gap != expected) {
        limit.pass = false;
        limit.detail = "k=" + std::to_string(k) + ": " + eq_witness("W_2(k) - a^2", gap, "-b^2/k^2", expected);
        break;
      }
    }
    report.checks.push_back(limit);
  }
  return report;
}

}  // namespace harmtree
