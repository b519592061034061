#include "harmtree/oracles.hpp"

#include "harmtree/builtins.hpp"
#include "harmtree/functionals.hpp"

namespace harmtree {

namespace {

Rational pow_of(long base, int e) { return ipow(Rational(base), static_cast<unsigned long>(e)); }
Rational inv_pow(long base, int e) { return Rational(1) / pow_of(base, e); }

void require_family(const HarmonicModel& model, OracleFamily family) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::family_model_mismatch, "model is not the " + to_string(family) + " model: " + why);
  };
  auto same_root = [&](const RootData& expected) {
    if (model.root().u0 != expected.u0 || model.root().children != expected.children) fail("root data differs");
  };
  switch (family) {
    case OracleFamily::bounded3:
    case OracleFamily::needweight3:
      if (model.degree() != 3) fail("d=" + std::to_string(model.degree()));
      if (!std::holds_alternative<EqualSplit>(model.splitter().kind())) fail("splitter is " + model.splitter().name());
      same_root(family == OracleFamily::bounded3 ? bounded3_root() : needweight3_root());
      break;
    case OracleFamily::double_half3:
      if (model.degree() != 3) fail("d=" + std::to_string(model.degree()));
      if (!std::holds_alternative<DoubleHalf>(model.splitter().kind())) fail("splitter is " + model.splitter().name());
      same_root(double_half3_root());
      break;
    case OracleFamily::linear2: {
      if (model.degree() != 2) fail("d=" + std::to_string(model.degree()));
      if (!std::holds_alternative<EqualSplit>(model.splitter().kind())) fail("splitter is " + model.splitter().name());
      break;
    }
  }
}

/// Level sums of |u|^p split by vertex type: A has parent 2u, B has parent u/2.
std::pair<Rational, Rational> type_sums(const LevelState& lvl, int p) {
  Rational a(0);
  Rational b(0);
  const Rational pr(p);
  lvl.for_each_class([&](const Rational& u, const Rational& up, const auto& m) {
    const Rational term = detail::scaled(abs_pow(u, pr), m);
    if (up == 2 * u) {
      a += term;
    } else if (2 * up == u) {
      b += term;
    } else {
      throw Error(ErrorKind::class_not_in_table, "vertex is neither type A nor type B");
    }
  });
  return {a, b};
}

/// Edge sums of (child - parent)^2 weighted by 2^k, split by child 2u or u/2.
std::pair<Rational, Rational> edge_type_sums(const HarmonicModel& model, int k) {
  Rational up_sum(0);
  Rational down_sum(0);
  for_each_family(model.level(k), model.level(k + 1),
                  [&](const Rational& u, const Rational&, std::span<const Rational> kids, const auto& m) {
                    for (const Rational& c : kids) {
                      const Rational sq = detail::scaled(Rational((c - u) * (c - u)), m);
                      if (c == 2 * u) {
                        up_sum += sq;
                      } else {
                        down_sum += sq;
                      }
                    }
                  });
  const Rational w = pow_of(2, k);
  return {w * up_sum, w * down_sum};
}

Rational level_max(const LevelState& lvl) {
  std::optional<Rational> best;
  lvl.for_each_class([&](const Rational& u, const Rational&, const auto&) {
    if (!best || u > *best) best = u;
  });
  return *best;
}

}  // namespace

std::string to_string(OracleFamily family) {
  switch (family) {
    case OracleFamily::bounded3: return "bounded3";
    case OracleFamily::needweight3: return "needweight3";
    case OracleFamily::double_half3: return "double_half3";
    case OracleFamily::linear2: return "linear2";
  }
  return "unknown";
}

OracleFamily parse_oracle_family(const std::string& name) {
  for (OracleFamily f : {OracleFamily::bounded3, OracleFamily::needweight3, OracleFamily::double_half3,
                         OracleFamily::linear2}) {
    if (to_string(f) == name) return f;
  }
  throw Error(ErrorKind::invalid_config, "no closed form for model '" + name + "'");
}

Bounded3Values bounded3(int k, int p) {
  if (k < 0) throw Error(ErrorKind::invalid_config, "negative level");
  const Rational pr(p);
  Bounded3Values v;
  v.a_k = k == 0 ? Rational(0) : Rational(2) - inv_pow(2, k - 1);
  v.H = pow_of(2, k) * abs_pow(v.a_k, pr);
  v.N = pow_of(2, k + p) * (ipow(Rational(1) - inv_pow(2, k + 1), static_cast<unsigned long>(p)) -
                            ipow(Rational(1) - inv_pow(2, k), static_cast<unsigned long>(p)));
  if (k >= 1) {
    v.G = Rational(2);
    v.W = Rational(2 * k - 4) + Rational(8) / pow_of(2, k) - Rational(4) / pow_of(4, k);
  }
  return v;
}

NeedweightValues needweight3(int k) {
  if (k < 0) throw Error(ErrorKind::invalid_config, "negative level");
  return NeedweightValues{Rational(3) / pow_of(2, k + 1), Rational(3) * (Rational(1) - inv_pow(2, k))};
}

DoubleHalfValues double_half3(int l, int p) {
  if (p != 2 && p != 3) throw Error(ErrorKind::unsupported_p, "double_half3 has closed forms for p = 2, 3 only");
  if (l < 0) throw Error(ErrorKind::invalid_config, "negative level");
  DoubleHalfValues v;
  if (p == 2) {
    v.U = pow_of(8, l);
    v.D_down = Rational(1, 2) + Rational(2) * (pow_of(8, l) - 1) / 7;
    v.weighted_dirichlet_sum = Rational(9) * pow_of(8, l) / 7 + Rational(3, 14);
    if (l >= 1) {
      v.A = Rational(3, 7) * inv_pow(2, l) + pow_of(4, l) / 14;
      v.B = pow_of(4, l);
      v.H = *v.A + *v.B;
      const Rational cumulative = Rational(9) * (pow_of(8, l) - 1) / 49 + Rational(3 * l, 14);
      v.G = cumulative / l;
      v.W = cumulative - inv_pow(2, l) * (Rational(3, 7) * inv_pow(2, l) + pow_of(4, l) / 14 + pow_of(4, l));
      v.W_increment = Rational(9) * pow_of(8, l) / 7 + Rational(3, 14) + Rational(9) / (28 * pow_of(4, l)) -
                      Rational(15) * pow_of(2, l) / 14;
    }
  } else if (l >= 1) {
    v.A = Rational(15, 31) * inv_pow(4, l) + pow_of(8, l) / 62;
    v.B = pow_of(8, l);
    v.H = *v.A + *v.B;
    v.N_p3 = Rational(-105) / (248 * pow_of(4, l)) + Rational(189) * pow_of(8, l) / 62;
  }
  return v;
}

Linear2Values linear2(const Rational& a, const Rational& b, int k, int p) {
  if (k < 0) throw Error(ErrorKind::invalid_config, "negative level");
  const Rational pr(p);
  // Sphere sums; the sphere of radius 0 is the root alone.
  auto f = [&](int j) {
    if (j == 0) return abs_pow(b, pr);
    return abs_pow(Rational(a * j + b), pr) + abs_pow(Rational(-a * j + b), pr);
  };
  Linear2Values v;
  v.N = f(k + 1) - f(k);
  if (k >= 1) {
    v.G = 2 * abs_pow(a, pr);
    v.W = a * a - b * b / Rational(k * k);
  }
  return v;
}

bool OracleDiffReport::pass() const {
  for (const auto& row : rows) {
    if (row.engine != row.oracle) return false;
  }
  return true;
}

OracleDiffReport oracle_diff(const HarmonicModel& model, OracleFamily family, int p, int k_max) {
  require_family(model, family);
  if (p < 1) throw Error(ErrorKind::unsupported_p, "exponent must be a positive integer");
  if (family == OracleFamily::needweight3 && p != 2) {
    throw Error(ErrorKind::unsupported_p, "needweight3 closed forms are stated for p = 2");
  }
  if (family == OracleFamily::double_half3 && p != 2 && p != 3) {
    throw Error(ErrorKind::unsupported_p, "double_half3 has closed forms for p = 2, 3 only");
  }
  model.require_depth(k_max + 1, "oracle diff");

  OracleDiffReport report{family, {}};
  auto add = [&](int k, const std::string& q, const Rational& engine, const Rational& oracle) {
    report.rows.push_back(OracleDiffRow{k, q, engine, oracle});
  };
  const Rational pr(p);
  const PowerSums<Rational> sums = power_sums<Rational>(model, pr);

  switch (family) {
    case OracleFamily::bounded3: {
      const PowerSums<Rational> sums2 = power_sums<Rational>(model, Rational(2));
      for (int k = 0; k <= k_max; ++k) {
        const Bounded3Values v = bounded3(k, p);
        add(k, "a_k", level_max(model.level(k)), v.a_k);
        add(k, "H", sums.H.at(static_cast<std::size_t>(k)), v.H);
        add(k, "N", almgren_N(sums, k), v.N);
        if (k >= 1) {
          add(k, "G", dirichlet_G(sums, k), *v.G);
          add(k, "W", weiss_W(sums2, k), *v.W);
        }
      }
      break;
    }
    case OracleFamily::needweight3:
      for (int k = 0; k <= k_max; ++k) {
        const NeedweightValues v = needweight3(k);
        add(k, "D", sums.D.at(static_cast<std::size_t>(k)), v.D);
        add(k, "energy", partial_energy(sums, k), v.partial_energy);
      }
      break;
    case OracleFamily::double_half3:
      for (int l = 0; l <= k_max; ++l) {
        const DoubleHalfValues v = double_half3(l, p);
        if (p == 2) {
          const auto [up, down] = edge_type_sums(model, l);
          add(l, "U", up, *v.U);
          add(l, "D_down", down, *v.D_down);
          add(l, "weighted_dirichlet_sum", F_level(sums, l), *v.weighted_dirichlet_sum);
        }
        if (l == 0) continue;
        const auto [a, b] = type_sums(model.level(l), p);
        add(l, "A", a, *v.A);
        add(l, "B", b, *v.B);
        add(l, "H", sums.H.at(static_cast<std::size_t>(l)), *v.H);
        if (p == 2) {
          add(l, "G", dirichlet_G(sums, l), *v.G);
          add(l, "W", weiss_W(sums, l), *v.W);
          if (l < k_max) add(l, "W_increment", weiss_W(sums, l + 1) - weiss_W(sums, l), *v.W_increment);
        } else {
          add(l, "N", almgren_N(sums, l), *v.N_p3);
        }
      }
      break;
    case OracleFamily::linear2: {
      const Rational b = model.root().u0;
      const Rational a = model.root().children.front() - b;
      const PowerSums<Rational> sums2 = power_sums<Rational>(model, Rational(2));
      for (int k = 0; k <= k_max; ++k) {
        const Linear2Values v = linear2(a, b, k, p);
        add(k, "N", almgren_N(sums, k), v.N);
        if (k >= 1) {
          add(k, "G", dirichlet_G(sums, k), *v.G);
          add(k, "W", weiss_W2(sums2, k), *v.W);
        }
      }
      break;
    }
  }
  return report;
}

}  // namespace harmtree
