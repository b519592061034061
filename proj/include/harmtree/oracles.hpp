#pragma once

// Closed forms for the built-in example models, as exact rationals, and a
// differ that checks an engine model against them.

#include <optional>
#include <string>
#include <vector>

#include "harmtree/model.hpp"

namespace harmtree {

enum class OracleFamily { bounded3, needweight3, double_half3, linear2 };

std::string to_string(OracleFamily family);
/// Throws invalid_config for names without a closed form.
OracleFamily parse_oracle_family(const std::string& name);

/// Equal split from (0; 1, -1, 0). a_k is the value on the ray 0,0,...,0.
struct Bounded3Values {
  std::optional<Rational> G;  // k >= 1
  std::optional<Rational> W;  // k >= 1
  Rational N;
  Rational H;
  Rational a_k;
};

Bounded3Values bounded3(int k, int p);

/// Equal split from (0; 1, -1/2, -1/2), p = 2.
struct NeedweightValues {
  Rational D;               // D_k = 3 / 2^{k+1}
  Rational partial_energy;  // sum_{j<k} D_j = 3 (1 - 2^{-k})
};

NeedweightValues needweight3(int k);

/// Double-half model. Type A vertices have parent value 2u, type B have u/2.
/// For p = 2 the index is l >= 0 for the level edge sums and l >= 1 for the
/// rest; for p = 3 only A, B, H and N are defined, all for l >= 1.
struct DoubleHalfValues {
  std::optional<Rational> weighted_dirichlet_sum;  // 2^l D_l
  std::optional<Rational> U;                       // weighted sum over 2u-edges
  std::optional<Rational> D_down;                  // weighted sum over u/2-edges
  std::optional<Rational> A;
  std::optional<Rational> B;
  std::optional<Rational> H;
  std::optional<Rational> G;            // G(l), p = 2, l >= 1
  std::optional<Rational> W;            // W(l), p = 2, l >= 1
  std::optional<Rational> W_increment;  // W(l+1) - W(l), p = 2, l >= 1
  std::optional<Rational> N_p3;         // N(l), p = 3, l >= 1
};

/// Throws unsupported_p unless p is 2 or 3.
DoubleHalfValues double_half3(int l, int p);

/// u(j) = a j + b on the 2-regular tree.
struct Linear2Values {
  std::optional<Rational> G;  // k >= 1
  std::optional<Rational> W;  // k >= 1, p = 2 sums
  Rational N;
};

Linear2Values linear2(const Rational& a, const Rational& b, int k, int p);

struct OracleDiffRow {
  int k;
  std::string quantity;
  Rational engine;
  Rational oracle;
  Rational diff() const { return engine - oracle; }
};

struct OracleDiffReport {
  OracleFamily family;
  std::vector<OracleDiffRow> rows;

  bool pass() const;
};

/// Compares every closed form of `family` against the engine for indices up
/// to k_max. Needs model depth >= k_max + 1. Throws family_model_mismatch
/// when the model is not the family's model, unsupported_p when the family
/// has no closed form at p.
OracleDiffReport oracle_diff(const HarmonicModel& model, OracleFamily family, int p, int k_max);

}  // namespace harmtree
