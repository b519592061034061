#pragma once

// Machine checks of the algebraic identities and inequalities behind the
// monotonicity theorems. All checks are exact (Rational) and p = 2 unless
// noted; a failure on a harmonic model means an implementation bug.
//
//   ineq        sum A_j^2 = (sum A_j)^2/(d-1) + sum_{i<j} (A_i - A_j)^2/(d-1)
//   Ak          D_k = D_{k-1}/(d-1) + R_k/(d-1)                            k >= 1
//   Ak2         (d-1)^k D_k - (d-1)^{k-1} D_{k-1} = (d-1)^{k-1} R_k >= 0    k >= 1
//   Ck          C_k = d H_{k-1} - C_{k-1}  (k >= 2),  C_1 = d H_0
//   newDk       D_k = H_{k+1} - (d+1) H_k + 2 C_k                          k >= 1
//   XkA         N_k = D_k + D_{k-1} + N_{k-1}                              k >= 2
//   X1          N_1 = D_1 + 2 D_0
//   doubling2   D_j <= (d-1)^{k-j} D_k                                     0 <= j <= k
//   XkAk        N_k <= C_d (d-1)^k D_k,  C_d = 2 + 2/(d-2)                 k >= 1, d >= 3
//   Jensen      |(dA - B)/(d-1)|^p >= d/(d-1) |A|^p - |B|^p/(d-1)          p in {1,2,3}
//   numberstuff |c + e|^p + |c - e|^p >= 2 |c|^p                           p in {1,2,3}

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "harmtree/functionals.hpp"
#include "harmtree/model.hpp"

namespace harmtree {

enum class Identity { ineq, Ak, Ak2, Ck, newDk, XkA, X1, doubling2, XkAk, Jensen, numberstuff };

inline constexpr Identity all_identities[] = {
    Identity::ineq,  Identity::Ak,        Identity::Ak2,  Identity::Ck,     Identity::newDk,      Identity::XkA,
    Identity::X1,    Identity::doubling2, Identity::XkAk, Identity::Jensen, Identity::numberstuff,
};

std::string to_string(Identity id);

/// Identities stated with C_k, R_k or C_d; they need d >= 3.
bool needs_degree_three(Identity id);

struct IdentitySuiteOptions {
  std::size_t scalar_samples = 1000;  // random tuples for ineq, Jensen, numberstuff
  std::uint64_t seed = 20240601;
  int magnitude = 50;
  int denominator = 12;
};

struct IdentityFailure {
  Identity id;
  int k = -1;  // -1 for the scalar checks
  std::string witness;
};

struct IdentityReport {
  std::map<Identity, std::size_t> checked;  // instances evaluated per identity
  std::vector<Identity> not_applicable;
  std::vector<IdentityFailure> failures;

  bool pass() const noexcept { return failures.empty(); }
};

/// Runs one identity for every applicable k <= k_max (model depth >= k_max + 1).
/// Throws wrong_degree for a d >= 3 identity on the 2-regular tree.
IdentityReport check_identity(const HarmonicModel& model, Identity id, int k_max,
                              const IdentitySuiteOptions& opts = {});

/// All eleven checks; d >= 3 identities are listed as not applicable when d = 2.
IdentityReport identity_suite(const HarmonicModel& model, int k_max, const IdentitySuiteOptions& opts = {});

/// Per-vertex edge inequality
///   sum_i |u(c_i) - u(b)|^p >= |u(b) - u(b_p)|^p / (d-1)^{p-1}
/// at every vertex b of levels 1..K-1.
struct EdgeInequalityVerdict {
  bool pass = true;
  std::size_t checked = 0;
  int level = -1;
  std::string witness;
};

EdgeInequalityVerdict check_edge_inequality(const HarmonicModel& model, const Rational& p,
                                            Mode mode = Mode::exact,
                                            double tolerance = default_relative_tolerance);

// --- Whole-model verification ------------------------------------------------

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool pass() const noexcept;
};

struct VerifyOptions {
  IdentitySuiteOptions identities;
  bool run_identities = true;
  Mode mode = Mode::exact;  // floating: exponent-p checks use Real and a relative tolerance
  double tolerance = default_relative_tolerance;
};

/// Harmonicity, the identity suite (p = 2), monotonicity of G, F, N at
/// exponent p and of the Weiss functional, N_k >= 0, the edge inequality,
/// and for d = 2 the exact limit W_2(k) - a^2 = -b^2/k^2. Needs model depth
/// >= k_max + 1; monotonicity is checked over the whole depth.
VerificationReport verify_model(const HarmonicModel& model, const Rational& p, int k_max,
                                const VerifyOptions& opts = {});

}  // namespace harmtree
