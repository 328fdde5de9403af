#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klsum/cyclotomic.hpp"
#include "klsum/finite_field.hpp"
#include "klsum/kloosterman.hpp"

namespace klsum {

/// d = gcd(n+1, p-1) and R = gcd((p-1)/d, r).
struct Parameters {
  std::uint64_t p = 0;
  unsigned r = 0;
  unsigned n = 0;
  std::uint64_t d = 0;
  std::uint64_t R = 0;

  /// (p-1)/d, the largest degree any sum can reach.
  std::uint64_t max_degree() const { return (p - 1) / d; }
  /// R = 1: every nonzero point generates E_d whenever distinctness holds.
  bool trivial() const { return R == 1; }
};

Parameters derive_parameters(std::uint64_t p, unsigned r, unsigned n);

/// a lies in the coset gamma^{coset_rep_dlog} F_{p^t}^*, where
/// coset_rep_dlog = u (q-1) / (e (p^t - 1)).
struct Certificate {
  unsigned e = 1;
  unsigned t = 1;
  std::uint64_t u = 0;
  std::uint64_t coset_rep_dlog = 0;
};

enum class Mode { kIff, kIfOnly };
const char* to_string(Mode mode);

struct ClassificationRecord {
  std::uint32_t a_dlog = 0;
  /// d * e: the sum lies in E_{de}.
  std::uint64_t predicted_de = 0;
  /// Absent when e = 1 (maximal degree (p-1)/d).
  std::optional<Certificate> certificate;
  Mode mode = Mode::kIfOnly;
  /// Every e > 1 dividing R that admits a certificate, ascending.
  std::vector<unsigned> applicable_e;
  /// Whether every applicable e divides the largest one.
  bool divisor_closed = true;
  /// Ground-truth stabilizer order, once verified.
  std::optional<std::uint64_t> actual_de;

  unsigned e() const { return certificate ? certificate->e : 1; }
};

/// u in [1, e-1] coprime to e with discrete_log(a) = u (q-1)/(e(p^t-1)) mod (q-1)/(p^t-1).
std::optional<std::uint64_t> coset_membership_dlog(const Parameters& params, const FieldSpec& field,
                                                   FieldElement a, unsigned e, unsigned t);

enum class ScanMode {
  /// Order of a in F_q^* / F_{p^t}^*, read off the discrete log.
  kQuotientOrder,
  /// Tries k = 1, 2, ... with explicit powers and subfield tests.
  kFullScan,
};

/// min{k >= 1 : a^k in F_{p^t}}.
std::uint64_t minimal_subfield_exponent(const FieldSpec& field, FieldElement a, unsigned t,
                                        ScanMode scan = ScanMode::kQuotientOrder);

inline bool minimal_exponent_membership(const FieldSpec& field, FieldElement a, unsigned e, unsigned t,
                                        ScanMode scan = ScanMode::kQuotientOrder) {
  return minimal_subfield_exponent(field, a, t, scan) == e;
}

/// Iff when distinctness is established, otherwise if-only.
Mode resolve_mode(const Parameters& params, const DistinctnessReport* exhaustive_check);

/// Scans e | R downward and certifies the first e > 1 that has a coset witness.
ClassificationRecord classify_point(const Parameters& params, const FieldSpec& field, FieldElement a, Mode mode);

/// Classifies every nonzero point, in ascending discrete-log order.
std::vector<ClassificationRecord> classify_field(const Parameters& params, const FieldSpec& field, Mode mode);

struct RationalPoints {
  /// False when (p-1)/d does not divide r; then no nonzero point is rational
  /// provided distinctness holds.
  bool possible = false;
  std::string reason;
  /// Discrete logs, ascending.
  std::vector<std::uint32_t> dlogs;
  /// True when the list is known to be complete (distinctness established).
  bool exhaustive = false;
};

RationalPoints rational_points(const Parameters& params, const FieldSpec& field, Mode mode);

/// Checks Tr_{F_{p^{et}}/F_{p^t}}(a) = 0 and Tr(a) = 0 for a certified point.
bool verify_trace_zero(const Parameters& params, const FieldSpec& field, const ClassificationRecord& record);

struct VerificationReport {
  std::vector<ClassificationRecord> rows;
  std::size_t points = 0;
  std::size_t iff_rows = 0;
  std::size_t iff_matches = 0;
  std::size_t if_only_rows = 0;
  std::size_t containment_ok = 0;
  std::size_t nonzero_trace_points = 0;
  std::size_t nonzero_trace_max_degree = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Compares predictions against the stabilizer of each table entry.
VerificationReport verify_against_ground_truth(const Parameters& params, const KlTable& table, Mode mode);

}  // namespace klsum
