#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "klsum/cyclotomic.hpp"
#include "klsum/finite_field.hpp"

namespace klsum {

/// Kl_n(q, a) for every a in F_q. Nonzero points are keyed by discrete log
/// (value at gamma^k lives at index k); the value at 0 is kept separately.
class KlTable {
 public:
  KlTable(FieldPtr field, unsigned n, CycInt zero_value, std::vector<CycInt> values);

  const FieldSpec& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  unsigned n() const { return n_; }
  std::size_t size() const { return values_.size() + 1; }

  const CycInt& at_zero() const { return zero_value_; }
  const CycInt& at_dlog(std::uint32_t k) const { return values_.at(k); }
  const CycInt& at(FieldElement a) const;
  const std::vector<CycInt>& nonzero_values() const { return values_; }

 private:
  FieldPtr field_;
  unsigned n_;
  CycInt zero_value_;
  std::vector<CycInt> values_;
};

/// zeta_p^{Tr(a)}.
CycInt psi(const FieldSpec& field, FieldElement a);

inline constexpr std::uint64_t kDefaultTermCap = 100'000'000;

/// Sum over all n-tuples of nonzero x_i of psi(x_1 + ... + x_n + a/(x_1...x_n)).
/// Throws CapExceeded when (q-1)^n exceeds term_cap.
CycInt kloosterman_direct(const FieldSpec& field, unsigned n, FieldElement a,
                          std::uint64_t term_cap = kDefaultTermCap);

/// Whole-field table via T_0(a) = psi(a), T_m(a) = sum_x psi(x) T_{m-1}(a/x).
/// Each level is a cyclic convolution over the exponent group; entries of a
/// level are split across `threads` workers.
KlTable kloosterman_sweep(FieldPtr field, unsigned n, unsigned threads = 1);

struct DistinctnessReport {
  bool holds = true;
  /// Nonzero points (as discrete logs) with equal values but different
  /// Frobenius orbits.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> violations;
};

/// Decides whether equal values at nonzero points force Frobenius-conjugate
/// arguments.
DistinctnessReport check_distinctness(const KlTable& table);

/// Smallest discrete log in the Frobenius orbit of gamma^k.
std::uint32_t orbit_representative(const FieldSpec& field, std::uint32_t k);

struct DistinctnessBounds {
  BigInt fischer_threshold;  // (2(n+1)^{2r} + 1)^2; met when p exceeds it
  bool fischer_bound_met = false;
  BigInt wan_threshold;  // (r-1)(n+1) + 2; met when p reaches it
  bool wan_bound_met = false;
  /// Wan's bound carries a side condition not checked here.
  bool wan_advisory_only = true;
  BigInt referee_threshold;  // r(n+1)
  bool referee_bound_met = false;
  /// n = 1, r <= 4 and p >= r(n+1): the range where the referee bound is
  /// known to hold without exceptional primes.
  bool guaranteed = false;
};

/// Sufficient conditions for distinctness. Never decides that it fails.
DistinctnessBounds distinctness_bounds(std::uint64_t p, unsigned r, unsigned n);

/// Points (as discrete logs) where Kl(a^{p^s}) != Kl(a) for some s.
std::vector<std::uint32_t> frobenius_violations(const KlTable& table);

/// Pairs (i, k) where sigma_i(Kl(gamma^k)) != Kl(i^{n+1} gamma^k); k = -1 stands
/// for a = 0.
std::vector<std::pair<std::uint32_t, std::int64_t>> equivariance_violations(const KlTable& table);

}  // namespace klsum
