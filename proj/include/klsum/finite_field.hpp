#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "klsum/number_theory.hpp"

namespace klsum {

/// Raised when a requested size exceeds a configured cap (field order,
/// enumeration terms).
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An element of F_{p^r} in polynomial basis. The packed index is
/// sum c_i p^i with c_0 the constant coefficient, so index order is the
/// "discrete representation" order used for deterministic choices.
class FieldElement {
 public:
  FieldElement() = default;

  std::uint32_t index() const { return index_; }
  bool is_zero() const { return index_ == 0; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
  friend auto operator<=>(const FieldElement& a, const FieldElement& b) {
    return a.index_ <=> b.index_;
  }

 private:
  friend class FieldSpec;
  FieldElement(std::uint32_t index, std::uint64_t tag) : index_(index), tag_(tag) {}

  std::uint32_t index_ = 0;
  std::uint64_t tag_ = 0;
};

struct FieldOptions {
  /// Construction is refused when q - 1 exceeds this.
  std::uint64_t max_group_order = std::uint64_t{1} << 24;
  /// Full log/antilog tables are built when q does not exceed this;
  /// above it multiplication is schoolbook and logs use baby-step/giant-step.
  std::uint64_t log_table_limit = std::uint64_t{1} << 20;
};

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Builds F_{p^r} with the smallest monic irreducible modulus (ordered by
/// the packed integer of its non-leading coefficients) and the smallest
/// primitive element by packed index.
FieldPtr build_field(std::uint64_t p, unsigned r, const FieldOptions& options = {});

/// A concrete, immutable realization of F_{p^r}.
class FieldSpec {
 public:
  std::uint32_t p() const { return p_; }
  unsigned r() const { return r_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t group_order() const { return q_ - 1; }
  /// Monic modulus coefficients c_0..c_r (c_r = 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  FieldElement gamma() const { return gamma_; }
  bool has_log_table() const { return !log_.empty(); }

  FieldElement zero() const { return {0, tag_}; }
  FieldElement one() const { return {1, tag_}; }
  FieldElement from_index(std::uint64_t index) const;
  FieldElement from_coeffs(const std::vector<std::uint32_t>& coeffs) const;
  /// Embeds c in F_p (taken mod p).
  FieldElement from_prime_field(std::int64_t c) const;
  std::vector<std::uint32_t> coeffs(FieldElement a) const;

  /// All q elements in index order.
  std::vector<FieldElement> elements() const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  /// Exponent of any size and sign; negative exponents require a != 0.
  FieldElement pow(FieldElement a, const BigInt& k) const;
  FieldElement pow(FieldElement a, std::int64_t k) const { return pow(a, BigInt(k)); }
  /// gamma^k with k taken mod q - 1.
  FieldElement gamma_pow(std::int64_t k) const;

  /// a^{p^s}.
  FieldElement frobenius(FieldElement a, unsigned s = 1) const;

  std::uint32_t absolute_trace(FieldElement a) const;
  /// Tr_{F_{p^{et}}/F_{p^t}}(a) as the sum a + a^{p^t} + ... + a^{p^{t(e-1)}}.
  FieldElement relative_trace(FieldElement a, unsigned e, unsigned t) const;

  /// Exponent in [0, q-2] with gamma^k = a.
  std::uint32_t discrete_log(FieldElement a) const;

  /// a^{p^t} == a; t must divide r.
  bool in_subfield(FieldElement a, unsigned t) const;
  /// gamma^{(q-1)/(p^t-1)}, a primitive element of F_{p^t}.
  FieldElement subfield_generator(unsigned t) const;

  /// {a^{p^s} : 0 <= s < r}, sorted by index.
  std::vector<FieldElement> frobenius_orbit(FieldElement a) const;

 private:
  friend FieldPtr build_field(std::uint64_t, unsigned, const FieldOptions&);
  FieldSpec() = default;

  void check(FieldElement a) const;
  std::uint32_t pack(const std::vector<std::uint32_t>& coeffs) const;
  std::vector<std::uint32_t> unpack(std::uint32_t index) const;
  std::uint32_t add_index(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul_schoolbook(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t pow_index(std::uint32_t a, std::uint64_t k) const;
  std::uint32_t dlog_bsgs(std::uint32_t a) const;

  std::uint32_t p_ = 0;
  unsigned r_ = 0;
  std::uint32_t q_ = 0;
  std::uint64_t tag_ = 0;
  std::vector<std::uint32_t> modulus_;
  FieldElement gamma_;
  std::vector<std::uint32_t> basis_trace_;  // Tr(x^i), i < r
  std::vector<std::uint32_t> exp_;          // exp_[k] = index of gamma^k
  std::vector<std::uint32_t> log_;          // log_[index] = k (index 0 unused)
  // Baby-step/giant-step state when no full table is built.
  std::uint32_t bsgs_step_ = 0;
  std::unordered_map<std::uint32_t, std::uint32_t> baby_steps_;
  std::uint32_t giant_factor_ = 0;  // gamma^{-bsgs_step_}
};

}  // namespace klsum
