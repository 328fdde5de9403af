#pragma once

// Brute-force reference implementations used only by tests. Nothing here
// touches the log tables, the linear trace form or the sweep.

#include <cstdint>
#include <map>
#include <vector>

#include "klsum/cyclotomic.hpp"

namespace klsum::oracle {

/// F_p[x]/(modulus) with schoolbook arithmetic on coefficient vectors.
class NaiveField {
 public:
  using Elem = std::vector<std::int64_t>;

  NaiveField(std::int64_t p, std::vector<std::uint32_t> modulus);

  std::int64_t p() const { return p_; }
  unsigned r() const { return r_; }
  /// Elements in packed-index order (c_0 least significant).
  const std::vector<Elem>& elements() const { return elements_; }

  Elem add(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(Elem a, std::uint64_t k) const;
  Elem inv(const Elem& a) const;  // by search
  /// a + a^p + ... + a^{p^{r-1}}, computed literally; returns the constant term.
  std::int64_t trace(const Elem& a) const;
  bool is_zero(const Elem& a) const;

 private:
  std::int64_t p_;
  unsigned r_;
  std::vector<std::int64_t> modulus_;
  std::vector<Elem> elements_;
};

/// Kl_n(q, a) by literal enumeration in NaiveField, with psi evaluated
/// through the literal trace.
CycInt kloosterman(const NaiveField& field, unsigned n, const NaiveField::Elem& a);

/// Multiplicative order by repeated multiplication.
std::uint64_t element_order(const NaiveField& field, const NaiveField::Elem& a);

/// All x in [0, modulus) with a x = b (mod modulus), by trying every x.
std::vector<std::uint64_t> solve_linear_brute(std::uint64_t a, std::uint64_t b, std::uint64_t modulus);

}  // namespace klsum::oracle
