#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "klsum/number_theory.hpp"

namespace klsum {

/// An element of Z[zeta_p] in the power basis 1, zeta, ..., zeta^{p-2}.
///
/// The power basis is a Z-basis of Z[zeta_p], so two values are equal iff
/// their coefficient vectors are equal. Products and Galois images are
/// reduced with zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}).
class CycInt {
 public:
  /// Zero of Z[zeta_p].
  explicit CycInt(std::uint32_t p);
  CycInt(std::uint32_t p, std::vector<BigInt> coeffs);

  static CycInt rational(std::uint32_t p, const BigInt& value);
  /// zeta^k, k taken mod p.
  static CycInt root_power(std::uint32_t p, std::int64_t k);
  /// Reduces a redundant vector of p coefficients on zeta^0..zeta^{p-1}.
  static CycInt from_redundant(std::uint32_t p, std::vector<BigInt> redundant);

  std::uint32_t p() const { return p_; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  CycInt& operator+=(const CycInt& other);
  CycInt& operator-=(const CycInt& other);
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  CycInt operator-() const;

  friend bool operator==(const CycInt&, const CycInt&) = default;
  /// Lexicographic on (p, coeffs); lets CycInt key ordered containers.
  friend bool operator<(const CycInt& a, const CycInt& b);

  std::string to_string() const;

 private:
  void require_same_ring(const CycInt& other) const;

  std::uint32_t p_;
  std::vector<BigInt> coeffs_;
};

/// Order of the fixing subgroup of F_p^*; Q(x) = E_d has degree (p-1)/d.
struct SubfieldLabel {
  std::uint32_t d = 1;
  std::uint32_t p = 2;

  std::uint32_t degree() const { return (p - 1) / d; }
  friend bool operator==(const SubfieldLabel&, const SubfieldLabel&) = default;
};

/// sigma_i: zeta -> zeta^i, for 1 <= i <= p-1.
CycInt galois_apply(std::uint32_t i, const CycInt& x);

/// {i in F_p^* : sigma_i(x) = x}, sorted ascending.
std::vector<std::uint32_t> stabilizer(const CycInt& x);

/// d = |stabilizer(x)|, found by testing one generator per subgroup.
SubfieldLabel field_label(const CycInt& x);

/// The rational value of x when every non-constant coefficient is zero.
std::optional<BigInt> as_rational(const CycInt& x);
inline bool is_rational(const CycInt& x) { return as_rational(x).has_value(); }

/// Numerical value at zeta = exp(2 pi i / p). Advisory only: reports use it,
/// decisions never do.
struct ComplexApprox {
  std::complex<double> value;
  std::string real;
  std::string imag;
};
ComplexApprox complex_embed(const CycInt& x, unsigned digits);

}  // namespace klsum
