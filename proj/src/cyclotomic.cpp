#include "klsum/cyclotomic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace klsum {

namespace {

std::uint32_t reduce_exponent(std::int64_t k, std::uint32_t p) {
  std::int64_t m = k % static_cast<std::int64_t>(p);
  if (m < 0) m += p;
  return static_cast<std::uint32_t>(m);
}

}  // namespace

CycInt::CycInt(std::uint32_t p) : p_(p), coeffs_(p - 1) {
  if (!is_prime(p)) throw std::invalid_argument("CycInt: p must be prime");
}

CycInt::CycInt(std::uint32_t p, std::vector<BigInt> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
  if (!is_prime(p)) throw std::invalid_argument("CycInt: p must be prime");
  if (coeffs_.size() != p - 1) throw std::invalid_argument("CycInt: expected p-1 coefficients");
}

CycInt CycInt::rational(std::uint32_t p, const BigInt& value) {
  CycInt x(p);
  x.coeffs_[0] = value;
  return x;
}

CycInt CycInt::root_power(std::uint32_t p, std::int64_t k) {
  CycInt x(p);
  const std::uint32_t e = reduce_exponent(k, p);
  if (e == p - 1) {
    for (auto& c : x.coeffs_) c = -1;
  } else {
    x.coeffs_[e] = 1;
  }
  return x;
}

CycInt CycInt::from_redundant(std::uint32_t p, std::vector<BigInt> redundant) {
  if (redundant.size() != p) throw std::invalid_argument("from_redundant: expected p coefficients");
  const BigInt top = redundant[p - 1];
  redundant.pop_back();
  if (top != 0) {
    for (auto& c : redundant) c -= top;
  }
  return CycInt(p, std::move(redundant));
}

void CycInt::require_same_ring(const CycInt& other) const {
  if (p_ != other.p_) throw std::invalid_argument("CycInt: mismatched p");
}

CycInt& CycInt::operator+=(const CycInt& other) {
  require_same_ring(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& other) {
  require_same_ring(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

CycInt CycInt::operator-() const {
  CycInt out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
  a.require_same_ring(b);
  const std::uint32_t p = a.p_;
  std::vector<BigInt> acc(p);
  for (std::uint32_t i = 0; i + 1 < p; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::uint32_t j = 0; j + 1 < p; ++j) {
      if (b.coeffs_[j] == 0) continue;
      acc[(i + j) % p] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return CycInt::from_redundant(p, std::move(acc));
}

bool operator<(const CycInt& a, const CycInt& b) {
  if (a.p_ != b.p_) return a.p_ < b.p_;
  return std::lexicographical_compare(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin(), b.coeffs_.end());
}

std::string CycInt::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i];
  }
  os << ']';
  return os.str();
}

CycInt galois_apply(std::uint32_t i, const CycInt& x) {
  const std::uint32_t p = x.p();
  if (i % p == 0) throw std::invalid_argument("galois_apply: index must be a unit mod p");
  std::vector<BigInt> acc(p);
  const auto& c = x.coeffs();
  for (std::uint32_t k = 0; k + 1 < p; ++k) {
    acc[static_cast<std::uint64_t>(i % p) * k % p] = c[k];
  }
  return CycInt::from_redundant(p, std::move(acc));
}

SubfieldLabel field_label(const CycInt& x) {
  const std::uint32_t p = x.p();
  const std::uint32_t g = static_cast<std::uint32_t>(primitive_root(p));
  // The fixing subgroup is cyclic; its order is the largest divisor d of
  // p - 1 whose order-d generator fixes x.
  std::uint32_t best = 1;
  for (auto d : divisors(p - 1)) {
    const auto gen = static_cast<std::uint32_t>(mod_pow(g, (p - 1) / d, p));
    if (galois_apply(gen, x) == x) best = static_cast<std::uint32_t>(d);
  }
  return {best, p};
}

std::vector<std::uint32_t> stabilizer(const CycInt& x) {
  const std::uint32_t p = x.p();
  const SubfieldLabel label = field_label(x);
  const auto g = primitive_root(p);
  const auto gen = mod_pow(g, (p - 1) / label.d, p);
  std::vector<std::uint32_t> out;
  std::uint64_t cur = 1;
  for (std::uint32_t k = 0; k < label.d; ++k) {
    out.push_back(static_cast<std::uint32_t>(cur));
    cur = cur * gen % p;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<BigInt> as_rational(const CycInt& x) {
  const auto& c = x.coeffs();
  for (std::size_t k = 1; k < c.size(); ++k) {
    if (c[k] != 0) return std::nullopt;
  }
  return c[0];
}

ComplexApprox complex_embed(const CycInt& x, unsigned digits) {
  using Real = boost::multiprecision::cpp_dec_float_50;
  if (digits < 1) throw std::invalid_argument("complex_embed: precision must be at least 1");
  digits = std::min(digits, 45u);
  const Real two_pi = boost::multiprecision::atan(Real(1)) * 8;
  Real re = 0, im = 0;
  const auto& c = x.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    const Real angle = two_pi * k / x.p();
    const Real coeff(c[k].str());
    re += coeff * boost::multiprecision::cos(angle);
    im += coeff * boost::multiprecision::sin(angle);
  }
  ComplexApprox out;
  out.value = {re.convert_to<double>(), im.convert_to<double>()};
  out.real = re.str(digits, std::ios_base::fixed);
  out.imag = im.str(digits, std::ios_base::fixed);
  return out;
}

}  // namespace klsum
