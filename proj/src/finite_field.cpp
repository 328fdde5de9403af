#include "klsum/finite_field.hpp"

#include <algorithm>
#include <cmath>

namespace klsum {

namespace {

using Poly = std::vector<std::uint64_t>;  // coefficients mod p, constant first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inverse_mod_prime(std::uint64_t a, std::uint64_t p) { return mod_pow(a, p - 2, p); }

Poly poly_mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = inverse_mod_prime(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t factor = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + (p - factor) * m[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_mod(std::move(prod), m, p);
}

Poly poly_powmod(Poly base, BigInt e, const Poly& m, std::uint64_t p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (e > 0) {
    if ((e & 1) != 0) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Poly poly_sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

// Rabin's test: f of degree r is irreducible iff x^{p^r} = x mod f and
// gcd(x^{p^{r/l}} - x, f) = 1 for every prime l | r.
bool is_irreducible(const Poly& f, std::uint64_t p) {
  const unsigned r = static_cast<unsigned>(f.size() - 1);
  if (r == 1) return true;
  const Poly x{0, 1};
  if (poly_sub(poly_powmod(x, big_pow(p, r), f, p), x, p).size() != 0) return false;
  for (const auto& [ell, exponent] : factorize(r)) {
    (void)exponent;
    Poly h = poly_sub(poly_powmod(x, big_pow(p, static_cast<unsigned>(r / ell)), f, p), x, p);
    if (poly_gcd(f, h, p).size() != 1) return false;
  }
  return true;
}

}  // namespace

FieldPtr build_field(std::uint64_t p, unsigned r, const FieldOptions& options) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < r; ++i) {
    q *= p;
    if (q - 1 > options.max_group_order) {
      throw CapExceeded("field order exceeds cap: q - 1 > " + std::to_string(options.max_group_order));
    }
  }

  auto field = std::shared_ptr<FieldSpec>(new FieldSpec());
  field->p_ = static_cast<std::uint32_t>(p);
  field->r_ = r;
  field->q_ = static_cast<std::uint32_t>(q);

  // Monic modulus: scan non-leading coefficient vectors in packed order.
  std::uint64_t code = 0;
  for (std::uint64_t count = q; code < count; ++code) {
    Poly f(r + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < r; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[r] = 1;
    if (r > 1 && f[0] == 0) continue;  // divisible by x
    if (is_irreducible(f, p)) {
      field->modulus_.assign(f.begin(), f.end());
      break;
    }
  }
  if (field->modulus_.empty()) throw std::logic_error("no irreducible polynomial found");
  field->tag_ = (p << 32) ^ (std::uint64_t{r} << 26) ^ code;

  // Primitive element: smallest index whose order is exactly q - 1.
  const std::uint64_t order = q - 1;
  const auto order_factors = factorize(order);
  for (std::uint32_t idx = 1; idx < q; ++idx) {
    bool primitive = true;
    for (const auto& [ell, exponent] : order_factors) {
      (void)exponent;
      if (field->pow_index(idx, order / ell) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      field->gamma_ = field->from_index(idx);
      break;
    }
  }

  if (q <= options.log_table_limit) {
    field->exp_.resize(order);
    field->log_.assign(q, 0);
    std::uint32_t cur = 1;
    for (std::uint32_t k = 0; k < order; ++k) {
      field->exp_[k] = cur;
      field->log_[cur] = k;
      cur = field->mul_schoolbook(cur, field->gamma_.index());
    }
  } else {
    const auto step = static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(order))));
    field->bsgs_step_ = step;
    std::uint32_t cur = 1;
    for (std::uint32_t j = 0; j < step; ++j) {
      field->baby_steps_.emplace(cur, j);
      cur = field->mul_schoolbook(cur, field->gamma_.index());
    }
    field->giant_factor_ = field->pow_index(field->gamma_.index(), order - step % order);
  }

  // Tr(x^i) via the defining sum, then Tr is a linear form in the coefficients.
  field->basis_trace_.resize(r);
  for (unsigned i = 0; i < r; ++i) {
    std::vector<std::uint32_t> mono(r, 0);
    mono[i] = 1;
    const std::uint32_t xi = field->pack(mono);
    std::uint32_t acc = 0;
    std::uint32_t conj = xi;
    for (unsigned s = 0; s < r; ++s) {
      acc = field->add_index(acc, conj);
      conj = field->pow_index(conj, p);
    }
    field->basis_trace_[i] = acc;  // lies in F_p, so the packed index is the residue
  }
  return field;
}

void FieldSpec::check(FieldElement a) const {
  if (a.tag_ != tag_) throw std::invalid_argument("field element belongs to a different field");
}

std::uint32_t FieldSpec::pack(const std::vector<std::uint32_t>& coeffs) const {
  std::uint64_t idx = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) idx = idx * p_ + coeffs[i];
  return static_cast<std::uint32_t>(idx);
}

std::vector<std::uint32_t> FieldSpec::unpack(std::uint32_t index) const {
  std::vector<std::uint32_t> c(r_);
  for (unsigned i = 0; i < r_; ++i) {
    c[i] = index % p_;
    index /= p_;
  }
  return c;
}

FieldElement FieldSpec::from_index(std::uint64_t index) const {
  if (index >= q_) throw std::out_of_range("field element index out of range");
  return {static_cast<std::uint32_t>(index), tag_};
}

FieldElement FieldSpec::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
  if (coeffs.size() != r_) throw std::invalid_argument("coefficient vector must have length r");
  for (auto c : coeffs) {
    if (c >= p_) throw std::invalid_argument("coefficient out of range [0, p-1]");
  }
  return {pack(coeffs), tag_};
}

FieldElement FieldSpec::from_prime_field(std::int64_t c) const {
  std::int64_t m = c % static_cast<std::int64_t>(p_);
  if (m < 0) m += p_;
  return {static_cast<std::uint32_t>(m), tag_};
}

std::vector<std::uint32_t> FieldSpec::coeffs(FieldElement a) const {
  check(a);
  return unpack(a.index_);
}

std::vector<FieldElement> FieldSpec::elements() const {
  std::vector<FieldElement> out;
  out.reserve(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out.push_back({i, tag_});
  return out;
}

std::uint32_t FieldSpec::add_index(std::uint32_t a, std::uint32_t b) const {
  if (r_ == 1) return (a + b) % p_;
  std::uint32_t result = 0, scale = 1;
  for (unsigned i = 0; i < r_; ++i) {
    result += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return result;
}

std::uint32_t FieldSpec::mul_schoolbook(std::uint32_t a, std::uint32_t b) const {
  if (r_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  const auto ca = unpack(a), cb = unpack(b);
  std::vector<std::uint64_t> prod(2 * r_ - 1, 0);
  for (unsigned i = 0; i < r_; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p_;
  }
  // Reduce with x^r = -(c_0 + ... + c_{r-1} x^{r-1}).
  for (std::size_t k = prod.size(); k-- > r_;) {
    const std::uint64_t top = prod[k];
    if (top == 0) continue;
    prod[k] = 0;
    for (unsigned i = 0; i < r_; ++i) {
      prod[k - r_ + i] = (prod[k - r_ + i] + (p_ - modulus_[i]) % p_ * top) % p_;
    }
  }
  std::vector<std::uint32_t> out(r_);
  for (unsigned i = 0; i < r_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
  return pack(out);
}

std::uint32_t FieldSpec::pow_index(std::uint32_t a, std::uint64_t k) const {
  if (!log_.empty() && a != 0) {
    return exp_[static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1)) % (q_ - 1)];
  }
  std::uint32_t result = 1, base = a;
  while (k > 0) {
    if (k & 1) result = mul_schoolbook(result, base);
    base = mul_schoolbook(base, base);
    k >>= 1;
  }
  return result;
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  return {add_index(a.index_, b.index_), tag_};
}

FieldElement FieldSpec::neg(FieldElement a) const {
  check(a);
  auto c = unpack(a.index_);
  for (auto& x : c) x = (p_ - x) % p_;
  return {pack(c), tag_};
}

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
  check(a);
  check(b);
  if (a.index_ == 0 || b.index_ == 0) return zero();
  if (!log_.empty()) {
    std::uint32_t k = log_[a.index_] + log_[b.index_];
    if (k >= q_ - 1) k -= q_ - 1;
    return {exp_[k], tag_};
  }
  return {mul_schoolbook(a.index_, b.index_), tag_};
}

FieldElement FieldSpec::inv(FieldElement a) const {
  check(a);
  if (a.is_zero()) throw std::domain_error("inversion of zero");
  if (!log_.empty()) {
    const std::uint32_t k = log_[a.index_];
    return {exp_[k == 0 ? 0 : q_ - 1 - k], tag_};
  }
  return {pow_index(a.index_, q_ - 2), tag_};
}

FieldElement FieldSpec::pow(FieldElement a, const BigInt& k) const {
  check(a);
  if (a.is_zero()) {
    if (k < 0) throw std::domain_error("negative power of zero");
    return k == 0 ? one() : zero();
  }
  const BigInt reduced = mod_floor(k, BigInt(q_ - 1));
  return {pow_index(a.index_, reduced.convert_to<std::uint64_t>()), tag_};
}

FieldElement FieldSpec::gamma_pow(std::int64_t k) const {
  const std::int64_t order = q_ - 1;
  std::int64_t m = k % order;
  if (m < 0) m += order;
  if (!exp_.empty()) return {exp_[m], tag_};
  return {pow_index(gamma_.index_, static_cast<std::uint64_t>(m)), tag_};
}

FieldElement FieldSpec::frobenius(FieldElement a, unsigned s) const {
  check(a);
  std::uint32_t cur = a.index_;
  for (unsigned i = 0; i < s % r_; ++i) cur = pow_index(cur, p_);
  return {cur, tag_};
}

std::uint32_t FieldSpec::absolute_trace(FieldElement a) const {
  check(a);
  const auto c = unpack(a.index_);
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < r_; ++i) acc = (acc + std::uint64_t{c[i]} * basis_trace_[i]) % p_;
  return static_cast<std::uint32_t>(acc);
}

FieldElement FieldSpec::relative_trace(FieldElement a, unsigned e, unsigned t) const {
  check(a);
  if (e == 0 || t == 0 || r_ % (e * t) != 0) throw std::invalid_argument("relative_trace: e*t must divide r");
  if (!in_subfield(a, e * t)) throw std::invalid_argument("relative_trace: element is not in F_{p^{et}}");
  FieldElement acc = zero();
  FieldElement conj = a;
  for (unsigned j = 0; j < e; ++j) {
    acc = add(acc, conj);
    conj = frobenius(conj, t);
  }
  return acc;
}

std::uint32_t FieldSpec::dlog_bsgs(std::uint32_t a) const {
  std::uint32_t cur = a;
  const std::uint32_t order = q_ - 1;
  for (std::uint32_t i = 0; i <= order / bsgs_step_ + 1; ++i) {
    if (auto it = baby_steps_.find(cur); it != baby_steps_.end()) {
      return static_cast<std::uint32_t>((std::uint64_t{i} * bsgs_step_ + it->second) % order);
    }
    cur = mul_schoolbook(cur, giant_factor_);
  }
  throw std::logic_error("discrete_log: baby-step/giant-step failed");
}

std::uint32_t FieldSpec::discrete_log(FieldElement a) const {
  check(a);
  if (a.is_zero()) throw std::domain_error("discrete log of zero");
  if (!log_.empty()) return log_[a.index_];
  return dlog_bsgs(a.index_);
}

bool FieldSpec::in_subfield(FieldElement a, unsigned t) const {
  check(a);
  if (t == 0 || r_ % t != 0) throw std::invalid_argument("subfield degree t must divide r");
  return frobenius(a, t) == a;
}

FieldElement FieldSpec::subfield_generator(unsigned t) const {
  if (t == 0 || r_ % t != 0) throw std::invalid_argument("subfield degree t must divide r");
  const std::uint64_t sub_order = checked_pow(p_, t) - 1;
  return gamma_pow(static_cast<std::int64_t>((q_ - 1) / sub_order));
}

std::vector<FieldElement> FieldSpec::frobenius_orbit(FieldElement a) const {
  check(a);
  std::vector<FieldElement> orbit;
  FieldElement cur = a;
  for (unsigned s = 0; s < r_; ++s) {
    orbit.push_back(cur);
    cur = frobenius(cur, 1);
  }
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

}  // namespace klsum
