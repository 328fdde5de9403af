#include "klsum/congruence.hpp"

#include <algorithm>
#include <stdexcept>

namespace klsum {

namespace {

BigInt big_gcd(BigInt a, BigInt b) {
  while (b != 0) {
    BigInt t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

void sort_unique(std::vector<BigInt>& xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

}  // namespace

CongruenceInstance make_instance(std::uint64_t p, unsigned r, unsigned n, std::uint64_t e, unsigned s) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (e <= 1) throw std::invalid_argument("e must exceed 1");
  if (s == 0 || s >= r) throw std::invalid_argument("s must lie in [1, r-1]");
  CongruenceInstance in;
  in.p = p;
  in.r = r;
  in.n = n;
  in.d = gcd(n + 1, p - 1);
  in.e = e;
  in.s = s;
  in.t = static_cast<unsigned>(gcd(r, s));
  in.r_prime = r / in.t;
  in.s_prime = s / in.t;
  if (gcd(e, (n + 1) / in.d) != 1) throw std::invalid_argument("gcd(e, (n+1)/d) must be 1");
  const BigInt base = big_pow(p, in.t) - 1;
  in.c_st = (big_pow(p, s) - 1) / base;
  in.c_rt = (big_pow(p, r) - 1) / base;
  return in;
}

std::uint64_t lemma4_lift(std::uint64_t n, std::uint64_t m, std::uint64_t y) {
  if (m == 0 || n == 0 || n % m != 0) throw std::invalid_argument("lemma4_lift: m must divide n");
  y %= m;
  if (gcd(y, m) != 1) throw std::invalid_argument("lemma4_lift: y must be a unit mod m");
  std::uint64_t big_m = 1;
  for (const auto& [prime, exponent] : factorize(n)) {
    if (m % prime == 0) big_m *= checked_pow(prime, exponent);
  }
  const std::uint64_t cofactor = n / big_m;
  for (std::uint64_t i = 0; i < cofactor; ++i) {
    const std::uint64_t candidate = y + i * m;
    if (gcd(candidate, n) == 1) return candidate;
  }
  throw std::logic_error("lemma4_lift: no unit found in the scan");
}

bool solvability(const CongruenceInstance& in) {
  const std::uint64_t bound = gcd((in.p - 1) / in.d, in.r_prime);
  return bound % in.e == 0;
}

std::vector<BigInt> solve_congruence_4(const CongruenceInstance& in) {
  const BigInt modulus = big_pow(in.p, in.r) - 1;
  if (modulus % in.e != 0) throw std::invalid_argument("solve_congruence_4: e must divide p^r - 1");
  const BigInt lhs = big_pow(in.p, in.s) - 1;
  const BigInt rhs = BigInt((in.n + 1) / in.d) * (modulus / in.e);
  const BigInt g = big_gcd(lhs, modulus);
  if (rhs % g != 0) return {};
  // Divide through by g = p^t - 1 and invert C_{s,t} modulo C_{r,t}.
  const BigInt reduced_modulus = modulus / g;
  const BigInt x0 = mod_floor((rhs / g) * mod_inverse(lhs / g, reduced_modulus), reduced_modulus);
  std::vector<BigInt> out;
  for (BigInt k = 0; k < g; ++k) out.push_back(x0 + k * reduced_modulus);
  return out;
}

std::vector<BigInt> closed_form_solution_set(std::uint64_t p, unsigned r, unsigned n, std::uint64_t d,
                                             std::uint64_t e, unsigned t) {
  (void)n;
  if (e <= 1 || t == 0 || r % t != 0) throw std::invalid_argument("closed form: need e > 1 and t | r");
  if (gcd((p - 1) / d, r / t) % e != 0) throw std::invalid_argument("closed form: e must divide gcd((p-1)/d, r/t)");
  const BigInt sub_order = big_pow(p, t) - 1;
  const BigInt c_rt = (big_pow(p, r) - 1) / sub_order;
  const BigInt step = c_rt / e;
  std::vector<BigInt> out;
  for (std::uint64_t u = 1; u < e; ++u) {
    if (gcd(u, e) != 1) continue;
    for (BigInt v = 0; v < sub_order; ++v) out.push_back(u * step + v * c_rt);
  }
  sort_unique(out);
  return out;
}

std::vector<unsigned> shifts_with_gcd(unsigned r, unsigned t) {
  std::vector<unsigned> out;
  for (unsigned s = 1; s < r; ++s) {
    if (gcd(r, s) == t) out.push_back(s);
  }
  return out;
}

std::vector<BigInt> union_over_shifts(std::uint64_t p, unsigned r, unsigned n, std::uint64_t e, unsigned t) {
  std::vector<BigInt> out;
  for (unsigned s : shifts_with_gcd(r, t)) {
    const auto part = solve_congruence_4(make_instance(p, r, n, e, s));
    out.insert(out.end(), part.begin(), part.end());
  }
  sort_unique(out);
  return out;
}

std::uint64_t shift_inverse(std::uint64_t s_prime, std::uint64_t e) {
  return mod_inverse(BigInt(s_prime), BigInt(e)).convert_to<std::uint64_t>();
}

CstWitness cst_residue_identity(std::uint64_t p, std::uint64_t e, unsigned s, unsigned t) {
  if (e == 0 || p % e != 1 % e) throw std::invalid_argument("cst identity: requires p = 1 (mod e)");
  if (t == 0 || s % t != 0) throw std::invalid_argument("cst identity: requires t | s");
  CstWitness w;
  w.c_st = (big_pow(p, s) - 1) / (big_pow(p, t) - 1);
  w.residue = (w.c_st % e).convert_to<std::uint64_t>();
  w.s_prime = (s / t) % e;
  w.holds = w.residue == w.s_prime;
  return w;
}

std::vector<GridRow> verification_grid(const std::vector<std::uint64_t>& primes, unsigned max_r, unsigned max_n) {
  std::vector<GridRow> rows;
  for (auto p : primes) {
    for (unsigned r = 1; r <= max_r; ++r) {
      for (unsigned n = 1; n <= max_n; ++n) {
        const std::uint64_t d = gcd(n + 1, p - 1);
        for (auto e : divisors((p - 1) / d)) {
          if (e == 1 || r % e != 0) continue;
          for (auto t64 : divisors(r / e)) {
            const auto t = static_cast<unsigned>(t64);
            const auto from_shifts = union_over_shifts(p, r, n, e, t);
            const auto closed = closed_form_solution_set(p, r, n, d, e, t);
            rows.push_back({p, r, n, e, t, from_shifts.size(), closed.size(), from_shifts == closed});
          }
        }
      }
    }
  }
  return rows;
}

}  // namespace klsum
