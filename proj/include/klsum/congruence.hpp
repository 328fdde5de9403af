#pragma once

#include <cstdint>
#include <vector>

#include "klsum/number_theory.hpp"

namespace klsum {

// Second, independent derivation of the classified coset exponents: solve
// (p^s - 1) x = ((n+1)/d) (p^r - 1)/e  (mod p^r - 1) for each Frobenius
// shift s and collect the solutions, then compare with the closed form.

struct CongruenceInstance {
  std::uint64_t p = 0;
  unsigned r = 0;
  unsigned n = 0;
  std::uint64_t d = 0;
  std::uint64_t e = 0;
  unsigned s = 0;
  unsigned t = 0;        // gcd(r, s)
  unsigned r_prime = 0;  // r / t
  unsigned s_prime = 0;  // s / t
  BigInt c_st;           // (p^s - 1)/(p^t - 1)
  BigInt c_rt;           // (p^r - 1)/(p^t - 1)
};

/// Requires e > 1, 0 < s < r and gcd(e, (n+1)/d) = 1.
CongruenceInstance make_instance(std::uint64_t p, unsigned r, unsigned n, std::uint64_t e, unsigned s);

/// Unit x mod n with x = y (mod m), by scanning y, y+m, ..., y+(Q-1)m where
/// n = MQ and M collects the prime powers of n whose primes divide m.
std::uint64_t lemma4_lift(std::uint64_t n, std::uint64_t m, std::uint64_t y);

/// e | gcd((p-1)/d, r/t).
bool solvability(const CongruenceInstance& instance);

/// All x mod p^r - 1 solving the congruence for this s, ascending.
std::vector<BigInt> solve_congruence_4(const CongruenceInstance& instance);

/// {u C_{r,t}/e + v C_{r,t} : 1 <= u < e, gcd(u, e) = 1, 0 <= v <= p^t - 2}, ascending.
std::vector<BigInt> closed_form_solution_set(std::uint64_t p, unsigned r, unsigned n, std::uint64_t d,
                                             std::uint64_t e, unsigned t);

/// The s in [1, r-1] with gcd(r, s) = t.
std::vector<unsigned> shifts_with_gcd(unsigned r, unsigned t);

/// Union of solve_congruence_4 over shifts_with_gcd(r, t), ascending.
std::vector<BigInt> union_over_shifts(std::uint64_t p, unsigned r, unsigned n, std::uint64_t e, unsigned t);

/// s* in [1, e-1] with s' s* = 1 (mod e).
std::uint64_t shift_inverse(std::uint64_t s_prime, std::uint64_t e);

struct CstWitness {
  BigInt c_st;
  std::uint64_t residue = 0;  // c_st mod e
  std::uint64_t s_prime = 0;  // (s/t) mod e
  bool holds = false;
};

/// (p^s - 1)/(p^t - 1) = s/t (mod e), given p = 1 (mod e) and t | s.
CstWitness cst_residue_identity(std::uint64_t p, std::uint64_t e, unsigned s, unsigned t);

struct GridRow {
  std::uint64_t p = 0;
  unsigned r = 0;
  unsigned n = 0;
  std::uint64_t e = 0;
  unsigned t = 0;
  std::size_t union_size = 0;
  std::size_t closed_form_size = 0;
  bool equal = false;
};

/// Every admissible (e, t) for each (p, r, n): e > 1, e | (p-1)/d, t | r/e.
std::vector<GridRow> verification_grid(const std::vector<std::uint64_t>& primes, unsigned max_r, unsigned max_n);

}  // namespace klsum
