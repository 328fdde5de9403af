#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace klsum {

using BigInt = boost::multiprecision::cpp_int;

bool is_prime(std::uint64_t n);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// Exact integer power. Throws std::overflow_error if the result does not fit.
std::uint64_t checked_pow(std::uint64_t base, unsigned exponent);

BigInt big_pow(std::uint64_t base, unsigned exponent);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

/// Trial division; intended for arguments below 2^32 or so.
std::vector<PrimePower> factorize(std::uint64_t n);

/// Positive divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus);

/// Multiplicative order of a modulo m; requires gcd(a, m) = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);

/// Smallest primitive root modulo the prime p.
std::uint64_t primitive_root(std::uint64_t p);

/// Inverse of a modulo m via extended gcd, normalized to [0, m). Throws if not invertible.
BigInt mod_inverse(const BigInt& a, const BigInt& m);

/// Non-negative residue of a modulo m (m > 0).
BigInt mod_floor(const BigInt& a, const BigInt& m);

}  // namespace klsum
