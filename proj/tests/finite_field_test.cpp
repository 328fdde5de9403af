#include "klsum/finite_field.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace klsum {
namespace {

using oracle::NaiveField;

NaiveField naive(const FieldSpec& f) { return NaiveField(f.p(), f.modulus()); }

FieldElement to_field(const FieldSpec& f, const NaiveField::Elem& x) {
  return f.from_coeffs(std::vector<std::uint32_t>(x.begin(), x.end()));
}

// F_p[x]/(f) is a field iff every nonzero residue is invertible.
bool brute_irreducible(std::int64_t p, const std::vector<std::uint32_t>& f) {
  NaiveField ring(p, f);
  std::vector<std::int64_t> one(ring.r(), 0);
  one[0] = 1;
  for (const auto& a : ring.elements()) {
    if (ring.is_zero(a)) continue;
    bool found = false;
    for (const auto& b : ring.elements()) {
      if (ring.mul(a, b) == one) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

TEST(BuildField, PrimeFieldCase) {
  auto f = build_field(5, 1);
  EXPECT_EQ(f->q(), 5u);
  EXPECT_EQ(f->modulus(), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(f->gamma(), f->from_prime_field(2));
}

TEST(BuildField, GammaOfF25HasFullOrder) {
  auto f = build_field(5, 2);
  EXPECT_EQ(f->q(), 25u);
  EXPECT_NE(f->pow(f->gamma(), 12), f->one());
  EXPECT_NE(f->pow(f->gamma(), 8), f->one());
  EXPECT_EQ(f->pow(f->gamma(), 24), f->one());

  // Exhaustive order check: gamma is the first element of order 24.
  const NaiveField ref = naive(*f);
  for (std::uint32_t idx = 1; idx < 25; ++idx) {
    const auto order = oracle::element_order(ref, ref.elements()[idx]);
    if (idx < f->gamma().index()) EXPECT_NE(order, 24u) << idx;
    if (idx == f->gamma().index()) EXPECT_EQ(order, 24u);
  }
}

TEST(BuildField, ModulusIsSmallestIrreducible) {
  const std::vector<std::pair<std::uint64_t, unsigned>> cases = {{2, 2}, {2, 3}, {2, 4}, {3, 2},
                                                                 {3, 3}, {5, 2}, {7, 2}, {5, 3}};
  for (auto [p, r] : cases) {
    auto f = build_field(p, r);
    const auto chosen = f->modulus();
    EXPECT_TRUE(brute_irreducible(p, chosen));
    std::uint64_t chosen_code = 0;
    for (unsigned i = r; i-- > 0;) chosen_code = chosen_code * p + chosen[i];
    for (std::uint64_t code = 0; code < chosen_code; ++code) {
      std::vector<std::uint32_t> g(r + 1);
      std::uint64_t c = code;
      for (unsigned i = 0; i < r; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      g[r] = 1;
      EXPECT_FALSE(brute_irreducible(p, g)) << "p=" << p << " r=" << r << " code=" << code;
    }
  }
}

TEST(BuildField, Deterministic) {
  auto a = build_field(3, 4);
  auto b = build_field(3, 4);
  EXPECT_EQ(a->modulus(), b->modulus());
  EXPECT_EQ(a->coeffs(a->gamma()), b->coeffs(b->gamma()));
}

TEST(BuildField, Errors) {
  EXPECT_THROW(build_field(4, 1), std::invalid_argument);
  EXPECT_THROW(build_field(5, 0), std::invalid_argument);
  EXPECT_THROW(build_field(2, 25), CapExceeded);
  FieldOptions small;
  small.max_group_order = 100;
  EXPECT_THROW(build_field(5, 3, small), CapExceeded);
  EXPECT_NO_THROW(build_field(5, 2, small));
}

TEST(Arithmetic, InverseExhaustiveF25) {
  auto f = build_field(5, 2);
  for (auto x : f->elements()) {
    if (x.is_zero()) continue;
    EXPECT_EQ(f->mul(f->inv(x), x), f->one());
  }
}

TEST(Arithmetic, PrimeFieldInverse) {
  auto f = build_field(5, 1);
  EXPECT_EQ(f->inv(f->from_prime_field(2)), f->from_prime_field(3));
}

TEST(Arithmetic, MatchesSchoolbookReference) {
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 2}, {3, 3}, {2, 5}, {7, 2}}) {
    auto f = build_field(p, r);
    const NaiveField ref = naive(*f);
    for (auto a : f->elements()) {
      for (auto b : f->elements()) {
        const auto& ra = ref.elements()[a.index()];
        const auto& rb = ref.elements()[b.index()];
        ASSERT_EQ(f->mul(a, b), to_field(*f, ref.mul(ra, rb)));
        ASSERT_EQ(f->add(a, b), to_field(*f, ref.add(ra, rb)));
      }
    }
  }
}

TEST(Arithmetic, TableFreePathAgrees) {
  FieldOptions no_tables;
  no_tables.log_table_limit = 0;
  auto plain = build_field(3, 4, no_tables);
  auto tabled = build_field(3, 4);
  ASSERT_FALSE(plain->has_log_table());
  ASSERT_TRUE(tabled->has_log_table());
  for (std::uint32_t i = 0; i < 81; i += 3) {
    for (std::uint32_t j = 0; j < 81; ++j) {
      EXPECT_EQ(plain->mul(plain->from_index(i), plain->from_index(j)).index(),
                tabled->mul(tabled->from_index(i), tabled->from_index(j)).index());
    }
  }
  for (std::uint32_t k = 0; k < 80; ++k) EXPECT_EQ(plain->discrete_log(plain->gamma_pow(k)), k);
}

TEST(Arithmetic, PowerAcceptsLargeAndNegativeExponents) {
  auto f = build_field(5, 2);
  const auto g = f->gamma();
  EXPECT_EQ(f->pow(g, 24), f->one());
  const BigInt huge = big_pow(10, 30);
  EXPECT_EQ(f->pow(g, huge), f->gamma_pow(static_cast<std::int64_t>((huge % 24).convert_to<std::uint64_t>())));
  EXPECT_EQ(f->pow(g, -1), f->inv(g));
  EXPECT_EQ(f->pow(f->zero(), 0), f->one());
  EXPECT_EQ(f->pow(f->zero(), 5), f->zero());
  EXPECT_THROW(f->pow(f->zero(), -1), std::domain_error);
}

TEST(Arithmetic, Errors) {
  auto f = build_field(5, 2);
  auto other = build_field(7, 2);
  EXPECT_THROW(f->inv(f->zero()), std::domain_error);
  EXPECT_THROW(f->add(f->one(), other->one()), std::invalid_argument);
  EXPECT_THROW(f->mul(f->gamma(), other->gamma()), std::invalid_argument);
  EXPECT_THROW(f->from_coeffs({5, 0}), std::invalid_argument);
  EXPECT_THROW(f->from_coeffs({1}), std::invalid_argument);
}

TEST(Trace, PrimeFieldIsIdentity) {
  auto f = build_field(7, 1);
  for (auto a : f->elements()) EXPECT_EQ(f->absolute_trace(a), a.index());
}

TEST(Trace, KernelSizeF25) {
  auto f = build_field(5, 2);
  int zeros = 0;
  std::vector<int> counts(5, 0);
  for (auto a : f->elements()) {
    zeros += f->absolute_trace(a) == 0;
    ++counts[f->absolute_trace(a)];
  }
  EXPECT_EQ(zeros, 5);
  // Every residue is hit equally often, so sum zeta^{Tr(a)} = 5 (1 + zeta + ... + zeta^4) = 0.
  for (int c : counts) EXPECT_EQ(c, 5);
}

TEST(Trace, MatchesDefiningSum) {
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 2}, {3, 4}, {2, 6}, {7, 3}, {5, 3}}) {
    auto f = build_field(p, r);
    const NaiveField ref = naive(*f);
    for (auto a : f->elements()) {
      ASSERT_EQ(f->absolute_trace(a), ref.trace(ref.elements()[a.index()])) << p << "^" << r;
    }
  }
}

TEST(Trace, LinearOverPrimeField) {
  std::mt19937_64 rng(7);
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 4}, {3, 5}, {11, 2}, {2, 8}}) {
    auto f = build_field(p, r);
    std::uniform_int_distribution<std::uint32_t> pick(0, f->q() - 1);
    for (int trial = 0; trial < 500; ++trial) {
      const auto a = f->from_index(pick(rng));
      const auto b = f->from_index(pick(rng));
      const auto alpha = static_cast<std::uint32_t>(pick(rng) % p);
      const auto lhs = f->absolute_trace(f->add(f->mul(f->from_prime_field(alpha), a), b));
      EXPECT_EQ(lhs, (alpha * f->absolute_trace(a) + f->absolute_trace(b)) % p);
    }
  }
}

TEST(RelativeTrace, Examples) {
  auto f = build_field(5, 2);
  for (auto a : f->elements()) {
    EXPECT_EQ(f->relative_trace(a, 1, 2), a);
    EXPECT_EQ(f->relative_trace(a, 2, 1), f->from_prime_field(f->absolute_trace(a)));
  }
  const auto a = f->gamma_pow(3);
  EXPECT_TRUE(f->relative_trace(a, 2, 1).is_zero());
  EXPECT_TRUE(f->add(a, f->pow(a, 5)).is_zero());
}

TEST(RelativeTrace, ProductFormAndTransitivity) {
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 4}, {2, 6}, {3, 4}, {7, 2}}) {
    auto f = build_field(p, r);
    for (unsigned t = 1; t <= r; ++t) {
      if (r % t != 0) continue;
      for (unsigned e = 1; e * t <= r; ++e) {
        if (r % (e * t) != 0) continue;
        const BigInt pt = big_pow(p, t);
        for (auto a : f->elements()) {
          if (!f->in_subfield(a, e * t)) continue;
          const auto rel = f->relative_trace(a, e, t);
          ASSERT_TRUE(f->in_subfield(rel, t));
          if (a.is_zero()) continue;
          // a (1 + a^{p^t - 1} + ... + a^{p^{t(e-1)} - 1})
          auto bracket = f->zero();
          BigInt ptj = 1;
          for (unsigned j = 0; j < e; ++j) {
            bracket = f->add(bracket, f->pow(a, ptj - 1));
            ptj *= pt;
          }
          ASSERT_EQ(rel, f->mul(a, bracket));
        }
      }
      // Tr = Tr_{F_{p^t}/F_p} o Tr_{F_q/F_{p^t}}
      for (auto a : f->elements()) {
        const auto down = f->relative_trace(a, r / t, t);
        ASSERT_EQ(f->relative_trace(down, t, 1), f->from_prime_field(f->absolute_trace(a)));
      }
    }
  }
}

TEST(RelativeTrace, Errors) {
  auto f = build_field(5, 4);
  EXPECT_THROW(f->relative_trace(f->gamma(), 3, 1), std::invalid_argument);
  EXPECT_THROW(f->relative_trace(f->gamma(), 2, 1), std::invalid_argument);  // gamma is not in F_25
}

TEST(DiscreteLog, Examples) {
  auto f = build_field(5, 1);
  EXPECT_EQ(f->discrete_log(f->gamma()), 1u);
  EXPECT_EQ(f->discrete_log(f->one()), 0u);
  EXPECT_EQ(f->discrete_log(f->from_prime_field(4)), 2u);
  EXPECT_THROW(f->discrete_log(f->zero()), std::domain_error);
}

TEST(DiscreteLog, RoundTripExhaustive) {
  for (auto [p, r] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 4}, {2, 10}, {13, 2}}) {
    auto f = build_field(p, r);
    for (auto a : f->elements()) {
      if (a.is_zero()) continue;
      ASSERT_EQ(f->gamma_pow(f->discrete_log(a)), a);
    }
  }
}

TEST(Subfield, Membership) {
  auto f = build_field(5, 2);
  EXPECT_TRUE(f->in_subfield(f->zero(), 1));
  EXPECT_TRUE(f->in_subfield(f->zero(), 2));
  EXPECT_TRUE(f->in_subfield(f->subfield_generator(1), 1));
  int count = 0;
  for (auto a : f->elements()) count += f->in_subfield(a, 1);
  EXPECT_EQ(count, 5);
  EXPECT_THROW(f->in_subfield(f->one(), 3), std::invalid_argument);

  auto g = build_field(2, 6);
  for (unsigned t : {1u, 2u, 3u, 6u}) {
    int members = 0;
    for (auto a : g->elements()) members += g->in_subfield(a, t);
    EXPECT_EQ(members, 1 << t);
    EXPECT_TRUE(g->in_subfield(g->subfield_generator(t), t));
  }
}

TEST(FrobeniusOrbit, Sizes) {
  auto f = build_field(5, 2);
  EXPECT_EQ(f->frobenius_orbit(f->zero()), std::vector<FieldElement>{f->zero()});
  for (auto a : f->elements()) {
    const auto orbit = f->frobenius_orbit(a);
    EXPECT_EQ(orbit.size(), f->in_subfield(a, 1) ? 1u : 2u);
  }
  auto g = build_field(2, 6);
  for (auto a : g->elements()) {
    const auto orbit = g->frobenius_orbit(a);
    EXPECT_EQ(6 % orbit.size(), 0u);
    for (auto b : orbit) EXPECT_EQ(g->absolute_trace(b), g->absolute_trace(a));
  }
}

}  // namespace
}  // namespace klsum
