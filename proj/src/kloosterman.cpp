#include "klsum/kloosterman.hpp"

#include <algorithm>
#include <map>
#include <thread>

namespace klsum {

KlTable::KlTable(FieldPtr field, unsigned n, CycInt zero_value, std::vector<CycInt> values)
    : field_(std::move(field)), n_(n), zero_value_(std::move(zero_value)), values_(std::move(values)) {
  if (values_.size() != field_->group_order()) {
    throw std::invalid_argument("KlTable: expected one value per nonzero element");
  }
}

const CycInt& KlTable::at(FieldElement a) const {
  if (a.is_zero()) return zero_value_;
  return values_[field_->discrete_log(a)];
}

CycInt psi(const FieldSpec& field, FieldElement a) {
  return CycInt::root_power(field.p(), field.absolute_trace(a));
}

CycInt kloosterman_direct(const FieldSpec& field, unsigned n, FieldElement a, std::uint64_t term_cap) {
  if (n < 1) throw std::invalid_argument("dimension n must be at least 1");
  std::uint64_t terms = 1;
  for (unsigned i = 0; i < n; ++i) {
    terms *= field.group_order();
    if (terms > term_cap) {
      throw CapExceeded("direct enumeration exceeds cap of " + std::to_string(term_cap) + " terms");
    }
  }
  const std::uint32_t p = field.p();
  std::vector<std::uint64_t> counts(p, 0);
  std::vector<FieldElement> nonzero;
  for (auto x : field.elements()) {
    if (!x.is_zero()) nonzero.push_back(x);
  }

  // Depth-first over tuples, carrying the running sum and product.
  auto recurse = [&](auto&& self, unsigned depth, FieldElement sum, FieldElement prod) -> void {
    if (depth == n) {
      const FieldElement total = field.add(sum, field.div(a, prod));
      ++counts[field.absolute_trace(total)];
      return;
    }
    for (auto x : nonzero) self(self, depth + 1, field.add(sum, x), field.mul(prod, x));
  };
  recurse(recurse, 0, field.zero(), field.one());

  std::vector<BigInt> redundant(counts.begin(), counts.end());
  return CycInt::from_redundant(p, std::move(redundant));
}

namespace {

// A level entry in redundant form: coefficients on zeta^0..zeta^{p-1}, with
// the positions holding nonzero values listed for sparse accumulation.
struct RedundantEntry {
  std::vector<BigInt> coeffs;
  std::vector<std::uint32_t> support;
};

void compact(RedundantEntry& entry) {
  entry.support.clear();
  for (std::uint32_t i = 0; i < entry.coeffs.size(); ++i) {
    if (entry.coeffs[i] != 0) entry.support.push_back(i);
  }
}

}  // namespace

KlTable kloosterman_sweep(FieldPtr field_ptr, unsigned n, unsigned threads) {
  if (n < 1) throw std::invalid_argument("dimension n must be at least 1");
  const FieldSpec& field = *field_ptr;
  const std::uint32_t p = field.p();
  const std::uint32_t order = field.group_order();
  threads = std::max(1u, threads);

  std::vector<std::uint32_t> trace_of_power(order);
  for (std::uint32_t k = 0; k < order; ++k) trace_of_power[k] = field.absolute_trace(field.gamma_pow(k));

  // Level 0: T_0(a) = psi(a); T_0(0) = 1.
  std::vector<RedundantEntry> level(order);
  for (std::uint32_t j = 0; j < order; ++j) {
    level[j].coeffs.assign(p, 0);
    level[j].coeffs[trace_of_power[j]] = 1;
    level[j].support = {trace_of_power[j]};
  }
  RedundantEntry zero_entry{std::vector<BigInt>(p, 0), {0}};
  zero_entry.coeffs[0] = 1;

  for (unsigned m = 1; m <= n; ++m) {
    std::vector<RedundantEntry> next(order);
    auto work = [&](std::uint32_t begin, std::uint32_t end) {
      for (std::uint32_t j = begin; j < end; ++j) {
        std::vector<BigInt> acc(p, 0);
        // T_m(gamma^j) = sum_k psi(gamma^k) T_{m-1}(gamma^{j-k})
        for (std::uint32_t k = 0; k < order; ++k) {
          const std::uint32_t t = trace_of_power[k];
          const RedundantEntry& prev = level[j >= k ? j - k : j + order - k];
          for (std::uint32_t i : prev.support) {
            std::uint32_t pos = i + t;
            if (pos >= p) pos -= p;
            acc[pos] += prev.coeffs[i];
          }
        }
        next[j].coeffs = std::move(acc);
        compact(next[j]);
      }
    };
    if (threads == 1 || order < 2 * threads) {
      work(0, order);
    } else {
      std::vector<std::jthread> pool;
      const std::uint32_t chunk = (order + threads - 1) / threads;
      for (std::uint32_t begin = 0; begin < order; begin += chunk) {
        pool.emplace_back(work, begin, std::min(order, begin + chunk));
      }
    }

    RedundantEntry next_zero{std::vector<BigInt>(p, 0), {}};
    for (std::uint32_t k = 0; k < order; ++k) {
      const std::uint32_t t = trace_of_power[k];
      for (std::uint32_t i : zero_entry.support) next_zero.coeffs[(i + t) % p] += zero_entry.coeffs[i];
    }
    compact(next_zero);

    level = std::move(next);
    zero_entry = std::move(next_zero);
  }

  std::vector<CycInt> values;
  values.reserve(order);
  for (auto& entry : level) values.push_back(CycInt::from_redundant(p, std::move(entry.coeffs)));
  return KlTable(std::move(field_ptr), n, CycInt::from_redundant(p, std::move(zero_entry.coeffs)),
                 std::move(values));
}

std::uint32_t orbit_representative(const FieldSpec& field, std::uint32_t k) {
  const std::uint64_t order = field.group_order();
  std::uint64_t best = k % order, cur = k % order;
  for (unsigned s = 1; s < field.r(); ++s) {
    cur = cur * field.p() % order;
    best = std::min(best, cur);
  }
  return static_cast<std::uint32_t>(best);
}

DistinctnessReport check_distinctness(const KlTable& table) {
  std::map<CycInt, std::vector<std::uint32_t>> by_value;
  const auto& values = table.nonzero_values();
  for (std::uint32_t k = 0; k < values.size(); ++k) by_value[values[k]].push_back(k);

  DistinctnessReport report;
  for (const auto& [value, points] : by_value) {
    (void)value;
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        if (orbit_representative(table.field(), points[i]) != orbit_representative(table.field(), points[j])) {
          report.violations.emplace_back(points[i], points[j]);
        }
      }
    }
  }
  report.holds = report.violations.empty();
  return report;
}

DistinctnessBounds distinctness_bounds(std::uint64_t p, unsigned r, unsigned n) {
  DistinctnessBounds b;
  const BigInt inner = 2 * big_pow(n + 1, 2 * r) + 1;
  b.fischer_threshold = inner * inner;
  b.fischer_bound_met = BigInt(p) > b.fischer_threshold;
  b.wan_threshold = BigInt(r - 1) * (n + 1) + 2;
  b.wan_bound_met = BigInt(p) >= b.wan_threshold;
  b.referee_threshold = BigInt(r) * (n + 1);
  b.referee_bound_met = BigInt(p) >= b.referee_threshold;
  b.guaranteed = n == 1 && r <= 4 && b.referee_bound_met;
  return b;
}

std::vector<std::uint32_t> frobenius_violations(const KlTable& table) {
  const FieldSpec& field = table.field();
  const std::uint64_t order = field.group_order();
  std::vector<std::uint32_t> bad;
  for (std::uint32_t k = 0; k < order; ++k) {
    std::uint64_t conj = k;
    for (unsigned s = 1; s < field.r(); ++s) {
      conj = conj * field.p() % order;
      if (table.at_dlog(static_cast<std::uint32_t>(conj)) != table.at_dlog(k)) {
        bad.push_back(k);
        break;
      }
    }
  }
  return bad;
}

std::vector<std::pair<std::uint32_t, std::int64_t>> equivariance_violations(const KlTable& table) {
  const FieldSpec& field = table.field();
  const std::uint32_t p = field.p();
  std::vector<std::pair<std::uint32_t, std::int64_t>> bad;
  for (std::uint32_t i = 1; i < p; ++i) {
    const FieldElement scale = field.pow(field.from_prime_field(i), static_cast<std::int64_t>(table.n()) + 1);
    if (galois_apply(i, table.at_zero()) != table.at_zero()) bad.emplace_back(i, -1);
    for (std::uint32_t k = 0; k < field.group_order(); ++k) {
      const FieldElement image = field.mul(scale, field.gamma_pow(k));
      if (galois_apply(i, table.at_dlog(k)) != table.at(image)) bad.emplace_back(i, k);
    }
  }
  return bad;
}

}  // namespace klsum
