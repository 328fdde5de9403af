#include "klsum/classifier.hpp"

#include <algorithm>
#include <sstream>

namespace klsum {

namespace {

// (q-1)/(p^t-1)
std::uint64_t subfield_index(const FieldSpec& field, unsigned t) {
  return field.group_order() / (checked_pow(field.p(), t) - 1);
}

std::string point_name(std::uint32_t dlog) { return "a=gamma^" + std::to_string(dlog); }

}  // namespace

const char* to_string(Mode mode) { return mode == Mode::kIff ? "iff" : "if-only"; }

Parameters derive_parameters(std::uint64_t p, unsigned r, unsigned n) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (r < 1) throw std::invalid_argument("r must be at least 1");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  Parameters params;
  params.p = p;
  params.r = r;
  params.n = n;
  params.d = gcd(n + 1, p - 1);
  params.R = gcd((p - 1) / params.d, r);
  return params;
}

std::optional<std::uint64_t> coset_membership_dlog(const Parameters& params, const FieldSpec& field,
                                                   FieldElement a, unsigned e, unsigned t) {
  if (a.is_zero()) throw std::invalid_argument("coset membership: a must be nonzero");
  if (e <= 1 || params.R % e != 0) throw std::invalid_argument("coset membership: need e > 1 with e | R");
  if (t == 0 || (params.r / e) % t != 0) throw std::invalid_argument("coset membership: need t | r/e");
  const std::uint64_t index = subfield_index(field, t);
  const std::uint64_t step = index / e;
  const std::uint64_t residue = field.discrete_log(a) % index;
  if (residue % step != 0) return std::nullopt;
  const std::uint64_t u = residue / step;
  if (u == 0 || gcd(u, e) != 1) return std::nullopt;
  return u;
}

std::uint64_t minimal_subfield_exponent(const FieldSpec& field, FieldElement a, unsigned t, ScanMode scan) {
  if (a.is_zero()) throw std::invalid_argument("minimal exponent: a must be nonzero");
  if (t == 0 || field.r() % t != 0) throw std::invalid_argument("minimal exponent: t must divide r");
  if (scan == ScanMode::kQuotientOrder) {
    const std::uint64_t index = subfield_index(field, t);
    return index / gcd(field.discrete_log(a) % index, index);
  }
  FieldElement power = a;
  for (std::uint64_t k = 1; k <= field.group_order(); ++k) {
    if (field.in_subfield(power, t)) return k;
    power = field.mul(power, a);
  }
  throw std::logic_error("minimal exponent: full scan found no exponent");
}

Mode resolve_mode(const Parameters& params, const DistinctnessReport* exhaustive_check) {
  if (exhaustive_check != nullptr) return exhaustive_check->holds ? Mode::kIff : Mode::kIfOnly;
  return distinctness_bounds(params.p, params.r, params.n).guaranteed ? Mode::kIff : Mode::kIfOnly;
}

ClassificationRecord classify_point(const Parameters& params, const FieldSpec& field, FieldElement a, Mode mode) {
  if (a.is_zero()) throw std::invalid_argument("classify_point: a must be nonzero");
  if (field.p() != params.p || field.r() != params.r) throw std::invalid_argument("classify_point: field mismatch");
  ClassificationRecord record;
  record.a_dlog = field.discrete_log(a);
  record.mode = mode;

  const auto candidates = divisors(params.R);
  for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
    const auto e = static_cast<unsigned>(*it);
    if (e == 1) break;
    for (auto t64 : divisors(params.r / e)) {
      const auto t = static_cast<unsigned>(t64);
      if (auto u = coset_membership_dlog(params, field, a, e, t)) {
        if (!record.certificate) {
          const std::uint64_t index = subfield_index(field, t);
          record.certificate = Certificate{e, t, *u, *u * (index / e)};
        }
        record.applicable_e.push_back(e);
        break;
      }
    }
  }
  std::reverse(record.applicable_e.begin(), record.applicable_e.end());
  const unsigned e_max = record.e();
  record.divisor_closed = std::all_of(record.applicable_e.begin(), record.applicable_e.end(),
                                      [e_max](unsigned e) { return e_max % e == 0; });
  record.predicted_de = params.d * e_max;
  return record;
}

std::vector<ClassificationRecord> classify_field(const Parameters& params, const FieldSpec& field, Mode mode) {
  std::vector<ClassificationRecord> out;
  out.reserve(field.group_order());
  for (std::uint32_t k = 0; k < field.group_order(); ++k) {
    out.push_back(classify_point(params, field, field.gamma_pow(k), mode));
  }
  return out;
}

RationalPoints rational_points(const Parameters& params, const FieldSpec& field, Mode mode) {
  RationalPoints out;
  const std::uint64_t target = params.max_degree();
  // Both the empty answer and the list rely on distinctness.
  out.exhaustive = mode == Mode::kIff;
  if (params.r % target != 0) {
    out.reason = "no rational values possible: (p-1)/d does not divide r";
    return out;
  }
  out.possible = true;
  const auto ts = divisors(params.d * params.r / (params.p - 1));
  for (std::uint32_t k = 0; k < field.group_order(); ++k) {
    const FieldElement a = field.gamma_pow(k);
    for (auto t : ts) {
      if (minimal_subfield_exponent(field, a, static_cast<unsigned>(t)) == target) {
        out.dlogs.push_back(k);
        break;
      }
    }
  }
  return out;
}

bool verify_trace_zero(const Parameters& params, const FieldSpec& field, const ClassificationRecord& record) {
  (void)params;
  if (!record.certificate) throw std::invalid_argument("verify_trace_zero: record has no certificate");
  const auto& cert = *record.certificate;
  const FieldElement a = field.gamma_pow(record.a_dlog);
  return field.relative_trace(a, cert.e, cert.t).is_zero() && field.absolute_trace(a) == 0;
}

VerificationReport verify_against_ground_truth(const Parameters& params, const KlTable& table, Mode mode) {
  const FieldSpec& field = table.field();
  if (field.p() != params.p || field.r() != params.r || table.n() != params.n) {
    throw std::invalid_argument("verify: table does not match parameters");
  }
  VerificationReport report;
  report.rows = classify_field(params, field, mode);
  report.points = report.rows.size();
  for (auto& row : report.rows) {
    const std::uint64_t actual = field_label(table.at_dlog(row.a_dlog)).d;
    row.actual_de = actual;
    if (row.mode == Mode::kIff) {
      ++report.iff_rows;
      if (actual == row.predicted_de) {
        ++report.iff_matches;
      } else {
        std::ostringstream os;
        os << point_name(row.a_dlog) << ": predicted E_" << row.predicted_de << " but generated field is E_"
           << actual;
        report.failures.push_back(os.str());
      }
    } else {
      ++report.if_only_rows;
      if (actual % row.predicted_de == 0) {
        ++report.containment_ok;
      } else {
        std::ostringstream os;
        os << point_name(row.a_dlog) << ": value lies outside predicted E_" << row.predicted_de << " (actual E_"
           << actual << ")";
        report.failures.push_back(os.str());
      }
    }
    if (!row.divisor_closed) {
      report.failures.push_back(point_name(row.a_dlog) + ": applicable e values are not divisor-closed");
    }
    if (field.absolute_trace(field.gamma_pow(row.a_dlog)) != 0) {
      ++report.nonzero_trace_points;
      if (actual == params.d) {
        ++report.nonzero_trace_max_degree;
      } else {
        report.failures.push_back(point_name(row.a_dlog) + ": nonzero trace but degree below (p-1)/d");
      }
    }
  }
  return report;
}

}  // namespace klsum
