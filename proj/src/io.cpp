#include "klsum/io.hpp"

#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace klsum {

Json field_to_json(const FieldSpec& field) {
  Json j;
  j["p"] = field.p();
  j["r"] = field.r();
  j["modulus"] = field.modulus();
  j["gamma"] = field.coeffs(field.gamma());
  return j;
}

Json cycint_to_json(const CycInt& x) {
  Json arr = Json::array();
  for (const auto& c : x.coeffs()) {
    if (c > std::numeric_limits<std::int64_t>::max() || c < std::numeric_limits<std::int64_t>::min()) {
      throw std::overflow_error("coefficient exceeds 64-bit JSON integer range; use CSV");
    }
    arr.push_back(c.convert_to<std::int64_t>());
  }
  return arr;
}

namespace {

void write_row(std::ostream& os, const std::string& label, const CycInt& x, std::optional<unsigned> embed_digits) {
  os << label;
  for (const auto& c : x.coeffs()) os << ',' << c;
  if (embed_digits) {
    const auto approx = complex_embed(x, *embed_digits);
    os << ',' << approx.real << ',' << approx.imag;
  }
  os << '\n';
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

void write_table_csv(std::ostream& os, const KlTable& table, std::optional<unsigned> embed_digits) {
  const std::uint32_t p = table.field().p();
  os << 'a';
  for (std::uint32_t k = 0; k + 1 < p; ++k) os << ",c" << k;
  if (embed_digits) os << ",re,im";
  os << '\n';
  write_row(os, "zero", table.at_zero(), embed_digits);
  for (std::uint32_t k = 0; k < table.field().group_order(); ++k) {
    write_row(os, std::to_string(k), table.at_dlog(k), embed_digits);
  }
}

void write_table_json(std::ostream& os, const KlTable& table) {
  Json j;
  j["field"] = field_to_json(table.field());
  j["n"] = table.n();
  Json values = Json::array();
  values.push_back(Json{{"a", "zero"}, {"coeffs", cycint_to_json(table.at_zero())}});
  for (std::uint32_t k = 0; k < table.field().group_order(); ++k) {
    values.push_back(Json{{"a", k}, {"coeffs", cycint_to_json(table.at_dlog(k))}});
  }
  j["values"] = std::move(values);
  os << j.dump(2) << '\n';
}

KlTable read_table_csv(std::istream& is, FieldPtr field, unsigned n) {
  const std::uint32_t p = field->p();
  const std::uint32_t order = field->group_order();
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("table csv: missing header");
  const auto header = split(line, ',');
  if (header.size() < p || header[0] != "a") throw std::runtime_error("table csv: header does not match p");

  std::optional<CycInt> zero;
  std::vector<std::optional<CycInt>> values(order);
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() < p) throw std::runtime_error("table csv: short row at line " + std::to_string(line_no));
    std::vector<BigInt> coeffs;
    coeffs.reserve(p - 1);
    for (std::uint32_t i = 1; i < p; ++i) coeffs.emplace_back(cells[i]);
    CycInt value(p, std::move(coeffs));
    if (cells[0] == "zero") {
      zero = std::move(value);
    } else {
      const unsigned long k = std::stoul(cells[0]);
      if (k >= order) throw std::runtime_error("table csv: discrete log out of range at line " + std::to_string(line_no));
      values[k] = std::move(value);
    }
  }
  if (!zero) throw std::runtime_error("table csv: missing zero row");
  std::vector<CycInt> filled;
  filled.reserve(order);
  for (std::uint32_t k = 0; k < order; ++k) {
    if (!values[k]) throw std::runtime_error("table csv: missing row for discrete log " + std::to_string(k));
    filled.push_back(std::move(*values[k]));
  }
  return KlTable(std::move(field), n, std::move(*zero), std::move(filled));
}

namespace {

std::string applicable_list(const ClassificationRecord& row) {
  std::string s;
  for (unsigned e : row.applicable_e) {
    if (!s.empty()) s += ';';
    s += std::to_string(e);
  }
  return s;
}

bool row_passes(const ClassificationRecord& row) {
  if (row.mode == Mode::kIff) return *row.actual_de == row.predicted_de;
  return *row.actual_de % row.predicted_de == 0;
}

}  // namespace

void write_classification_csv(std::ostream& os, const ClassificationOutput& out) {
  os << "a_dlog,predicted_de,e,t,u,mode,actual_de,pass";
  if (out.list_all_e) os << ",applicable_e";
  os << '\n';
  for (const auto& row : out.rows) {
    os << row.a_dlog << ',' << row.predicted_de << ',' << row.e() << ',';
    if (row.certificate) os << row.certificate->t << ',' << row.certificate->u;
    else os << ',';
    os << ',' << to_string(row.mode) << ',';
    if (row.actual_de) os << *row.actual_de << ',' << (row_passes(row) ? "true" : "false");
    else os << ',';
    if (out.list_all_e) os << ',' << applicable_list(row);
    os << '\n';
  }
}

Json classification_to_json(const ClassificationOutput& out) {
  Json j;
  j["p"] = out.params.p;
  j["r"] = out.params.r;
  j["n"] = out.params.n;
  j["d"] = out.params.d;
  j["R"] = out.params.R;
  Json rows = Json::array();
  for (const auto& row : out.rows) {
    Json jr;
    jr["a_dlog"] = row.a_dlog;
    jr["predicted_de"] = row.predicted_de;
    jr["e"] = row.e();
    jr["t"] = row.certificate ? Json(row.certificate->t) : Json(nullptr);
    jr["u"] = row.certificate ? Json(row.certificate->u) : Json(nullptr);
    jr["mode"] = to_string(row.mode);
    jr["actual_de"] = row.actual_de ? Json(*row.actual_de) : Json(nullptr);
    jr["pass"] = row.actual_de ? Json(row_passes(row)) : Json(nullptr);
    if (out.list_all_e) jr["applicable_e"] = row.applicable_e;
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  return j;
}

void write_grid_csv(std::ostream& os, const std::vector<GridRow>& rows) {
  os << "p,r,n,e,t,union_size,closed_form_size,equal\n";
  for (const auto& row : rows) {
    os << row.p << ',' << row.r << ',' << row.n << ',' << row.e << ',' << row.t << ',' << row.union_size << ','
       << row.closed_form_size << ',' << (row.equal ? "true" : "false") << '\n';
  }
}

}  // namespace klsum
