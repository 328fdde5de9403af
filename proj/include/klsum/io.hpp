#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include <json.hpp>

#include "klsum/classifier.hpp"
#include "klsum/congruence.hpp"
#include "klsum/cyclotomic.hpp"
#include "klsum/finite_field.hpp"
#include "klsum/kloosterman.hpp"

namespace klsum {

// Serialization. Key and column order is fixed; CSV uses LF line endings and
// a header row. Floating-point values only ever appear in the optional
// complex annex columns of a table export.

using Json = nlohmann::ordered_json;

/// {"p", "r", "modulus": [c0..cr], "gamma": [coefficients]}
Json field_to_json(const FieldSpec& field);

/// Power-basis coefficients, constant first. Throws std::overflow_error when a
/// coefficient does not fit a 64-bit JSON integer (CSV has no such limit).
Json cycint_to_json(const CycInt& x);

/// Header "a,c0,...,c{p-2}"; the a = 0 row is labelled "zero" and comes first,
/// followed by discrete logs 0..q-2. `embed_digits` appends re,im columns.
void write_table_csv(std::ostream& os, const KlTable& table, std::optional<unsigned> embed_digits = std::nullopt);
void write_table_json(std::ostream& os, const KlTable& table);

/// Parses the CSV written by write_table_csv (annex columns are ignored).
KlTable read_table_csv(std::istream& is, FieldPtr field, unsigned n);

struct ClassificationOutput {
  const Parameters& params;
  const std::vector<ClassificationRecord>& rows;
  bool list_all_e = false;
};

/// a_dlog,predicted_de,e,t,u,mode,actual_de,pass[,applicable_e]
void write_classification_csv(std::ostream& os, const ClassificationOutput& out);
Json classification_to_json(const ClassificationOutput& out);

/// p,r,n,e,t,union_size,closed_form_size,equal
void write_grid_csv(std::ostream& os, const std::vector<GridRow>& rows);

}  // namespace klsum
