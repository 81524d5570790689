#pragma once

// JSON problem and report files. Rationals are written as "p" or "p/q"
// strings; over Q(i) a scalar is a [re, im] pair of such strings. Matrix
// literals are arrays of rows.

#include "siegel/bounds.hpp"
#include "siegel/heights.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace siegel::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Structurally invalid input; the CLI maps it to exit code 2.
struct MalformedInput : std::runtime_error {
  explicit MalformedInput(const std::string& what) : std::runtime_error(what) {}
};

Json rational_json(const Rat& x);
Rat rational_from(const Json& j);
Json scalar_json(const GaussRat& x, const FieldDescriptor& field);
GaussRat scalar_from(const Json& j, const FieldDescriptor& field);
Json vector_json(const KVector& x, const FieldDescriptor& field);
Json vector_json(const OVector& x, const FieldDescriptor& field);
KVector vector_from(const Json& j, const FieldDescriptor& field);
Json matrix_json(const std::vector<KVector>& rows, const FieldDescriptor& field);
std::vector<KVector> matrix_from(const Json& j, const FieldDescriptor& field);

Json field_json(const FieldDescriptor& f);
FieldDescriptor field_from(const Json& j);

/// Decimal text of x rounded up (or down) at the given number of digits
/// after the point.
std::string decimal_up(const Rat& x, int digits = 12);
std::string decimal_down(const Rat& x, int digits = 12);

/// {"formula", "upper", "decimal", "roundedUp": true}
Json bound_json(const BoundValue& b);
BoundValue bound_from(const Json& j);

/// A subspace given by spanning rows or by constraint rows. The ambient
/// dimension is needed only for an empty constraint list.
struct SubspaceSpec {
  bool constraints = false;
  std::vector<KVector> rows;
  std::optional<std::size_t> ambient;

  Subspace build(const FieldDescriptor& field) const;
  friend bool operator==(const SubspaceSpec&, const SubspaceSpec&) = default;
};

Json subspace_json(const SubspaceSpec& s, const FieldDescriptor& field);
SubspaceSpec subspace_from(const Json& j, const FieldDescriptor& field);
/// Basis form of an existing subspace.
SubspaceSpec spec_of(const Subspace& V);

struct ProblemFile {
  int schema_version = kSchemaVersion;
  std::string task;
  FieldDescriptor field = FieldDescriptor::rationals();
  std::optional<SubspaceSpec> W;
  std::vector<SubspaceSpec> Vs;
  std::optional<int> s;
  Json params = Json::object();  // every other key, kept verbatim

  friend bool operator==(const ProblemFile&, const ProblemFile&) = default;
};

ProblemFile parse_problem(const Json& j);
Json serialize_problem(const ProblemFile& p);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& bytes);
/// "fnv1a64:" followed by 16 hex digits of the serialized problem.
std::string input_digest(const ProblemFile& p);

struct ReportFile {
  int schema_version = kSchemaVersion;
  std::string task;
  std::string input_digest;
  Json input;
  Json config;
  Json results;
  Json timing;

  friend bool operator==(const ReportFile&, const ReportFile&) = default;
};

ReportFile parse_report(const Json& j);
Json serialize_report(const ReportFile& r);

}  // namespace siegel::io
