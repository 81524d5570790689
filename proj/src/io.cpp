#include "siegel/io.hpp"

#include <cstdio>

namespace siegel::io {

namespace {

const Json& member(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw MalformedInput(std::string("missing key \"") + key + "\"");
  return *it;
}

}  // namespace

Json rational_json(const Rat& x) { return to_string(x); }

Rat rational_from(const Json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw MalformedInput("malformed rational \"" + j.get<std::string>() + "\"");
    }
  }
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  throw MalformedInput("rationals must be strings or integers, got " + j.dump());
}

Json scalar_json(const GaussRat& x, const FieldDescriptor& field) {
  if (field.kind == FieldKind::QI) return Json::array({rational_json(x.re), rational_json(x.im)});
  if (!x.is_real()) throw std::invalid_argument("non-rational scalar over Q");
  return rational_json(x.re);
}

GaussRat scalar_from(const Json& j, const FieldDescriptor& field) {
  if (j.is_array()) {
    if (field.kind != FieldKind::QI) throw MalformedInput("[re, im] pairs are only allowed over QI");
    if (j.size() != 2) throw MalformedInput("a Gaussian scalar needs exactly [re, im]");
    return GaussRat(rational_from(j[0]), rational_from(j[1]));
  }
  return GaussRat(rational_from(j));
}

Json vector_json(const KVector& x, const FieldDescriptor& field) {
  Json out = Json::array();
  for (const auto& c : x) out.push_back(scalar_json(c, field));
  return out;
}

Json vector_json(const OVector& x, const FieldDescriptor& field) { return vector_json(to_kvector(x), field); }

KVector vector_from(const Json& j, const FieldDescriptor& field) {
  if (!j.is_array()) throw MalformedInput("a vector must be an array");
  KVector out;
  for (const auto& c : j) out.push_back(scalar_from(c, field));
  return out;
}

Json matrix_json(const std::vector<KVector>& rows, const FieldDescriptor& field) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(vector_json(r, field));
  return out;
}

std::vector<KVector> matrix_from(const Json& j, const FieldDescriptor& field) {
  if (!j.is_array()) throw MalformedInput("a matrix literal must be an array of rows");
  std::vector<KVector> out;
  for (const auto& r : j) {
    out.push_back(vector_from(r, field));
    if (out.back().size() != out.front().size()) throw MalformedInput("matrix rows differ in length");
  }
  return out;
}

Json field_json(const FieldDescriptor& f) {
  switch (f.kind) {
    case FieldKind::Q:
      return "Q";
    case FieldKind::QI:
      return "QI";
    case FieldKind::Symbolic:
      break;
  }
  return {{"symbolic", {{"d", f.d}, {"r1", f.r1}, {"r2", f.r2}, {"absDisc", rational_json(f.abs_disc)}}}};
}

FieldDescriptor field_from(const Json& j) {
  if (j.is_string()) {
    if (j == "Q") return FieldDescriptor::rationals();
    if (j == "QI") return FieldDescriptor::gaussian();
    throw MalformedInput("unknown field " + j.dump());
  }
  if (!j.is_object() || !j.contains("symbolic")) throw MalformedInput("field must be \"Q\", \"QI\" or {symbolic}");
  const Json& s = j["symbolic"];
  try {
    return FieldDescriptor::symbolic(member(s, "d").get<int>(), member(s, "r1").get<int>(),
                                     member(s, "r2").get<int>(), rational_from(member(s, "absDisc")));
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(e.what());
  } catch (const Json::exception& e) {
    throw MalformedInput(e.what());
  }
}

namespace {

std::string decimal(const Rat& x, int digits, bool up) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const Rat scaled = x * Rat(scale);
  Int n = up ? ceil_of(scaled) : floor_of(scaled);
  const bool neg = n < 0;
  std::string s = abs_of(n).get_str();
  if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return (neg && s != "0" ? "-" : "") + s;
}

}  // namespace

std::string decimal_up(const Rat& x, int digits) { return decimal(x, digits, true); }
std::string decimal_down(const Rat& x, int digits) { return decimal(x, digits, false); }

Json bound_json(const BoundValue& b) {
  return {{"formula", b.formula}, {"upper", rational_json(b.upper)}, {"decimal", decimal_up(b.upper)},
          {"roundedUp", true}};
}

BoundValue bound_from(const Json& j) {
  BoundValue b;
  b.formula = member(j, "formula").get<std::string>();
  b.upper = rational_from(member(j, "upper"));
  b.approx = b.upper.get_d();
  return b;
}

Subspace SubspaceSpec::build(const FieldDescriptor& field) const {
  if (constraints) {
    std::size_t n = ambient ? *ambient : (rows.empty() ? 0 : rows.front().size());
    if (n == 0) throw MalformedInput("constraints need rows or an ambient dimension");
    for (const auto& r : rows)
      if (r.size() != n) throw MalformedInput("constraint rows have the wrong length");
    if (rows.empty()) return Subspace::full(field, n);
    return Subspace::from_constraints(field, n, rows);
  }
  if (rows.empty()) throw MalformedInput("a basis needs at least one vector");
  if (ambient && rows.front().size() != *ambient) throw MalformedInput("basis vectors have the wrong length");
  return Subspace::from_basis(field, rows);
}

Json subspace_json(const SubspaceSpec& s, const FieldDescriptor& field) {
  Json out = {{s.constraints ? "constraints" : "basis", matrix_json(s.rows, field)}};
  if (s.ambient) out["ambient"] = *s.ambient;
  return out;
}

SubspaceSpec subspace_from(const Json& j, const FieldDescriptor& field) {
  if (!j.is_object()) throw MalformedInput("a subspace must be an object");
  const bool has_basis = j.contains("basis"), has_cons = j.contains("constraints");
  if (has_basis == has_cons) throw MalformedInput("a subspace needs exactly one of basis/constraints");
  SubspaceSpec s;
  s.constraints = has_cons;
  s.rows = matrix_from(j[has_cons ? "constraints" : "basis"], field);
  if (j.contains("ambient")) {
    if (!j["ambient"].is_number_unsigned()) throw MalformedInput("ambient must be a positive integer");
    s.ambient = j["ambient"].get<std::size_t>();
  }
  for (const auto& [key, value] : j.items())
    if (key != "basis" && key != "constraints" && key != "ambient") throw MalformedInput("unknown subspace key " + key);
  return s;
}

SubspaceSpec spec_of(const Subspace& V) {
  SubspaceSpec s;
  for (const auto& b : V.basis_vectors()) s.rows.push_back(to_kvector(b));
  return s;
}

ProblemFile parse_problem(const Json& j) {
  if (!j.is_object()) throw MalformedInput("problem file must be a JSON object");
  ProblemFile p;
  try {
    p.schema_version = member(j, "schemaVersion").get<int>();
    if (p.schema_version != kSchemaVersion) throw MalformedInput("unsupported schemaVersion");
    p.task = member(j, "task").get<std::string>();
    p.field = field_from(member(j, "field"));
    if (j.contains("W")) p.W = subspace_from(j["W"], p.field);
    if (j.contains("Vs")) {
      if (!j["Vs"].is_array()) throw MalformedInput("Vs must be an array");
      for (const auto& v : j["Vs"]) p.Vs.push_back(subspace_from(v, p.field));
    }
    if (j.contains("s")) p.s = j["s"].get<int>();
  } catch (const Json::exception& e) {
    throw MalformedInput(e.what());
  }
  for (const auto& [key, value] : j.items())
    if (key != "schemaVersion" && key != "task" && key != "field" && key != "W" && key != "Vs" && key != "s")
      p.params[key] = value;
  return p;
}

Json serialize_problem(const ProblemFile& p) {
  Json out = p.params;
  out["schemaVersion"] = p.schema_version;
  out["task"] = p.task;
  out["field"] = field_json(p.field);
  if (p.W) out["W"] = subspace_json(*p.W, p.field);
  if (!p.Vs.empty()) {
    Json vs = Json::array();
    for (const auto& v : p.Vs) vs.push_back(subspace_json(v, p.field));
    out["Vs"] = vs;
  }
  if (p.s) out["s"] = *p.s;
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string input_digest(const ProblemFile& p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(serialize_problem(p).dump())));
  return std::string("fnv1a64:") + buf;
}

ReportFile parse_report(const Json& j) {
  if (!j.is_object()) throw MalformedInput("report must be a JSON object");
  ReportFile r;
  try {
    r.schema_version = member(j, "schemaVersion").get<int>();
    r.task = member(j, "task").get<std::string>();
    r.input_digest = member(j, "inputDigest").get<std::string>();
    r.input = member(j, "input");
    r.config = member(j, "config");
    r.results = member(j, "results");
    r.timing = j.value("timing", Json::object());
  } catch (const Json::exception& e) {
    throw MalformedInput(e.what());
  }
  return r;
}

Json serialize_report(const ReportFile& r) {
  return {{"schemaVersion", r.schema_version}, {"task", r.task},       {"inputDigest", r.input_digest},
          {"input", r.input},                  {"config", r.config},   {"results", r.results},
          {"timing", r.timing}};
}

}  // namespace siegel::io
