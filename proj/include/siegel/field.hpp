#pragma once

#include "siegel/arith.hpp"

#include <string>

namespace siegel {

enum class FieldKind { Q, QI, Symbolic };

/// Number-field invariants. Q and QI support exact point arithmetic;
/// Symbolic descriptors are accepted by bound evaluation only.
struct FieldDescriptor {
  FieldKind kind = FieldKind::Q;
  int d = 1;        // degree
  int r1 = 1;       // real places
  int r2 = 0;       // complex places
  Rat abs_disc{1};  // |D_K|

  static FieldDescriptor rationals() { return {FieldKind::Q, 1, 1, 0, Rat(1)}; }
  static FieldDescriptor gaussian() { return {FieldKind::QI, 2, 0, 1, Rat(4)}; }
  /// Throws std::invalid_argument unless d = r1 + 2 r2, d >= 1, |D| > 0.
  static FieldDescriptor symbolic(int d, int r1, int r2, const Rat& abs_disc);

  bool exact() const { return kind != FieldKind::Symbolic; }
  std::string label() const;

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

/// Throws std::invalid_argument("exact arithmetic unsupported") for
/// symbolic fields.
void require_exact(const FieldDescriptor& field);

}  // namespace siegel
