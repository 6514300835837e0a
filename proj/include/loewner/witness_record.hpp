#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace loewner {

enum class WitnessKind { NodeSet, MatrixPair, ContractionTriple };

const char* witness_kind_name(WitnessKind k);

/// A concrete violating instance. `margin` is the most negative eigenvalue
/// of the offending matrix as recomputed in big precision.
struct WitnessRecord {
  WitnessKind kind = WitnessKind::NodeSet;
  std::string route;           // criterion that produced it, e.g. "loewner"
  std::vector<double> nodes;   // node set, or {t} for pointwise routes
  std::optional<double> base;  // Kraus base point
  std::optional<double> z;     // center of x -> [x, z, z]_f
  std::size_t matrix_order = 0;
  std::vector<double> first;   // A (pair) or a (contraction), row-major
  std::vector<double> second;  // B (pair) or c (contraction), row-major
  std::optional<double> lambda;
  double margin = 0.0;
  std::string margin_text;
  double screened_margin = 0.0;
  double tolerance = 0.0;
  std::uint64_t seed_index = 0;
};

/// Order used in reports: most negative margin first, then by sample index.
inline bool witness_less(const WitnessRecord& a, const WitnessRecord& b) {
  if (a.margin != b.margin) return a.margin < b.margin;
  return a.seed_index < b.seed_index;
}

}  // namespace loewner
