#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "diskmap/wirtinger.hpp"

namespace diskmap {

enum class BoundStatus { Holds, Violated, Indeterminate };
std::string to_string(BoundStatus s);

/// Margins in (-1e-9, 0) still count as holding.
inline constexpr double kHoldsTolerance = 1e-9;

/// One instance of an inequality lhs <= rhs.
struct BoundReport {
  std::string inequality_id;
  std::optional<std::size_t> n;  // coefficient index
  std::optional<cplx> z;         // evaluation point
  std::optional<double> r;       // evaluation radius
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  BoundStatus status = BoundStatus::Indeterminate;
  std::string note;
};

/// Fills margin and status; margins within 1e-12 relative roundoff are 0.
BoundReport make_bound(std::string id, double lhs, double rhs);
BoundReport indeterminate_bound(std::string id, std::string why);

}  // namespace diskmap
