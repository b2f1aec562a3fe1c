#include "diskmap/report.hpp"

#include <algorithm>
#include <cmath>

namespace diskmap {

std::string to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Holds:
      return "holds";
    case BoundStatus::Violated:
      return "violated";
    case BoundStatus::Indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

BoundReport make_bound(std::string id, double lhs, double rhs) {
  BoundReport b;
  b.inequality_id = std::move(id);
  b.lhs = lhs;
  b.rhs = rhs;
  b.margin = rhs - lhs;
  if (std::abs(b.margin) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs))) b.margin = 0.0;
  if (!std::isfinite(b.margin) && !(std::isinf(rhs) && rhs > 0 && std::isfinite(lhs))) {
    b.status = BoundStatus::Indeterminate;
  } else {
    b.status = b.margin >= -kHoldsTolerance ? BoundStatus::Holds : BoundStatus::Violated;
  }
  return b;
}

BoundReport indeterminate_bound(std::string id, std::string why) {
  BoundReport b;
  b.inequality_id = std::move(id);
  b.status = BoundStatus::Indeterminate;
  b.note = std::move(why);
  return b;
}

}  // namespace diskmap
