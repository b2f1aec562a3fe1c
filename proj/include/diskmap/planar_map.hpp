#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diskmap/expr.hpp"
#include "diskmap/wirtinger.hpp"

namespace diskmap {

enum class MapRepresentation { Expression, AnalyticPair, PoissonSolution };

std::string to_string(MapRepresentation r);

/// f(z) = sum a[n] z^n + sum bbar[n] conj(z)^n. bbar[0] is unused and kept 0,
/// so bbar[n] is the literal coefficient of conj(z)^n (|b_n| = |bbar[n]|).
struct AnalyticPair {
  std::vector<cplx> a;
  std::vector<cplx> bbar;

  cplx h1(cplx z) const;
  cplx h1_prime(cplx z) const;
  /// conj(h2(z)) = sum bbar[n] conj(z)^n.
  cplx h2_conj(cplx z) const;
  WirtingerJet jet(cplx z) const;
};

class MapImpl {
 public:
  virtual ~MapImpl() = default;
  virtual cplx value(cplx z) const = 0;
  virtual WirtingerJet jet(cplx z) const = 0;
  virtual MapRepresentation representation() const = 0;
  virtual std::string description() const = 0;
};

/// A map of the disk in one of three representations. Cheap to copy; the
/// underlying representation is shared and immutable.
class PlanarMap {
 public:
  /// `origin_value`, when set, is the value at z = 0 of a map whose formula is
  /// singular there but continuous; the jet at 0 is then undefined.
  static PlanarMap from_expr(Expr expr, std::optional<cplx> origin_value = std::nullopt);
  static PlanarMap from_text(std::string_view text);
  static PlanarMap from_pair(AnalyticPair pair);
  static PlanarMap from_impl(std::shared_ptr<const MapImpl> impl);

  cplx value(cplx z) const { return impl_->value(z); }
  WirtingerJet jet(cplx z) const { return impl_->jet(z); }
  MapRepresentation representation() const { return impl_->representation(); }
  std::string description() const { return impl_->description(); }

  /// Non-null only for the matching representation.
  const Expr* expression() const;
  const AnalyticPair* analytic_pair() const;
  const MapImpl& impl() const { return *impl_; }

 private:
  explicit PlanarMap(std::shared_ptr<const MapImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const MapImpl> impl_;
};

}  // namespace diskmap
