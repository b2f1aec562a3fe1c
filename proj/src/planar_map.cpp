#include "diskmap/planar_map.hpp"

#include "diskmap/errors.hpp"

namespace diskmap {

std::string to_string(MapRepresentation r) {
  switch (r) {
    case MapRepresentation::Expression:
      return "expression";
    case MapRepresentation::AnalyticPair:
      return "analytic_pair";
    case MapRepresentation::PoissonSolution:
      return "poisson_solution";
  }
  return "unknown";
}

namespace {

// Horner evaluation of sum c[n] x^n and of its derivative.
cplx horner(const std::vector<cplx>& c, cplx x) {
  cplx acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx horner_derivative(const std::vector<cplx>& c, cplx x) {
  cplx acc{};
  for (std::size_t n = c.size(); n-- > 1;) acc = acc * x + static_cast<double>(n) * c[n];
  return acc;
}

class ExprMap final : public MapImpl {
 public:
  ExprMap(Expr e, std::optional<cplx> origin) : expr_(std::move(e)), origin_(origin) {}

  cplx value(cplx z) const override {
    if (origin_ && z == cplx{}) return *origin_;
    return expr_.value(z);
  }
  WirtingerJet jet(cplx z) const override {
    if (origin_ && z == cplx{}) throw JetUndefined("derivative does not exist at the origin");
    return expr_.jet(z);
  }
  MapRepresentation representation() const override { return MapRepresentation::Expression; }
  std::string description() const override { return expr_.to_string(); }

  const Expr& expr() const { return expr_; }

 private:
  Expr expr_;
  std::optional<cplx> origin_;
};

class PairMap final : public MapImpl {
 public:
  explicit PairMap(AnalyticPair p) : pair_(std::move(p)) {}
  cplx value(cplx z) const override { return pair_.h1(z) + pair_.h2_conj(z); }
  WirtingerJet jet(cplx z) const override { return pair_.jet(z); }
  MapRepresentation representation() const override { return MapRepresentation::AnalyticPair; }
  std::string description() const override {
    return "analytic pair of degree " +
           std::to_string(std::max(pair_.a.size(), pair_.bbar.size()) == 0
                              ? 0
                              : std::max(pair_.a.size(), pair_.bbar.size()) - 1);
  }
  const AnalyticPair& pair() const { return pair_; }

 private:
  AnalyticPair pair_;
};

}  // namespace

cplx AnalyticPair::h1(cplx z) const { return horner(a, z); }
cplx AnalyticPair::h1_prime(cplx z) const { return horner_derivative(a, z); }

cplx AnalyticPair::h2_conj(cplx z) const {
  cplx acc{};
  const cplx zb = std::conj(z);
  for (std::size_t n = bbar.size(); n-- > 1;) acc = (acc + bbar[n]) * zb;
  return acc;
}

WirtingerJet AnalyticPair::jet(cplx z) const {
  return {h1(z) + h2_conj(z), h1_prime(z), horner_derivative(bbar, std::conj(z))};
}

PlanarMap PlanarMap::from_expr(Expr expr, std::optional<cplx> origin_value) {
  return PlanarMap(std::make_shared<const ExprMap>(std::move(expr), origin_value));
}

PlanarMap PlanarMap::from_text(std::string_view text) { return from_expr(Expr::parse(text)); }

PlanarMap PlanarMap::from_pair(AnalyticPair pair) {
  if (!pair.bbar.empty()) pair.bbar[0] = cplx{};
  return PlanarMap(std::make_shared<const PairMap>(std::move(pair)));
}

PlanarMap PlanarMap::from_impl(std::shared_ptr<const MapImpl> impl) {
  if (!impl) throw DomainError("null map implementation");
  return PlanarMap(std::move(impl));
}

const Expr* PlanarMap::expression() const {
  auto* e = dynamic_cast<const ExprMap*>(impl_.get());
  return e ? &e->expr() : nullptr;
}

const AnalyticPair* PlanarMap::analytic_pair() const {
  auto* p = dynamic_cast<const PairMap*>(impl_.get());
  return p ? &p->pair() : nullptr;
}

}  // namespace diskmap
