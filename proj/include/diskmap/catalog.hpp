#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diskmap/expr.hpp"
#include "diskmap/planar_map.hpp"

namespace diskmap {

/// Parameter values as text. Scalars are constant DSL expressions
/// ("0.5", "0.3*i", "pi/4"); lists are comma separated.
using ParamMap = std::map<std::string, std::string>;

struct MapDefinition {
  std::string name;
  ParamMap parameters;  // resolved, defaults filled in
  PlanarMap map;
  /// DSL text for expression maps, otherwise a short series summary.
  std::string representation;
  std::string provenance;
  bool harmonic = false;
  /// Laplace(f) for non-harmonic maps whose Laplacian is continuous.
  std::optional<Expr> source;
  /// Named numbers recorded during construction (series remainders, ...).
  std::map<std::string, double> diagnostics;
};

struct CatalogEntry {
  std::string name;
  ParamMap defaults;
  std::string summary;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Builds a named map. Missing parameters take the entry's defaults; unknown
/// names and unknown or out-of-range parameters throw DomainError.
MapDefinition builtin_map(const std::string& name, const ParamMap& params = {});

/// Harmonic map R (int_0^z dt/(1+t^2 mu(t)) + conj(int_0^z mu(t) dt/(1+t^2 mu(t)))),
/// built from the power series of 1/(1+t^2 mu) truncated at series_degree.
/// mu[k] is the coefficient of t^k; max |mu| on the circle must be <= 1.
MapDefinition kalaj_extremal(double R, const std::vector<cplx>& mu, std::size_t series_degree);

/// Comma-separated constant expressions.
std::vector<cplx> parse_constant_list(const std::string& text);

}  // namespace diskmap
