#include "diskmap/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "diskmap/errors.hpp"

namespace diskmap {

namespace {

std::string literal(cplx c) {
  if (c.imag() == 0.0) return "(" + format_double(c.real()) + ")";
  return "(" + format_double(c.real()) + " + " + format_double(c.imag()) + "*i)";
}

cplx scalar(const ParamMap& p, const std::string& key) {
  try {
    return eval_constant(p.at(key));
  } catch (const ParseError& e) {
    throw DomainError("parameter " + key + ": " + e.what());
  }
}

double real_scalar(const ParamMap& p, const std::string& key) {
  const cplx v = scalar(p, key);
  if (v.imag() != 0.0) throw DomainError("parameter " + key + " must be real");
  return v.real();
}

ParamMap resolve(const CatalogEntry& entry, const ParamMap& given) {
  ParamMap out = entry.defaults;
  for (const auto& [k, v] : given) {
    if (!entry.defaults.contains(k)) throw DomainError("unknown parameter '" + k + "' for " + entry.name);
    out[k] = v;
  }
  return out;
}

MapDefinition from_text(std::string name, ParamMap params, const std::string& text, std::string provenance,
                        bool harmonic, std::optional<cplx> origin = std::nullopt) {
  MapDefinition d{std::move(name), std::move(params), PlanarMap::from_expr(parse_expr(text), origin), text,
                  std::move(provenance), harmonic, std::nullopt, {}};
  return d;
}

}  // namespace

std::vector<cplx> parse_constant_list(const std::string& text) {
  std::vector<cplx> out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      out.push_back(eval_constant(item));
    } catch (const ParseError& e) {
      throw DomainError("list item '" + item + "': " + e.what());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"identity", {}, "f(z) = z"},
      {"scale", {{"c", "2"}}, "f(z) = c z"},
      {"moebius", {{"a", "0.5"}, {"t", "0"}}, "f(z) = e^{it} (z - a)/(1 - z conj(a)), |a| < 1"},
      {"example13", {{"alpha", "0.25"}}, "f(z) = z (1 - 2 log|z|)^alpha, f(0) = 0, 0 < alpha < 1/2"},
      {"example15", {}, "f(z) = 3z|z|^2 - z|z|^8"},
      {"polyharmonic", {{"a", "0,1"}, {"b", ""}}, "f(z) = sum a_n z^n + sum b_n conj(z)^n (a from n = 0, b from n = 1)"},
      {"kalaj", {{"R", "1"}, {"mu", "0.5"}, {"degree", "48"}},
       "harmonic extremal R(int dt/(1+t^2 mu) + conj(int mu dt/(1+t^2 mu))), mu polynomial coefficients"},
  };
  return entries;
}

MapDefinition builtin_map(const std::string& name, const ParamMap& given) {
  const auto& entries = catalog_entries();
  auto it = std::find_if(entries.begin(), entries.end(), [&](const CatalogEntry& e) { return e.name == name; });
  if (it == entries.end()) throw DomainError("unknown catalog map '" + name + "'");
  const ParamMap p = resolve(*it, given);

  if (name == "identity") return from_text(name, p, "z", "extremal map of the coefficient bound", true);
  if (name == "scale") {
    const cplx c = scalar(p, "c");
    return from_text(name, p, literal(c) + "*z", "extremal map of the radial-length bound", true);
  }
  if (name == "moebius") {
    const cplx a = scalar(p, "a");
    const double t = real_scalar(p, "t");
    if (!(std::abs(a) < 1.0)) throw DomainError("moebius requires |a| < 1");
    const std::string text = literal(std::polar(1.0, t)) + "*(z - " + literal(a) + ")/(1 - z*" +
                             literal(std::conj(a)) + ")";
    return from_text(name, p, text, "disk automorphism, equality case of the derivative bounds", true);
  }
  if (name == "example13") {
    const double alpha = real_scalar(p, "alpha");
    if (!(alpha > 0.0 && alpha < 0.5)) throw DomainError("example13 requires 0 < alpha < 1/2");
    const std::string text = "z*pow(log(e/abs(z)^2), " + format_double(alpha) + ")";
    return from_text(name, p, text, "quasiconformal self-map that is not Lipschitz at the origin", false,
                     cplx{});
  }
  if (name == "example15") {
    auto d = from_text(name, p, "3*z*abs(z)^2 - z*abs(z)^8",
                       "elliptic but not quasiconformal univalent map with Laplacian g", false);
    d.source = parse_expr("4*(6*z - 20*z^4*conj(z)^3)");
    return d;
  }
  if (name == "polyharmonic") {
    AnalyticPair pair;
    pair.a = parse_constant_list(p.at("a"));
    if (pair.a.empty()) pair.a.push_back(0.0);
    const auto b = parse_constant_list(p.at("b"));
    pair.bbar.assign(b.size() + 1, cplx{});
    for (std::size_t n = 0; n < b.size(); ++n) pair.bbar[n + 1] = b[n];
    std::string text;
    for (std::size_t n = 0; n < pair.a.size(); ++n) {
      if (pair.a[n] == cplx{}) continue;
      if (!text.empty()) text += " + ";
      text += literal(pair.a[n]) + (n == 0 ? "" : "*z^" + std::to_string(n));
    }
    for (std::size_t n = 1; n < pair.bbar.size(); ++n) {
      if (pair.bbar[n] == cplx{}) continue;
      if (!text.empty()) text += " + ";
      text += literal(pair.bbar[n]) + "*conj(z)^" + std::to_string(n);
    }
    if (text.empty()) text = "0";
    return {name, p, PlanarMap::from_pair(std::move(pair)), text, "harmonic polynomial", true, std::nullopt, {}};
  }
  // kalaj
  const double R = real_scalar(p, "R");
  const double deg = real_scalar(p, "degree");
  if (deg < 0 || deg != std::floor(deg)) throw DomainError("degree must be a non-negative integer");
  auto d = kalaj_extremal(R, parse_constant_list(p.at("mu")), static_cast<std::size_t>(deg));
  d.parameters = p;
  return d;
}

MapDefinition kalaj_extremal(double R, const std::vector<cplx>& mu_in, std::size_t degree) {
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("kalaj_extremal requires R > 0");
  if (degree < 8) throw DomainError("kalaj_extremal requires series_degree >= 8");
  std::vector<cplx> mu = mu_in;
  if (mu.empty()) mu.push_back(0.0);

  // max |mu| on the circle by a dense scan.
  double mu_max = 0.0;
  constexpr int kScan = 4096;
  for (int k = 0; k < kScan; ++k) {
    const cplx t = std::polar(1.0, 2.0 * std::numbers::pi * k / kScan);
    cplx acc{};
    for (auto c = mu.rbegin(); c != mu.rend(); ++c) acc = acc * t + *c;
    mu_max = std::max(mu_max, std::abs(acc));
  }
  if (mu_max > 1.0 + 1e-12) throw DomainError("kalaj_extremal requires |mu| <= 1 on the circle");

  // q = 1/(1 + t^2 mu) from q * (1 + c) = 1 with c = t^2 mu.
  std::vector<cplx> c(degree + 1, cplx{});
  for (std::size_t k = 0; k < mu.size() && k + 2 <= degree; ++k) c[k + 2] = mu[k];
  std::vector<cplx> q(degree + 1, cplx{});
  for (std::size_t n = 0; n <= degree; ++n) {
    cplx s = n == 0 ? 1.0 : 0.0;
    for (std::size_t j = 2; j <= n; ++j) s -= c[j] * q[n - j];
    q[n] = s;
  }
  std::vector<cplx> muq(degree + 1, cplx{});
  for (std::size_t n = 0; n <= degree; ++n) {
    for (std::size_t k = 0; k < mu.size() && k <= n; ++k) muq[n] += mu[k] * q[n - k];
  }

  AnalyticPair pair;
  pair.a.assign(degree + 2, cplx{});
  pair.bbar.assign(degree + 2, cplx{});
  for (std::size_t n = 0; n <= degree; ++n) {
    pair.a[n + 1] = R * q[n] / static_cast<double>(n + 1);
    pair.bbar[n + 1] = std::conj(R * muq[n] / static_cast<double>(n + 1));
  }

  // Coefficient mass of (t^2 mu)^k is at most sigma^k with sigma = sum |mu_j|;
  // every dropped coefficient belongs to a power k > k0, where the powers up
  // to k0 fit entirely below the truncation degree.
  double sigma = 0.0;
  for (cplx m : mu) sigma += std::abs(m);
  const std::size_t span = 2 + (mu.size() - 1);
  const double k0 = static_cast<double>(degree / span);
  double remainder = std::numeric_limits<double>::infinity();
  if (sigma < 1.0) remainder = R * std::pow(sigma, k0 + 1) / (1.0 - sigma);
  if (sigma == 0.0) remainder = 0.0;

  std::string mu_text;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    if (k) mu_text += ",";
    mu_text += mu[k].imag() == 0.0 ? format_double(mu[k].real())
                                   : format_double(mu[k].real()) + "+" + format_double(mu[k].imag()) + "*i";
  }
  MapDefinition d{"kalaj",
                  {{"R", format_double(R)}, {"mu", mu_text}, {"degree", std::to_string(degree)}},
                  PlanarMap::from_pair(std::move(pair)),
                  "analytic pair, series degree " + std::to_string(degree + 1),
                  "harmonic extremal of the sharp derivative bound; image is convex of length 2 pi R",
                  true,
                  std::nullopt,
                  {}};
  d.harmonic = true;
  d.diagnostics["mu_max_on_circle"] = mu_max;
  d.diagnostics["coefficient_mass"] = sigma;
  d.diagnostics["truncation_remainder_bound"] = remainder;
  d.diagnostics["series_converges"] = sigma < 1.0 ? 1.0 : 0.0;
  return d;
}

}  // namespace diskmap
