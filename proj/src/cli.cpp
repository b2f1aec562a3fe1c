#include "diskmap/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "diskmap/bounds.hpp"
#include "diskmap/catalog.hpp"
#include "diskmap/coefficients.hpp"
#include "diskmap/ellipticity.hpp"
#include "diskmap/errors.hpp"
#include "diskmap/lengths.hpp"
#include "diskmap/potential.hpp"

namespace diskmap {
namespace {

using json = nlohmann::ordered_json;

constexpr int kExitViolated = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;

class UsageError : public DomainError {
 public:
  using DomainError::DomainError;
};

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

struct Common {
  std::string map_text;
  std::string catalog;
  std::vector<std::string> params;
  std::string psi;
  std::string g;
  GridSpec grid;
  QuadratureConfig quad;
  std::string format = "json";
  std::string output;
};

void add_source(CLI::App* s, Common& c) {
  s->add_option("--map", c.map_text, "map as an expression in z");
  s->add_option("--catalog", c.catalog, "builtin map name (see the catalog subcommand)");
  s->add_option("--param", c.params, "catalog parameter k=v, repeatable");
  s->add_option("--psi", c.psi, "boundary values of a Poisson solution");
  s->add_option("--g", c.g, "right-hand side of the Poisson equation (Laplacian of the map)");
}

void add_grid(CLI::App* s, Common& c) {
  s->add_option("--radial", c.grid.radial_count, "grid shells")->capture_default_str();
  s->add_option("--angular", c.grid.angular_count, "grid angles per shell")->capture_default_str();
  s->add_option("--max-radius", c.grid.max_radius, "outermost shell radius")->capture_default_str();
  s->add_option("--refine", c.grid.refine_rounds, "local refinement rounds")->capture_default_str();
}

void add_quad(CLI::App* s, Common& c) {
  s->add_option("--quad-radial", c.quad.radial_nodes, "Green potential radial nodes")->capture_default_str();
  s->add_option("--quad-angular", c.quad.angular_nodes, "Green potential angular nodes")->capture_default_str();
  s->add_option("--patch-radius", c.quad.singular_patch_radius, "singular patch radius")->capture_default_str();
  s->add_option("--patch-nodes", c.quad.patch_nodes, "singular patch nodes")->capture_default_str();
  s->add_option("--boundary-nodes", c.quad.boundary_nodes, "Poisson integral base nodes")->capture_default_str();
}

void add_output(CLI::App* s, Common& c) {
  s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  s->add_option("--output", c.output, "write to this file instead of standard output");
}

json grid_json(const GridSpec& g) {
  return {{"radial_count", g.radial_count},
          {"angular_count", g.angular_count},
          {"max_radius", g.max_radius},
          {"refine_rounds", g.refine_rounds}};
}

json quad_json(const QuadratureConfig& q) {
  return {{"radial_nodes", q.radial_nodes},
          {"angular_nodes", q.angular_nodes},
          {"singular_patch_radius", q.singular_patch_radius},
          {"patch_nodes", q.patch_nodes},
          {"boundary_nodes", q.boundary_nodes}};
}

struct Source {
  PlanarMap map;
  std::optional<Expr> g;  // Laplacian of the map when known
  json config;
};

ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects k=v, got '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

Source resolve(const CLI::App& s, const Common& c) {
  const int n = (s.count("--map") > 0) + (s.count("--catalog") > 0) + (s.count("--psi") > 0);
  if (n != 1) throw UsageError("exactly one of --map, --catalog, --psi is required");
  if (s.count("--param") && !s.count("--catalog")) throw UsageError("--param needs --catalog");
  if (s.count("--g") && s.count("--catalog")) throw UsageError("--g cannot be combined with --catalog");
  if (s.count("--map")) {
    json cfg = {{"kind", "expression"}, {"text", c.map_text}};
    std::optional<Expr> g;
    if (s.count("--g")) {
      g = parse_expr(c.g);
      cfg["g"] = c.g;
    }
    return {PlanarMap::from_expr(parse_expr(c.map_text)), g, cfg};
  }
  if (s.count("--catalog")) {
    const auto d = builtin_map(c.catalog, parse_params(c.params));
    json cfg = {{"kind", "catalog"},
                {"name", d.name},
                {"parameters", d.parameters},
                {"representation", d.representation},
                {"provenance", d.provenance},
                {"harmonic", d.harmonic},
                {"diagnostics", d.diagnostics}};
    if (d.source) cfg["g"] = d.source->source();
    return {d.map, d.source, cfg};
  }
  const Expr psi = parse_expr(c.psi);
  const Expr g = parse_expr(s.count("--g") ? c.g : "0");
  json cfg = {{"kind", "poisson"}, {"psi", c.psi}, {"g", g.source()}};
  std::optional<Expr> src;
  if (g.depends_on_variable() || g.value(0.0) != cplx{}) src = g;
  return {solve_poisson(psi, g, c.quad), src, cfg};
}

json bound_json(const BoundReport& b) {
  const bool known = b.status != BoundStatus::Indeterminate;
  return {{"inequality_id", b.inequality_id},
          {"n", b.n ? json(*b.n) : json(nullptr)},
          {"z", b.z ? cj(*b.z) : json(nullptr)},
          {"r", opt_json(b.r)},
          {"lhs", known ? json(b.lhs) : json(nullptr)},
          {"rhs", known ? json(b.rhs) : json(nullptr)},
          {"margin", known ? json(b.margin) : json(nullptr)},
          {"status", to_string(b.status)},
          {"note", b.note}};
}

json hypothesis_json(const HypothesisReport& h) {
  json witness = nullptr;
  if (h.witness) witness = json::array({cj(h.witness->first.value()), cj(h.witness->second.value())});
  return {{"condition_id", h.condition_id},
          {"holds_on_sample", h.holds_on_sample},
          {"worst_margin", h.worst_margin},
          {"witness", witness},
          {"derived_constants", h.derived_constants},
          {"indeterminate", h.indeterminate},
          {"notes", h.notes}};
}

json length_json(const LengthReport& r) {
  return {{"kind", to_string(r.kind)},
          {"r", r.r},
          {"theta", r.theta},
          {"value", r.value},
          {"node_count", r.node_count},
          {"converged", r.converged}};
}

struct Result {
  json config = json::object();
  json reports = json::array();
  json summary = json::object();
  int code = 0;
  std::string warning;  // printed to standard error after the report
};

void summarize_bounds(const std::vector<const BoundReport*>& all, Result& res) {
  std::optional<double> worst;
  std::size_t violated = 0;
  for (const auto* b : all) {
    if (b->status == BoundStatus::Indeterminate) continue;
    if (!worst || b->margin < *worst) worst = b->margin;
    violated += b->status == BoundStatus::Violated;
  }
  res.summary["worst_margin"] = opt_json(worst);
  res.summary["status"] = violated ? "violated" : (worst ? "holds" : "indeterminate");
  res.summary["violated"] = violated;
  if (violated) res.code = kExitViolated;
}

void summarize_hypotheses(const std::vector<HypothesisReport>& hs, Result& res) {
  double worst = std::numeric_limits<double>::infinity();
  bool holds = true;
  for (const auto& h : hs) {
    worst = std::min(worst, h.worst_margin);
    holds = holds && h.holds_on_sample;
    res.reports.push_back(hypothesis_json(h));
  }
  res.summary["worst_margin"] = hs.empty() ? json(nullptr) : json(worst);
  res.summary["status"] = holds ? "holds" : "violated";
  if (!holds) res.code = kExitViolated;
}

void data_summary(Result& res) {
  res.summary["worst_margin"] = nullptr;
  res.summary["status"] = "data";
}

void flatten(const json& v, const std::string& key, std::vector<std::pair<std::string, std::string>>& cells) {
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) flatten(x, key.empty() ? k : key + "." + k, cells);
  } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    cells.emplace_back(key + ".re", v[0].dump());
    cells.emplace_back(key + ".im", v[1].dump());
  } else if (v.is_null()) {
    cells.emplace_back(key, "");
  } else if (v.is_string()) {
    cells.emplace_back(key, v.get<std::string>());
  } else {
    cells.emplace_back(key, v.dump());
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string to_csv(const json& reports) {
  std::vector<std::string> columns;
  std::vector<std::map<std::string, std::string>> rows;
  for (const auto& r : reports) {
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(r, "", cells);
    std::map<std::string, std::string> row;
    for (auto& [k, v] : cells) {
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);
      row[k] = std::move(v);
    }
    rows.push_back(std::move(row));
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_cell(columns[i]);
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const auto it = row.find(columns[i]);
      os << (i ? "," : "") << (it == row.end() ? "" : csv_cell(it->second));
    }
    os << "\n";
  }
  return os.str();
}

void write(const Common& c, const Result& res, std::ostream& out) {
  std::string text;
  if (c.format == "csv") {
    text = to_csv(res.reports);
  } else {
    json doc;
    doc["config"] = res.config;
    doc["reports"] = res.reports;
    doc["summary"] = res.summary;
    text = doc.dump(2) + "\n";
  }
  if (c.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output, std::ios::binary);
  if (!f) throw UsageError("cannot open " + c.output);
  f << text;
}

struct Subcommand {
  CLI::App* app = nullptr;
  Common common;
  std::function<void(Subcommand&, Result&)> run;
};

}  // namespace

int dispatch(const std::vector<std::string>& args) { return dispatch(args, std::cout, std::cerr); }

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks for harmonic and elliptic maps of the unit disk", "diskmap"};
  app.require_subcommand(1, 1);
  std::vector<std::unique_ptr<Subcommand>> subs;

  auto make = [&](const std::string& name, const std::string& help, bool source, bool grid, bool quad) {
    auto sc = std::make_unique<Subcommand>();
    sc->app = app.add_subcommand(name, help);
    if (source) add_source(sc->app, sc->common);
    if (grid) add_grid(sc->app, sc->common);
    if (quad) add_quad(sc->app, sc->common);
    add_output(sc->app, sc->common);
    subs.push_back(std::move(sc));
    return subs.back().get();
  };
  auto base_config = [](Subcommand& s, const Source* src, bool grid) {
    json cfg = {{"command", s.app->get_name()}};
    if (src) cfg["map"] = src->config;
    if (grid) cfg["grid"] = grid_json(s.common.grid);
    if (src && src->config["kind"] == "poisson") cfg["quadrature"] = quad_json(s.common.quad);
    cfg["format"] = s.common.format;
    return cfg;
  };

  // analyze
  double analyze_K = 1.0;
  {
    auto* s = make("analyze", "per-point metrics on the base grid", true, true, true);
    s->app->add_option("--K", analyze_K, "K used for the defect column")->capture_default_str();
    s->run = [&](Subcommand& self, Result& res) {
      const auto src = resolve(*self.app, self.common);
      res.config = base_config(self, &src, true);
      res.config["options"] = {{"K", analyze_K}};
      const auto pts = self.common.grid.points();
      double sup_sq = 0.0;
      double min_j = std::numeric_limits<double>::infinity();
      std::size_t failures = 0;
      for (const auto& p : pts) {
        json row = {{"z", cj(p.value())}};
        try {
          const auto j = src.map.jet(p.value());
          const auto m = jet_metrics(j);
          row["value"] = cj(j.value);
          row["dz"] = cj(j.dz);
          row["dzbar"] = cj(j.dzbar);
          row["op_norm"] = m.op_norm;
          row["lower_norm"] = m.lower_norm;
          row["jacobian"] = m.jacobian;
          row["dilatation"] = opt_json(m.dilatation);
          row["defect"] = pointwise_defect(j, analyze_K);
          row["error"] = nullptr;
          sup_sq = std::max(sup_sq, m.op_norm * m.op_norm);
          min_j = std::min(min_j, m.jacobian);
        } catch (const DomainError& e) {
          ++failures;
          for (const char* k : {"value", "dz", "dzbar"}) row[k] = json::array({nullptr, nullptr});
          for (const char* k : {"op_norm", "lower_norm", "jacobian", "dilatation", "defect"}) row[k] = nullptr;
          row["error"] = e.what();
        }
        res.reports.push_back(std::move(row));
      }
      data_summary(res);
      res.summary["sup_op_norm_squared"] = sup_sq;
      res.summary["min_jacobian"] = min_j;
      res.summary["failed_points"] = failures;
    };
  }

  // frontier
  std::vector<double> frontier_K{1.0};
  {
    auto* s = make("frontier", "minimal K' estimates for a list of K", true, true, true);
    s->app->add_option("--K", frontier_K, "values of K (comma separated or repeated)")->delimiter(',');
    s->run = [&](Subcommand& self, Result& res) {
      const auto src = resolve(*self.app, self.common);
      res.config = base_config(self, &src, true);
      res.config["options"] = {{"K", frontier_K}};
      const auto rep = ellipticity_frontier(src.map, frontier_K, self.common.grid);
      for (const auto& smp : rep.samples) {
        res.reports.push_back({{"K", smp.K}, {"kprime", smp.kprime}, {"witness", cj(smp.witness)}});
      }
      data_summary(res);
      res.summary["sup_dilatation"] = opt_json(rep.sup_dilatation);
      res.summary["dilatation_unbounded"] = !rep.sup_dilatation.has_value();
      res.summary["dilatation_witness"] = cj(rep.dilatation_witness);
      res.summary["label"] = rep.label;
    };
  }

  // bounds
  struct {
    double K = 1, Kprime = 0, R = 0, perimeter = 0, radial = 0;
    std::string perimeter_source = "boundary";
    std::size_t n_max = 8;
    std::size_t N = 32;
    bool all_points = false;
  } bo;
  {
    auto* s = make("bounds", "coefficient and derivative inequalities", true, true, true);
    s->app->add_option("--K", bo.K, "ellipticity K (default: measured)");
    s->app->add_option("--Kprime", bo.Kprime, "ellipticity K' (default 0)");
    s->app->add_option("--R", bo.R, "boundary length / 2 pi (default: measured)");
    s->app->add_option("--perimeter-sup", bo.perimeter, "sup of perimeters (default: measured)");
    s->app->add_option("--radial-sup", bo.radial, "sup of radial lengths (default: measured)");
    s->app->add_option("--perimeter-source", bo.perimeter_source, "boundary or ladder")
        ->check(CLI::IsMember({"boundary", "ladder"}))
        ->capture_default_str();
    s->app->add_option("--n-max", bo.n_max, "largest coefficient index")->capture_default_str();
    s->app->add_option("--N", bo.N, "coefficient extraction degree")->capture_default_str();
    s->app->add_flag("--all-points", bo.all_points, "print every derivative row, not only the worst per inequality");
    s->run = [&](Subcommand& self, Result& res) {
      const auto src = resolve(*self.app, self.common);
      res.config = base_config(self, &src, true);
      const auto& a = *self.app;
      MeasureOptions mo;
      if (a.count("--K")) mo.K = bo.K;
      if (a.count("--Kprime")) mo.Kprime = bo.Kprime;
      if (a.count("--R")) mo.R = bo.R;
      if (a.count("--perimeter-sup")) mo.perimeter_sup = bo.perimeter;
      if (a.count("--radial-sup")) mo.radial_sup = bo.radial;
      mo.perimeter_source = bo.perimeter_source == "ladder" ? PerimeterSource::Ladder : PerimeterSource::Boundary;
      mo.coeff.N = std::max(bo.N, bo.n_max);
      const auto ctx = measure_context(src.map, self.common.grid, mo);
      res.config["context"] = {{"K", ctx.params.K},
                               {"Kprime", ctx.params.Kprime},
                               {"R", opt_json(ctx.R)},
                               {"perimeter_sup", opt_json(ctx.perimeter_sup)},
                               {"radial_sup", opt_json(ctx.radial_sup)},
                               {"coefficients_valid", ctx.coeffs && ctx.coeffs->valid},
                               {"provenance", ctx.provenance}};
      res.config["options"] = {{"n_max", bo.n_max}, {"all_points", bo.all_points}};
      const auto coeff = coefficient_bounds_report(ctx, bo.n_max);
      const auto deriv = derivative_bounds_report(ctx, src.map, self.common.grid);
      std::vector<const BoundReport*> all;
      for (const auto& b : coeff.reports) {
        all.push_back(&b);
        res.reports.push_back(bound_json(b));
      }
      std::vector<std::string> order;
      std::map<std::string, const BoundReport*> worst;
      for (const auto& b : deriv.reports) {
        all.push_back(&b);
        if (bo.all_points || b.status == BoundStatus::Indeterminate) {
          res.reports.push_back(bound_json(b));
          continue;
        }
        auto it = worst.find(b.inequality_id);
        if (it == worst.end()) {
          order.push_back(b.inequality_id);
          worst[b.inequality_id] = &b;
        } else if (b.margin < it->second->margin) {
          it->second = &b;
        }
      }
      for (const auto& id : order) res.reports.push_back(bound_json(*worst[id]));
      summarize_bounds(all, res);
      json diags = json::array();
      for (const auto& d : coeff.diagnostics) diags.push_back(d);
      for (const auto& d : deriv.diagnostics) diags.push_back(d);
      if (ctx.coeffs && !ctx.coeffs->valid) diags.push_back("coefficient extraction flagged the map as non-harmonic");
      res.summary["diagnostics"] = diags;
    };
  }

  // coeffs
  CoeffOptions co;
  {
    auto* s = make("coeffs", "Taylor coefficients of the harmonic parts", true, false, true);
    s->app->add_option("--N", co.N, "largest index")->capture_default_str();
    s->app->add_option("--radii", co.radii, "extraction radii, comma separated")->delimiter(',');
    s->app->add_option("--tol", co.tolerance, "disagreement tolerance")->capture_default_str();
    s->run = [&](Subcommand& self, Result& res) {
      const auto src = resolve(*self.app, self.common);
      res.config = base_config(self, &src, false);
      res.config["options"] = {{"N", co.N}, {"radii", co.radii}, {"tolerance", co.tolerance}};
      const auto t = extract_coeffs(src.map, co);
      for (std::size_t n = 0; n <= t.degree(); ++n) {
        res.reports.push_back({{"n", n},
                               {"a", cj(t.a[n])},
                               {"bbar", cj(t.bbar[n])},
                               {"abs_a", std::abs(t.a[n])},
                               {"abs_b", std::abs(t.bbar[n])}});
      }
      res.summary["worst_margin"] = nullptr;
      res.summary["status"] = t.valid ? "data" : "invalid";
      res.summary["valid"] = t.valid;
      res.summary["disagreement"] = t.disagreement;
      res.summary["tolerance"] = t.tolerance;
      res.summary["radii_used"] = t.radii_used;
      res.summary["nodes"] = t.nodes;
      if (!t.valid) {
        res.code = kExitConvergence;
        res.warning = "coefficients disagree across radii (" + format_double(t.disagreement) +
                      "); the map is not harmonic or N is too small";
      }
    };
  }

  // length
  struct {
    std::string kind = "perimeter";
    std::vector<double> r{0.5};
    double theta = 0.0;
    std::size_t nodes = 0;
    bool sup = false;
  } lo;
  {
    auto* s = make("length", "perimeter, radial and boundary lengths", true, true, true);
    s->app->add_option("--kind", lo.kind, "perimeter, radial or boundary")
        ->check(CLI::IsMember({"perimeter", "radial", "boundary"}))
        ->capture_default_str();
    s->app->add_option("--r", lo.r, "radii, comma separated")->delimiter(',');
    s->app->add_option("--theta", lo.theta, "ray angle for radial lengths")->capture_default_str();
    s->app->add_option("--nodes", lo.nodes, "quadrature nodes (0 = default)")->capture_default_str();
    s->app->add_flag("--sup", lo.sup, "supremum over the radius ladder or the grid angles");
    s->run = [&](Subcommand& self, Result& res) {
      const auto src = resolve(*self.app, self.common);
      res.config = base_config(self, &src, lo.sup);
      res.config["options"] = {{"kind", lo.kind}, {"r", lo.r}, {"theta", lo.theta}, {"nodes", lo.nodes}, {"sup", lo.sup}};
      data_summary(res);
      if (lo.kind == "boundary") {
        const auto b = lo.nodes ? boundary_length(src.map, lo.nodes) : boundary_length(src.map);
        res.reports.push_back(length_json(b));
        const auto shape = boundary_shape(src.map);
        res.summary["R"] = b.value / (2.0 * std::numbers::pi);
        res.summary["total_turning"] = shape.total_turning;
        res.summary["min_turn"] = shape.min_turn;
        res.summary["convex"] = shape.convex;
        return;
      }
      const auto kind = lo.kind == "radial" ? LengthKind::Radial : LengthKind::Perimeter;
      if (lo.sup) {
        const auto s = length_sup(src.map, kind, self.common.grid);
        for (const auto& r : s.ladder) res.reports.push_back(length_json(r));
        res.summary["sup"] = s.value;
        res.summary["argument"] = s.argument;
        res.summary["monotone"] = s.monotone;
        res.summary["limit"] = s.limit;
        res.summary["label"] = s.label;
        return;
      }
      for (double r : lo.r) {
        if (kind == LengthKind::Radial) {
          res.reports.push_back(length_json(lo.nodes ? radial_length(src.map, r, lo.theta, lo.nodes)
                                                     : radial_length(src.map, r, lo.theta)));
        } else {
          res.reports.push_back(length_json(lo.nodes ? perimeter(src.map, r, lo.nodes) : perimeter(src.map, r)));
        }
      }
    };
  }

  // solve
  std::string solve_exact;
  {
    auto* s = make("solve", "sample a Poisson solution and its Laplacian residual", true, true, true);
    s->common.grid.radial_count = 6;
    s->common.grid.angular_count = 12;
    s->common.grid.max_radius = 0.9;
    s->common.grid.refine_rounds = 0;
    s->app->add_option("--exact", solve_exact, "closed form to compare against");
    s->run = [&](Subcommand& self, Result& res) {
      if (!self.app->count("--psi")) throw UsageError("solve needs --psi (and optionally --g)");
      const auto src = resolve(*self.app, self.common);
      res.config = base_config(self, &src, true);
      std::optional<Expr> exact;
      if (!solve_exact.empty()) {
        exact = parse_expr(solve_exact);
        res.config["options"] = {{"exact", solve_exact}};
      }
      const auto* poisson = as_poisson(src.map);
      double max_res = 0.0;
      double max_err = 0.0;
      for (const auto& p : self.common.grid.points()) {
        const cplx v = src.map.value(p.value());
        json row = {{"z", cj(p.value())}, {"value", cj(v)}};
        if (disk_distance(p) >= 2.0 * kLaplacianStep) {
          const double r = laplacian_residual(src.map, poisson->g(), p);
          row["residual"] = r;
          max_res = std::max(max_res, r);
        } else {
          row["residual"] = nullptr;
        }
        if (exact) {
          const double e = std::abs(v - exact->value(p.value()));
          row["error"] = e;
          max_err = std::max(max_err, e);
        }
        res.reports.push_back(std::move(row));
      }
      data_summary(res);
      res.summary["max_residual"] = max_res;
      if (exact) res.summary["max_error"] = max_err;
    };
  }

  // check-thm11
  struct {
    std::string omega = "t";
    double alpha = 1.0, C1 = 1.0, C2 = 1.0, C4 = 1.0, C5 = 1.0, pair_radius = 0.95;
    std::size_t pairs = 64, line_nodes = 65;
    unsigned seed = 1;
  } to;
  {
    auto* s = make("check-thm11", "difference-quotient and segment-integral hypotheses", true, true, true);
    s->app->add_option("--omega", to.omega, "majorant in t")->capture_default_str();
    s->app->add_option("--alpha", to.alpha, "exponent in [0, 1]")->capture_default_str();
    s->app->add_option("--C1", to.C1, "difference-quotient constant")->capture_default_str();
    s->app->add_option("--C2", to.C2, "segment-integral constant")->capture_default_str();
    s->app->add_option("--C4", to.C4, "also run the two-condition lemma with this pair constant");
    s->app->add_option("--C5", to.C5, "pointwise constant of the two-condition lemma");
    s->app->add_option("--pairs", to.pairs, "number of sample pairs")->capture_default_str();
    s->app->add_option("--seed", to.seed, "sample seed")->capture_default_str();
    s->app->add_option("--pair-radius", to.pair_radius, "sample pairs lie in this disk")->capture_default_str();
    s->app->add_option("--line-nodes", to.line_nodes, "Simpson nodes on each segment")->capture_default_str();
    s->run = [&](Subcommand& self, Result& res) {
      const auto src = resolve(*self.app, self.common);
      const bool lemma = self.app->count("--C4") || self.app->count("--C5");
      res.config = base_config(self, &src, lemma);
      res.config["options"] = {{"omega", to.omega},     {"alpha", to.alpha}, {"C1", to.C1},
                               {"C2", to.C2},           {"pairs", to.pairs}, {"seed", to.seed},
                               {"pair_radius", to.pair_radius}, {"line_nodes", to.line_nodes}};
      if (lemma) {
        res.config["options"]["C4"] = to.C4;
        res.config["options"]["C5"] = to.C5;
      }
      const auto omega = MajorantSpec::parse(to.omega);
      omega.require_valid();
      const auto pairs = sample_pairs(to.pairs, to.seed, to.pair_radius);
      std::vector<HypothesisReport> hs{check_theorem11(src.map, omega, to.alpha, to.C1, to.C2, pairs, to.line_nodes)};
      if (lemma) hs.push_back(lemma22_check(src.map, omega, to.alpha, to.C4, to.C5, pairs, self.common.grid));
      summarize_hypotheses(hs, res);
      res.summary["assumption"] = "convexity of the image is assumed, not verified";
    };
  }

  // check-prop14
  struct {
    double C3 = 1.0, pair_radius = 0.95;
    std::size_t pairs = 256;
    unsigned seed = 1;
  } po;
  {
    auto* s = make("check-prop14", "comparison with the analytic part h1", true, false, true);
    s->app->add_option("--C3", po.C3, "constant in [1, 2)")->required();
    s->app->add_option("--pairs", po.pairs, "number of sample pairs")->capture_default_str();
    s->app->add_option("--seed", po.seed, "sample seed")->capture_default_str();
    s->app->add_option("--pair-radius", po.pair_radius, "sample pairs lie in this disk")->capture_default_str();
    s->run = [&](Subcommand& self, Result& res) {
      const auto src = resolve(*self.app, self.common);
      res.config = base_config(self, &src, false);
      res.config["quadrature"] = quad_json(self.common.quad);
      res.config["options"] = {{"C3", po.C3}, {"pairs", po.pairs}, {"seed", po.seed}, {"pair_radius", po.pair_radius}};
      const auto pairs = sample_pairs(po.pairs, po.seed, po.pair_radius);
      summarize_hypotheses({check_prop14(src.map, po.C3, pairs, src.g, self.common.quad)}, res);
    };
  }

  // check-subharmonic
  std::string phi_text;
  {
    auto* s = make("check-subharmonic", "radial integral bound for a subharmonic weight", false, true, false);
    s->app->add_option("--phi", phi_text, "real-valued weight in z")->required();
    s->run = [&](Subcommand& self, Result& res) {
      res.config = base_config(self, nullptr, true);
      res.config["options"] = {{"phi", phi_text}};
      const auto rep = subharmonic_radial_check(parse_expr(phi_text), self.common.grid);
      for (std::size_t i = 0; i < rep.radii.size(); ++i) {
        res.reports.push_back({{"r", rep.radii[i]}, {"A", rep.values[i]}, {"margin", rep.radii[i] - rep.values[i]}});
      }
      res.summary["worst_margin"] = rep.conclusion.margin;
      res.summary["hypothesis_worst"] = rep.hypothesis_worst;
      res.summary["hypothesis_holds"] = rep.hypothesis_holds;
      res.summary["conclusion"] = bound_json(rep.conclusion);
      if (!rep.hypothesis_holds) {
        res.summary["status"] = "hypothesis fails";
      } else if (rep.conclusion.status == BoundStatus::Violated) {
        res.summary["status"] = "violated";
        res.code = kExitViolated;
      } else {
        res.summary["status"] = "holds";
      }
    };
  }

  // catalog
  {
    auto* s = make("catalog", "list builtin maps and their parameters", false, false, false);
    s->run = [&](Subcommand& self, Result& res) {
      res.config = base_config(self, nullptr, false);
      for (const auto& e : catalog_entries()) {
        res.reports.push_back({{"name", e.name}, {"defaults", e.defaults}, {"summary", e.summary}});
      }
      data_summary(res);
    };
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kExitUsage;
  }

  for (auto& s : subs) {
    if (!s->app->parsed()) continue;
    try {
      Result res;
      s->run(*s, res);
      write(s->common, res, out);
      if (!res.warning.empty()) err << "diskmap: " << res.warning << "\n";
      return res.code;
    } catch (const ConvergenceError& e) {
      err << "diskmap: " << e.what() << "\n";
      return kExitConvergence;
    } catch (const Error& e) {
      err << "diskmap: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return kExitUsage;
}

}  // namespace diskmap
