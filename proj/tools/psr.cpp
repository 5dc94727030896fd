// Command-line surface for the PSR hypersurface toolkit: closedness checks,
// standard forms at a point, ray evolution, limit extraction and
// classification, symmetry bounds, chart-domain plots, and metric samples.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "psr/catalog.hpp"
#include "psr/evolution.hpp"
#include "psr/examples.hpp"
#include "psr/hyperbolicity.hpp"
#include "psr/json_io.hpp"
#include "psr/metric.hpp"
#include "psr/point_transform.hpp"

namespace {

using psr::Json;
using psr::Matrix;
using psr::Vector;

std::uint64_t resolve_seed(std::uint64_t cli_seed, bool cli_seed_set) {
  if (cli_seed_set) return cli_seed;
  if (const char* env = std::getenv("PSR_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw psr::ParseError("PSR_SEED is not an integer");
    }
  }
  return psr::kDefaultSeed;
}

Vector parse_csv_numbers(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (...) {
      throw psr::ParseError("invalid number in list: " + item);
    }
  }
  Vector v(static_cast<int>(vals.size()));
  for (int i = 0; i < v.size(); ++i) v[i] = vals[static_cast<std::size_t>(i)];
  return v;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw psr::Error("cannot open output file: " + out_path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

void emit_json(const Json& j, const std::string& out_path) { emit(j.dump(2), out_path); }

psr::StandardFormPoly load_standard(const std::string& path) {
  return psr::extract_standard(psr::parse_polynomial_file(path));
}

Json closedness_json(const psr::ClosednessVerdict& v) {
  Json argmax = Json::array();
  for (const auto& p : v.argmax) argmax.push_back(psr::vector_to_json(p));
  return Json{{"status", psr::to_string(v.status)},
              {"max_value", v.max_value},
              {"margin", v.margin},
              {"argmax", argmax}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"projective special real hypersurface toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::uint64_t seed = psr::kDefaultSeed;
  bool seed_set = false;
  app.add_option("--seed", seed, "random seed (overrides PSR_SEED)")
      ->each([&](const std::string&) { seed_set = true; });
  std::string out_path;
  app.add_option("--out", out_path, "write output to a file instead of stdout");
  bool force_json = false;
  app.add_flag("--json", force_json, "machine-readable output everywhere");

  // check
  std::string check_file;
  double sing_tol = 1e-6;
  auto* cmd_check = app.add_subcommand("check", "closedness / singularity verdict");
  cmd_check->add_option("poly", check_file)->required();
  cmd_check->add_option("--sing-tol", sing_tol, "tolerance on |max - 2/(3 sqrt 3)|");

  // standard-form
  std::string sfp_file, sfp_point;
  auto* cmd_sf = app.add_subcommand("standard-form", "point-moving transform and P3 at a point");
  cmd_sf->add_option("poly", sfp_file)->required();
  cmd_sf->add_option("--point", sfp_point, "ambient point x,y1,...,yn")->required();

  // evolve
  std::string ev_file, ev_dir, ev_ts;
  int ev_samples = 9;
  auto* cmd_evolve = app.add_subcommand("evolve", "standard form along the central ray curve");
  cmd_evolve->add_option("poly", ev_file)->required();
  cmd_evolve->add_option("--dir", ev_dir, "unit direction v1,...,vn")->required();
  cmd_evolve->add_option("--samples", ev_samples, "number of uniform curve samples");
  cmd_evolve->add_option("--t", ev_ts, "explicit comma-separated curve parameters");

  // limit
  std::string lim_file, lim_dir;
  auto* cmd_limit = app.add_subcommand("limit", "extrapolated limit polynomial");
  cmd_limit->add_option("poly", lim_file)->required();
  cmd_limit->add_option("--dir", lim_dir, "unit direction v1,...,vn")->required();

  // classify
  std::string cls_file;
  double class_tol = 1e-4;
  auto* cmd_classify = app.add_subcommand("classify", "match a limit cubic against the catalog");
  cmd_classify->add_option("poly", cls_file)->required();
  cmd_classify->add_option("--class-tol", class_tol, "structural matching tolerance");

  // symmetry-dim
  std::string sym_file;
  auto* cmd_sym = app.add_subcommand("symmetry-dim", "symmetry group dimension lower bound");
  cmd_sym->add_option("poly", sym_file)->required();

  // dom-plot
  std::string dom_file;
  int dom_res = 256;
  auto* cmd_dom = app.add_subcommand("dom-plot", "chart-domain boundary radii as CSV");
  cmd_dom->add_option("poly", dom_file)->required();
  cmd_dom->add_option("--resolution", dom_res, "number of sampled directions");

  // metric
  std::string met_file, met_point;
  auto* cmd_metric = app.add_subcommand("metric", "centro-affine metric in the central chart");
  cmd_metric->add_option("poly", met_file)->required();
  cmd_metric->add_option("--point", met_point, "chart point y1,...,yn")->required();

  // examples
  std::string ex_name;
  double ex_t = std::numeric_limits<double>::quiet_NaN();
  double ex_b = 0.2, ex_c = 1.0, ex_a = -2.0 / (3.0 * std::sqrt(3.0));
  int ex_n = 3, ex_m = 1;
  auto* cmd_ex = app.add_subcommand("examples", "registry of named inputs");
  cmd_ex->add_option("name", ex_name,
                     "one of: dim1_homogeneous, motivating, ker01, ker01_reduced, "
                     "sqrt2_family, kerm1, kerm1_reduced, catalog, generic_limit")
      ->required();
  cmd_ex->add_option("--t", ex_t, "curve parameter (motivating: print P3|_t)");
  cmd_ex->add_option("--b", ex_b, "family parameter b");
  cmd_ex->add_option("--c", ex_c, "cross-section parameter c");
  cmd_ex->add_option("--a", ex_a, "curve cubic coefficient a");
  cmd_ex->add_option("--n", ex_n, "manifold dimension");
  cmd_ex->add_option("--m", ex_m, "slice count m");

  CLI11_PARSE(app, argc, argv);
  (void)force_json;  // all outputs are machine-readable already

  try {
    const std::uint64_t rseed = resolve_seed(seed, seed_set);

    if (*cmd_check) {
      const auto sf = load_standard(check_file);
      emit_json(closedness_json(psr::closedness(sf, sing_tol, rseed)), out_path);
    } else if (*cmd_sf) {
      const psr::CubicForm h = psr::parse_polynomial_file(sfp_file);
      const Vector p = parse_csv_numbers(sfp_point);
      const auto at = psr::standard_form_at(h, p, psr::GaugePolicy::fixed());
      emit_json(Json{{"A", psr::matrix_to_json(at.transform.matrix())},
                     {"P3", psr::standard_form_to_json(at.sf)}},
                out_path);
    } else if (*cmd_evolve) {
      const auto sf = load_standard(ev_file);
      const Vector v = parse_csv_numbers(ev_dir);
      std::vector<double> schedule;
      if (!ev_ts.empty()) {
        const Vector ts = parse_csv_numbers(ev_ts);
        for (int i = 0; i < ts.size(); ++i) schedule.push_back(ts[i]);
      } else {
        auto [sf2, O] = psr::reorient(sf, v.normalized());
        const double R = psr::RayCubic(sf2.p3.coeff(sf.n - 1, sf.n - 1, sf.n - 1)).horizon();
        for (int i = 0; i < ev_samples; ++i)
          schedule.push_back(0.98 * R * i / std::max(1, ev_samples - 1));
      }
      const auto trace = psr::evolve(sf, v.normalized(), schedule);
      Json samples = Json::array();
      for (const auto& s : trace.samples)
        samples.push_back(Json{{"t", s.t},
                               {"p3", psr::standard_form_to_json(s.sf)},
                               {"transform", psr::matrix_to_json(s.transform)}});
      emit_json(Json{{"direction", psr::vector_to_json(trace.direction)},
                     {"reorientation", psr::matrix_to_json(trace.reorientation)},
                     {"horizon", trace.horizon},
                     {"negative_horizon", trace.negative_horizon},
                     {"samples", samples}},
                out_path);
    } else if (*cmd_limit) {
      const auto sf = load_standard(lim_file);
      const Vector v = parse_csv_numbers(lim_dir);
      const auto lim = psr::extract_limit(sf, v.normalized(), rseed);
      emit_json(Json{{"limit_p3",
                      psr::standard_form_to_json(psr::StandardFormPoly(sf.n, lim.limit_p3))},
                     {"error_estimate", lim.error_estimate},
                     {"samples_used", lim.samples_used}},
                out_path);
    } else if (*cmd_classify) {
      const auto sf = load_standard(cls_file);
      const auto res = psr::classify(sf.p3, class_tol, rseed);
      Json fs = Json::array();
      for (const auto& F : res.form.F) fs.push_back(psr::matrix_to_json(F));
      emit_json(Json{{"variant", psr::to_string(res.form.variant())},
                     {"n", res.form.n},
                     {"m", res.form.m},
                     {"F", fs},
                     {"residual", res.residual},
                     {"aligning_map", psr::matrix_to_json(res.aligning_map)}},
                out_path);
    } else if (*cmd_sym) {
      const auto sf = load_standard(sym_file);
      emit(std::to_string(psr::symmetry_dim_lower_bound(sf)), out_path);
    } else if (*cmd_dom) {
      const auto sf = load_standard(dom_file);
      std::ostringstream csv;
      psr::dom_boundary_emit(sf, dom_res, csv, rseed);
      emit(csv.str(), out_path);
    } else if (*cmd_metric) {
      const auto sf = load_standard(met_file);
      const Vector y = parse_csv_numbers(met_point);
      const auto ms = psr::centro_affine_metric(sf, y);
      emit_json(Json{{"y", psr::vector_to_json(ms.base_y)}, {"g", psr::matrix_to_json(ms.g)}},
                out_path);
    } else if (*cmd_ex) {
      namespace ex = psr::examples;
      if (ex_name == "dim1_homogeneous") {
        emit_json(psr::standard_form_to_json(ex::dim1_homogeneous()), out_path);
      } else if (ex_name == "dim1") {
        emit_json(psr::standard_form_to_json(ex::dim1(ex_a)), out_path);
      } else if (ex_name == "motivating") {
        const auto sf = ex::motivating();
        if (std::isfinite(ex_t)) {
          Vector v(2);
          v << 1.0, 0.0;  // the paper curve moves along the first y-coordinate
          const auto trace = psr::evolve(sf, v, {ex_t});
          emit_json(Json{{"t", ex_t},
                         {"p3", psr::standard_form_to_json(trace.samples.front().sf)}},
                    out_path);
        } else {
          emit_json(psr::standard_form_to_json(sf), out_path);
        }
      } else if (ex_name == "ker01") {
        emit_json(psr::standard_form_to_json(ex::ker01(ex_n)), out_path);
      } else if (ex_name == "ker01_reduced") {
        emit_json(psr::standard_form_to_json(psr::StandardFormPoly(2, ex::ker01_reduced(ex_c))),
                  out_path);
      } else if (ex_name == "sqrt2_family") {
        emit_json(psr::standard_form_to_json(ex::sqrt2_family(ex_b, ex_n, ex_m)), out_path);
      } else if (ex_name == "kerm1") {
        emit_json(psr::standard_form_to_json(ex::kerm1(ex_n, ex_m)), out_path);
      } else if (ex_name == "kerm1_reduced") {
        emit_json(psr::standard_form_to_json(psr::StandardFormPoly(3, ex::kerm1_reduced(ex_c))),
                  out_path);
      } else if (ex_name == "catalog") {
        emit_json(psr::standard_form_to_json(ex::random_catalog(ex_n, ex_m, rseed)), out_path);
      } else if (ex_name == "generic_limit") {
        emit_json(psr::standard_form_to_json(ex::generic_limit(ex_n)), out_path);
      } else {
        throw psr::Error("unknown example name: " + ex_name);
      }
    }
    return 0;
  } catch (const psr::NotStandardForm& e) {
    emit_json(Json{{"error", "NotStandardForm"},
                   {"message", e.what()},
                   {"worst_offender", e.worst_offender}},
              "");
    return 1;
  } catch (const psr::ExtrapolationUnstable& e) {
    emit_json(Json{{"error", "ExtrapolationUnstable"},
                   {"message", e.what()},
                   {"per_coefficient_estimates", e.per_coefficient_estimates}},
              "");
    return 1;
  } catch (const psr::Error& e) {
    std::string kind = "Error";
    if (dynamic_cast<const psr::ParseError*>(&e)) kind = "ParseError";
    else if (dynamic_cast<const psr::SchemaError*>(&e)) kind = "SchemaError";
    else if (dynamic_cast<const psr::NotHyperbolic*>(&e)) kind = "NotHyperbolic";
    else if (dynamic_cast<const psr::NoClosedHorizon*>(&e)) kind = "NoClosedHorizon";
    else if (dynamic_cast<const psr::NoCatalogMatch*>(&e)) kind = "NoCatalogMatch";
    else if (dynamic_cast<const psr::OutsideDomain*>(&e)) kind = "OutsideDomain";
    else if (dynamic_cast<const psr::NotConverged*>(&e)) kind = "NotConverged";
    else if (dynamic_cast<const psr::DimensionMismatch*>(&e)) kind = "DimensionMismatch";
    else if (dynamic_cast<const psr::SingularTransform*>(&e)) kind = "SingularTransform";
    emit_json(Json{{"error", kind}, {"message", e.what()}}, "");
    return 1;
  } catch (const std::exception& e) {
    emit_json(Json{{"error", "Internal"}, {"message", e.what()}}, "");
    return 1;
  }
}
