// ghtool: command-line front end for the ghkit library.
//
// Exit status: 0 on success, 1 on bad input, 2 when a certificate, a bound
// table or the acceptance suite fails verification.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ghkit/acceptance.hpp"
#include "ghkit/bounds.hpp"
#include "ghkit/error.hpp"
#include "ghkit/exact.hpp"
#include "ghkit/io.hpp"
#include "ghkit/nonlinearity.hpp"
#include "ghkit/parallel.hpp"
#include "ghkit/segment_circle.hpp"

namespace {

constexpr int kInputError = 1;
constexpr int kVerificationFailed = 2;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    ghkit::io::write_file(path, text);
  }
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

void add_grid_flags(CLI::App* cmd, ghkit::Grids& g) {
  cmd->add_option("--n-circle", g.n_circle, "Circle grid size (even)")->capture_default_str();
  cmd->add_option("--m-grid", g.m_grid, "Segment grid intervals")->capture_default_str();
  cmd->add_option("--pl-step", g.pl_step, "Sampling step for piecewise-linear certificates")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gromov-Hausdorff toolkit for finite metric spaces and the segment/circle family"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker thread cap (0 = all cores)");

  // make-space
  auto* make = app.add_subcommand("make-space", "Write a model space (segment, circle, whisker, graph)");
  std::string make_kind;
  double make_lambda = 0.0;
  std::size_t make_points = 0;
  std::size_t make_n_whisker = 0;
  std::string make_graph;
  std::string make_format = "json";
  std::string make_out;
  std::string make_graph_out;
  ghkit::Grids make_grids;
  make->add_option("--kind", make_kind, "segment | circle | whisker | graph")
      ->required()
      ->check(CLI::IsMember({"segment", "circle", "whisker", "graph"}));
  make->add_option("--lambda", make_lambda, "Segment length / whisker-graph parameter");
  make->add_option("--points", make_points, "Segment points (default m-grid + 1)");
  make->add_option("--n-whisker", make_n_whisker, "Vertices per whisker (default: circle spacing)");
  make->add_option("--graph", make_graph, "Graph JSON for --kind graph")->check(CLI::ExistingFile);
  make->add_option("--format", make_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  make->add_option("--out", make_out, "Output path (default stdout)");
  make->add_option("--graph-out", make_graph_out, "Also write the whisker graph as graph JSON");
  add_grid_flags(make, make_grids);

  // distortion
  auto* dist = app.add_subcommand("distortion", "Distortion of a correspondence or PL relation");
  std::string dist_x, dist_y, dist_pairs, dist_pl;
  double dist_step = ghkit::kPi / 720.0;
  dist->add_option("--x", dist_x, "First space")->check(CLI::ExistingFile);
  dist->add_option("--y", dist_y, "Second space")->check(CLI::ExistingFile);
  dist->add_option("--pairs", dist_pairs, "Correspondence JSON")->check(CLI::ExistingFile);
  dist->add_option("--pl", dist_pl, "PL correspondence JSON (instead of --x/--y/--pairs)")
      ->check(CLI::ExistingFile);
  dist->add_option("--step", dist_step, "Sampling step for --pl")->capture_default_str();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "All applicable lower/upper bounds as JSON lines");
  std::string bounds_x, bounds_y, bounds_inv = "auto", bounds_witness;
  bounds->add_option("--x", bounds_x, "First space")->required()->check(CLI::ExistingFile);
  bounds->add_option("--y", bounds_y, "Second space")->required()->check(CLI::ExistingFile);
  bounds->add_option("--involution", bounds_inv, "auto | none")->check(CLI::IsMember({"auto", "none"}));
  bounds->add_option("--c-witness", bounds_witness, "Lipschitz witness certifying c(Y)")->check(CLI::ExistingFile);

  // exact
  auto* exact = app.add_subcommand("exact", "Exact d_GH of two small spaces");
  std::string exact_x, exact_y;
  ghkit::SearchOptions exact_opts;
  exact->add_option("--x", exact_x, "First space")->required()->check(CLI::ExistingFile);
  exact->add_option("--y", exact_y, "Second space")->required()->check(CLI::ExistingFile);
  exact->add_option("--budget", exact_opts.node_budget, "Search node budget")->capture_default_str();
  exact->add_option("--max-points", exact_opts.max_points, "Refuse larger inputs")->capture_default_str();

  // cx
  auto* cx = app.add_subcommand("cx", "Nonlinearity degree c(X) with a Lipschitz witness");
  std::string cx_x, cx_out;
  bool cx_exact = false;
  ghkit::HeuristicNonlinearityOptions cx_opts;
  std::size_t cx_max_points = 8;
  cx->add_option("--x", cx_x, "Space")->required()->check(CLI::ExistingFile);
  cx->add_flag("--exact", cx_exact, "Exact solver (small spaces)");
  cx->add_option("--max-points", cx_max_points, "Size limit for --exact")->capture_default_str();
  cx->add_option("--restarts", cx_opts.restarts, "Heuristic restarts")->capture_default_str();
  cx->add_option("--seed", cx_opts.seed, "Heuristic seed")->capture_default_str();
  cx->add_option("--out", cx_out, "Witness output path (default stdout)");

  // certify
  auto* certify = app.add_subcommand("certify", "Certificate for d_GH(segment of length lambda, circle)");
  double cert_lambda = 0.0;
  std::string cert_out, cert_check;
  ghkit::Grids cert_grids;
  certify->add_option("--lambda", cert_lambda, "Segment length");
  certify->add_option("--out", cert_out, "Certificate JSON path (default stdout)");
  certify->add_option("--check", cert_check, "Replay an existing certificate instead")->check(CLI::ExistingFile);
  add_grid_flags(certify, cert_grids);

  // sweep
  auto* sw = app.add_subcommand("sweep", "Formula, bounds and regime over a range of lambda (CSV)");
  double sw_from = 0.0, sw_to = 3.0 * ghkit::kPi;
  std::size_t sw_steps = 100;
  std::string sw_out;
  ghkit::Grids sw_grids;
  sw->add_option("--from", sw_from, "First lambda")->capture_default_str();
  sw->add_option("--to", sw_to, "Last lambda")->capture_default_str();
  sw->add_option("--steps", sw_steps, "Number of lambda values")->capture_default_str();
  sw->add_option("--out", sw_out, "CSV path (default stdout)");
  add_grid_flags(sw, sw_grids);

  // verify-all
  auto* verify = app.add_subcommand("verify-all", "Run the acceptance suite and print a pass/fail table");
  std::vector<int> verify_only;
  ghkit::AcceptanceOptions verify_opts;
  verify->add_option("--only", verify_only, "Run only these criteria")->check(CLI::Range(1, 8));
  verify->add_option("--seed", verify_opts.seed, "Seed for the randomized criteria")->capture_default_str();
  add_grid_flags(verify, verify_opts.grids);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }
  ghkit::set_max_threads(threads);

  try {
    if (*make) {
      if (make_kind == "whisker") {
        const double step = 2.0 * ghkit::kPi / static_cast<double>(make_grids.n_circle);
        std::size_t nw = make_n_whisker;
        if (nw == 0) nw = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((make_lambda - ghkit::kPi) / 2.0 / step - 1e-9)));
        const auto w = ghkit::whisker_graph(make_lambda, make_grids.n_circle, nw);
        if (!make_graph_out.empty()) ghkit::io::write_file(make_graph_out, with_newline(ghkit::io::graph_to_json(w.graph)));
        emit(make_out, with_newline(make_format == "csv" ? ghkit::io::space_to_csv(w.space) : ghkit::io::space_to_json(w.space)));
        return 0;
      }
      std::optional<ghkit::FiniteMetricSpace> x;
      if (make_kind == "segment") {
        x = ghkit::segment_space(make_lambda, make_points ? make_points : make_grids.m_grid + 1);
      } else if (make_kind == "circle") {
        x = ghkit::circle_space(make_points ? make_points : make_grids.n_circle);
      } else {
        if (make_graph.empty()) throw ghkit::Error(ghkit::Errc::invalid_argument, "--kind graph needs --graph");
        x = ghkit::shortest_path_metric(ghkit::io::graph_from_json(ghkit::io::read_file(make_graph)));
      }
      emit(make_out, with_newline(make_format == "csv" ? ghkit::io::space_to_csv(*x) : ghkit::io::space_to_json(*x)));
      return 0;
    }

    if (*dist) {
      char buf[128];
      if (!dist_pl.empty()) {
        const auto p = ghkit::io::pl_from_json(ghkit::io::read_file(dist_pl));
        const auto d = ghkit::pl_distortion(p, dist_step);
        std::snprintf(buf, sizeof buf, "{\"distortion\":%.12g,\"error_bound\":%.12g,\"samples\":%zu}\n", d.value,
                      d.error_bound, d.samples);
      } else {
        if (dist_x.empty() || dist_y.empty() || dist_pairs.empty()) {
          throw ghkit::Error(ghkit::Errc::invalid_argument, "need --x, --y and --pairs (or --pl)");
        }
        const auto x = ghkit::io::load_space(dist_x);
        const auto y = ghkit::io::load_space(dist_y);
        const auto r = ghkit::io::correspondence_from_json(ghkit::io::read_file(dist_pairs), x.size(), y.size());
        const double d = ghkit::distortion(x, y, r);
        std::snprintf(buf, sizeof buf, "{\"distortion\":%.12g,\"half\":%.12g}\n", d, d / 2.0);
      }
      std::cout << buf;
      return 0;
    }

    if (*bounds) {
      const auto x = ghkit::io::load_space(bounds_x);
      const auto y = ghkit::io::load_space(bounds_y);
      ghkit::BoundsOptions opts;
      opts.auto_involution = bounds_inv == "auto";
      if (!bounds_witness.empty()) opts.witness_y = ghkit::io::witness_from_json(ghkit::io::read_file(bounds_witness));
      for (const auto& r : ghkit::best_bounds(x, y, opts)) {
        if (!ghkit::replay_certificate(r, x, y)) throw VerificationFailure("certificate of " + r.source + " does not replay");
        std::cout << ghkit::io::bound_to_json_line(r) << '\n';
      }
      return 0;
    }

    if (*exact) {
      const auto x = ghkit::io::load_space(exact_x);
      const auto y = ghkit::io::load_space(exact_y);
      std::cout << ghkit::io::exact_to_json(ghkit::gh_exact(x, y, exact_opts)) << '\n';
      return 0;
    }

    if (*cx) {
      const auto x = ghkit::io::load_space(cx_x);
      const auto r = cx_exact ? ghkit::c_exact(x, {cx_max_points, ghkit::kDefaultOptTolerance})
                              : ghkit::c_heuristic(x, cx_opts);
      emit(cx_out, with_newline(ghkit::io::witness_to_json(r.witness)));
      return 0;
    }

    if (*certify) {
      if (!cert_check.empty()) {
        const auto c = ghkit::io::certificate_from_json(ghkit::io::read_file(cert_check));
        const double replayed = ghkit::replay_measured(c);
        const bool ok = replayed / 2.0 <= ghkit::gh_formula(c.lambda) + c.slack &&
                        std::abs(replayed - c.measured) <= 1e-9 * (1.0 + c.measured);
        std::printf("{\"lambda\":%.12g,\"replayed\":%.12g,\"claimed\":%.12g,\"ok\":%s}\n", c.lambda, replayed,
                    c.measured, ok ? "true" : "false");
        return ok ? 0 : kVerificationFailed;
      }
      if (certify->count("--lambda") == 0) throw ghkit::Error(ghkit::Errc::invalid_argument, "--lambda is required");
      emit(cert_out, with_newline(ghkit::io::certificate_to_json(ghkit::certificate(cert_lambda, cert_grids))));
      return 0;
    }

    if (*sw) {
      const auto rows = ghkit::sweep(sw_from, sw_to, sw_steps, sw_grids);
      std::ostringstream csv;
      ghkit::write_sweep_csv(csv, rows);
      emit(sw_out, csv.str());
      for (const auto& r : rows) {
        if (!r.consistent()) throw VerificationFailure("sweep row at lambda " + std::to_string(r.lambda) + " is inconsistent");
      }
      return 0;
    }

    if (*verify) {
      if (verify_only.empty()) verify_only = {1, 2, 3, 4, 5, 6, 7, 8};
      bool all = true;
      for (int id : verify_only) {
        const auto r = ghkit::run_criterion(id, verify_opts);
        std::cout << ghkit::format_result(r) << std::endl;
        all = all && r.passed;
      }
      return all ? 0 : kVerificationFailed;
    }
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const ghkit::Error& e) {
    std::cerr << e.what() << '\n';  // already prefixed with the error code
    switch (e.code()) {
      case ghkit::Errc::certificate_failed:
      case ghkit::Errc::inconsistent_bounds:
      case ghkit::Errc::stale_certificate:
        return kVerificationFailed;
      default:
        return kInputError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return 0;
}
