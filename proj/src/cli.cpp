#include "grassgeo/cli.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>

#include "grassgeo/errors.hpp"
#include "grassgeo/grassmannian.hpp"
#include "grassgeo/io.hpp"
#include "grassgeo/lab.hpp"
#include "grassgeo/lengths.hpp"
#include "grassgeo/matrix_ops.hpp"
#include "grassgeo/rng.hpp"
#include "grassgeo/unitary_group.hpp"

#include "CLI11.hpp"

namespace grassgeo::cli {

namespace {

constexpr double kSlackTolerance = 1e-10;

void emit(const std::string& out_path, const std::string& payload) {
  if (out_path.empty())
    std::cout << payload << "\n";
  else
    io::write_text_file(out_path, payload);
}

io::GeodesicResult solve_geodesic(const ProjectionPoint& p, const ProjectionPoint& q) {
  GrassLog sol = grass_log_bv(p, q);
  const ProjectionPoint end = grass_geodesic_eval(p, sol.direction, 1.0);
  io::GeodesicResult result{sol.direction, sol.branch,
                            skew_operator_norm(sol.direction),
                            schatten_norm(sol.direction.matrix(), 2.0),
                            (end.matrix() - q.matrix()).frobenius()};
  return result;
}

void write_experiment_report(const lab::ExperimentReport& report,
                             const std::string& out_path, const std::string& format) {
  if (out_path.empty()) return;
  io::write_text_file(out_path, format == "json" ? io::experiment_to_json(report)
                                                 : io::experiment_to_csv(report));
}

struct InequalityRow {
  int trial;
  const char* check;
  double r;
  int dim;
  double slack;
};

// Random PSD matrix with unit operator norm, a random compression
// projection and a random resolution of identity, all from one substream.
double inequality_sweep(int trials, int max_dim, std::uint64_t seed,
                        std::vector<InequalityRow>* rows) {
  static const double kRValues[] = {1.5, 2.0, 3.0};
  double min_slack = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < trials; ++trial) {
    CounterRng rng(CounterRng::derive(seed, static_cast<std::uint64_t>(trial)));
    const int dim = 2 + static_cast<int>(rng.next_u64() %
                                         static_cast<std::uint64_t>(std::max(1, max_dim - 1)));
    ComplexMatrix g(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g(i, j) = rng.next_complex_gaussian();
    ComplexMatrix a(dim);
    matmul_adjoint_lhs(g, g, a);
    const double scale = hermitian_operator_norm(a);
    if (scale > 0.0) a *= cplx(1.0 / scale, 0.0);

    const UnitaryMatrix frame = lab::random_unitary(rng, dim);
    const double r = kRValues[trial % 3];

    // compression projection of any rank in [1, dim]
    const int prank = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(dim));
    ComplexMatrix pdiag(dim);
    for (int i = 0; i < prank; ++i) pdiag(i, i) = 1.0;
    const ComplexMatrix p = frame.matrix() * pdiag * frame.matrix().adjoint();
    const double comp = jensen_compression_slack(p, a, r);
    min_slack = std::min(min_slack, comp);
    if (rows) rows->push_back({trial, "compression", r, dim, comp});

    // random resolution of identity
    std::vector<ComplexMatrix> parts;
    int offset = 0;
    while (offset < dim) {
      const int block =
          1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(dim - offset));
      ComplexMatrix bdiag(dim);
      for (int i = 0; i < block; ++i) bdiag(offset + i, offset + i) = 1.0;
      parts.push_back(frame.matrix() * bdiag * frame.matrix().adjoint());
      offset += block;
    }
    const double pinch = jensen_pinch_slack(a, parts, r);
    min_slack = std::min(min_slack, pinch);
    if (rows) rows->push_back({trial, "pinch", r, dim, pinch});
  }
  return min_slack;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Geodesics, distances and minimality experiments on equal-rank "
               "projection orbits and the Hilbert-Schmidt unitary group"};
  app.fallthrough();
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "csv";
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--out", out_path, "Output file path");
  app.add_option("--format", format, "Report format for --out")
      ->check(CLI::IsMember({"csv", "json"}));

  // geodesic / distance / log-unitary
  std::string path_a, path_b;
  auto* geodesic = app.add_subcommand("geodesic", "Geodesic between two projections");
  geodesic->add_option("p", path_a, "Projection JSON for the start point")->required();
  geodesic->add_option("q", path_b, "Projection JSON for the end point")->required();

  auto* distance = app.add_subcommand("distance", "Geodesic distance between projections");
  distance->add_option("p", path_a, "Projection JSON")->required();
  distance->add_option("q", path_b, "Projection JSON")->required();

  auto* logu = app.add_subcommand("log-unitary", "Boundary-value log in the unitary group");
  logu->add_option("u0", path_a, "Unitary matrix JSON")->required();
  logu->add_option("u1", path_b, "Unitary matrix JSON")->required();

  // random-pair
  int dim = 6, rank = 3;
  std::string mode = "generic";
  auto* pair_cmd = app.add_subcommand("random-pair", "Sample a projection pair");
  pair_cmd->add_option("--dim", dim, "Ambient dimension")->required();
  pair_cmd->add_option("--rank", rank, "Projection rank")->required();
  pair_cmd->add_option("--mode", mode, "generic | boundary")
      ->check(CLI::IsMember({"generic", "boundary"}));

  // experiments
  double k = 2.0, amplitude = 0.3;
  int trials = 20, competitors = 20, grid_m = 512;
  auto* vmin = app.add_subcommand("verify-minimality",
                                  "Race geodesics against endpoint-matched competitors");
  vmin->add_option("--dim", dim)->required();
  vmin->add_option("--rank", rank)->required();
  vmin->add_option("--k", k, "Schatten exponent, k >= 2");
  vmin->add_option("--trials", trials);
  vmin->add_option("--competitors", competitors);
  vmin->add_option("--m", grid_m, "Samples per curve");
  vmin->add_option("--amplitude", amplitude, "Perturbation amplitude");

  auto* vuni = app.add_subcommand("verify-unitary-minimality",
                                  "Unitary-group minimality experiment");
  vuni->add_option("--dim", dim)->required();
  vuni->add_option("--trials", trials);
  vuni->add_option("--competitors", competitors);
  vuni->add_option("--m", grid_m);
  vuni->add_option("--amplitude", amplitude);

  int ineq_trials = 1000, ineq_dim = 8;
  auto* vineq = app.add_subcommand("verify-inequalities",
                                   "Jensen trace-inequality sweep");
  vineq->add_option("--trials", ineq_trials);
  vineq->add_option("--dim", ineq_dim, "Largest matrix dimension");

  int sw_trials = 1000, sw_dim = 8;
  auto* vsand = app.add_subcommand("verify-sandwich",
                                   "Metric sandwich between d_2 and the 2-norm chord");
  vsand->add_option("--trials", sw_trials);
  vsand->add_option("--dim", sw_dim);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (geodesic->parsed()) {
    const ProjectionPoint p = io::projection_from_json(io::read_text_file(path_a));
    const ProjectionPoint q = io::projection_from_json(io::read_text_file(path_b));
    emit(out_path, io::geodesic_result_to_json(solve_geodesic(p, q)));
    return 0;
  }
  if (distance->parsed()) {
    const ProjectionPoint p = io::projection_from_json(io::read_text_file(path_a));
    const ProjectionPoint q = io::projection_from_json(io::read_text_file(path_b));
    const double d = grass_distance(p, q);
    if (!out_path.empty())
      io::write_text_file(out_path, "{\"distance\": " + io::format_double(d) + "}");
    std::cout << io::format_double(d) << "\n";
    return 0;
  }
  if (logu->parsed()) {
    UnitaryMatrix u0 = UnitaryMatrix::identity(1);
    UnitaryMatrix u1 = UnitaryMatrix::identity(1);
    try {
      u0 = UnitaryMatrix::from_matrix(io::matrix_from_json(io::read_text_file(path_a)));
      u1 = UnitaryMatrix::from_matrix(io::matrix_from_json(io::read_text_file(path_b)));
    } catch (const InvalidInput& e) {
      throw ParseError(e.what());
    }
    const SkewHermitian x = unitary_log_bv(u0, u1);
    emit(out_path, io::matrix_to_json(x.matrix()));
    return 0;
  }
  if (pair_cmd->parsed()) {
    if (out_path.empty()) throw InvalidInput("random-pair: --out prefix is required");
    const auto pair = lab::random_projection_pair(
        dim, rank, mode == "boundary" ? lab::PairMode::kBoundary : lab::PairMode::kGeneric,
        seed);
    const std::string p0 = out_path + ".q0.json";
    const std::string p1 = out_path + ".q1.json";
    io::write_text_file(p0, io::projection_to_json(pair.first));
    io::write_text_file(p1, io::projection_to_json(pair.second));
    std::cout << p0 << "\n" << p1 << "\n";
    return 0;
  }
  if (vmin->parsed()) {
    const lab::ExperimentReport report = lab::minimality_experiment(
        dim, rank, k, trials, competitors, grid_m, amplitude, seed);
    write_experiment_report(report, out_path, format);
    std::cout << "min_margin=" << io::format_double(report.min_margin())
              << " trials=" << report.trials.size() << "\n";
    return report.all_margins_within_tolerance() ? 0 : 1;
  }
  if (vuni->parsed()) {
    const lab::ExperimentReport report = lab::unitary_minimality_experiment(
        dim, trials, competitors, grid_m, amplitude, seed);
    write_experiment_report(report, out_path, format);
    std::cout << "min_margin=" << io::format_double(report.min_margin())
              << " trials=" << report.trials.size() << "\n";
    return report.all_margins_within_tolerance() ? 0 : 1;
  }
  if (vineq->parsed()) {
    std::vector<InequalityRow> rows;
    const double min_slack =
        inequality_sweep(ineq_trials, ineq_dim, seed, out_path.empty() ? nullptr : &rows);
    if (!out_path.empty()) {
      std::string csv = "trial,check,r,dim,slack\n";
      for (const InequalityRow& row : rows) {
        csv += std::to_string(row.trial);
        csv += ',';
        csv += row.check;
        csv += ',' + io::format_double(row.r);
        csv += ',' + std::to_string(row.dim);
        csv += ',' + io::format_double(row.slack);
        csv += '\n';
      }
      io::write_text_file(out_path, csv);
    }
    std::cout << "min_slack=" << io::format_double(min_slack)
              << " trials=" << ineq_trials << "\n";
    return min_slack >= -kSlackTolerance ? 0 : 1;
  }
  if (vsand->parsed()) {
    const lab::SandwichReport report =
        lab::metric_sandwich_experiment(sw_dim, sw_trials, seed);
    if (!out_path.empty()) {
      io::write_text_file(
          out_path, "{\"dim\": " + std::to_string(report.dim) +
                        ", \"trials\": " + std::to_string(report.trials) +
                        ", \"min_lower_slack\": " + io::format_double(report.min_lower_slack) +
                        ", \"min_upper_slack\": " + io::format_double(report.min_upper_slack) +
                        "}");
    }
    std::cout << "min_lower_slack=" << io::format_double(report.min_lower_slack)
              << " min_upper_slack=" << io::format_double(report.min_upper_slack)
              << " trials=" << report.trials << "\n";
    return (report.min_lower_slack >= -kSlackTolerance &&
            report.min_upper_slack >= -kSlackTolerance)
               ? 0
               : 1;
  }
  return 2;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const NotSameOrbit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const SingularInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace grassgeo::cli
