#ifndef GRASSGEO_IO_HPP
#define GRASSGEO_IO_HPP

#include <string>

#include "grassgeo/grassmannian.hpp"
#include "grassgeo/lab.hpp"
#include "grassgeo/lengths.hpp"
#include "grassgeo/types.hpp"

namespace grassgeo::io {

/// 17 significant digits; round-trips every finite double.
std::string format_double(double v);

// Matrix JSON: {"dim": N, "data": [[re, im], ...]} with N^2 row-major
// entries. Projection files add "rank".
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const std::string& text);

std::string projection_to_json(const ProjectionPoint& p);
ProjectionPoint projection_from_json(const std::string& text);

// Curve JSON: {"kind": "unitary"|"projection", "times": [...], "points": [...]}.
std::string curve_to_json(const DiscretizedCurve& c);
DiscretizedCurve curve_from_json(const std::string& text);

/// Solver output as written by the CLI.
struct GeodesicResult {
  SkewHermitian z;
  GeodesicBranch branch;
  double norm_inf;
  double norm_2;
  double endpoint_error;
};
std::string geodesic_result_to_json(const GeodesicResult& r);

/// CSV with header seed,dim,rank,k,branch,geodesic_length,best_competitor,
/// margin,endpoint_error; one row per trial, byte-stable per (config, seed).
std::string experiment_to_csv(const lab::ExperimentReport& report);
std::string experiment_to_json(const lab::ExperimentReport& report);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace grassgeo::io

#endif
