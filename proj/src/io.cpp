#include "grassgeo/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "grassgeo/errors.hpp"

#include "json.hpp"

namespace grassgeo::io {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON");
  return j;
}

ComplexMatrix matrix_from_node(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("data"))
    throw ParseError("matrix JSON needs 'dim' and 'data'");
  if (!j["dim"].is_number_integer()) throw ParseError("matrix 'dim' must be an integer");
  const long long dim = j["dim"].get<long long>();
  if (dim < 1 || dim > 4096) throw ParseError("matrix 'dim' out of range");
  const auto& data = j["data"];
  if (!data.is_array() || data.size() != static_cast<std::size_t>(dim * dim))
    throw ParseError("matrix 'data' must hold dim*dim entries");
  std::vector<cplx> entries;
  entries.reserve(data.size());
  for (const auto& e : data) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw ParseError("matrix entry must be [re, im]");
    entries.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  try {
    return ComplexMatrix(static_cast<int>(dim), std::move(entries));
  } catch (const InvalidInput& err) {
    throw ParseError(err.what());
  }
}

void append_matrix_body(std::string& out, const ComplexMatrix& m) {
  const int n = m.dim();
  out += "\"dim\": " + std::to_string(n) + ", \"data\": [";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != 0 || j != 0) out += ", ";
      out += "[" + format_double(m(i, j).real()) + ", " + format_double(m(i, j).imag()) + "]";
    }
  out += "]";
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string matrix_to_json(const ComplexMatrix& m) {
  std::string out = "{";
  append_matrix_body(out, m);
  out += "}";
  return out;
}

ComplexMatrix matrix_from_json(const std::string& text) {
  return matrix_from_node(parse_or_throw(text));
}

std::string projection_to_json(const ProjectionPoint& p) {
  std::string out = "{";
  append_matrix_body(out, p.matrix());
  out += ", \"rank\": " + std::to_string(p.rank()) + "}";
  return out;
}

ProjectionPoint projection_from_json(const std::string& text) {
  const json j = parse_or_throw(text);
  const ComplexMatrix m = matrix_from_node(j);
  try {
    if (j.contains("rank")) {
      if (!j["rank"].is_number_integer()) throw ParseError("'rank' must be an integer");
      return ProjectionPoint::from_matrix(m, static_cast<int>(j["rank"].get<long long>()));
    }
    return ProjectionPoint::from_matrix(m);
  } catch (const InvalidInput& err) {
    throw ParseError(err.what());
  }
}

std::string curve_to_json(const DiscretizedCurve& c) {
  std::string out = "{\"kind\": ";
  out += (c.kind == CurveKind::kUnitary) ? "\"unitary\"" : "\"projection\"";
  out += ", \"times\": [";
  for (std::size_t j = 0; j < c.times.size(); ++j) {
    if (j) out += ", ";
    out += format_double(c.times[j]);
  }
  out += "], \"points\": [";
  for (std::size_t j = 0; j < c.points.size(); ++j) {
    if (j) out += ", ";
    out += matrix_to_json(c.points[j]);
  }
  out += "]}";
  return out;
}

DiscretizedCurve curve_from_json(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object() || !j.contains("kind") || !j.contains("times") || !j.contains("points"))
    throw ParseError("curve JSON needs 'kind', 'times' and 'points'");
  DiscretizedCurve c;
  const std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "unitary")
    c.kind = CurveKind::kUnitary;
  else if (kind == "projection")
    c.kind = CurveKind::kProjection;
  else
    throw ParseError("curve 'kind' must be 'unitary' or 'projection'");
  if (!j["times"].is_array() || !j["points"].is_array())
    throw ParseError("curve 'times' and 'points' must be arrays");
  for (const auto& t : j["times"]) {
    if (!t.is_number()) throw ParseError("curve time must be a number");
    c.times.push_back(t.get<double>());
  }
  for (const auto& p : j["points"]) c.points.push_back(matrix_from_node(p));
  try {
    validate_curve(c);
  } catch (const InvalidInput& err) {
    throw ParseError(err.what());
  }
  return c;
}

std::string geodesic_result_to_json(const GeodesicResult& r) {
  std::string out = "{\"z\": ";
  out += matrix_to_json(r.z.matrix());
  out += ", \"branch\": \"";
  out += branch_name(r.branch);
  out += "\", \"norm_inf\": " + format_double(r.norm_inf);
  out += ", \"norm_2\": " + format_double(r.norm_2);
  out += ", \"endpoint_error\": " + format_double(r.endpoint_error);
  out += "}";
  return out;
}

std::string experiment_to_csv(const lab::ExperimentReport& report) {
  std::string out =
      "seed,dim,rank,k,branch,geodesic_length,best_competitor,margin,endpoint_error\n";
  for (const lab::TrialReport& t : report.trials) {
    out += std::to_string(t.seed);
    out += ',' + std::to_string(t.dim);
    out += ',' + std::to_string(t.rank);
    out += ',' + format_double(t.k);
    out += ',';
    out += branch_name(t.branch);
    out += ',' + format_double(t.geodesic_length);
    out += ',' + format_double(t.best_competitor_length);
    out += ',' + format_double(t.margin);
    out += ',' + format_double(t.endpoint_error);
    out += '\n';
  }
  return out;
}

std::string experiment_to_json(const lab::ExperimentReport& report) {
  std::string out = "{\"tol_disc\": " + format_double(report.tol_disc) + ", \"trials\": [";
  bool first = true;
  for (const lab::TrialReport& t : report.trials) {
    if (!first) out += ", ";
    first = false;
    out += "{\"seed\": " + std::to_string(t.seed);
    out += ", \"dim\": " + std::to_string(t.dim);
    out += ", \"rank\": " + std::to_string(t.rank);
    out += ", \"k\": " + format_double(t.k);
    out += ", \"branch\": \"";
    out += branch_name(t.branch);
    out += "\", \"geodesic_length\": " + format_double(t.geodesic_length);
    out += ", \"best_competitor\": " + format_double(t.best_competitor_length);
    out += ", \"margin\": " + format_double(t.margin);
    out += ", \"endpoint_error\": " + format_double(t.endpoint_error);
    out += "}";
  }
  out += "]}";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << content;
}

}  // namespace grassgeo::io
