#pragma once

#include <string>
#include <vector>

#include "howl/root_system.hpp"
#include "howl/series.hpp"

namespace howl::cli {

/// A fully validated request; construction (parse) fails with a usage error
/// before any computation when a flag is malformed or a precondition on the
/// target operation is statically violated.
struct Request {
  std::string command;    // "roots info", "eval f", "limit main", ...
  std::string type;       // root-system label
  std::vector<Complex> lambda_pairings; // (lambda, alpha^vee) over B
  std::vector<double> point;            // alpha(log a) over B
  std::vector<double> k;                // multiplicity: 1 value, or short,long
  std::vector<double> l;                // character; empty -> all ones
  int trunc = 40;
  double m_lo = 0.0, m_hi = 0.0, m_step = 1.0;
  double tol = 1e-6;
  std::string format = "json";
};

struct RunOutput {
  int code = 0;
  std::string out; // stdout payload
  std::string err; // diagnostics
};

/// Parse argv (without the program name). Returns a Request or throws
/// UsageError (mapped to exit 2 by run()).
Request parse(const std::vector<std::string>& args);

/// Parse + execute + render. Never throws; all errors are mapped to exit
/// codes 2 (usage/configuration) or 3 (numerical) with structured output.
RunOutput run(const std::vector<std::string>& args);

/// Strict complex literal: <float>[+|-]<float>i, no spaces ("0.9+0.31i").
Complex parse_complex(const std::string& text);

std::string format_double17(double v);

} // namespace howl::cli
