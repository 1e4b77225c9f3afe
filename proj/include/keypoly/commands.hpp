#pragma once

#include <string>

#include "keypoly/json_io.hpp"

namespace keypoly {

/// Output of one command: the JSON report plus an optional SVG picture.
struct CommandOutput {
  Json report;
  std::string svg;
  /// 3 when the command stopped on a budget without raising.
  int exit_code = 0;
};

/// Request keys (all documents inline):
///   value, expand, newton: chain, poly, level (defaults to the top level)
///   trace:   oracle, probes, budgets, seed
///   analyze: chain (a chain or trace document), probes
///   limit:   trace, probes, window, degree_cap, oracle, bound, force
/// See docs/schemas/config.schema.json.
CommandOutput run_command(const std::string& name, const Json& request);

Json cmd_value(const Json& request);
Json cmd_expand(const Json& request);
CommandOutput cmd_newton(const Json& request);
Json cmd_trace(const Json& request);
Json cmd_analyze(const Json& request);
Json cmd_limit(const Json& request);

/// Static picture of the polygon; coordinates are 12-digit decimal renderings.
std::string newton_svg(const NewtonPolygon& np, const std::string& title);

/// Decimal rendering of a value with 12 significant digits.
std::string display_decimal(const Value& v);

}  // namespace keypoly
