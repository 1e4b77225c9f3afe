#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "keypoly/commands.hpp"
#include "keypoly/error.hpp"

namespace fs = std::filesystem;
using keypoly::Json;

namespace {

constexpr int kDomainError = 2;
constexpr int kResourceError = 3;

Json load_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw keypoly::Error(keypoly::ErrorKind::InvalidInput, "cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw keypoly::Error(keypoly::ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

/// Document-valued config keys may hold a path relative to the config file.
void resolve_documents(Json& config, const fs::path& dir) {
  for (const char* key : {"chain", "oracle", "probes", "trace"}) {
    if (config.contains(key) && config[key].is_string()) config[key] = load_json(dir / config[key].get<std::string>());
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw keypoly::Error(keypoly::ErrorKind::InvalidInput, "cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"keypoly: key polynomial chains of valuations on K[x]"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  std::optional<uint64_t> seed;
  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "Seed for randomized factor choices");
  app.add_option("--out", out_dir, "Directory receiving <command>.json (and newton.svg)");

  std::string chain_file, poly, oracle_file, probes_file, trace_file, svg_file, max_steps, threshold, window, degree_cap, level,
      stall_window, bound;
  bool force = false;

  auto chain_cmd = [&](const char* name, const char* what) {
    CLI::App* sub = app.add_subcommand(name, what);
    sub->add_option("--chain", chain_file, "Chain document")->check(CLI::ExistingFile);
    sub->add_option("--poly", poly, "Polynomial expression");
    sub->add_option("--level", level, "Chain level (default: top)");
    return sub;
  };
  chain_cmd("value", "Truncation value of a polynomial");
  chain_cmd("expand", "Standard expansion and initial form");
  chain_cmd("newton", "Newton polygon, with an SVG picture")->add_option("--svg", svg_file, "SVG output path");

  CLI::App* trace = app.add_subcommand("trace", "Build a key polynomial chain from an oracle");
  trace->add_option("--oracle", oracle_file, "Oracle spec")->check(CLI::ExistingFile);
  trace->add_option("--probes", probes_file, "Probe list")->check(CLI::ExistingFile);
  trace->add_option("--max-steps", max_steps, "Step budget");
  trace->add_option("--value-threshold", threshold, "Stop once a value reaches this");
  trace->add_option("--stall-window", stall_window, "Alpha-one steps before a stall is declared");

  CLI::App* analyze = app.add_subcommand("analyze", "Derivative bounds and numerical characters");
  analyze->add_option("--chain", chain_file, "Chain or trace document")->check(CLI::ExistingFile);
  analyze->add_option("--probes", probes_file, "Probe list")->check(CLI::ExistingFile);

  CLI::App* limit = app.add_subcommand("limit", "Limit key polynomial candidate from a stalled trace");
  limit->add_option("--trace", trace_file, "Trace document")->check(CLI::ExistingFile);
  limit->add_option("--probes", probes_file, "Probe list")->check(CLI::ExistingFile);
  limit->add_option("--oracle", oracle_file, "Oracle spec (default: the one recorded in the trace)")->check(CLI::ExistingFile);
  limit->add_option("--window", window, "Levels over which the defect is certified");
  limit->add_option("--degree-cap", degree_cap, "Largest probe degree considered");
  limit->add_option("--bound", bound, "Bound of the stalled values");
  limit->add_flag("--force", force, "Build a candidate where the construction does not apply");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kDomainError;
  }

  std::string name = app.get_subcommands().front()->get_name();
  try {
    Json request = Json::object();
    if (!config_path.empty()) {
      request = load_json(config_path);
      if (!request.is_object()) throw keypoly::Error(keypoly::ErrorKind::InvalidInput, "config must be a JSON object");
      resolve_documents(request, fs::path(config_path).parent_path());
    }
    if (!chain_file.empty()) request["chain"] = load_json(chain_file);
    if (!oracle_file.empty()) request["oracle"] = load_json(oracle_file);
    if (!probes_file.empty()) request["probes"] = load_json(probes_file);
    if (!trace_file.empty()) request["trace"] = load_json(trace_file);
    if (!poly.empty()) request["poly"] = poly;
    if (!level.empty()) request["level"] = std::stoi(level);
    if (!window.empty()) request["window"] = std::stoi(window);
    if (!degree_cap.empty()) request["degree_cap"] = std::stoi(degree_cap);
    if (!bound.empty()) request["bound"] = bound;
    if (force) request["force"] = true;
    if (seed) request["seed"] = *seed;
    Json& budgets = request["budgets"];
    if (budgets.is_null()) budgets = Json::object();
    if (!max_steps.empty()) budgets["max_steps"] = std::stoi(max_steps);
    if (!threshold.empty()) budgets["value_threshold"] = threshold;
    if (!stall_window.empty()) budgets["stall_window"] = std::stoi(stall_window);

    keypoly::CommandOutput out = keypoly::run_command(name, request);
    std::string text = keypoly::dump(out.report);
    if (out_dir.empty()) {
      std::cout << text;
    } else {
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / (name + ".json"), text);
    }
    if (!out.svg.empty()) {
      if (!svg_file.empty()) write_file(svg_file, out.svg);
      else if (!out_dir.empty()) write_file(fs::path(out_dir) / "newton.svg", out.svg);
    }
    return out.exit_code;
  } catch (const keypoly::Error& e) {
    std::cerr << "keypoly " << name << ": " << e.what() << "\n";
    return e.is_resource() ? kResourceError : kDomainError;
  } catch (const Json::exception& e) {
    std::cerr << "keypoly " << name << ": InvalidInput: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "keypoly " << name << ": InvalidInput: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::out_of_range& e) {
    std::cerr << "keypoly " << name << ": InvalidInput: " << e.what() << "\n";
    return kDomainError;
  }
}
