#include "keypoly/commands.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <sstream>

#include "keypoly/error.hpp"

namespace keypoly {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null())
    throw Error(ErrorKind::InvalidInput, std::string("request is missing \"") + key + "\"");
  return j.at(key);
}

/// A chain document, or the chain inside a trace document.
const Json& chain_doc(const Json& j) {
  if (j.is_object() && j.contains("steps") && j.contains("chain")) return j.at("chain");
  return j;
}

int level_of(const Json& request, const KeyChain& chain) {
  int level = request.contains("level") && !request.at("level").is_null() ? request.at("level").get<int>() : chain.length();
  if (level < 1 || level > chain.length())
    throw Error(ErrorKind::InvalidInput, "level " + std::to_string(level) + " outside 1.." + std::to_string(chain.length()));
  return level;
}

Json probe_strings(const std::vector<Poly>& probes) {
  Json out = Json::array();
  for (const auto& p : probes) out.push_back(p.str());
  return out;
}

struct PolyRequest {
  KeyChain chain;
  Poly h;
  int level;
};

PolyRequest poly_request(const Json& request) {
  KeyChain chain = chain_from_json(chain_doc(need(request, "chain")));
  Poly h = poly_from_json(chain.spec(), need(request, "poly"));
  int level = level_of(request, chain);
  return {std::move(chain), std::move(h), level};
}

}  // namespace

std::string display_decimal(const Value& v) {
  if (v.is_infinite()) return "inf";
  mpf_class a(v.a(), 256), b(v.b(), 256);
  mpf_class r = a + b * sqrt(mpf_class(2, 256));
  std::ostringstream os;
  os.precision(12);
  os << r;
  return os.str();
}

Json cmd_value(const Json& request) {
  auto [chain, h, level] = poly_request(request);
  ValueMode mode = chain.spec().mode();
  return {{"level", level}, {"poly", to_json(h)}, {"value", to_json(chain.truncation(h, level), mode)}};
}

Json cmd_expand(const Json& request) {
  auto [chain, h, level] = poly_request(request);
  ValueMode mode = chain.spec().mode();
  StandardExpansion e = chain.expand(h, level);
  Json out = to_json(e, chain);
  out["poly"] = to_json(h);
  out["Q"] = to_json(chain.level(level).Q);
  out["value"] = to_json(chain.truncation(h, level), mode);
  out["initial_form"] = to_json(initial_form(chain, h, level), mode);
  return out;
}

CommandOutput cmd_newton(const Json& request) {
  auto [chain, h, level] = poly_request(request);
  ValueMode mode = chain.spec().mode();
  NewtonPolygon np = newton_polygon(chain, h, level);
  Json out = to_json(np, mode);
  out["level"] = level;
  out["poly"] = to_json(h);
  out["Q"] = to_json(chain.level(level).Q);
  return {out, newton_svg(np, h.str() + " at level " + std::to_string(level))};
}

Json cmd_trace(const Json& request) {
  OraclePtr oracle = oracle_from_json(need(request, "oracle"));
  std::vector<Poly> probes = polys_from_json(oracle->field(), need(request, "probes"));
  Budgets b = budgets_from_json(request.value("budgets", Json(nullptr)));
  if (request.contains("seed") && !request.at("seed").is_null()) b.seed = request.at("seed").get<uint64_t>();
  RunResult r = run(*oracle, probes, b);
  Json out = to_json(r);
  out["oracle"] = request.at("oracle");
  out["probes"] = probe_strings(probes);
  out["seed"] = b.seed;
  return out;
}

Json cmd_analyze(const Json& request) {
  const Json& source = need(request, "chain");
  KeyChain chain = chain_from_json(chain_doc(source));
  ValueMode mode = chain.spec().mode();
  Json probes_json = request.contains("probes") && !request.at("probes").is_null() ? request.at("probes")
                     : source.contains("probes")                                      ? source.at("probes")
                                                                                      : Json::array();
  std::vector<Poly> probes = polys_from_json(chain.spec(), probes_json);

  Json bounds = Json::array();
  for (int i = 1; i <= chain.length(); ++i)
    if (chain.level(i).beta.is_finite()) bounds.push_back(to_json(effective_bound(chain, i), mode));

  Json reports = Json::array();
  for (const auto& h : probes) {
    CharacterTrace tr = character_trace(chain, h);
    Json levels = Json::array();
    for (const auto& pair : tr.pairs) {
      int i = pair.level;
      Json entry = to_json(pair, mode);
      std::vector<Check> checks;
      if (chain.level(i).beta.is_finite()) {
        DerivativeReport rep = derivative_value_report(chain, h, i);
        entry["b"] = rep.bound.b;
        entry["e"] = rep.bound.e;
        entry["I_max"] = rep.bound.I_max;
        entry["derivatives"] = to_json(rep, mode);
        checks = rep.checks;
      } else {
        entry["b"] = nullptr;
        entry["e"] = nullptr;
        entry["I_max"] = nullptr;
      }
      for (const auto& [lvl, c] : tr.checks)
        if (lvl == i) checks.push_back(c);
      Json map = Json::object();
      for (const auto& c : checks) {
        Json v = c.applicable ? Json(c.passed) : Json(nullptr);
        // The same check can fire for several derivative orders: keep the worst outcome.
        if (!map.contains(c.name) || map[c.name].is_null() || v == false) map[c.name] = v;
      }
      entry["checks"] = map;
      levels.push_back(entry);
    }
    reports.push_back({{"probe", to_json(h)}, {"levels", levels}, {"all_passed", tr.all_passed()}});
  }
  Json chain_checks = Json::array();
  for (const auto& c : chain_derivative_checks(chain)) chain_checks.push_back(to_json(c));
  return {{"field", to_json(chain.spec())},
          {"chain", chain_entries_json(chain)},
          {"bounds", bounds},
          {"chain_checks", chain_checks},
          {"probes", reports}};
}

Json cmd_limit(const Json& request) {
  const Json& trace = need(request, "trace");
  KeyChain chain = chain_from_json(chain_doc(trace));
  OraclePtr oracle;
  if (request.contains("oracle") && !request.at("oracle").is_null()) oracle = oracle_from_json(request.at("oracle"));
  else if (trace.contains("oracle")) oracle = oracle_from_json(trace.at("oracle"));
  else oracle = std::make_shared<ChainOracle>(chain);
  Json probes_json = request.contains("probes") && !request.at("probes").is_null() ? request.at("probes")
                     : trace.contains("probes")                                       ? trace.at("probes")
                                                                                       : Json(nullptr);
  if (probes_json.is_null()) throw Error(ErrorKind::InvalidInput, "limit needs probes");
  std::vector<Poly> probes = polys_from_json(chain.spec(), probes_json);
  LimitOptions opt;
  opt.window = request.value("window", 0);
  opt.degree_cap = request.value("degree_cap", 64);
  opt.force = request.value("force", false);
  if (request.contains("bound") && !request.at("bound").is_null()) opt.bound = value_from_json(request.at("bound"));
  LimitResult r = build_limit_candidate(chain, *oracle, probes, opt);
  return to_json(r, chain.spec().mode());
}

CommandOutput run_command(const std::string& name, const Json& request) {
  if (name == "value") return {cmd_value(request), {}};
  if (name == "expand") return {cmd_expand(request), {}};
  if (name == "newton") return cmd_newton(request);
  if (name == "trace") {
    Json out = cmd_trace(request);
    int code = out["status"] == status_name(RunStatus::BudgetExhausted) ? 3 : 0;
    return {out, {}, code};
  }
  if (name == "analyze") return {cmd_analyze(request), {}};
  if (name == "limit") return {cmd_limit(request), {}};
  throw Error(ErrorKind::InvalidInput, "unknown command " + name);
}

std::string newton_svg(const NewtonPolygon& np, const std::string& title) {
  const double W = 480, H = 360, M = 56;
  std::vector<std::pair<int, double>> pts;
  for (const auto& [j, v] : np.points)
    if (v.is_finite()) pts.push_back({j, std::stod(display_decimal(v))});
  int jmax = 1;
  double lo = 0, hi = 1;
  for (const auto& [j, y] : pts) {
    jmax = std::max(jmax, j);
    lo = std::min(lo, y);
    hi = std::max(hi, y);
  }
  auto X = [&](double j) { return M + (W - 2 * M) * j / jmax; };
  auto Y = [&](double y) { return H - M - (H - 2 * M) * (y - lo) / (hi - lo); };
  auto num = [](double d) {
    std::ostringstream os;
    os.precision(12);
    os << d;
    return os.str();
  };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
    << "\">\n";
  s << "  <title>Newton polygon of " << title << "</title>\n";
  s << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "  <text x=\"" << M << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"12\">Newton polygon of " << title << "</text>\n";
  s << "  <text x=\"" << M << "\" y=\"36\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#666\">"
    << "coordinates are 12-digit decimal renderings of exact values (display only)</text>\n";
  s << "  <line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M + 8 << "\" y2=\"" << H - M << "\" stroke=\"black\"/>\n";
  s << "  <line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << M << "\" y2=\"" << M - 8 << "\" stroke=\"black\"/>\n";
  s << "  <text x=\"" << W - M << "\" y=\"" << H - M + 32 << "\" font-family=\"sans-serif\" font-size=\"11\">index j</text>\n";
  s << "  <text x=\"8\" y=\"" << M - 12 << "\" font-family=\"sans-serif\" font-size=\"11\">value</text>\n";
  for (int j = 0; j <= jmax; ++j)
    s << "  <text x=\"" << num(X(j)) << "\" y=\"" << H - M + 16 << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
      << j << "</text>\n";
  if (np.hull.size() > 1) {
    s << "  <polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\" points=\"";
    for (size_t k = 0; k < np.hull.size(); ++k) {
      const auto& [j, v] = np.hull[k];
      s << (k ? " " : "") << num(X(j)) << "," << num(Y(std::stod(display_decimal(v))));
    }
    s << "\"/>\n";
  }
  for (const auto& [j, v] : np.points) {
    if (v.is_infinite()) continue;
    std::string d = display_decimal(v);
    double y = std::stod(d);
    s << "  <circle cx=\"" << num(X(j)) << "\" cy=\"" << num(Y(y)) << "\" r=\"4\" fill=\"#bf3f1f\"/>\n";
    s << "  <text x=\"" << num(X(j) + 6) << "\" y=\"" << num(Y(y) - 6) << "\" font-family=\"sans-serif\" font-size=\"10\">" << d
      << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace keypoly
