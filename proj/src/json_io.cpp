#include "keypoly/json_io.hpp"

#include "keypoly/error.hpp"
#include "keypoly/parse.hpp"

namespace keypoly {

namespace {

Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(to_string(z));
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(long(j.get<long long>()));
  if (j.is_string()) return Integer(j.get<std::string>());
  throw Error(ErrorKind::InvalidInput, "expected an integer, got " + j.dump());
}

[[noreturn]] void bad(const std::string& what, const Json& j) {
  throw Error(ErrorKind::InvalidInput, what + ": " + j.dump());
}

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key \"") + key + "\"", j);
  return j.at(key);
}

Json optional_value(const std::optional<Value>& v, ValueMode mode) { return v ? to_json(*v, mode) : Json(nullptr); }

Json check_map(const std::vector<Check>& checks) {
  Json out = Json::object();
  for (const auto& c : checks) out[c.name] = c.applicable ? Json(c.passed) : Json(nullptr);
  return out;
}

Json check_list(const std::vector<Check>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back(to_json(c));
  return out;
}

}  // namespace

Json rational_json(const Rational& q) { return {{"num", integer_json(q.get_num())}, {"den", integer_json(q.get_den())}}; }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(long(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_object()) {
    Rational q(integer_from_json(need(j, "num")), integer_from_json(need(j, "den")));
    if (q.get_den() == 0) bad("zero denominator", j);
    q.canonicalize();
    return q;
  }
  bad("expected a rational", j);
}

Json to_json(const Value& v, ValueMode mode) {
  if (v.is_infinite()) return "inf";
  if (mode == ValueMode::Quadratic) return {{"a", rational_json(v.a())}, {"b", rational_json(v.b())}, {"mode", "quadratic"}};
  return rational_json(v.a());
}

Value value_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Value::infinity();
  if (j.is_object() && j.contains("mode")) {
    if (j.at("mode") != "quadratic") bad("unknown value mode", j);
    return Value(rational_from_json(need(j, "a")), rational_from_json(need(j, "b")));
  }
  return Value(rational_from_json(j));
}

Json to_json(const FieldSpec& spec) {
  switch (spec.kind) {
    case BaseKind::Qp:
      return {{"base", "Q"}, {"p", spec.p}};
    case BaseKind::FpT:
      return {{"base", "Fp_t"}, {"p", spec.p}};
    case BaseKind::QT:
      return {{"base", "Q_t"}};
    case BaseKind::FpUV:
      return {{"base", "Fp_uv"}, {"p", spec.p}};
  }
  return nullptr;
}

FieldSpec field_from_json(const Json& j) {
  std::string base = need(j, "base").get<std::string>();
  if (base == "Q_t") return FieldSpec::q_t();
  uint64_t p = need(j, "p").get<uint64_t>();
  if (base == "Q") return FieldSpec::rationals(p);
  if (base == "Fp_t") return FieldSpec::fp_t(p);
  if (base == "Fp_uv") return FieldSpec::fp_uv(p);
  bad("unknown base field", j);
}

Json to_json(const FieldElement& c) { return c.str(); }

FieldElement element_from_json(const FieldSpec& spec, const Json& j) {
  if (j.is_string()) return parse_field_element(spec, j.get<std::string>());
  return FieldElement(spec, rational_from_json(j));
}

Json to_json(const Poly& f) {
  Json c = Json::array();
  for (const auto& a : f.coeffs()) c.push_back(to_json(a));
  return {{"coeffs", c}};
}

Poly poly_from_json(const FieldSpec& spec, const Json& j) {
  if (j.is_string()) return parse_polynomial(spec, j.get<std::string>());
  std::vector<FieldElement> cs;
  for (const auto& c : need(j, "coeffs")) cs.push_back(element_from_json(spec, c));
  return Poly(spec, std::move(cs));
}

std::vector<Poly> polys_from_json(const FieldSpec& spec, const Json& j) {
  const Json& arr = j.is_object() && j.contains("probes") ? j.at("probes") : j;
  if (!arr.is_array()) bad("expected a list of polynomials", j);
  std::vector<Poly> out;
  for (const auto& p : arr) out.push_back(poly_from_json(spec, p));
  return out;
}

Json chain_entries_json(const KeyChain& chain) {
  ValueMode mode = chain.spec().mode();
  Json out = Json::array();
  for (int i = 1; i <= chain.length(); ++i) {
    const Level& L = chain.level(i);
    Json e = {{"Q", to_json(L.Q)}, {"beta", to_json(L.beta, mode)}, {"alpha", L.alpha}};
    if (L.beta.is_finite()) {
      EffectiveBound B = effective_bound(chain, i);
      e["b"] = B.b;
      e["e"] = B.e;
    } else {
      e["b"] = nullptr;
      e["e"] = nullptr;
    }
    out.push_back(e);
  }
  return out;
}

Json to_json(const KeyChain& chain) {
  Json out = {{"field", to_json(chain.spec())}, {"chain", chain_entries_json(chain)}};
  if (chain.limit) out["limit"] = {{"Q", to_json(chain.limit->Q)}, {"beta", to_json(chain.limit->beta, chain.spec().mode())}};
  return out;
}

KeyChain chain_from_json(const Json& j, const FieldSpec* spec) {
  FieldSpec s = spec ? *spec : FieldSpec{};
  const Json* entries = &j;
  if (j.is_object()) {
    if (j.contains("field")) s = field_from_json(j.at("field"));
    else if (!spec) bad("chain document without a field", j);
    entries = &need(j, "chain");
  } else if (!spec) {
    bad("chain entries without a field", j);
  }
  if (!entries->is_array() || entries->empty()) bad("a chain needs at least one entry", *entries);
  const Json& first = entries->at(0);
  Poly q1 = poly_from_json(s, need(first, "Q"));
  if (!(q1 == Poly::x(s))) throw Error(ErrorKind::InvalidInput, "the first key polynomial must be x, got " + q1.str());
  KeyChain chain(s, value_from_json(need(first, "beta")));
  for (size_t k = 1; k < entries->size(); ++k) {
    const Json& e = entries->at(k);
    chain.append(poly_from_json(s, need(e, "Q")), value_from_json(need(e, "beta")));
  }
  if (j.is_object() && j.contains("limit"))
    chain.limit = LimitMarker{poly_from_json(s, need(j.at("limit"), "Q")), value_from_json(need(j.at("limit"), "beta"))};
  return chain;
}

Json to_json(const NewtonPolygon& np, ValueMode mode) {
  auto pts = [&](const std::vector<std::pair<int, Value>>& v) {
    Json a = Json::array();
    for (const auto& [j, val] : v) a.push_back(Json::array({j, to_json(val, mode)}));
    return a;
  };
  Json sides = Json::array();
  for (const auto& s : np.sides) sides.push_back({{"slope", to_json(s.slope, mode)}, {"from", s.from}, {"to", s.to}});
  return {{"points", pts(np.points)}, {"hull", pts(np.hull)}, {"sides", sides}};
}

Json to_json(const GradedElement& g, ValueMode mode) {
  auto coords = [&](const RPoly& f) {
    Json a = Json::array();
    for (const auto& c : f) a.push_back(g.field->str(c));
    return a;
  };
  return {{"level", g.level},
          {"value", to_json(g.value, mode)},
          {"support", g.support},
          {"lowest", g.lowest},
          {"residual", {{"tower_level", g.field->depth()}, {"coeffs", coords(g.residual)}}},
          {"reduced", {{"tower_level", g.field->depth()}, {"coeffs", coords(g.reduced)}}}};
}

Json to_json(const StandardExpansion& e, const KeyChain& chain) {
  ValueMode mode = chain.spec().mode();
  Json coeffs = Json::array(), values = Json::array();
  for (const auto& c : e.coeffs) coeffs.push_back(to_json(c));
  for (const auto& v : chain.coefficient_values(e)) values.push_back(to_json(v, mode));
  return {{"level", e.level}, {"coeffs", coeffs}, {"values", values}};
}

Json to_json(const AugmentReport& r, ValueMode mode) {
  Json out = {{"witness", to_json(r.witness)},
              {"level", r.level},
              {"support", r.support},
              {"residual", r.residual_str},
              {"factor", r.factor_str},
              {"abar", r.abar},
              {"d", r.d},
              {"alpha", r.alpha},
              {"Q", to_json(r.Q)},
              {"beta", to_json(r.beta, mode)},
              {"witness_before", to_json(r.witness_before, mode)},
              {"witness_after", to_json(r.witness_after, mode)},
              {"passing_factors", r.passing_factors}};
  out["z"] = r.z ? to_json(*r.z) : Json(nullptr);
  return out;
}

Json to_json(const RunResult& r) {
  ValueMode mode = r.chain.spec().mode();
  Json steps = Json::array();
  for (const auto& s : r.trace) steps.push_back(to_json(s, mode));
  Json tails = Json::array();
  for (const auto& t : r.tails) tails.push_back({{"first_step", t.first_step}, {"length", t.length}, {"kind", case_name(t.kind)}});
  return {{"status", status_name(r.status)},
          {"stop_reason", r.stop_reason},
          {"infinite_top", r.infinite_top},
          {"declared_bound", optional_value(r.declared_bound, mode)},
          {"chain", to_json(r.chain)},
          {"steps", steps},
          {"tails", tails}};
}

Json to_json(const Check& c) {
  return {{"name", c.name}, {"applicable", c.applicable}, {"passed", c.passed}, {"detail", c.detail}};
}

Json to_json(const EffectiveBound& b, ValueMode mode) {
  return {{"level", b.level},
          {"b", b.b},
          {"e", b.e},
          {"I_max", b.I_max},
          {"ratio", to_json(b.ratio, mode)},
          {"slope", to_json(b.slope, mode)},
          {"derivatives_nonnegative", b.derivatives_nonnegative},
          {"p_powers", b.p_powers}};
}

Json to_json(const DerivativeReport& r, ValueMode mode) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"b", row.b},
                    {"value", to_json(row.value, mode)},
                    {"bound", to_json(row.bound, mode)},
                    {"holds", row.holds},
                    {"equality", row.equality}});
  return {{"level", r.level},
          {"bound", to_json(r.bound, mode)},
          {"value", to_json(r.value, mode)},
          {"support", r.support},
          {"rows", rows},
          {"predicted_b", r.predicted_b ? Json(*r.predicted_b) : Json(nullptr)},
          {"support_exponent", r.support_exponent ? Json(*r.support_exponent) : Json(nullptr)},
          {"checks", check_map(r.checks)},
          {"check_details", check_list(r.checks)}};
}

Json to_json(const CharacterPair& c, ValueMode mode) {
  Json out = {{"level", c.level},
              {"delta", c.delta},
              {"epsilon", c.epsilon_infinite() ? Json("inf") : Json(c.epsilon)},
              {"value", to_json(c.value, mode)},
              {"plus", to_json(c.plus, mode)},
              {"pivotal", {{"index", c.pivotal.first}, {"value", to_json(c.pivotal.second, mode)}}}};
  out["characteristic"] =
      c.characteristic ? Json{{"index", c.characteristic->first}, {"value", to_json(c.characteristic->second, mode)}} : Json(nullptr);
  return out;
}

Json to_json(const CharacterTrace& t, ValueMode mode) {
  Json pairs = Json::array();
  for (const auto& p : t.pairs) pairs.push_back(to_json(p, mode));
  Json checks = Json::array();
  for (const auto& [lvl, c] : t.checks) {
    Json e = to_json(c);
    e["level"] = lvl;
    checks.push_back(e);
  }
  return {{"pairs", pairs}, {"checks", checks}, {"all_passed", t.all_passed()}};
}

Json to_json(const StableDelta& d) {
  return {{"delta", d.delta}, {"e", d.e}, {"window", d.window}, {"violation", d.violation ? Json(*d.violation) : Json(nullptr)}};
}

Json to_json(const CongruenceReport& r, ValueMode mode) {
  return {{"v", r.v},
          {"from", r.from},
          {"level", r.level},
          {"difference", to_json(r.difference)},
          {"value", to_json(r.value, mode)},
          {"threshold", to_json(r.threshold, mode)},
          {"holds", r.holds},
          {"strict", r.strict},
          {"from_oracle", r.from_oracle}};
}

Json to_json(const BadMonomialReport& r, ValueMode mode) {
  Json entries = Json::array();
  for (const auto& m : r.entries)
    entries.push_back({{"j", m.j},
                       {"value", to_json(m.value, mode)},
                       {"weight", to_json(m.weight, mode)},
                       {"below_line", m.below_line},
                       {"below_critical", m.below_critical},
                       {"not_p_power", m.not_p_power},
                       {"above_critical", m.above_critical},
                       {"bad", m.bad},
                       {"removable", m.removable}});
  return {{"level", r.level},
          {"e0", r.e0},
          {"degree", r.degree},
          {"bound", to_json(r.bound, mode)},
          {"line", to_json(r.line, mode)},
          {"entries", entries},
          {"greatest", r.greatest ? Json(*r.greatest) : Json(nullptr)},
          {"lex_min", r.lex_min ? Json(*r.lex_min) : Json(nullptr)}};
}

Json to_json(const LimitCandidate& c, ValueMode mode) {
  Json coeffs = Json::object(), values = Json::object();
  for (const auto& [j, a] : c.coeffs) coeffs[std::to_string(j)] = to_json(a);
  for (const auto& [j, v] : c.coeff_values) values[std::to_string(j)] = to_json(v, mode);
  std::vector<Check> checks = {c.weakly_affine, c.critical_line, c.exponent_divisibility};
  return {{"base_level", c.base_level},
          {"e0", c.e0},
          {"degree", c.degree},
          {"bound", to_json(c.bound, mode)},
          {"poly", to_json(c.poly)},
          {"coeffs", coeffs},
          {"coeff_values", values},
          {"checks", check_map(checks)},
          {"check_details", check_list(checks)}};
}

Json to_json(const LimitResult& r, ValueMode mode) {
  Json steps = Json::array();
  for (const auto& s : r.report.steps)
    steps.push_back({{"action", s.action}, {"level", s.level}, {"j", s.j}, {"value", to_json(s.value, mode)}, {"detail", s.detail}});
  Json report = {{"probe", to_json(r.report.probe)},
                 {"delta", r.report.delta},
                 {"window", r.report.window},
                 {"normalization_level", r.report.normalization_level},
                 {"truncation_level", r.report.truncation_level},
                 {"start_level", r.report.start_level},
                 {"steps", steps},
                 {"checks", check_list(r.report.checks)},
                 {"violations", r.report.violations}};
  Json out = to_json(r.candidate, mode);
  out["report"] = report;
  return out;
}

OraclePtr oracle_from_json(const Json& j) {
  std::string kind = need(j, "kind").get<std::string>();
  if (kind == "scripted") {
    OraclePtr inner = oracle_from_json(need(j, "inner"));
    const FieldSpec& s = inner->field();
    return std::make_shared<ScriptedLimitOracle>(inner, poly_from_json(s, need(j, "limit")), value_from_json(need(j, "value")));
  }
  if (kind == "chain") {
    const Json& c = need(j, "chain");
    if (c.is_object()) return std::make_shared<ChainOracle>(chain_from_json(c));
    FieldSpec s = field_from_json(need(j, "field"));
    return std::make_shared<ChainOracle>(chain_from_json(c, &s));
  }
  FieldSpec s = field_from_json(need(j, "field"));
  if (kind == "eisenstein") return std::make_shared<EisensteinRootOracle>(poly_from_json(s, need(j, "min_poly")), need(j, "e").get<long>());
  if (kind == "hensel") {
    int steps = j.value("max_steps", 14);
    FieldElement start = j.contains("start") ? element_from_json(s, j.at("start")) : FieldElement::zero(s);
    return std::make_shared<SeriesOracle>(s, std::make_shared<HenselSource>(poly_from_json(s, need(j, "min_poly")), start, steps), "hensel");
  }
  if (kind == "series") {
    if (j.contains("generator")) {
      std::string g = j.at("generator").get<std::string>();
      if (g != "sqrt2_convergents") bad("unknown series generator", j);
      if (s.kind != BaseKind::FpUV) throw Error(ErrorKind::InvalidInput, "sqrt2_convergents needs an Fp_uv field");
      return std::make_shared<SeriesOracle>(s, std::make_shared<Sqrt2ConvergentSource>(s, j.value("max_terms", 14)), "sqrt2_convergents");
    }
    std::vector<SeriesTerm> terms;
    for (const auto& t : need(j, "terms"))
      terms.push_back({value_from_json(need(t, "exp")), Scalar(s.residue_char(), rational_from_json(need(t, "coeff")))});
    Value frontier = j.contains("frontier") ? value_from_json(j.at("frontier")) : Value::infinity();
    return std::make_shared<SeriesOracle>(s, std::make_shared<ListSource>(s, std::move(terms), frontier));
  }
  bad("unknown oracle kind", j);
}

Budgets budgets_from_json(const Json& j, Budgets b) {
  if (j.is_null()) return b;
  if (j.contains("max_steps")) b.max_steps = j.at("max_steps").get<int>();
  if (j.contains("value_threshold")) b.value_threshold = value_from_json(j.at("value_threshold"));
  if (j.contains("stall_window")) b.stall_window = j.at("stall_window").get<int>();
  if (j.contains("degree_bound")) b.degree_bound = j.at("degree_bound").get<int>();
  if (j.contains("seed")) b.seed = j.at("seed").get<uint64_t>();
  return b;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace keypoly
