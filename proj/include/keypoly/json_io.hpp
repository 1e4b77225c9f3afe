#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "keypoly/analysis.hpp"
#include "keypoly/augment.hpp"
#include "keypoly/chain.hpp"
#include "keypoly/graded.hpp"
#include "keypoly/limits.hpp"
#include "keypoly/oracle.hpp"

namespace keypoly {

using Json = nlohmann::json;

Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const Value& v, ValueMode mode);
Value value_from_json(const Json& j);

Json to_json(const FieldSpec& spec);
FieldSpec field_from_json(const Json& j);

/// Field elements are written in the expression syntax of the parser.
Json to_json(const FieldElement& c);
FieldElement element_from_json(const FieldSpec& spec, const Json& j);

Json to_json(const Poly& f);
/// Accepts {"coeffs": [...]} or an expression string.
Poly poly_from_json(const FieldSpec& spec, const Json& j);
std::vector<Poly> polys_from_json(const FieldSpec& spec, const Json& j);

/// Array of {Q, beta, alpha, b, e} entries.
Json chain_entries_json(const KeyChain& chain);
/// {"field": ..., "chain": [...]} plus the limit marker when present.
Json to_json(const KeyChain& chain);
/// Reads either a chain document or a bare entry array with a known field.
KeyChain chain_from_json(const Json& j, const FieldSpec* spec = nullptr);

Json to_json(const NewtonPolygon& np, ValueMode mode);
Json to_json(const GradedElement& g, ValueMode mode);
Json to_json(const StandardExpansion& e, const KeyChain& chain);

Json to_json(const AugmentReport& r, ValueMode mode);
Json to_json(const RunResult& r);

Json to_json(const Check& c);
Json to_json(const EffectiveBound& b, ValueMode mode);
Json to_json(const DerivativeReport& r, ValueMode mode);
Json to_json(const CharacterPair& c, ValueMode mode);
Json to_json(const CharacterTrace& t, ValueMode mode);

Json to_json(const StableDelta& d);
Json to_json(const CongruenceReport& r, ValueMode mode);
Json to_json(const BadMonomialReport& r, ValueMode mode);
Json to_json(const LimitCandidate& c, ValueMode mode);
Json to_json(const LimitResult& r, ValueMode mode);

/// Builds an oracle from its spec document; see docs/schemas/oracle.schema.json.
OraclePtr oracle_from_json(const Json& j);

Budgets budgets_from_json(const Json& j, Budgets base = {});

/// Deterministic text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace keypoly
