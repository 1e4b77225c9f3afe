#pragma once

#include <string>

#include "keypoly/poly.hpp"

namespace keypoly {

/// Parse a polynomial in x. Coefficients may use the base field variables
/// (t, or u and v) and division by nonzero x-free subexpressions.
Poly parse_polynomial(const FieldSpec& spec, const std::string& text);
/// Parse an element of K; x is rejected.
FieldElement parse_field_element(const FieldSpec& spec, const std::string& text);

}  // namespace keypoly
