#pragma once

#include <string>

#include "doctest.h"

#include "keypoly/chain.hpp"
#include "keypoly/error.hpp"
#include "keypoly/graded.hpp"
#include "keypoly/parse.hpp"

namespace kt {

using namespace keypoly;

inline Poly P(const FieldSpec& s, const std::string& text) { return parse_polynomial(s, text); }
inline FieldElement F(const FieldSpec& s, const std::string& text) { return parse_field_element(s, text); }
inline Value V(long n, long d = 1) { return Value::rational(n, d); }

}  // namespace kt

namespace doctest {
template <>
struct StringMaker<keypoly::Value> {
  static String convert(const keypoly::Value& v) { return v.str().c_str(); }
};
template <>
struct StringMaker<keypoly::Poly> {
  static String convert(const keypoly::Poly& v) { return v.str().c_str(); }
};
template <>
struct StringMaker<keypoly::FieldElement> {
  static String convert(const keypoly::FieldElement& v) { return v.str().c_str(); }
};
}  // namespace doctest
