#pragma once

#include "doctest.h"
#include "scalar.hpp"

namespace doctest {
template <>
struct StringMaker<hk::Scalar> {
    static String convert(const hk::Scalar& s) { return s.str().c_str(); }
};
template <>
struct StringMaker<hk::Rational> {
    static String convert(const hk::Rational& q) { return q.get_str().c_str(); }
};
}  // namespace doctest
