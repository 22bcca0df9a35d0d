// Copyright 2026 The Flipline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLIPLINE_RATIONAL_HPP
#define FLIPLINE_RATIONAL_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace flipline {

// Exact arbitrary-precision rationals, always kept in lowest terms.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  const auto& num = boost::multiprecision::numerator(r);
  const auto& den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace flipline

#endif  // FLIPLINE_RATIONAL_HPP
