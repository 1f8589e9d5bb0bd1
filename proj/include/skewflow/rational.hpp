/*
 * Copyright 2026 The skewflow Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace skewflow {

/// Exact rational scalar. GMP keeps every value canonical (lowest terms,
/// positive denominator) as long as it is built through the helpers below or
/// through mpq_class arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "num/den" or the integer shorthand "num". Throws Error(Parse) on
/// malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Always "num/den", even for integers ("5/1").
std::string format_rational(const Rational& value);

/// max(|num|, den), the height used for pivot selection.
Integer height(const Rational& value);

/// value^exponent for exponent >= 0, with 0^0 = 1.
Rational power(const Rational& value, unsigned exponent);

}  // namespace skewflow
