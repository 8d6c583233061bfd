// Copyright 2026 The incmeter Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "incmeter/rational.hpp"

#include <limits>
#include <ostream>
#include <sstream>

namespace incmeter {
namespace {

using Wide = __int128;

Wide wide_abs(Wide v) { return v < 0 ? -v : v; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  *this = from_wide(numerator, denominator);
}

Rational Rational::from_wide(Wide numerator, Wide denominator) {
  if (denominator == 0) throw std::domain_error("rational: zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  Wide g = wide_gcd(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  if (!fits(numerator) || !fits(denominator)) {
    throw RationalOverflow("rational: result exceeds 64-bit range");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(numerator);
  r.den_ = static_cast<std::int64_t>(denominator);
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  *this = from_wide(Wide{num_} * rhs.den_ + Wide{rhs.num_} * den_,
                    Wide{den_} * rhs.den_);
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  *this = from_wide(Wide{num_} * rhs.den_ - Wide{rhs.num_} * den_,
                    Wide{den_} * rhs.den_);
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  *this = from_wide(Wide{num_} * rhs.num_, Wide{den_} * rhs.den_);
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("rational: division by zero");
  *this = from_wide(Wide{num_} * rhs.den_, Wide{den_} * rhs.num_);
  return *this;
}

Rational Rational::operator-() const {
  return from_wide(-Wide{num_}, den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = Wide{a.num_} * b.den_;
  Wide rhs = Wide{b.num_} * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_decimal(int digits) const {
  Wide n = num_;
  bool negative = n < 0;
  if (negative) n = -n;
  Wide scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // Round half up at the last printed digit.
  Wide scaled = (n * scale * 2 + den_) / (Wide{den_} * 2);
  Wide whole = scaled / scale;
  Wide frac = scaled % scale;
  std::ostringstream os;
  if (negative && scaled != 0) os << '-';
  os << static_cast<long long>(whole);
  if (digits > 0) {
    std::string f = std::to_string(static_cast<long long>(frac));
    os << '.' << std::string(digits - f.size(), '0') << f;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

}  // namespace incmeter
