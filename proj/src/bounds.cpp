#include "rspd/bounds.hpp"

#include <algorithm>
#include <numeric>

namespace rspd {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  if (den < 0) num = -num, den = -den;
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

const char* to_string(BoundCase c) {
  switch (c) {
    case BoundCase::NEvenKEven: return "N even, K even";
    case BoundCase::NEvenKOdd: return "N even, K odd";
    case BoundCase::NOddKEven: return "N odd, K even";
    case BoundCase::NOddKOdd: return "N odd, K odd";
  }
  return "?";
}

RateBound rate_upper_bound(std::size_t n, std::size_t k) {
  if (n == 0 || k == 0) throw std::invalid_argument("rate bound needs n >= 1 and k >= 1");
  const auto m = static_cast<std::int64_t>(n / 2), l = static_cast<std::int64_t>(k / 2);
  RateBound r{n, k, {}, {}};
  if (n % 2 == 0 && k % 2 == 0) {
    r.case_tag = BoundCase::NEvenKEven;
    r.bound = Rational(2, l);
  } else if (n % 2 == 0) {
    r.case_tag = BoundCase::NEvenKOdd;
    r.bound = Rational(2, l + 1);
  } else if (k % 2 == 0) {
    r.case_tag = BoundCase::NOddKEven;
    r.bound = Rational(2 * m + 1, (m + 1) * l);
  } else {
    r.case_tag = BoundCase::NOddKOdd;
    r.bound = Rational(4 * m + 2, (2 * m + 2) * l + 2 * m + 1);
  }
  return r;
}

MinSlotTable min_slots(std::size_t n, std::size_t k) {
  if (n < 4 || k < 4)
    throw ClassNotCovered("slot tables cover n >= 4 and k >= 4 only (got n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ")");
  const std::size_t y = n / 4, b = n % 4, x = k / 4, a = k % 4;
  const std::size_t xy = x * y;
  MinSlotTable t{n, k, 0, 0};
  auto set = [&](std::size_t rs, std::size_t dostbc) {
    t.t_rs = rs;
    t.t_dostbc = dostbc;
  };
  switch (b * 4 + a) {
    // N even, K even
    case 0 * 4 + 0: set(4 * xy, 8 * xy); break;
    case 2 * 4 + 0: set(4 * xy + 4 * x, 8 * xy + 4 * x); break;
    case 0 * 4 + 2: set(4 * xy + 4 * y, 8 * xy + 4 * y); break;
    case 2 * 4 + 2: set(4 * xy + 4 * y + 4 * x + 2, 8 * xy + 4 * y + 4 * x + 2); break;
    // N even, K odd
    case 0 * 4 + 1: set(4 * xy + 4 * y, 8 * xy + 4 * y); break;
    case 2 * 4 + 1: set(4 * xy + 4 * y + 4 * x + 2, 8 * xy + 4 * x + 4 * y + 2); break;
    case 0 * 4 + 3: set(4 * xy + 4 * y, 8 * xy + 8 * y); break;
    case 2 * 4 + 3: set(4 * xy + 4 * y + 4 * x + 4, 8 * xy + 8 * y + 4 * x + 4); break;
    // N odd, K even
    case 1 * 4 + 0: set(4 * xy + 4 * x, 8 * xy + 4 * x); break;
    case 1 * 4 + 2: set(4 * xy + 4 * y + 4 * x + 2, 8 * xy + 4 * x + 4 * y + 2); break;
    case 3 * 4 + 0: set(4 * xy + 8 * x, 8 * xy + 8 * x); break;
    case 3 * 4 + 2: set(4 * xy + 4 * y + 8 * x + 4, 8 * xy + 4 * y + 8 * x + 4); break;
    // N odd, K odd
    case 1 * 4 + 1:
      set(4 * xy + 4 * y + 4 * x + 1, std::max(8 * xy + 4 * x + 2 * y + 1, 8 * xy + 4 * y + 2 * x + 1));
      break;
    case 1 * 4 + 3:
      set(4 * xy + 4 * y + 4 * x + 3, std::max(8 * xy + 6 * y + 4 * x + 3, 8 * xy + 8 * y + 2 * x + 2));
      break;
    case 3 * 4 + 1:
      set(4 * xy + 8 * x + 4 * y + 3, std::max(8 * xy + 6 * x + 4 * y + 3, 8 * xy + 8 * x + 2 * y + 2));
      break;
    case 3 * 4 + 3:
      set(4 * xy + 4 * y + 8 * x + 8, std::max(8 * xy + 8 * x + 6 * y + 6, 8 * xy + 8 * y + 6 * x + 6));
      break;
  }
  return t;
}

bool achieves_bound(std::size_t n, std::size_t k) {
  const auto t = min_slots(n, k);
  return Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(t.t_rs)) ==
         rate_upper_bound(n, k).bound;
}

}  // namespace rspd
