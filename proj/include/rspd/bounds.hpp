#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rspd {

/// Exact rational with positive denominator in lowest terms.
class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  std::int64_t num_, den_;
};

enum class BoundCase { NEvenKEven, NEvenKOdd, NOddKEven, NOddKOdd };
const char* to_string(BoundCase c);

struct RateBound {
  std::size_t n = 0, k = 0;
  Rational bound;
  BoundCase case_tag = BoundCase::NEvenKEven;
};

/// Upper bound on N/T for row-monomial semi-orthogonal codes, with m = floor(N/2), l = floor(K/2).
/// Throws std::invalid_argument for n or k equal to zero.
RateBound rate_upper_bound(std::size_t n, std::size_t k);

class ClassNotCovered : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Minimum second-phase length of the constructed code and of the row-monomial DOSTBC for
/// N = 4y + b, K = 4x + a with x, y >= 1.
struct MinSlotTable {
  std::size_t n = 0, k = 0;
  std::size_t t_rs = 0;
  std::size_t t_dostbc = 0;
};

/// Throws ClassNotCovered when n < 4 or k < 4.
MinSlotTable min_slots(std::size_t n, std::size_t k);

/// True iff n / t_rs equals the rate bound exactly.
bool achieves_bound(std::size_t n, std::size_t k);

}  // namespace rspd
