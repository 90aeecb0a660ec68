#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padicqm/error.hpp"

namespace padicqm {

bool is_prime(std::uint64_t n);

// p^e as a GMP integer, e >= 0.
mpz_class pow_p(std::uint64_t p, long e);

// Removes every factor p from n (n != 0) and returns how many there were.
long remove_p(mpz_class& n, std::uint64_t p);

/// The prime and the number of digits carried on the unit part of
/// approximate values.
class PadicContext {
 public:
  PadicContext(std::uint64_t p, int precision);

  std::uint64_t p() const { return p_; }
  int precision() const { return precision_; }

  friend bool operator==(const PadicContext&, const PadicContext&) = default;

 private:
  std::uint64_t p_;
  int precision_;
};

void require_same(const PadicContext& a, const PadicContext& b);

/// An absolute value p^(-val2/2). Twice the additive valuation is kept so
/// that norms from a ramified extension stay exact.
class Norm {
 public:
  static Norm zero(std::uint64_t p) { return Norm(p, true, 0); }
  static Norm from_valuation2(std::uint64_t p, long val2) { return Norm(p, false, val2); }
  static Norm one(std::uint64_t p) { return Norm(p, false, 0); }

  bool is_zero() const { return zero_; }
  std::uint64_t base() const { return p_; }
  // Twice the additive valuation; only meaningful for nonzero norms.
  long valuation2() const { return val2_; }

  Norm operator*(const Norm& o) const;
  friend bool operator==(const Norm& a, const Norm& b) {
    return a.zero_ == b.zero_ && (a.zero_ || a.val2_ == b.val2_);
  }
  friend std::strong_ordering operator<=>(const Norm& a, const Norm& b);

  // "0", "1", "3^2", "3^-1", "3^-1/2" and so on; the exponent is that of p.
  std::string str() const;
  static Norm parse(std::uint64_t p, const std::string& s);

 private:
  Norm(std::uint64_t p, bool zero, long val2) : p_(p), zero_(zero), val2_(val2) {}
  std::uint64_t p_;
  bool zero_;
  long val2_;
};

/// An upper bound on a norm. When `exact` is set the bound is attained.
struct NormBound {
  Norm value;
  bool exact;
};

// Largest norm among the bounds. Throws PrecisionExhausted when an inexact
// bound could exceed the largest exact value.
Norm max_norm(std::span<const NormBound> bounds, std::uint64_t p);

/// An element of Q_p.
///
/// Three states. Exact values are rationals and stay exact under field
/// operations. Approximate values have a known valuation and a unit known
/// to `relative_precision()` digits; square roots produce these. Indistinct
/// values are zero modulo p^A and nothing more is known, which is what
/// subtracting two equal approximate values gives.
class PadicNumber {
 public:
  enum class State : std::uint8_t { Exact, Approximate, Indistinct };

  explicit PadicNumber(const PadicContext& ctx);  // exact zero

  static PadicNumber from_integer(const PadicContext& ctx, long n);
  static PadicNumber from_rational(const PadicContext& ctx, const mpq_class& q);
  // Approximate value p^valuation * (sum digits[i] p^i). digits[0] != 0.
  static PadicNumber from_digits(const PadicContext& ctx, long valuation,
                                 std::span<const unsigned> digits);
  static PadicNumber approximate(const PadicContext& ctx, long valuation, const mpz_class& unit,
                                 int relative_precision);
  static PadicNumber indistinct(const PadicContext& ctx, long absolute_precision);

  const PadicContext& context() const { return ctx_; }
  std::uint64_t p() const { return ctx_.p(); }
  State state() const { return state_; }
  bool is_exact() const { return state_ == State::Exact; }
  bool is_exact_zero() const { return state_ == State::Exact && exact_ == 0; }
  // Zero as far as anything is known: exact zero or indistinct.
  bool is_zero_at_precision() const { return is_exact_zero() || state_ == State::Indistinct; }
  bool is_known_nonzero() const { return !is_zero_at_precision(); }

  // Throws ZeroInput for exact zero and PrecisionExhausted when indistinct.
  long valuation() const;
  // Lower bound on the valuation; nullopt means exact zero.
  std::optional<long> valuation_lower_bound() const;
  // nullopt for exact values.
  std::optional<long> absolute_precision() const;
  int relative_precision() const;
  // Unit part modulo p^digits. digits must not exceed what is known.
  mpz_class unit(int digits) const;
  // Base-p digits of the unit part, least significant first.
  std::vector<unsigned> digits() const;
  const mpq_class& exact_value() const { return exact_; }

  Norm abs() const;
  NormBound abs_bound() const;

  // Forget exactness: carry `precision()` relative digits.
  PadicNumber truncated() const;

  PadicNumber operator-() const;
  PadicNumber inverse() const;

  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
  PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
  PadicNumber& operator-=(const PadicNumber& o) { return *this = *this - o; }
  PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }

  std::string str() const;

 private:
  PadicContext ctx_;
  State state_ = State::Exact;
  mpq_class exact_;
  long val_ = 0;  // valuation; absolute precision when indistinct
  mpz_class unit_;
  int rel_ = 0;
};

bool eq_mod_precision(const PadicNumber& a, const PadicNumber& b);

enum class Branch { Principal, Other };

bool is_square(const PadicNumber& a);
// Principal branch: leading unit digit in [1, (p-1)/2] for odd p, root = 1
// mod 4 for p = 2. For p = 2 the root carries one digit fewer.
PadicNumber sqrt(const PadicNumber& a, Branch branch = Branch::Principal);

/// A class of Q_p* / (Q_p*)^2, named by its least positive integer
/// representative: {1, eta, p, eta*p} for odd p, {1,2,3,5,6,7,10,14} for p = 2.
struct SquareClass {
  std::uint64_t representative;
  std::string label;
  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.representative == b.representative;
  }
};

SquareClass square_class(const PadicNumber& a);
std::vector<SquareClass> square_classes(const PadicContext& ctx);
SquareClass square_class_product(const PadicContext& ctx, const SquareClass& a,
                                 const SquareClass& b);
// Least positive quadratic non-residue mod p (odd p).
PadicNumber find_eta(const PadicContext& ctx);
std::uint64_t eta_of(std::uint64_t p);

// Hilbert symbol (a, b)_p for nonzero a, b: +1 iff a is a norm from Q_p(sqrt b).
int hilbert_symbol(const PadicNumber& a, const PadicNumber& b);

}  // namespace padicqm
