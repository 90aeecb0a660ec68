#include "padicqm/padic.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace padicqm {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPrime: return "InvalidPrime";
    case ErrorCode::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::NotASquare: return "NotASquare";
    case ErrorCode::MuIsSquare: return "MuIsSquare";
    case ErrorCode::RequiresOddP: return "RequiresOddP";
    case ErrorCode::SearchBoundExceeded: return "SearchBoundExceeded";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotBlockFinite: return "NotBlockFinite";
    case ErrorCode::NotAdjointable: return "NotAdjointable";
    case ErrorCode::NotSelfAdjoint: return "NotSelfAdjoint";
    case ErrorCode::NotTraceClass: return "NotTraceClass";
    case ErrorCode::InvalidCertificate: return "InvalidCertificate";
    case ErrorCode::TraceNotOne: return "TraceNotOne";
    case ErrorCode::TraceNotZero: return "TraceNotZero";
    case ErrorCode::SumNotOne: return "SumNotOne";
    case ErrorCode::SumNotIdentity: return "SumNotIdentity";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::UnsupportedForP2: return "UnsupportedForP2";
    case ErrorCode::OutsideWindow: return "OutsideWindow";
    case ErrorCode::TailDominates: return "TailDominates";
    case ErrorCode::TailNotBounded: return "TailNotBounded";
    case ErrorCode::DegenerateNormalizer: return "DegenerateNormalizer";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class pow_p(std::uint64_t p, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
  return r;
}

long remove_p(mpz_class& n, std::uint64_t p) {
  mpz_class pz(static_cast<unsigned long>(p));
  return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

namespace {

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(ErrorCode::DivisionByZero, "unit not invertible");
  return r;
}

// Valuation and unit residue modulo p^digits of a nonzero rational.
struct Split {
  long val;
  mpz_class num;  // p-free
  mpz_class den;  // p-free
};

Split split_rational(const mpq_class& q, std::uint64_t p) {
  Split s{0, q.get_num(), q.get_den()};
  s.val = remove_p(s.num, p) - remove_p(s.den, p);
  return s;
}

bool perfect_square(const mpz_class& n, mpz_class& root) {
  if (n < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
  return true;
}

}  // namespace

PadicContext::PadicContext(std::uint64_t p, int precision) : p_(p), precision_(precision) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
  if (precision < 5) throw Error(ErrorCode::PrecisionTooLow, "precision must be at least 5 digits");
}

void require_same(const PadicContext& a, const PadicContext& b) {
  if (!(a == b))
    throw Error(ErrorCode::ContextMismatch,
                "p=" + std::to_string(a.p()) + ",N=" + std::to_string(a.precision()) + " vs p=" +
                    std::to_string(b.p()) + ",N=" + std::to_string(b.precision()));
}

// ---- Norm ----

Norm Norm::operator*(const Norm& o) const {
  if (zero_ || o.zero_) return zero(p_);
  return from_valuation2(p_, val2_ + o.val2_);
}

std::strong_ordering operator<=>(const Norm& a, const Norm& b) {
  if (a.zero_ || b.zero_) return (!a.zero_) <=> (!b.zero_);
  return b.val2_ <=> a.val2_;
}

std::string Norm::str() const {
  if (zero_) return "0";
  if (val2_ == 0) return "1";
  std::ostringstream os;
  os << p_ << "^";
  long e2 = -val2_;
  if (e2 % 2 == 0)
    os << e2 / 2;
  else
    os << e2 << "/2";
  return os.str();
}

Norm Norm::parse(std::uint64_t p, const std::string& s) {
  if (s == "0") return zero(p);
  if (s == "1") return one(p);
  auto caret = s.find('^');
  if (caret == std::string::npos || std::stoull(s.substr(0, caret)) != p)
    throw Error(ErrorCode::ParseError, "bad norm '" + s + "'");
  std::string e = s.substr(caret + 1);
  auto slash = e.find('/');
  if (slash == std::string::npos) return from_valuation2(p, -2 * std::stol(e));
  if (e.substr(slash + 1) != "2") throw Error(ErrorCode::ParseError, "bad norm '" + s + "'");
  return from_valuation2(p, -std::stol(e.substr(0, slash)));
}

Norm max_norm(std::span<const NormBound> bounds, std::uint64_t p) {
  Norm best = Norm::zero(p);
  for (const auto& b : bounds)
    if (b.exact && b.value > best) best = b.value;
  for (const auto& b : bounds)
    if (!b.exact && b.value > best)
      throw Error(ErrorCode::PrecisionExhausted, "an entry known only up to " + b.value.str() +
                                                     " could exceed " + best.str());
  return best;
}

// ---- PadicNumber ----

PadicNumber::PadicNumber(const PadicContext& ctx) : ctx_(ctx), exact_(0) {}

PadicNumber PadicNumber::from_integer(const PadicContext& ctx, long n) {
  return from_rational(ctx, mpq_class(n));
}

PadicNumber PadicNumber::from_rational(const PadicContext& ctx, const mpq_class& q) {
  PadicNumber r(ctx);
  r.exact_ = q;
  r.exact_.canonicalize();
  if (r.exact_ != 0) r.val_ = split_rational(r.exact_, ctx.p()).val;
  return r;
}

PadicNumber PadicNumber::from_digits(const PadicContext& ctx, long valuation,
                                     std::span<const unsigned> digits) {
  if (digits.empty() || digits[0] == 0 || digits[0] >= ctx.p())
    throw Error(ErrorCode::ParseError, "leading digit must be a nonzero base-p digit");
  mpz_class u = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= ctx.p()) throw Error(ErrorCode::ParseError, "digit out of range");
    u = u * static_cast<unsigned long>(ctx.p()) + digits[i];
  }
  return approximate(ctx, valuation, u, static_cast<int>(digits.size()));
}

PadicNumber PadicNumber::approximate(const PadicContext& ctx, long valuation,
                                     const mpz_class& unit, int relative_precision) {
  PadicNumber r(ctx);
  int rel = std::min(relative_precision, ctx.precision());
  if (rel < 1) throw Error(ErrorCode::PrecisionExhausted, "no relative digits");
  mpz_class m = pow_p(ctx.p(), rel);
  r.state_ = State::Approximate;
  r.val_ = valuation;
  r.rel_ = rel;
  r.unit_ = mod_pos(unit, m);
  if (mpz_divisible_ui_p(r.unit_.get_mpz_t(), ctx.p()))
    throw Error(ErrorCode::ParseError, "unit part divisible by p");
  r.exact_ = 0;
  return r;
}

PadicNumber PadicNumber::indistinct(const PadicContext& ctx, long absolute_precision) {
  PadicNumber r(ctx);
  r.state_ = State::Indistinct;
  r.val_ = absolute_precision;
  return r;
}

long PadicNumber::valuation() const {
  if (state_ == State::Indistinct)
    throw Error(ErrorCode::PrecisionExhausted,
                "value is zero modulo p^" + std::to_string(val_) + "; raise the precision");
  if (is_exact_zero()) throw Error(ErrorCode::ZeroInput, "valuation of zero");
  return val_;
}

std::optional<long> PadicNumber::valuation_lower_bound() const {
  if (is_exact_zero()) return std::nullopt;
  return val_;
}

std::optional<long> PadicNumber::absolute_precision() const {
  switch (state_) {
    case State::Exact: return std::nullopt;
    case State::Approximate: return val_ + rel_;
    case State::Indistinct: return val_;
  }
  return std::nullopt;
}

int PadicNumber::relative_precision() const {
  switch (state_) {
    case State::Exact: return ctx_.precision();
    case State::Approximate: return rel_;
    case State::Indistinct: return 0;
  }
  return 0;
}

mpz_class PadicNumber::unit(int digits) const {
  if (digits <= 0) return 0;
  mpz_class m = pow_p(ctx_.p(), digits);
  if (state_ == State::Approximate) {
    if (digits > rel_) throw Error(ErrorCode::PrecisionExhausted, "unit digits beyond precision");
    return mod_pos(unit_, m);
  }
  if (state_ == State::Indistinct || exact_ == 0)
    throw Error(ErrorCode::ZeroInput, "unit part of zero");
  Split s = split_rational(exact_, ctx_.p());
  return mod_pos(s.num * inv_mod(s.den, m), m);
}

std::vector<unsigned> PadicNumber::digits() const {
  if (is_zero_at_precision()) return {};
  int n = relative_precision();
  mpz_class u = unit(n);
  std::vector<unsigned> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    out.push_back(static_cast<unsigned>(mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), ctx_.p())));
  }
  return out;
}

Norm PadicNumber::abs() const {
  if (is_exact_zero()) return Norm::zero(ctx_.p());
  return Norm::from_valuation2(ctx_.p(), 2 * valuation());
}

NormBound PadicNumber::abs_bound() const {
  if (is_exact_zero()) return {Norm::zero(ctx_.p()), true};
  if (state_ == State::Indistinct) return {Norm::from_valuation2(ctx_.p(), 2 * val_), false};
  return {Norm::from_valuation2(ctx_.p(), 2 * val_), true};
}

PadicNumber PadicNumber::truncated() const {
  if (state_ != State::Exact || exact_ == 0) return *this;
  return approximate(ctx_, val_, unit(ctx_.precision()), ctx_.precision());
}

PadicNumber PadicNumber::operator-() const {
  PadicNumber r = *this;
  if (state_ == State::Exact) {
    r.exact_ = -exact_;
  } else if (state_ == State::Approximate) {
    r.unit_ = pow_p(ctx_.p(), rel_) - unit_;
  }
  return r;
}

PadicNumber PadicNumber::inverse() const {
  if (is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (state_ == State::Indistinct)
    throw Error(ErrorCode::PrecisionExhausted, "inverse of a value indistinguishable from zero");
  if (state_ == State::Exact) return from_rational(ctx_, 1 / exact_);
  return approximate(ctx_, -val_, inv_mod(unit_, pow_p(ctx_.p(), rel_)), rel_);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  require_same(a.ctx_, b.ctx_);
  if (a.is_exact() && b.is_exact()) return PadicNumber::from_rational(a.ctx_, a.exact_ + b.exact_);
  if (a.is_exact_zero()) return b;
  if (b.is_exact_zero()) return a;
  const auto& ctx = a.ctx_;
  long A = std::numeric_limits<long>::max();
  for (const auto* x : {&a, &b})
    if (auto ap = x->absolute_precision()) A = std::min(A, *ap);
  const PadicNumber* terms[2];
  int n = 0;
  for (const auto* x : {&a, &b})
    if (x->state_ != PadicNumber::State::Indistinct && x->val_ < A) terms[n++] = x;
  if (n == 0) return PadicNumber::indistinct(ctx, A);
  long vmin = terms[0]->val_;
  if (n == 2) vmin = std::min(vmin, terms[1]->val_);
  long width = A - vmin;
  // With distinct valuations the leading digit cannot cancel.
  if (n == 2 && terms[0]->val_ != terms[1]->val_) width = std::min<long>(width, ctx.precision());
  if (n == 1) width = std::min<long>(width, ctx.precision());
  mpz_class s = 0;
  for (int i = 0; i < n; ++i) {
    long shift = terms[i]->val_ - vmin;
    if (shift >= width) continue;
    s += terms[i]->unit(static_cast<int>(width - shift)) * pow_p(ctx.p(), shift);
  }
  s = mod_pos(s, pow_p(ctx.p(), width));
  if (s == 0) return PadicNumber::indistinct(ctx, A);
  long t = remove_p(s, ctx.p());
  long v = vmin + t;
  long rel = std::min<long>(A - v, ctx.precision());
  return PadicNumber::approximate(ctx, v, s, static_cast<int>(rel));
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  require_same(a.ctx_, b.ctx_);
  const auto& ctx = a.ctx_;
  if (a.is_exact() && b.is_exact()) return PadicNumber::from_rational(ctx, a.exact_ * b.exact_);
  if (a.is_exact_zero() || b.is_exact_zero()) return PadicNumber(ctx);
  using S = PadicNumber::State;
  if (a.state_ == S::Indistinct || b.state_ == S::Indistinct) {
    // O(p^A) * x = O(p^(A + v(x))); both indistinct adds the bounds.
    return PadicNumber::indistinct(ctx, a.val_ + b.val_);
  }
  int rel = std::min(a.relative_precision(), b.relative_precision());
  mpz_class u = a.unit(rel) * b.unit(rel);
  return PadicNumber::approximate(ctx, a.val_ + b.val_, u, rel);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) { return a * b.inverse(); }

std::string PadicNumber::str() const {
  std::ostringstream os;
  if (state_ == State::Exact) {
    os << exact_.get_str();
    return os.str();
  }
  if (state_ == State::Indistinct) {
    os << "O(" << ctx_.p() << "^" << val_ << ")";
    return os.str();
  }
  auto d = digits();
  os << ctx_.p() << "^" << val_ << "*[";
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << "]";
  return os.str();
}

bool eq_mod_precision(const PadicNumber& a, const PadicNumber& b) {
  return (a - b).is_zero_at_precision();
}

// ---- squares ----

namespace {

// Unit residue used by the square test: mod p for odd p, mod 8 for p = 2.
unsigned long square_test_residue(const PadicNumber& a) {
  std::uint64_t p = a.p();
  int need = p == 2 ? 3 : 1;
  if (a.state() == PadicNumber::State::Approximate && a.relative_precision() < need)
    throw Error(ErrorCode::PrecisionExhausted, "too few digits to decide squareness");
  return a.unit(need).get_ui();
}

bool is_qr_mod_p(unsigned long r, std::uint64_t p) {
  mpz_class a(r), pz(static_cast<unsigned long>(p));
  return mpz_legendre(a.get_mpz_t(), pz.get_mpz_t()) == 1;
}

}  // namespace

bool is_square(const PadicNumber& a) {
  if (a.is_exact_zero()) throw Error(ErrorCode::ZeroInput, "square test of zero");
  long v = a.valuation();
  if (v % 2 != 0) return false;
  unsigned long r = square_test_residue(a);
  if (a.p() == 2) return r == 1;
  return is_qr_mod_p(r, a.p());
}

PadicNumber sqrt(const PadicNumber& a, Branch branch) {
  const auto& ctx = a.context();
  std::uint64_t p = ctx.p();
  if (a.is_exact_zero()) return a;
  if (!is_square(a)) throw Error(ErrorCode::NotASquare, a.str() + " is not a square in Q_" +
                                                            std::to_string(p));
  long v = a.valuation();
  auto principal = [&](const PadicNumber& r) {
    // Decide the branch from the unit of a candidate root.
    if (p == 2) return r.unit(2).get_ui() == 1;
    unsigned long d = r.unit(1).get_ui();
    return d >= 1 && d <= (p - 1) / 2;
  };
  if (a.is_exact()) {
    const mpq_class& q = a.exact_value();
    mpz_class rn, rd;
    if (perfect_square(q.get_num(), rn) && perfect_square(q.get_den(), rd)) {
      PadicNumber r = PadicNumber::from_rational(ctx, mpq_class(rn, rd));
      bool want = branch == Branch::Principal;
      return principal(r) == want ? r : -r;
    }
  }
  int rel = a.relative_precision();
  mpz_class u = a.unit(rel);
  mpz_class w;
  int out_rel;
  if (p == 2) {
    // u = 1 mod 8. If w^2 = u mod 2^k then w or w + 2^(k-1) works mod 2^(k+1).
    w = 1;
    for (int k = 3; k < rel; ++k) {
      mpz_class m = pow_p(2, k + 1);
      if (mod_pos(w * w - u, m) != 0) w += pow_p(2, k - 1);
    }
    out_rel = rel - 1;
  } else {
    unsigned long u0 = mod_pos(u, mpz_class(static_cast<unsigned long>(p))).get_ui();
    unsigned long w0 = 1;
    while ((w0 * w0) % p != u0) ++w0;  // desk-scale primes
    w = w0;
    int k = 1;
    while (k < rel) {
      k = std::min(2 * k, rel);
      mpz_class m = pow_p(p, k);
      w = mod_pos(w - (w * w - u) * inv_mod(2 * w, m), m);
    }
    out_rel = rel;
  }
  PadicNumber r = PadicNumber::approximate(ctx, v / 2, w, out_rel);
  bool want = branch == Branch::Principal;
  return principal(r) == want ? r : -r;
}

std::uint64_t eta_of(std::uint64_t p) {
  if (p == 2) throw Error(ErrorCode::UnsupportedForP2, "eta is defined for odd p");
  for (unsigned long j = 2;; ++j)
    if (!is_qr_mod_p(j % p, p)) return j;
}

PadicNumber find_eta(const PadicContext& ctx) {
  return PadicNumber::from_integer(ctx, static_cast<long>(eta_of(ctx.p())));
}

SquareClass square_class(const PadicNumber& a) {
  if (a.is_exact_zero()) throw Error(ErrorCode::ZeroInput, "square class of zero");
  std::uint64_t p = a.p();
  long v = a.valuation();
  bool odd_v = (v % 2) != 0;
  unsigned long r = square_test_residue(a);
  if (p == 2) {
    std::uint64_t rep = odd_v ? 2 * r : r;
    return {rep, std::to_string(rep)};
  }
  bool residue = is_qr_mod_p(r, p);
  std::uint64_t eta = eta_of(p);
  if (!odd_v) return residue ? SquareClass{1, "1"} : SquareClass{eta, "eta"};
  return residue ? SquareClass{p, "p"} : SquareClass{eta * p, "eta*p"};
}

std::vector<SquareClass> square_classes(const PadicContext& ctx) {
  std::uint64_t p = ctx.p();
  if (p == 2) {
    std::vector<SquareClass> out;
    for (std::uint64_t r : {1, 2, 3, 5, 6, 7, 10, 14}) out.push_back({r, std::to_string(r)});
    return out;
  }
  std::uint64_t eta = eta_of(p);
  return {{1, "1"}, {eta, "eta"}, {p, "p"}, {eta * p, "eta*p"}};
}

SquareClass square_class_product(const PadicContext& ctx, const SquareClass& a,
                                 const SquareClass& b) {
  mpq_class prod(mpz_class(static_cast<unsigned long>(a.representative)) *
                 mpz_class(static_cast<unsigned long>(b.representative)));
  return square_class(PadicNumber::from_rational(ctx, prod));
}

int hilbert_symbol(const PadicNumber& a, const PadicNumber& b) {
  require_same(a.context(), b.context());
  std::uint64_t p = a.p();
  long alpha = a.valuation(), beta = b.valuation();
  if (p == 2) {
    if ((a.state() == PadicNumber::State::Approximate && a.relative_precision() < 3) ||
        (b.state() == PadicNumber::State::Approximate && b.relative_precision() < 3))
      throw Error(ErrorCode::PrecisionExhausted, "need three digits for the 2-adic symbol");
    unsigned long u = a.unit(3).get_ui(), w = b.unit(3).get_ui();
    auto eps = [](unsigned long x) { return ((x - 1) / 2) % 2; };
    auto omega = [](unsigned long x) { return ((x * x - 1) / 8) % 2; };
    unsigned long e = eps(u) * eps(w) + (static_cast<unsigned long>(alpha & 1)) * omega(w) +
                      (static_cast<unsigned long>(beta & 1)) * omega(u);
    return e % 2 == 0 ? 1 : -1;
  }
  unsigned long u = a.unit(1).get_ui(), w = b.unit(1).get_ui();
  int s = 1;
  if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2 == 1) s = -s;
  if ((beta & 1) && !is_qr_mod_p(u, p)) s = -s;
  if ((alpha & 1) && !is_qr_mod_p(w, p)) s = -s;
  return s;
}

}  // namespace padicqm
