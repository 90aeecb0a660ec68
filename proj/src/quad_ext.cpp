#include "padicqm/quad_ext.hpp"

#include <algorithm>
#include <sstream>

namespace padicqm {

ExtensionContext::ExtensionContext(const PadicNumber& mu) {
  if (mu.is_zero_at_precision()) throw Error(ErrorCode::MuIsSquare, "mu is zero");
  if (is_square(mu)) throw Error(ErrorCode::MuIsSquare, mu.str() + " is a square");
  d_ = std::make_shared<const Data>(Data{mu.context(), mu, square_class(mu), mu.valuation()});
}

ExtensionContext::ExtensionContext(const PadicContext& base, long mu)
    : ExtensionContext(PadicNumber::from_integer(base, mu)) {}

bool ExtensionContext::is_ramified() const {
  if (p() == 2) return mu_class().representative != 5;
  return mu_valuation() % 2 != 0;
}

bool ExtensionContext::is_isomorphic_to(const ExtensionContext& other) const {
  return p() == other.p() && mu_class() == other.mu_class();
}

bool operator==(const ExtensionContext& a, const ExtensionContext& b) {
  if (a.d_ == b.d_) return true;
  return a.base() == b.base() && eq_mod_precision(a.mu(), b.mu());
}

void require_same(const ExtensionContext& a, const ExtensionContext& b) {
  if (!(a == b))
    throw Error(ErrorCode::ContextMismatch,
                "Q_" + std::to_string(a.p()) + "(sqrt " + a.mu().str() + ") vs Q_" +
                    std::to_string(b.p()) + "(sqrt " + b.mu().str() + ")");
}

QuadExt::QuadExt(const ExtensionContext& ctx)
    : ctx_(ctx), sc_(ctx.base()), ac_(ctx.base()) {}

QuadExt::QuadExt(const ExtensionContext& ctx, PadicNumber sc, PadicNumber ac)
    : ctx_(ctx), sc_(std::move(sc)), ac_(std::move(ac)) {
  require_same(ctx.base(), sc_.context());
  require_same(ctx.base(), ac_.context());
}

QuadExt QuadExt::from_integer(const ExtensionContext& ctx, long n) {
  return QuadExt(ctx, PadicNumber::from_integer(ctx.base(), n), PadicNumber(ctx.base()));
}

QuadExt QuadExt::from_base(const ExtensionContext& ctx, const PadicNumber& x) {
  return QuadExt(ctx, x, PadicNumber(ctx.base()));
}

QuadExt QuadExt::sqrt_mu(const ExtensionContext& ctx) {
  return QuadExt(ctx, PadicNumber(ctx.base()), PadicNumber::from_integer(ctx.base(), 1));
}

QuadExt QuadExt::conj() const { return QuadExt(ctx_, sc_, -ac_); }

PadicNumber QuadExt::norm_form() const { return sc_ * sc_ - ctx_.mu() * ac_ * ac_; }

QuadExt QuadExt::inverse() const {
  if (is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  PadicNumber n = norm_form();
  if (n.is_zero_at_precision())
    throw Error(ErrorCode::PrecisionExhausted, "norm of " + str() + " is indistinct");
  PadicNumber ni = n.inverse();
  return QuadExt(ctx_, sc_ * ni, -(ac_ * ni));
}

QuadExt QuadExt::operator-() const { return QuadExt(ctx_, -sc_, -ac_); }

QuadExt operator+(const QuadExt& a, const QuadExt& b) {
  require_same(a.ctx_, b.ctx_);
  return QuadExt(a.ctx_, a.sc_ + b.sc_, a.ac_ + b.ac_);
}

QuadExt operator-(const QuadExt& a, const QuadExt& b) {
  require_same(a.ctx_, b.ctx_);
  return QuadExt(a.ctx_, a.sc_ - b.sc_, a.ac_ - b.ac_);
}

QuadExt operator*(const QuadExt& a, const QuadExt& b) {
  require_same(a.ctx_, b.ctx_);
  if (a.ac_.is_exact_zero() && b.ac_.is_exact_zero())
    return QuadExt(a.ctx_, a.sc_ * b.sc_, PadicNumber(a.ctx_.base()));
  return QuadExt(a.ctx_, a.sc_ * b.sc_ + a.ctx_.mu() * a.ac_ * b.ac_,
                 a.sc_ * b.ac_ + a.ac_ * b.sc_);
}

QuadExt operator*(const PadicNumber& a, const QuadExt& b) {
  return QuadExt(b.ctx_, a * b.sc_, a * b.ac_);
}

QuadExt operator/(const QuadExt& a, const QuadExt& b) { return a * b.inverse(); }

std::string QuadExt::str() const {
  if (ac_.is_exact_zero()) return sc_.str();
  std::ostringstream os;
  os << sc_.str() << " + " << ac_.str() << "*sqrt(" << ctx_.mu().str() << ")";
  return os.str();
}

bool eq_mod_precision(const QuadExt& a, const QuadExt& b) {
  return (a - b).is_zero_at_precision();
}

namespace {

// Twice the valuation of each leading term of x^2 - mu y^2, with exactness.
struct TermBound {
  bool infinite;  // exact zero
  long val;       // valuation of the term, or a lower bound
  bool exact;
};

TermBound term(const PadicNumber& c, long extra) {
  if (c.is_exact_zero()) return {true, 0, true};
  return {false, 2 * *c.valuation_lower_bound() + extra, c.is_known_nonzero()};
}

}  // namespace

Norm ext_abs(const QuadExt& z) {
  const auto& ctx = z.context();
  std::uint64_t p = ctx.p();
  if (z.is_exact_zero()) return Norm::zero(p);
  if (p == 2 || (z.sc().is_exact() && z.ac().is_exact())) {
    PadicNumber n = z.norm_form();
    if (n.is_zero_at_precision())
      throw Error(ErrorCode::PrecisionExhausted, "norm of " + z.str() + " is indistinct");
    return Norm::from_valuation2(p, n.valuation());
  }
  // Odd p: v(x^2 - mu y^2) = min(2v(x), v(mu) + 2v(y)) with no cancellation.
  TermBound tx = term(z.sc(), 0), ty = term(z.ac(), ctx.mu_valuation());
  if (tx.infinite) {
    if (!ty.exact) throw Error(ErrorCode::PrecisionExhausted, z.str() + " is indistinct");
    return Norm::from_valuation2(p, ty.val);
  }
  if (ty.infinite) {
    if (!tx.exact) throw Error(ErrorCode::PrecisionExhausted, z.str() + " is indistinct");
    return Norm::from_valuation2(p, tx.val);
  }
  if (tx.exact && ty.exact) return Norm::from_valuation2(p, std::min(tx.val, ty.val));
  if (tx.exact && tx.val < ty.val) return Norm::from_valuation2(p, tx.val);
  if (ty.exact && ty.val < tx.val) return Norm::from_valuation2(p, ty.val);
  throw Error(ErrorCode::PrecisionExhausted, "cannot decide |" + z.str() + "|");
}

NormBound ext_abs_bound(const QuadExt& z) {
  try {
    return {ext_abs(z), true};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PrecisionExhausted) throw;
  }
  long mu_v = z.context().mu_valuation();
  TermBound tx = term(z.sc(), 0), ty = term(z.ac(), mu_v);
  long v = tx.infinite ? ty.val : ty.infinite ? tx.val : std::min(tx.val, ty.val);
  return {Norm::from_valuation2(z.context().p(), v), false};
}

}  // namespace padicqm
