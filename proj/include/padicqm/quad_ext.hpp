#pragma once

#include <memory>
#include <string>

#include "padicqm/padic.hpp"

namespace padicqm {

/// Q_p(sqrt mu) for a non-square mu.
class ExtensionContext {
 public:
  // Throws MuIsSquare when mu is a square in Q_p.
  explicit ExtensionContext(const PadicNumber& mu);
  ExtensionContext(const PadicContext& base, long mu);

  const PadicContext& base() const { return d_->base; }
  std::uint64_t p() const { return d_->base.p(); }
  const PadicNumber& mu() const { return d_->mu; }
  const SquareClass& mu_class() const { return d_->mu_class; }
  long mu_valuation() const { return d_->mu_valuation; }

  bool is_ramified() const;
  // Same p and same square class of mu: the fields are isomorphic.
  bool is_isomorphic_to(const ExtensionContext& other) const;

  friend bool operator==(const ExtensionContext& a, const ExtensionContext& b);

 private:
  struct Data {
    PadicContext base;
    PadicNumber mu;
    SquareClass mu_class;
    long mu_valuation;
  };
  std::shared_ptr<const Data> d_;
};

void require_same(const ExtensionContext& a, const ExtensionContext& b);

/// x + y sqrt(mu). `sc` and `ac` are the coordinates on 1 and sqrt(mu).
class QuadExt {
 public:
  explicit QuadExt(const ExtensionContext& ctx);  // zero
  QuadExt(const ExtensionContext& ctx, PadicNumber sc, PadicNumber ac);
  static QuadExt from_integer(const ExtensionContext& ctx, long n);
  static QuadExt from_base(const ExtensionContext& ctx, const PadicNumber& x);
  static QuadExt sqrt_mu(const ExtensionContext& ctx);

  const ExtensionContext& context() const { return ctx_; }
  const PadicNumber& sc() const { return sc_; }
  const PadicNumber& ac() const { return ac_; }

  bool is_exact_zero() const { return sc_.is_exact_zero() && ac_.is_exact_zero(); }
  bool is_zero_at_precision() const { return sc_.is_zero_at_precision() && ac_.is_zero_at_precision(); }
  bool in_base_field() const { return ac_.is_zero_at_precision(); }

  QuadExt conj() const;
  // z * conj(z) = x^2 - mu y^2.
  PadicNumber norm_form() const;
  QuadExt inverse() const;
  QuadExt operator-() const;

  friend QuadExt operator+(const QuadExt& a, const QuadExt& b);
  friend QuadExt operator-(const QuadExt& a, const QuadExt& b);
  friend QuadExt operator*(const QuadExt& a, const QuadExt& b);
  friend QuadExt operator*(const PadicNumber& a, const QuadExt& b);
  friend QuadExt operator/(const QuadExt& a, const QuadExt& b);
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }

  std::string str() const;

 private:
  ExtensionContext ctx_;
  PadicNumber sc_, ac_;
};

bool eq_mod_precision(const QuadExt& a, const QuadExt& b);

// |z| = sqrt(|z conj(z)|_p). Exponent may be a half-integer.
Norm ext_abs(const QuadExt& z);
// Upper bound from |x + y sqrt(mu)| <= max(|x|, |y||sqrt(mu)|); exact when ext_abs is known.
NormBound ext_abs_bound(const QuadExt& z);

}  // namespace padicqm
