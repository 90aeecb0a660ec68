#include "padicqm/matrix_ops.hpp"

#include <algorithm>
#include <cmath>

namespace padicqm {

namespace {

// Additive valuation of an extension element as a rational (halves allowed).
mpq_class ext_valuation(const Norm& n) {
  mpq_class v(n.valuation2(), 2);
  v.canonicalize();
  return v;
}

std::string coords(std::size_t m, std::size_t n) {
  return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

}  // namespace

// ---- construction ----

QuadExt EntryFormula::at(std::size_t m, std::size_t n) const {
  const auto& ctx = coefficient.context();
  if (diagonal && m != n) return QuadExt(ctx);
  long e = row_exponent * static_cast<long>(m) + col_exponent * static_cast<long>(n) + offset;
  mpq_class scale_q = e >= 0 ? mpq_class(pow_p(ctx.p(), e)) : mpq_class(1, pow_p(ctx.p(), -e));
  return PadicNumber::from_rational(ctx.base(), scale_q) * coefficient;
}

DecayCertificate EntryFormula::certificate() const {
  DecayCertificate c;
  mpq_class v0 = ext_valuation(ext_abs(coefficient)) + offset;
  c.lower = {row_exponent, col_exponent, v0};
  c.upper = c.lower;
  c.diagonal = diagonal;
  c.hermitian = coefficient.ac().is_exact_zero() && (diagonal || row_exponent == col_exponent);
  return c;
}

MatrixOperator MatrixOperator::block(const ExtensionContext& ctx, std::size_t dim,
                                     std::vector<QuadExt> entries) {
  if (entries.size() != dim * dim)
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim * dim) + " entries");
  MatrixOperator a(ctx);
  for (const auto& z : entries) require_same(ctx, z.context());
  a.dim_ = dim;
  a.cells_ = std::move(entries);
  return a;
}

MatrixOperator MatrixOperator::zero(const ExtensionContext& ctx, std::size_t dim) {
  return block(ctx, dim, std::vector<QuadExt>(dim * dim, QuadExt(ctx)));
}

MatrixOperator MatrixOperator::identity(const ExtensionContext& ctx, std::size_t dim) {
  MatrixOperator a = zero(ctx, dim);
  for (std::size_t i = 0; i < dim; ++i) a.cells_[i * dim + i] = QuadExt::from_integer(ctx, 1);
  return a;
}

MatrixOperator MatrixOperator::diagonal(const ExtensionContext& ctx, const std::vector<QuadExt>& d) {
  MatrixOperator a = zero(ctx, d.size());
  for (std::size_t i = 0; i < d.size(); ++i) a.cells_[i * d.size() + i] = d[i];
  return a;
}

MatrixOperator MatrixOperator::rank_one(const PVector& e, const PVector& f) {
  require_same(e.context(), f.context());
  std::size_t k = std::max(e.max_index(), f.max_index());
  MatrixOperator a = zero(e.context(), k);
  for (const auto& [m, x] : e.entries())
    for (const auto& [n, y] : f.entries()) a.cells_[(m - 1) * k + (n - 1)] = x * y.conj();
  return a;
}

MatrixOperator MatrixOperator::generator(const ExtensionContext& ctx, std::size_t window,
                                         EntryFn entry, DecayCertificate cert) {
  if (window == 0) throw Error(ErrorCode::OutsideWindow, "window must be positive");
  const auto& lo = cert.lower;
  if (cert.upper) {
    const auto& up = *cert.upper;
    bool ok = cert.diagonal ? lo.row_rate + lo.col_rate <= up.row_rate + up.col_rate
                            : lo.row_rate <= up.row_rate && lo.col_rate <= up.col_rate;
    if (!ok || lo.at(1, 1) > up.at(1, 1))
      throw Error(ErrorCode::InvalidCertificate, "lower bound exceeds upper bound eventually");
    if (cert.hermitian && !cert.diagonal &&
        (lo.row_rate > up.col_rate || lo.col_rate > up.row_rate))
      throw Error(ErrorCode::InvalidCertificate, "hermitian certificate with asymmetric rates");
  }
  MatrixOperator a(ctx);
  a.dim_ = window;
  a.cells_.reserve(window * window);
  for (std::size_t m = 1; m <= window; ++m)
    for (std::size_t n = 1; n <= window; ++n) {
      QuadExt z = entry(m, n);
      require_same(ctx, z.context());
      std::string at = " at " + coords(m, n);
      if (cert.diagonal && m != n) {
        if (!z.is_zero_at_precision())
          throw Error(ErrorCode::InvalidCertificate, "off-diagonal entry" + at);
      } else if (z.is_exact_zero()) {
        if (cert.upper) throw Error(ErrorCode::InvalidCertificate, "zero inside the support" + at);
      } else {
        NormBound b = ext_abs_bound(z);
        mpq_class v = ext_valuation(b.value);
        if (v < lo.at(m, n)) {
          if (b.exact) throw Error(ErrorCode::InvalidCertificate, "decay bound violated" + at);
          throw Error(ErrorCode::PrecisionExhausted, "cannot check decay" + at);
        }
        if (cert.upper && (!b.exact || v > cert.upper->at(m, n)))
          throw Error(b.exact ? ErrorCode::InvalidCertificate : ErrorCode::PrecisionExhausted,
                      "growth bound violated" + at);
      }
      a.cells_.push_back(std::move(z));
    }
  if (cert.hermitian)
    for (std::size_t m = 1; m <= window; ++m)
      for (std::size_t n = m; n <= window; ++n)
        if (!eq_mod_precision(a.entry(m, n), a.entry(n, m).conj()))
          throw Error(ErrorCode::InvalidCertificate, "declared hermitian, asymmetric at " + coords(m, n));
  a.gen_ = std::make_shared<const Generator>(Generator{std::move(entry), cert, std::nullopt});
  return a;
}

MatrixOperator MatrixOperator::from_formula(const ExtensionContext& ctx, std::size_t window,
                                            const EntryFormula& formula,
                                            std::optional<DecayCertificate> cert) {
  require_same(ctx, formula.coefficient.context());
  if (formula.coefficient.is_zero_at_precision())
    throw Error(ErrorCode::InvalidCertificate, "formula coefficient must be nonzero");
  DecayCertificate c = cert ? *cert : formula.certificate();
  MatrixOperator a = generator(ctx, window, [formula](std::size_t m, std::size_t n) { return formula.at(m, n); }, c);
  auto g = std::make_shared<Generator>(*a.gen_);
  g->formula = formula;
  a.gen_ = std::move(g);
  return a;
}

QuadExt MatrixOperator::entry(std::size_t m, std::size_t n) const {
  if (m == 0 || n == 0) throw Error(ErrorCode::DimensionMismatch, "indices start at 1");
  if (m <= dim_ && n <= dim_) return cells_[(m - 1) * dim_ + (n - 1)];
  if (gen_) return gen_->entry(m, n);
  return QuadExt(ctx_);
}

void require_block_finite(const MatrixOperator& a) {
  if (!a.is_block_finite()) throw Error(ErrorCode::NotBlockFinite, "operation needs a block-finite operator");
}

bool eq_mod_precision(const MatrixOperator& a, const MatrixOperator& b) {
  require_same(a.context(), b.context());
  std::size_t k = std::max(a.dim(), b.dim());
  for (std::size_t m = 1; m <= k; ++m)
    for (std::size_t n = 1; n <= k; ++n)
      if (!eq_mod_precision(a.entry(m, n), b.entry(m, n))) return false;
  return true;
}

// ---- algebra ----

PVector apply(const MatrixOperator& a, const PVector& v) {
  require_same(a.context(), v.context());
  if (!a.is_block_finite() && v.max_index() > a.dim())
    throw Error(ErrorCode::OutsideWindow, "vector support exceeds the window");
  PVector out(a.context());
  for (std::size_t m = 1; m <= a.dim(); ++m) {
    QuadExt s(a.context());
    for (const auto& [n, x] : v.entries())
      if (n <= a.dim()) s += a.entry(m, n) * x;
    out.set(m, s);
  }
  return out;
}

namespace {

template <class F>
MatrixOperator build(const ExtensionContext& ctx, std::size_t k, F f) {
  std::vector<QuadExt> cells;
  cells.reserve(k * k);
  for (std::size_t m = 1; m <= k; ++m)
    for (std::size_t n = 1; n <= k; ++n) cells.push_back(f(m, n));
  return MatrixOperator::block(ctx, k, std::move(cells));
}

}  // namespace

MatrixOperator compose(const MatrixOperator& a, const MatrixOperator& b) {
  require_block_finite(a);
  require_block_finite(b);
  require_same(a.context(), b.context());
  std::size_t k = std::max(a.dim(), b.dim());
  std::size_t inner = std::min(a.dim(), b.dim());
  return build(a.context(), k, [&](std::size_t m, std::size_t n) {
    QuadExt s(a.context());
    for (std::size_t j = 1; j <= inner; ++j) s += a.entry(m, j) * b.entry(j, n);
    return s;
  });
}

MatrixOperator add(const MatrixOperator& a, const MatrixOperator& b) {
  require_block_finite(a);
  require_block_finite(b);
  require_same(a.context(), b.context());
  return build(a.context(), std::max(a.dim(), b.dim()),
               [&](std::size_t m, std::size_t n) { return a.entry(m, n) + b.entry(m, n); });
}

MatrixOperator sub(const MatrixOperator& a, const MatrixOperator& b) {
  require_block_finite(a);
  require_block_finite(b);
  require_same(a.context(), b.context());
  return build(a.context(), std::max(a.dim(), b.dim()),
               [&](std::size_t m, std::size_t n) { return a.entry(m, n) - b.entry(m, n); });
}

MatrixOperator scale(const QuadExt& s, const MatrixOperator& a) {
  require_block_finite(a);
  require_same(s.context(), a.context());
  return build(a.context(), a.dim(), [&](std::size_t m, std::size_t n) { return s * a.entry(m, n); });
}

MatrixOperator adjoint(const MatrixOperator& a) {
  if (a.is_block_finite())
    return build(a.context(), a.dim(),
                 [&](std::size_t m, std::size_t n) { return a.entry(n, m).conj(); });
  if (!classify(a).adjointable.positive())
    throw Error(ErrorCode::NotAdjointable, "no certified column decay");
  const DecayCertificate& c = *a.certificate();
  DecayCertificate t = c;
  t.lower = {c.lower.col_rate, c.lower.row_rate, c.lower.offset};
  if (c.upper) t.upper = LinearBound{c.upper->col_rate, c.upper->row_rate, c.upper->offset};
  if (const EntryFormula* f = a.formula()) {
    EntryFormula g = *f;
    g.coefficient = f->coefficient.conj();
    std::swap(g.row_exponent, g.col_exponent);
    return MatrixOperator::from_formula(a.context(), a.dim(), g, t);
  }
  MatrixOperator src = a;
  return MatrixOperator::generator(
      a.context(), a.dim(), [src](std::size_t m, std::size_t n) { return src.entry(n, m).conj(); }, t);
}

// ---- norm and classification ----

namespace {

Norm window_max(const MatrixOperator& a) {
  std::vector<NormBound> bounds;
  for (std::size_t m = 1; m <= a.dim(); ++m)
    for (std::size_t n = 1; n <= a.dim(); ++n) bounds.push_back(ext_abs_bound(a.entry(m, n)));
  return max_norm(bounds, a.context().p());
}

FlagReport flag(Verdict v, std::string witness,
                std::optional<std::pair<std::size_t, std::size_t>> entry = std::nullopt) {
  return {v, std::move(witness), entry};
}

// Combine sub-conditions: positive if all are, refuted if any is.
FlagReport all_of(std::initializer_list<const FlagReport*> parts, const std::string& name) {
  for (const auto* p : parts)
    if (p->verdict == Verdict::Refuted) return *p;
  for (const auto* p : parts)
    if (!p->positive()) return flag(Verdict::Undetermined, name + ": certificate too weak");
  Verdict v = Verdict::Proven;
  for (const auto* p : parts)
    if (p->verdict == Verdict::CertifiedByDecay) v = Verdict::CertifiedByDecay;
  std::string w;
  for (const auto* p : parts) w += (w.empty() ? "" : "; ") + p->witness;
  return flag(v, w);
}

std::optional<std::pair<std::size_t, std::size_t>> asymmetry(const MatrixOperator& a) {
  for (std::size_t m = 1; m <= a.dim(); ++m)
    for (std::size_t n = m; n <= a.dim(); ++n)
      if (!eq_mod_precision(a.entry(m, n), a.entry(n, m).conj())) return std::make_pair(m, n);
  return std::nullopt;
}

Classification classify_generator(const MatrixOperator& a) {
  const DecayCertificate& c = *a.certificate();
  const mpq_class &ra = c.lower.row_rate, &rb = c.lower.col_rate;
  const bool up = c.upper.has_value();
  const mpq_class ua = up ? c.upper->row_rate : mpq_class(0);
  const mpq_class ub = up ? c.upper->col_rate : mpq_class(0);
  const Verdict C = Verdict::CertifiedByDecay, R = Verdict::Refuted, U = Verdict::Undetermined;

  FlagReport m1, m2, a3, pring, tc;
  if (c.diagonal) {
    mpq_class s = ra + rb, us = ua + ub;
    m1 = flag(C, "diagonal support: each column has one entry");
    a3 = flag(C, "diagonal support: each row has one entry");
    m2 = s >= 0 ? flag(C, "diagonal valuation rate >= 0")
         : (up && us < 0) ? flag(R, "diagonal entries grow without bound")
                          : flag(U, "sup bound not certified");
    pring = s > 0 ? flag(C, "diagonal valuation rate > 0")
            : (up && us <= 0) ? flag(R, "diagonal entries do not tend to 0")
                              : flag(U, "diagonal limit not certified");
    tc = pring;
  } else {
    m1 = ra > 0 ? flag(C, "row rate > 0 gives lim_m A_mn = 0")
         : (up && ua <= 0) ? flag(R, "column entries bounded away from 0 as m grows")
                           : flag(U, "column limit not certified");
    m2 = (ra >= 0 && rb >= 0) ? flag(C, "nonnegative rates bound sup |A_mn|")
         : (up && (ua < 0 || ub < 0)) ? flag(R, "entries grow without bound")
                                      : flag(U, "sup bound not certified");
    a3 = rb > 0 ? flag(C, "column rate > 0 gives lim_n A_mn = 0")
         : (up && ub <= 0) ? flag(R, "row entries bounded away from 0 as n grows")
                           : flag(U, "row limit not certified");
    pring = (ra >= 0 && rb >= 0 && (ra > 0 || rb > 0)) ? flag(C, "Pringsheim limit from rates")
            : (up && ua + ub <= 0) ? flag(R, "diagonal entries do not tend to 0")
                                   : flag(U, "Pringsheim limit not certified");
    tc = (ra > 0 && rb > 0) ? flag(C, "both rates > 0 give lim_{m+n} A_mn = 0")
         : (up && (ua <= 0 || ub <= 0)) ? flag(R, "entries do not tend to 0 along a row or column")
                                        : flag(U, "lim_{m+n} not certified");
  }

  Classification out;
  out.bounded = all_of({&m1, &m2}, "bounded");
  out.adjointable = all_of({&out.bounded, &a3}, "adjointable");
  out.compact = all_of({&m2, &m1, &pring}, "compact");
  out.trace_class = all_of({&tc, &m2}, "trace class");
  FlagReport diag_limit = c.diagonal ? pring
                          : (ra + rb > 0) ? flag(C, "diagonal valuation rate > 0")
                          : (up && ua + ub <= 0) ? flag(R, "diagonal entries do not tend to 0")
                                                 : flag(U, "diagonal limit not certified");
  out.traceable = all_of({&m1, &diag_limit}, "traceable");

  if (auto at = asymmetry(a)) {
    out.self_adjoint = flag(R, "A_mn != conj(A_nm)", at);
  } else if (c.hermitian) {
    out.self_adjoint = out.bounded.positive()
                           ? flag(C, "declared hermitian with bounded certificate")
                           : flag(U, "declared hermitian but boundedness not certified");
  } else {
    out.self_adjoint = flag(U, "symmetric on the window only");
  }
  return out;
}

void enforce_lattice(Classification& c) {
  // trace class = compact and adjointable; self-adjoint implies adjointable.
  if (c.trace_class.positive()) {
    if (!c.compact.positive()) c.compact = flag(c.trace_class.verdict, "implied by trace class");
    if (!c.adjointable.positive()) c.adjointable = flag(c.trace_class.verdict, "implied by trace class");
  }
  if (c.self_adjoint.positive() && !c.adjointable.positive())
    c.adjointable = flag(c.self_adjoint.verdict, "hermitian symmetry turns (M1) into (A3)");
  if (c.compact.positive() && c.adjointable.positive() && !c.trace_class.positive())
    c.trace_class = flag(Verdict::CertifiedByDecay, "compact and adjointable");
  if (c.adjointable.verdict == Verdict::Refuted) {
    c.self_adjoint = flag(Verdict::Refuted, "not adjointable");
    c.trace_class = flag(Verdict::Refuted, "not adjointable");
  }
  if (c.compact.verdict == Verdict::Refuted) c.trace_class = flag(Verdict::Refuted, "not compact");
}

}  // namespace

Norm operator_norm(const MatrixOperator& a) {
  Norm wmax = window_max(a);
  if (a.is_block_finite()) return wmax;
  if (!classify(a).bounded.positive())
    throw Error(ErrorCode::TailDominates, "boundedness is not certified");
  const DecayCertificate& c = *a.certificate();
  mpq_class W1 = static_cast<unsigned long>(a.dim() + 1);
  const auto& lo = c.lower;
  mpq_class tail = c.diagonal ? (lo.row_rate + lo.col_rate) * W1 + lo.offset
                              : std::min<mpq_class>(lo.row_rate * W1 + lo.col_rate + lo.offset,
                                         lo.row_rate + lo.col_rate * W1 + lo.offset);
  if (wmax.is_zero() || tail < ext_valuation(wmax))
    throw Error(ErrorCode::TailDominates, "tail may exceed the window maximum; widen the window");
  return wmax;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Proven: return "proven";
    case Verdict::Refuted: return "refuted";
    case Verdict::CertifiedByDecay: return "certified_by_decay";
    case Verdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

Verdict parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::Proven, Verdict::Refuted, Verdict::CertifiedByDecay, Verdict::Undetermined})
    if (verdict_name(v) == s) return v;
  throw Error(ErrorCode::ParseError, "unknown verdict '" + s + "'");
}

Classification classify(const MatrixOperator& a) {
  Classification c;
  if (a.is_block_finite()) {
    const Verdict P = Verdict::Proven;
    const std::string w = "block-finite: every limit condition holds trivially";
    c.bounded = c.adjointable = c.compact = c.trace_class = c.traceable = flag(P, w);
    if (auto at = asymmetry(a))
      c.self_adjoint = flag(Verdict::Refuted, "A_mn != conj(A_nm)", at);
    else
      c.self_adjoint = flag(P, "A_mn = conj(A_nm) on the block");
  } else {
    c = classify_generator(a);
  }
  enforce_lattice(c);
  return c;
}

bool is_ip_preserving(const MatrixOperator& u) {
  require_block_finite(u);
  MatrixOperator id = MatrixOperator::identity(u.context(), u.dim());
  MatrixOperator us = adjoint(u);
  return eq_mod_precision(compose(us, u), id) && eq_mod_precision(compose(u, us), id);
}

bool is_unitary(const MatrixOperator& u) {
  require_block_finite(u);
  return is_ip_preserving(u) && operator_norm(u) == Norm::one(u.context().p());
}

std::vector<std::array<long, 4>> four_square_solutions(std::uint64_t p, int K, std::size_t limit) {
  mpz_class target_z = pow_p(p, 2L * K);
  if (!target_z.fits_slong_p())
    throw Error(ErrorCode::SearchBoundExceeded, "p^(2K) too large for the search");
  long target = target_z.get_si();
  auto isqrt = [](long n) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
  };
  long P = static_cast<long>(p);
  std::vector<std::array<long, 4>> out;
  for (long x1 = isqrt(target); x1 >= 0 && out.size() < limit; --x1) {
    long r1 = target - x1 * x1;
    for (long x2 = std::min(x1, isqrt(r1)); x2 >= 0 && out.size() < limit; --x2) {
      long r2 = r1 - x2 * x2;
      for (long x3 = std::min(x2, isqrt(r2)); x3 >= 0 && out.size() < limit; --x3) {
        long r3 = r2 - x3 * x3;
        long x4 = isqrt(r3);
        if (x4 * x4 != r3 || x4 > x3) continue;
        if (x1 % P == 0 && x2 % P == 0 && x3 % P == 0 && x4 % P == 0) continue;
        out.push_back({x1, x2, x3, x4});
      }
    }
  }
  return out;
}

MatrixOperator four_squares_operator(const ExtensionContext& ctx, int K, std::uint64_t seed) {
  if (ctx.p() == 2) throw Error(ErrorCode::RequiresOddP, "the four-squares counterexample needs p odd");
  if (K < 1) throw Error(ErrorCode::SearchBoundExceeded, "K must be at least 1");
  auto sols = four_square_solutions(ctx.p(), K, 64);
  if (sols.empty()) throw Error(ErrorCode::SearchBoundExceeded, "no four-squares representation found");
  const auto& x = sols[seed % sols.size()];
  const long rows[4][4] = {{x[0], x[1], x[2], x[3]},
                           {-x[1], x[0], -x[3], x[2]},
                           {-x[3], -x[2], x[1], x[0]},
                           {-x[2], x[3], x[0], -x[1]}};
  mpz_class pk = pow_p(ctx.p(), K);
  std::vector<QuadExt> cells;
  for (const auto& row : rows)
    for (long v : row)
      cells.push_back(QuadExt::from_base(ctx, PadicNumber::from_rational(ctx.base(), mpq_class(v) / pk)));
  return MatrixOperator::block(ctx, 4, std::move(cells));
}

MatrixOperator rotation_operator(const BasisRotation& r, std::size_t dim) {
  const auto& ctx = r.context();
  std::vector<QuadExt> cells(dim * dim, QuadExt(ctx));
  for (std::size_t n = 1; n <= dim; ++n) {
    PVector col = r.image(n);
    for (const auto& [m, z] : col.entries()) {
      if (m > dim) throw Error(ErrorCode::DimensionMismatch, "rotation pair crosses the block");
      cells[(m - 1) * dim + (n - 1)] = z;
    }
  }
  return MatrixOperator::block(ctx, dim, std::move(cells));
}

// ---- trace ----

TraceResult trace(const MatrixOperator& t) {
  const auto& ctx = t.context();
  QuadExt s(ctx);
  for (std::size_t m = 1; m <= t.dim(); ++m) s += t.entry(m, m);
  if (t.is_block_finite()) return {s, std::nullopt};
  if (!classify(t).trace_class.positive())
    throw Error(ErrorCode::NotTraceClass, "trace class is not certified");
  const auto& lo = t.certificate()->lower;
  mpq_class tail = (lo.row_rate + lo.col_rate) * static_cast<unsigned long>(t.dim() + 1) + lo.offset;
  return {s, tail};
}

QuadExt hs_inner(const MatrixOperator& s, const MatrixOperator& t) {
  require_block_finite(s);
  require_block_finite(t);
  return trace(compose(adjoint(s), t)).value;
}

std::pair<QuadExt, QuadExt> verify_cyclic(const MatrixOperator& b, const MatrixOperator& t) {
  return {trace(compose(b, t)).value, trace(compose(t, b)).value};
}

// ---- decompositions ----

CanonicalDecomposition canonical_decomposition(const MatrixOperator& c) {
  require_block_finite(c);
  const auto& ctx = c.context();
  CanonicalDecomposition d;
  for (std::size_t m = 1; m <= c.dim(); ++m) {
    std::vector<NormBound> bounds;
    for (std::size_t n = 1; n <= c.dim(); ++n) bounds.push_back(ext_abs_bound(c.entry(m, n)));
    Norm rmax = max_norm(bounds, ctx.p());
    if (rmax.is_zero()) continue;
    std::size_t pivot = 0;
    while (!(bounds[pivot].exact && bounds[pivot].value == rmax)) ++pivot;
    QuadExt lambda = c.entry(m, pivot + 1);
    QuadExt li = lambda.inverse();
    PVector f(ctx);
    for (std::size_t n = 1; n <= c.dim(); ++n) f.set(n, (c.entry(m, n) * li).conj());
    // The pivot coordinate of f is exactly 1.
    f.set(pivot + 1, QuadExt::from_integer(ctx, 1));
    d.terms.push_back({lambda, PVector::basis(ctx, m), f});
  }
  return d;
}

MatrixOperator reconstruct(const ExtensionContext& ctx, const CanonicalDecomposition& d) {
  MatrixOperator r = MatrixOperator::zero(ctx);
  for (const auto& t : d.terms) r = add(r, scale(t.coefficient, MatrixOperator::rank_one(t.e, t.f)));
  return r;
}

SymmetricDecomposition symmetric_decomposition(const MatrixOperator& t) {
  require_block_finite(t);
  if (auto at = asymmetry(t))
    throw Error(ErrorCode::NotSelfAdjoint, "asymmetric at " + coords(at->first, at->second));
  const auto& ctx = t.context();
  const auto half = PadicNumber::from_rational(ctx.base(), mpq_class(1, 2));
  MatrixOperator a = build(ctx, t.dim(), [&](std::size_t m, std::size_t n) {
    if (m < n) return t.entry(m, n);
    if (m == n) return half * t.entry(m, n);
    return QuadExt(ctx);
  });
  return {canonical_decomposition(a).terms};
}

MatrixOperator reconstruct(const ExtensionContext& ctx, const SymmetricDecomposition& d) {
  MatrixOperator r = MatrixOperator::zero(ctx);
  for (const auto& t : d.terms) {
    r = add(r, scale(t.coefficient, MatrixOperator::rank_one(t.e, t.f)));
    r = add(r, scale(t.coefficient.conj(), MatrixOperator::rank_one(t.f, t.e)));
  }
  return r;
}

QuadExt decomposition_trace(const ExtensionContext& ctx, const SymmetricDecomposition& d) {
  QuadExt s(ctx);
  for (const auto& t : d.terms)
    s += t.coefficient * inner_product(t.f, t.e) + t.coefficient.conj() * inner_product(t.e, t.f);
  return s;
}

std::pair<MatrixOperator, MatrixOperator> factor_trace_class(const MatrixOperator& r) {
  require_block_finite(r);
  const auto& ctx = r.context();
  CanonicalDecomposition d = canonical_decomposition(r);
  MatrixOperator s = MatrixOperator::zero(ctx), t = MatrixOperator::zero(ctx);
  for (std::size_t j = 0; j < d.terms.size(); ++j) {
    const auto& term = d.terms[j];
    // Split |lambda| evenly between the factors: kappa = p^floor(v(lambda)/2).
    long v2 = ext_abs(term.coefficient).valuation2();
    long e = v2 >= 0 ? v2 / 4 : -((-v2 + 3) / 4);
    mpq_class kq = e >= 0 ? mpq_class(pow_p(ctx.p(), e)) : mpq_class(1, pow_p(ctx.p(), -e));
    QuadExt kappa = QuadExt::from_base(ctx, PadicNumber::from_rational(ctx.base(), kq));
    QuadExt nu = term.coefficient * kappa.inverse();
    PVector phi = PVector::basis(ctx, j + 1);
    s = add(s, scale(kappa, MatrixOperator::rank_one(term.e, phi)));
    t = add(t, scale(nu, MatrixOperator::rank_one(phi, term.f)));
  }
  return {s, t};
}

}  // namespace padicqm
