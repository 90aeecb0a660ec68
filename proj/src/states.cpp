#include "padicqm/states.hpp"

namespace padicqm {

namespace {

PadicNumber sum(const PadicContext& ctx, const std::vector<PadicNumber>& xs) {
  PadicNumber s(ctx);
  for (const auto& x : xs) s += x;
  return s;
}

bool sums_to_one(const PadicContext& ctx, const std::vector<PadicNumber>& xs) {
  return eq_mod_precision(sum(ctx, xs), PadicNumber::from_integer(ctx, 1));
}

bool at_most_one(const PadicNumber& x) {
  NormBound b = x.abs_bound();
  Norm one = Norm::one(x.p());
  if (b.value <= one) return true;
  if (b.exact) return false;
  throw Error(ErrorCode::PrecisionExhausted, "cannot decide |" + x.str() + "| <= 1");
}

// Real part of a value that must lie in Q_p.
PadicNumber base_part(const QuadExt& z) {
  if (!z.ac().is_zero_at_precision())
    throw Error(ErrorCode::NotSelfAdjoint, "value " + z.str() + " is not in Q_p");
  return z.sc();
}

}  // namespace

PadicDistribution PadicDistribution::validate(const PadicContext& ctx, std::vector<PadicNumber> weights) {
  if (weights.empty()) throw Error(ErrorCode::EmptyList, "empty distribution");
  for (const auto& w : weights) require_same(ctx, w.context());
  if (!sums_to_one(ctx, weights)) throw Error(ErrorCode::SumNotOne, "weights sum to " + sum(ctx, weights).str());
  return PadicDistribution(ctx, std::move(weights));
}

Norm PadicDistribution::sup_norm() const {
  std::vector<NormBound> b;
  for (const auto& w : weights_) b.push_back(w.abs_bound());
  return max_norm(b, ctx_.p());
}

bool PadicDistribution::in_simplex() const {
  for (const auto& w : weights_)
    if (!at_most_one(w)) return false;
  return true;
}

PadicDistribution product(const PadicDistribution& a, const PadicDistribution& b) {
  require_same(a.context(), b.context());
  std::vector<PadicNumber> w;
  for (const auto& x : a.weights())
    for (const auto& y : b.weights()) w.push_back(x * y);
  return PadicDistribution::validate(a.context(), std::move(w));
}

PadicDistribution truncated_geometric(const PadicContext& ctx, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::EmptyList, "need at least one weight");
  std::vector<PadicNumber> w;
  mpz_class p(static_cast<unsigned long>(ctx.p()));
  for (std::size_t m = 1; m < n; ++m)
    w.push_back(PadicNumber::from_rational(ctx, mpq_class(pow_p(ctx.p(), m - 1) * (1 - p))));
  // The tail sum_{m >= n} p^(m-1)(1-p) is p^(n-1).
  w.push_back(PadicNumber::from_rational(ctx, mpq_class(pow_p(ctx.p(), n - 1))));
  return PadicDistribution::validate(ctx, std::move(w));
}

bool is_qp_affine(const std::vector<PadicNumber>& coefficients) {
  if (coefficients.empty()) return false;
  return sums_to_one(coefficients.front().context(), coefficients);
}

bool is_qp_convex(const std::vector<PadicNumber>& coefficients) {
  if (!is_qp_affine(coefficients)) return false;
  for (const auto& c : coefficients)
    if (!at_most_one(c)) return false;
  return true;
}

namespace {

template <class Point, class Scale, class Add>
Point combine_impl(const std::vector<Point>& points, const std::vector<PadicNumber>& coefficients,
                   Scale scale_fn, Add add_fn) {
  if (points.empty() || points.size() != coefficients.size())
    throw Error(ErrorCode::DimensionMismatch, "one coefficient per point");
  if (!is_qp_affine(coefficients)) throw Error(ErrorCode::SumNotOne, "coefficients must sum to 1");
  Point r = scale_fn(coefficients[0], points[0]);
  for (std::size_t i = 1; i < points.size(); ++i) r = add_fn(r, scale_fn(coefficients[i], points[i]));
  return r;
}

}  // namespace

PVector combine(const std::vector<PVector>& points, const std::vector<PadicNumber>& coefficients) {
  return combine_impl(
      points, coefficients,
      [](const PadicNumber& c, const PVector& v) { return QuadExt::from_base(v.context(), c) * v; },
      [](const PVector& a, const PVector& b) { return a + b; });
}

MatrixOperator combine(const std::vector<MatrixOperator>& points,
                       const std::vector<PadicNumber>& coefficients) {
  return combine_impl(
      points, coefficients,
      [](const PadicNumber& c, const MatrixOperator& a) { return scale(QuadExt::from_base(a.context(), c), a); },
      [](const MatrixOperator& a, const MatrixOperator& b) { return add(a, b); });
}

int convexity_test_arity(std::uint64_t p) { return p == 2 ? 3 : 2; }

bool closed_under_convex_combinations(const std::vector<MatrixOperator>& points,
                                      const std::vector<PadicNumber>& grid,
                                      const std::function<bool(const MatrixOperator&)>& member) {
  if (points.empty()) throw Error(ErrorCode::EmptyList, "no points");
  const auto& ctx = points.front().context().base();
  const int arity = convexity_test_arity(ctx.p());
  const PadicNumber one = PadicNumber::from_integer(ctx, 1);
  const std::size_t n = points.size();
  // Enumerate index tuples and coefficient tuples; the last coefficient closes the sum.
  std::size_t tuples = 1;
  for (int i = 0; i < arity; ++i) tuples *= n;
  std::size_t grids = 1;
  for (int i = 0; i + 1 < arity; ++i) grids *= grid.size();
  for (std::size_t t = 0; t < tuples; ++t) {
    std::vector<MatrixOperator> pts;
    for (std::size_t r = t, i = 0; i < static_cast<std::size_t>(arity); ++i, r /= n) pts.push_back(points[r % n]);
    for (std::size_t g = 0; g < grids; ++g) {
      std::vector<PadicNumber> coeffs;
      PadicNumber last = one;
      for (std::size_t r = g, i = 0; i + 1 < static_cast<std::size_t>(arity); ++i, r /= grid.size()) {
        coeffs.push_back(grid[r % grid.size()]);
        last -= coeffs.back();
      }
      coeffs.push_back(last);
      if (!is_qp_convex(coeffs)) continue;
      if (!member(combine(pts, coeffs))) return false;
    }
  }
  return true;
}

// ---- statistical operators ----

StatisticalOperator StatisticalOperator::make(const MatrixOperator& op) {
  require_block_finite(op);
  StatisticalOperator s(op);
  s.cls_ = classify(op);
  if (s.cls_.self_adjoint.verdict != Verdict::Proven)
    throw Error(ErrorCode::NotSelfAdjoint, s.cls_.self_adjoint.witness);
  QuadExt tr = trace(op).value;
  if (!eq_mod_precision(tr, QuadExt::from_integer(op.context(), 1)))
    throw Error(ErrorCode::TraceNotOne, "trace is " + tr.str());
  s.norm_ = operator_norm(op);
  if (s.norm_ < Norm::one(op.context().p()))
    throw Error(ErrorCode::TraceNotOne, "a trace-one operator cannot have norm below 1");
  return s;
}

bool StatisticalOperator::is_density() const {
  const Norm one = Norm::one(op_.context().p());
  bool by_norm = norm_ == one;
  Norm lmax = Norm::zero(one.base());
  for (const auto& t : canonical_decomposition(op_).terms) lmax = std::max(lmax, ext_abs(t.coefficient));
  bool by_decomposition = lmax == one;
  if (by_norm != by_decomposition)
    throw Error(ErrorCode::PrecisionExhausted, "norm and decomposition disagree on density");
  return by_norm;
}

SimpleStatistical simple_statistical(const PVector& phi, const PVector& psi, const QuadExt& sigma) {
  require_same(phi.context(), psi.context());
  if (phi.is_exact_zero() || psi.is_exact_zero() || sigma.is_zero_at_precision())
    throw Error(ErrorCode::ZeroInput, "phi, psi and sigma must be nonzero");
  QuadExt sb = sigma.conj();
  MatrixOperator body = add(scale(sigma, MatrixOperator::rank_one(phi, psi)),
                            scale(sb, MatrixOperator::rank_one(psi, phi)));
  QuadExt ip = inner_product(phi, psi);
  bool orthogonal = ip.is_zero_at_precision();
  QuadExt denom = orthogonal ? sigma + sb : sigma * inner_product(psi, phi) + sb * ip;
  if (denom.is_zero_at_precision())
    throw Error(ErrorCode::DegenerateNormalizer, "normalizer vanishes");
  return {scale(denom.inverse(), body), orthogonal};
}

// ---- SOVMs ----

Sovm Sovm::make(const ExtensionContext& ctx, std::vector<MatrixOperator> effects, std::size_t dim) {
  if (effects.empty()) throw Error(ErrorCode::EmptyList, "no effects");
  Norm bound = Norm::zero(ctx.p());
  MatrixOperator total = MatrixOperator::zero(ctx, dim);
  for (std::size_t i = 0; i < effects.size(); ++i) {
    const auto& a = effects[i];
    require_same(ctx, a.context());
    require_block_finite(a);
    if (a.dim() > dim)
      throw Error(ErrorCode::DimensionMismatch, "effect " + std::to_string(i) + " exceeds dimension " + std::to_string(dim));
    if (classify(a).self_adjoint.verdict != Verdict::Proven)
      throw Error(ErrorCode::NotSelfAdjoint, "effect " + std::to_string(i));
    bound = std::max(bound, operator_norm(a));
    total = add(total, a);
  }
  if (!eq_mod_precision(total, MatrixOperator::identity(ctx, dim)))
    throw Error(ErrorCode::SumNotIdentity, "effects do not sum to Id");
  return Sovm(std::move(effects), dim, bound);
}

DerivedSovm sovm_from_symmetric_decomposition(const StatisticalOperator& s) {
  const auto& ctx = s.op().context();
  const auto& base = ctx.base();
  std::size_t k = s.op().dim();
  SymmetricDecomposition d = symmetric_decomposition(s.op());
  std::vector<MatrixOperator> effects{sub(MatrixOperator::identity(ctx, k), s.op())};
  std::vector<PadicNumber> pis{PadicNumber(base)};
  for (const auto& t : d.terms) {
    effects.push_back(add(scale(t.coefficient, MatrixOperator::rank_one(t.e, t.f)),
                          scale(t.coefficient.conj(), MatrixOperator::rank_one(t.f, t.e))));
    pis.push_back(base_part(t.coefficient * inner_product(t.f, t.e) +
                            t.coefficient.conj() * inner_product(t.e, t.f)));
  }
  return {Sovm::make(ctx, std::move(effects), k), PadicDistribution::validate(base, std::move(pis))};
}

PairingReport pair(const Sovm& sovm, const StatisticalOperator& s) {
  if (s.op().dim() > sovm.dim())
    throw Error(ErrorCode::DimensionMismatch, "state dimension exceeds the SOVM dimension");
  const auto& base = s.op().context().base();
  std::vector<PadicNumber> values;
  for (const auto& a : sovm.effects()) values.push_back(base_part(trace(compose(a, s.op())).value));
  PadicDistribution d = PadicDistribution::validate(base, std::move(values));
  bool simplex = d.in_simplex();
  return {std::move(d), simplex};
}

StatisticalOperator zero_trace_perturb(const StatisticalOperator& s, const MatrixOperator& t) {
  require_block_finite(t);
  if (classify(t).self_adjoint.verdict != Verdict::Proven)
    throw Error(ErrorCode::NotSelfAdjoint, "perturbation must be self-adjoint");
  if (!trace(t).value.is_zero_at_precision()) throw Error(ErrorCode::TraceNotZero, "perturbation trace");
  return StatisticalOperator::make(add(s.op(), t));
}

std::pair<MatrixOperator, MatrixOperator> split_by_trace_support(const StatisticalOperator& s) {
  const auto& ctx = s.op().context();
  SymmetricDecomposition d = symmetric_decomposition(s.op()), d0, d1;
  for (const auto& t : d.terms) (inner_product(t.e, t.f).is_zero_at_precision() ? d0 : d1).terms.push_back(t);
  return {reconstruct(ctx, d0), reconstruct(ctx, d1)};
}

}  // namespace padicqm
