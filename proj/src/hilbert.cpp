#include "padicqm/hilbert.hpp"

#include <set>

namespace padicqm {

PVector PVector::basis(const ExtensionContext& ctx, std::size_t i) {
  PVector v(ctx);
  v.set(i, QuadExt::from_integer(ctx, 1));
  return v;
}

PVector PVector::from_entries(const ExtensionContext& ctx, const std::vector<QuadExt>& entries) {
  PVector v(ctx);
  for (std::size_t k = 0; k < entries.size(); ++k) v.set(k + 1, entries[k]);
  return v;
}

void PVector::set(std::size_t i, const QuadExt& z) {
  if (i == 0) throw Error(ErrorCode::DimensionMismatch, "vector indices start at 1");
  require_same(ctx_, z.context());
  if (z.is_exact_zero())
    entries_.erase(i);
  else
    entries_.insert_or_assign(i, z);
}

QuadExt PVector::get(std::size_t i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? QuadExt(ctx_) : it->second;
}

PVector operator+(const PVector& a, const PVector& b) {
  require_same(a.ctx_, b.ctx_);
  PVector r = a;
  for (const auto& [i, z] : b.entries_) r.set(i, r.get(i) + z);
  return r;
}

PVector operator-(const PVector& a, const PVector& b) {
  require_same(a.ctx_, b.ctx_);
  PVector r = a;
  for (const auto& [i, z] : b.entries_) r.set(i, r.get(i) - z);
  return r;
}

PVector operator*(const QuadExt& s, const PVector& v) {
  PVector r(v.ctx_);
  for (const auto& [i, z] : v.entries_) r.set(i, s * z);
  return r;
}

bool eq_mod_precision(const PVector& a, const PVector& b) {
  PVector d = a - b;
  for (const auto& [i, z] : d.entries())
    if (!z.is_zero_at_precision()) return false;
  return true;
}

QuadExt inner_product(const PVector& u, const PVector& v) {
  require_same(u.context(), v.context());
  QuadExt s(u.context());
  for (const auto& [i, x] : u.entries()) {
    auto it = v.entries().find(i);
    if (it != v.entries().end()) s += x.conj() * it->second;
  }
  return s;
}

Norm sup_norm(const PVector& v) {
  std::vector<NormBound> bounds;
  for (const auto& [i, z] : v.entries()) bounds.push_back(ext_abs_bound(z));
  return max_norm(bounds, v.context().p());
}

namespace {

// Index of an entry attaining the row maximum, which must be `target`.
std::optional<std::size_t> entry_with_norm(const PVector& v, const Norm& target) {
  for (const auto& [i, z] : v.entries()) {
    NormBound b = ext_abs_bound(z);
    if (b.exact && b.value == target) return i;
  }
  return std::nullopt;
}

}  // namespace

bool is_norm_orthogonal(const std::vector<PVector>& vs) {
  if (vs.empty()) throw Error(ErrorCode::EmptyList, "empty family");
  const auto& ctx = vs.front().context();
  // Scale each vector to norm 1 by dividing by a maximal coordinate. The
  // family is norm-orthogonal iff the reductions of these rows are linearly
  // independent over the residue field; Gaussian elimination with unit
  // pivots decides that without naming the residue field.
  std::vector<PVector> rows;
  for (const auto& v : vs) {
    require_same(ctx, v.context());
    Norm n = sup_norm(v);
    if (n.is_zero()) continue;
    auto idx = entry_with_norm(v, n);
    rows.push_back(v.get(*idx).inverse() * v);
  }
  const Norm one = Norm::one(ctx.p());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Norm n = sup_norm(rows[r]);
    if (n < one) return false;
    std::size_t c = *entry_with_norm(rows[r], one);
    PVector pivot = rows[r].get(c).inverse() * rows[r];
    for (std::size_t s = r + 1; s < rows.size(); ++s) rows[s] = rows[s] - rows[s].get(c) * pivot;
  }
  return true;
}

bool is_orthonormal_system(const std::vector<PVector>& vs) {
  if (!is_norm_orthogonal(vs)) return false;
  const auto& ctx = vs.front().context();
  const Norm one = Norm::one(ctx.p());
  for (const auto& v : vs)
    if (sup_norm(v) != one) return false;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) {
      QuadExt ip = inner_product(vs[i], vs[j]);
      if (!eq_mod_precision(ip, QuadExt::from_integer(ctx, i == j ? 1 : 0))) return false;
    }
  return true;
}

BasisRotation::BasisRotation(const ExtensionContext& ctx, std::vector<Pair> plan)
    : ctx_(ctx), plan_(std::move(plan)) {
  if (ctx.p() == 2) throw Error(ErrorCode::RequiresOddP, "rotation needs |2|_p = 1");
  std::set<std::size_t> used;
  for (const auto& pr : plan_) {
    require_same(ctx, pr.z.context());
    if (pr.i == 0 || pr.j == 0 || pr.i == pr.j || !used.insert(pr.i).second ||
        !used.insert(pr.j).second)
      throw Error(ErrorCode::DimensionMismatch, "rotation pairs must be disjoint");
    if (!eq_mod_precision(pr.z.norm_form(), PadicNumber::from_integer(ctx.base(), 2)))
      throw Error(ErrorCode::InvalidCertificate, "z conj(z) != 2");
    if (ext_abs(pr.z) != Norm::one(ctx.p()))
      throw Error(ErrorCode::InvalidCertificate, "|z| != 1");
  }
}

PVector BasisRotation::apply(const PVector& v) const {
  PVector r = v;
  for (const auto& pr : plan_) {
    QuadExt zi = pr.z.inverse();
    QuadExt a = v.get(pr.i), b = v.get(pr.j);
    r.set(pr.i, zi * (a + b));
    r.set(pr.j, zi * (a - b));
  }
  return r;
}

PVector BasisRotation::apply_inverse(const PVector& v) const {
  PVector r = v;
  const auto half = PadicNumber::from_rational(ctx_.base(), mpq_class(1, 2));
  for (const auto& pr : plan_) {
    QuadExt h = half * pr.z;
    QuadExt a = v.get(pr.i), b = v.get(pr.j);
    r.set(pr.i, h * (a + b));
    r.set(pr.j, h * (a - b));
  }
  return r;
}

std::optional<QuadExt> solve_norm_equation(const ExtensionContext& ctx, const PadicNumber& t,
                                           long search_bound) {
  const auto& base = ctx.base();
  if (hilbert_symbol(t, ctx.mu()) != 1) return std::nullopt;
  long reach = (ctx.mu_valuation() < 0 ? -ctx.mu_valuation() : ctx.mu_valuation()) / 2 + 2;
  for (long j = 0; j <= search_bound; ++j) {
    for (long k = 0; k <= 2 * reach; ++k) {
      // Alternate exponents 0, -1, 1, -2, 2, ... so small denominators come first.
      long e = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
      if (j == 0 && k > 0) break;
      mpq_class y = mpq_class(j);
      if (e > 0) y *= mpq_class(pow_p(ctx.p(), e));
      if (e < 0) y /= mpq_class(pow_p(ctx.p(), -e));
      PadicNumber yy = PadicNumber::from_rational(base, y);
      PadicNumber s = t + ctx.mu() * yy * yy;
      if (s.is_exact_zero()) return QuadExt(ctx, s, yy);
      if (!s.is_known_nonzero() || !is_square(s)) continue;
      return QuadExt(ctx, sqrt(s), yy);
    }
  }
  return std::nullopt;
}

QuadExt find_norm_two(const ExtensionContext& ctx, long search_bound) {
  if (ctx.p() == 2) throw Error(ErrorCode::RequiresOddP, "|z| = 1 with z conj(z) = 2 needs p odd");
  auto z = solve_norm_equation(ctx, PadicNumber::from_integer(ctx.base(), 2), search_bound);
  if (!z) throw Error(ErrorCode::SearchBoundExceeded, "no z with z conj(z) = 2 found");
  return *z;
}

namespace {

bool mu_is(const ExtensionContext& ctx, long m) {
  return ctx.mu().is_exact() && ctx.mu().exact_value() == m;
}

QuadExt qe(const ExtensionContext& ctx, long x, long y) {
  return QuadExt(ctx, PadicNumber::from_integer(ctx.base(), x),
                 PadicNumber::from_integer(ctx.base(), y));
}

PVector two_support(const ExtensionContext& ctx, long search_bound) {
  const auto& base = ctx.base();
  std::uint64_t p = ctx.p();
  if (p % 4 == 1) {
    // e1 + sqrt(-1) e2.
    PVector v = PVector::basis(ctx, 1);
    v.set(2, QuadExt::from_base(ctx, sqrt(PadicNumber::from_integer(base, -1))));
    return v;
  }
  if (p == 2 && mu_is(ctx, 2)) return PVector::from_entries(ctx, {qe(ctx, 1, 1), qe(ctx, 1, 0)});
  if (p == 2 && mu_is(ctx, 5)) return PVector::from_entries(ctx, {qe(ctx, 1, 1), qe(ctx, 2, 0)});
  auto z = solve_norm_equation(ctx, PadicNumber::from_integer(base, -1), search_bound);
  if (!z) throw Error(ErrorCode::SearchBoundExceeded, "two-support isotropic search exhausted");
  return PVector::from_entries(ctx, {*z, QuadExt::from_integer(ctx, 1)});
}

PVector three_support(const ExtensionContext& ctx, long search_bound) {
  const auto& base = ctx.base();
  if (ctx.p() == 2 && mu_is(ctx, 3))
    return PVector::from_entries(ctx, {qe(ctx, 1, 1), qe(ctx, 1, 0), qe(ctx, 1, 0)});
  // z e1 + b e2 + e3 with N(z) = -(1 + N(b)).
  for (long j = 0; j <= search_bound; ++j) {
    for (long k = 0; k <= 1; ++k) {
      QuadExt b = qe(ctx, j, k);
      PadicNumber t = -(PadicNumber::from_integer(base, 1) + b.norm_form());
      if (t.is_zero_at_precision()) continue;
      if (auto z = solve_norm_equation(ctx, t, search_bound))
        return PVector::from_entries(ctx, {*z, b, QuadExt::from_integer(ctx, 1)});
    }
  }
  throw Error(ErrorCode::SearchBoundExceeded, "three-support isotropic search exhausted");
}

}  // namespace

std::optional<PVector> find_isotropic(const ExtensionContext& ctx, std::size_t max_support,
                                      long search_bound) {
  // -1 is a norm from Q_p(sqrt mu) exactly when a two-support vector exists.
  bool two = hilbert_symbol(PadicNumber::from_integer(ctx.base(), -1), ctx.mu()) == 1;
  if (two && max_support >= 2) return two_support(ctx, search_bound);
  if (!two && max_support >= 3) return three_support(ctx, search_bound);
  return std::nullopt;
}

int isotropy_index(const ExtensionContext& ctx, long search_bound) {
  if (find_isotropic(ctx, 2, search_bound)) return 2;
  if (find_isotropic(ctx, 3, search_bound)) return 3;
  throw Error(ErrorCode::SearchBoundExceeded, "no isotropic vector with support <= 3");
}

}  // namespace padicqm
