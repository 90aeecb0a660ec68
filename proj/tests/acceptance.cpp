// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "oracles.hpp"

namespace padicqm::test {
namespace {

using Clock = std::chrono::steady_clock;

// Wall-clock limits, in milliseconds.
constexpr double kSqrtLimitMs = 1000;
constexpr double kIsotropyLimitMs = 10000;
constexpr double kUnitaryLimitMs = 5000;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

PVector vec(const ExtensionContext& ctx, std::vector<QuadExt> e) { return PVector::from_entries(ctx, e); }

ExtensionContext pick(Rng& rng, const std::vector<std::pair<std::uint64_t, long>>& ctxs, int precision = 10) {
  auto [p, mu] = ctxs[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(ctxs.size()) - 1))];
  return ext(p, mu, precision);
}

const std::vector<std::pair<std::uint64_t, long>> kContexts{{3, 5}, {3, 3}, {2, 3}, {2, 5}, {2, 14}, {5, 2}, {7, 3}};

Outcome sqrt_digits() {
  struct Case {
    std::uint64_t p;
    long a;
    std::vector<unsigned> principal, other;
  };
  const Case cases[] = {{3, 7, {1, 1, 1, 0, 2}, {2, 1, 1, 2, 0}},
                        {5, 29, {2, 0, 4, 3, 4}, {3, 4, 0, 1, 0}},
                        {7, 2, {3, 1, 2, 6, 1}, {4, 5, 4, 0, 5}}};
  Outcome o;
  auto start = Clock::now();
  for (const auto& c : cases) {
    PadicContext ctx(c.p, 5);
    PadicNumber a = PadicNumber::from_integer(ctx, c.a);
    o.require(sqrt(a, Branch::Principal).digits() == c.principal, "principal root of " + std::to_string(c.a));
    o.require(sqrt(a, Branch::Other).digits() == c.other, "other root of " + std::to_string(c.a));
  }
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  o.require(ms < kSqrtLimitMs, "too slow");
  if (o.ok) o.detail = "3 roots, both branches";
  return o;
}

Outcome norm_two_elements() {
  Outcome o;
  auto root = [](const ExtensionContext& c, long a) { return sqrt(PadicNumber::from_integer(c.base(), a)); };
  int n = 0;
  for (int N : {5, 10, 20}) {
    auto c35 = ext(3, 5, N), c32 = ext(3, 2, N), c53 = ext(5, 3, N), c77 = ext(7, 7, N);
    const QuadExt zs[] = {QuadExt(c35, root(c35, 7), PadicNumber::from_integer(c35.base(), -1)), Z(c32, 2, 1),
                          QuadExt(c53, root(c53, 29), PadicNumber::from_integer(c53.base(), 3)),
                          QuadExt::from_base(c77, root(c77, 2))};
    for (const auto& z : zs) {
      o.require(eq_mod_precision(z * z.conj(), Z(z.context(), 2)), "z conj(z) != 2 for " + z.str());
      o.require(ext_abs(z) == Norm::one(z.context().p()), "|z| != 1 for " + z.str());
      ++n;
    }
  }
  if (o.ok) o.detail = std::to_string(n) + " checks at precision 5/10/20";
  return o;
}

Outcome isotropy() {
  Outcome o;
  auto start = Clock::now();
  auto c22 = ext(2, 2), c25 = ext(2, 5), c23 = ext(2, 3);
  PVector x = vec(c22, {Z(c22, 1, 1), Z(c22, 1)});
  PVector y = vec(c25, {Z(c25, 1, 1), Z(c25, 2)});
  PVector w = vec(c23, {Z(c23, 1, 1), Z(c23, 1), Z(c23, 1)});
  for (const PVector* v : {&x, &y, &w}) o.require(inner_product(*v, *v).is_exact_zero(), "explicit vector not isotropic");

  const std::pair<std::uint64_t, long> ctxs[] = {{2, 2}, {2, 3}, {2, 5}, {2, 6}, {2, 7}, {2, 10},
                                                 {3, 2}, {3, 3}, {3, 6}, {5, 2}, {5, 5}, {7, 7}};
  for (auto [p, mu] : ctxs) {
    auto ctx = ext(p, mu);
    int nu = isotropy_index(ctx);
    std::string tag = "(" + std::to_string(p) + "," + std::to_string(mu) + ")";
    o.require(nu == 2 || nu == 3, "index out of range at " + tag);
    o.require(nu == (hilbert_oracle(-1, mu, p) == 1 ? 2 : 3), "index disagrees with Hilbert symbol at " + tag);
    auto v = find_isotropic(ctx, static_cast<std::size_t>(nu));
    o.require(v.has_value() && !v->is_exact_zero(), "no witness at " + tag);
    if (v) o.require(inner_product(*v, *v).is_zero_at_precision(), "witness not isotropic at " + tag);
    if (nu == 3) o.require(!find_isotropic(ctx, 2).has_value(), "support-2 witness exists at " + tag);
  }
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  o.require(ms < kIsotropyLimitMs, "too slow");
  if (o.ok) o.detail = "3 explicit vectors, 12 contexts";
  return o;
}

Outcome norm_triple() {
  Outcome o;
  Rng rng(1001);
  for (int i = 0; i < 500 && o.ok; ++i) {
    auto ctx = pick(rng, kContexts);
    MatrixOperator a = rand_block(ctx, static_cast<std::size_t>(uniform(rng, 1, 8)), rng);
    Norm cols = Norm::zero(ctx.p());
    for (std::size_t n = 1; n <= a.dim(); ++n) cols = std::max(cols, sup_norm(apply(a, PVector::basis(ctx, n))));
    std::optional<long> best;
    for (std::size_t m = 1; m <= a.dim(); ++m)
      for (std::size_t n = 1; n <= a.dim(); ++n)
        if (!a.entry(m, n).is_exact_zero()) {
          long v = val2_oracle(a.entry(m, n));
          if (!best || v < *best) best = v;
        }
    Norm entries = best ? Norm::from_valuation2(ctx.p(), *best) : Norm::zero(ctx.p());
    Norm n = operator_norm(a);
    o.require(n == cols && n == entries, "disagreement on operator " + std::to_string(i));
  }
  if (o.ok) o.detail = "500 operators, dim <= 8";
  return o;
}

Outcome trace_invariance() {
  Outcome o;
  Rng rng(1002);
  const std::vector<std::pair<std::uint64_t, long>> ctxs{{3, 5}, {5, 3}, {3, 2}, {7, 7}};
  for (int i = 0; i < 100 && o.ok; ++i) {
    auto ctx = pick(rng, ctxs);
    QuadExt z = find_norm_two(ctx);
    BasisRotation r(ctx, {{1, 4, z}, {2, 6, z.conj()}, {3, 5, z}});
    MatrixOperator u = rotation_operator(r, 6);
    MatrixOperator t = rand_block(ctx, 6, rng);
    QuadExt tr = trace(t).value, rotated(ctx);
    for (std::size_t n = 1; n <= 6; ++n) rotated += inner_product(r.image(n), apply(t, r.image(n)));
    o.require(eq_mod_precision(rotated, tr), "basis dependence on operator " + std::to_string(i));
    o.require(is_unitary(u), "rotation not unitary");
    o.require(eq_mod_precision(trace(compose(compose(u, t), adjoint(u))).value, tr),
              "not unitarily invariant on operator " + std::to_string(i));
  }
  if (o.ok) o.detail = "100 operators, 6x6";
  return o;
}

Outcome cyclic_and_bound() {
  Outcome o;
  Rng rng(1003);
  for (int i = 0; i < 500 && o.ok; ++i) {
    auto ctx = pick(rng, kContexts);
    std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 5));
    MatrixOperator b = rand_block(ctx, d, rng), t = rand_block(ctx, static_cast<std::size_t>(uniform(rng, 1, 5)), rng);
    auto [bt, tb] = verify_cyclic(b, t);
    o.require(eq_mod_precision(bt, tb), "tr(BT) != tr(TB) on pair " + std::to_string(i));
    o.require(ext_abs(bt) <= operator_norm(b) * operator_norm(t), "trace bound fails on pair " + std::to_string(i));
  }
  if (o.ok) o.detail = "500 pairs";
  return o;
}

Outcome decompositions() {
  Outcome o;
  Rng rng(1004);
  for (int i = 0; i < 200 && o.ok; ++i) {
    auto ctx = pick(rng, kContexts);
    std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 5));
    MatrixOperator c = rand_block(ctx, d, rng);
    CanonicalDecomposition cd = canonical_decomposition(c);
    o.require(eq_mod_precision(reconstruct(ctx, cd), c), "canonical reconstruction " + std::to_string(i));
    Norm mx = Norm::zero(ctx.p());
    for (const auto& term : cd.terms) mx = std::max(mx, ext_abs(term.coefficient));
    o.require(mx == operator_norm(c), "max |lambda| != ||C|| on " + std::to_string(i));
    MatrixOperator h = rand_self_adjoint(ctx, d, rng);
    o.require(eq_mod_precision(reconstruct(ctx, symmetric_decomposition(h)), h), "symmetric reconstruction " + std::to_string(i));
    auto [s, t] = factor_trace_class(c);
    o.require(eq_mod_precision(compose(s, t), c), "factorization " + std::to_string(i));
  }
  if (o.ok) o.detail = "200 instances";
  return o;
}

Outcome hilbert_schmidt() {
  Outcome o;
  Rng rng(1005);
  for (int i = 0; i < 100 && o.ok; ++i) {
    auto ctx = pick(rng, kContexts);
    std::size_t d = static_cast<std::size_t>(uniform(rng, 1, 4));
    MatrixOperator s = rand_block(ctx, d, rng), t = rand_block(ctx, d, rng);
    QuadExt st = hs_inner(s, t);
    o.require(eq_mod_precision(st, hs_inner(t, s).conj()), "Hermitian symmetry " + std::to_string(i));
    o.require(ext_abs(st) <= operator_norm(s) * operator_norm(t), "Cauchy-Schwarz " + std::to_string(i));
    auto E = [&](std::size_t j, std::size_t k) {
      return MatrixOperator::rank_one(PVector::basis(ctx, j), PVector::basis(ctx, k));
    };
    for (std::size_t j = 1; j <= d; ++j)
      for (std::size_t k = 1; k <= d; ++k) {
        o.require(eq_mod_precision(hs_inner(E(j, k), t), t.entry(j, k)), "<E^jk, T> != T_jk");
        std::size_t l = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(d)));
        std::size_t m = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(d)));
        o.require(eq_mod_precision(hs_inner(E(j, k), E(l, m)), Z(ctx, j == l && k == m ? 1 : 0)), "E^jk not orthonormal");
      }
  }
  if (o.ok) o.detail = "100 random pairs";
  return o;
}

Outcome unitary_characterization() {
  Outcome o;
  auto start = Clock::now();
  auto c2 = ext(2, 14);
  PadicNumber a = sqrt(PadicNumber::from_integer(c2.base(), -7));
  QuadExt A = QuadExt::from_base(c2, a);
  QuadExt B(c2, PadicNumber(c2.base()), PadicNumber::from_integer(c2.base(), 2) / a);
  MatrixOperator u = MatrixOperator::block(c2, 2, {A, B, B, A});
  o.require(is_unitary(u), "Q2(sqrt 14) example not unitary");
  auto c3 = ext(3, 2);
  MatrixOperator ce = four_squares_operator(c3, 1);
  o.require(is_ip_preserving(ce), "counterexample not IP-preserving");
  o.require(!is_unitary(ce), "counterexample reported unitary");
  o.require(operator_norm(ce) == Norm::from_valuation2(3, -2), "counterexample norm != 3");
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  o.require(ms < kUnitaryLimitMs, "too slow");
  if (o.ok) o.detail = "norm " + operator_norm(ce).str();
  return o;
}

Outcome state_layer() {
  Outcome o;
  Rng rng(1006);
  int simplex_checked = 0;
  for (int i = 0; i < 100 && o.ok; ++i) {
    auto ctx = pick(rng, kContexts);
    std::size_t k = static_cast<std::size_t>(uniform(rng, 1, 6));
    std::vector<MatrixOperator> effects;
    MatrixOperator rest = MatrixOperator::identity(ctx, k);
    for (long j = uniform(rng, 1, 3); j > 0; --j) {
      effects.push_back(rand_self_adjoint(ctx, k, rng));
      rest = sub(rest, effects.back());
    }
    effects.push_back(rest);
    Sovm sovm = Sovm::make(ctx, std::move(effects), k);
    StatisticalOperator s = StatisticalOperator::make(rand_statistical(ctx, k, rng));
    PairingReport r = pair(sovm, s);
    PadicNumber total(ctx.base());
    for (const auto& x : r.distribution.weights()) total += x;
    o.require(eq_mod_precision(total, PadicNumber::from_integer(ctx.base(), 1)), "pairing does not sum to 1");
    if (sovm.contractive() && s.is_density()) {
      o.require(r.in_simplex, "density + contractive pairing outside Z_p");
      ++simplex_checked;
    }
  }
  PadicContext c3(3, 10);
  std::vector<PadicNumber> w;
  for (long x : {1, 2, -1, -1}) w.push_back(PadicNumber::from_integer(c3, x));
  o.require(PadicDistribution::validate(c3, w).in_simplex(), "{1,2,-1,-1} rejected");
  PadicNumber third = Q(c3, mpq_class(1, 3));
  PadicDistribution far = PadicDistribution::validate(c3, {third, PadicNumber::from_integer(c3, 1) - third});
  o.require(far.sup_norm() == Norm::from_valuation2(3, -2), "sup-norm of {1/3, 2/3} != 3");
  if (o.ok) o.detail = "100 pairs, " + std::to_string(simplex_checked) + " density+contractive";
  return o;
}

Outcome classification_lattice() {
  Outcome o;
  Rng rng(1007);
  for (int i = 0; i < 1000 && o.ok; ++i) {
    auto ctx = pick(rng, kContexts);
    Classification c;
    switch (i % 4) {
      case 0: c = classify(rand_block(ctx, static_cast<std::size_t>(uniform(rng, 1, 4)), rng)); break;
      case 1: c = classify(rand_self_adjoint(ctx, static_cast<std::size_t>(uniform(rng, 1, 4)), rng)); break;
      default: {
        EntryFormula f{Z(ctx, uniform(rng, 1, 4), uniform(rng, 0, 1)), uniform(rng, -1, 2), uniform(rng, -1, 2),
                       uniform(rng, -2, 2), uniform(rng, 0, 2) == 0};
        c = classify(MatrixOperator::from_formula(ctx, static_cast<std::size_t>(uniform(rng, 2, 5)), f));
      }
    }
    if (c.trace_class.positive())
      o.require(c.compact.positive() && c.adjointable.positive(), "trace class without compact+adjointable");
    if (c.self_adjoint.positive()) o.require(c.adjointable.positive(), "self-adjoint without adjointable");
  }
  if (o.ok) o.detail = "1000 operators";
  return o;
}

}  // namespace
}  // namespace padicqm::test

int main() {
  using namespace padicqm::test;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"sqrt digit expansions", sqrt_digits},
      {"z conj(z) = 2 constructions", norm_two_elements},
      {"isotropy", isotropy},
      {"operator norm triple equality", norm_triple},
      {"trace basis and unitary invariance", trace_invariance},
      {"cyclic property and trace bound", cyclic_and_bound},
      {"decomposition round trips", decompositions},
      {"Hilbert-Schmidt axioms", hilbert_schmidt},
      {"unitary characterization", unitary_characterization},
      {"state layer pairing", state_layer},
      {"classification lattice", classification_lattice},
  };
  int failures = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    auto start = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    std::printf("%s %2d %s: %s (%.0f ms)\n", o.ok ? "PASS" : "FAIL", index, name, o.detail.c_str(), ms);
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
