#include "support.hpp"

namespace padicqm::test {
namespace {

QuadExt z35(const ExtensionContext& ctx) {
  return QuadExt(ctx, sqrt(PadicNumber::from_integer(ctx.base(), 7)), PadicNumber::from_integer(ctx.base(), -1));
}

MatrixOperator from_rows(const ExtensionContext& ctx, const std::vector<std::vector<QuadExt>>& rows) {
  std::vector<QuadExt> cells;
  for (const auto& r : rows) cells.insert(cells.end(), r.begin(), r.end());
  return MatrixOperator::block(ctx, rows.size(), cells);
}

Norm max_entry_oracle(const MatrixOperator& a) {
  std::optional<long> best;
  for (std::size_t m = 1; m <= a.dim(); ++m)
    for (std::size_t n = 1; n <= a.dim(); ++n) {
      QuadExt z = a.entry(m, n);
      if (z.is_exact_zero()) continue;
      long v2 = val2_oracle(z);
      if (!best || v2 < *best) best = v2;
    }
  return best ? Norm::from_valuation2(a.context().p(), *best) : Norm::zero(a.context().p());
}

TEST(Apply, Examples) {
  auto ctx = ext(3, 5);
  PVector e1 = PVector::basis(ctx, 1), e2 = PVector::basis(ctx, 2), e3 = PVector::basis(ctx, 3);
  EXPECT_TRUE(eq_mod_precision(apply(MatrixOperator::identity(ctx, 4), e3), e3));
  EXPECT_TRUE(eq_mod_precision(apply(MatrixOperator::rank_one(e1, e2), e2), e1));
  EXPECT_TRUE(apply(MatrixOperator::rank_one(e1, e2), e1).is_exact_zero());
}

TEST(Apply, MatchesNaiveProduct) {
  Rng rng(71);
  for (auto [p, mu] : std::vector<std::pair<std::uint64_t, long>>{{3, 5}, {2, 14}, {5, 2}}) {
    auto ctx = ext(p, mu);
    for (int i = 0; i < 50; ++i) {
      MatrixOperator a = rand_block(ctx, 4, rng);
      std::vector<QuadExt> v;
      for (int k = 0; k < 4; ++k) v.push_back(rand_quad(ctx, rng));
      PVector got = apply(a, PVector::from_entries(ctx, v));
      EXPECT_TRUE(eq_mod_precision(got, PVector::from_entries(ctx, naive_apply(a, v))));
    }
  }
}

TEST(Adjoint, Examples) {
  auto ctx = ext(3, 5);
  PVector e1 = PVector::basis(ctx, 1), e2 = PVector::basis(ctx, 2);
  EXPECT_TRUE(eq_mod_precision(adjoint(MatrixOperator::rank_one(e1, e2)), MatrixOperator::rank_one(e2, e1)));
  QuadExt d1 = Z(ctx, 1, 2), d2 = Z(ctx, 3, -1);
  EXPECT_TRUE(eq_mod_precision(adjoint(MatrixOperator::diagonal(ctx, {d1, d2})),
                               MatrixOperator::diagonal(ctx, {d1.conj(), d2.conj()})));
}

TEST(Adjoint, StarAlgebraLaws) {
  Rng rng(73);
  for (auto [p, mu] : std::vector<std::pair<std::uint64_t, long>>{{3, 5}, {2, 3}, {7, 14}}) {
    auto ctx = ext(p, mu);
    for (int i = 0; i < 100; ++i) {
      MatrixOperator a = rand_block(ctx, 3, rng), b = rand_block(ctx, 3, rng);
      QuadExt s = rand_quad(ctx, rng);
      EXPECT_TRUE(eq_mod_precision(adjoint(compose(a, b)), compose(adjoint(b), adjoint(a))));
      EXPECT_TRUE(eq_mod_precision(adjoint(scale(s, a)), scale(s.conj(), adjoint(a))));
      EXPECT_TRUE(eq_mod_precision(adjoint(add(a, b)), add(adjoint(a), adjoint(b))));
      EXPECT_TRUE(eq_mod_precision(adjoint(adjoint(a)), a));
      EXPECT_EQ(operator_norm(adjoint(a)), operator_norm(a));
    }
  }
}

TEST(OperatorNorm, Examples) {
  auto ctx = ext(3, 5);
  EXPECT_EQ(operator_norm(MatrixOperator::identity(ctx, 3)), Norm::one(3));
  EXPECT_EQ(operator_norm(MatrixOperator::diagonal(ctx, {Z(ctx, 3)})), Norm::from_valuation2(3, 2));
  EXPECT_EQ(operator_norm(MatrixOperator::diagonal(ctx, {Z(ctx, 3)})).str(), "3^-1");
  EXPECT_TRUE(operator_norm(MatrixOperator::zero(ctx, 2)).is_zero());
}

TEST(OperatorNorm, ThreeWaysAgree) {
  Rng rng(79);
  for (auto [p, mu] : std::vector<std::pair<std::uint64_t, long>>{{3, 5}, {3, 3}, {2, 7}, {5, 10}}) {
    auto ctx = ext(p, mu);
    for (int i = 0; i < 60; ++i) {
      MatrixOperator a = rand_block(ctx, static_cast<std::size_t>(uniform(rng, 1, 6)), rng);
      Norm cols = Norm::zero(p);
      for (std::size_t n = 1; n <= a.dim(); ++n) cols = std::max(cols, sup_norm(apply(a, PVector::basis(ctx, n))));
      EXPECT_EQ(operator_norm(a), cols);
      EXPECT_EQ(operator_norm(a), max_entry_oracle(a));
      // ||Ax|| <= ||A|| ||x|| for random x.
      PVector x = rand_vector(ctx, a.dim(), rng);
      EXPECT_LE(sup_norm(apply(a, x)), operator_norm(a) * sup_norm(x));
    }
  }
}

TEST(Classify, BlockSymmetricRealMatrix) {
  auto ctx = ext(3, 5);
  MatrixOperator a = from_rows(ctx, {{Z(ctx, 1), Z(ctx, 2)}, {Z(ctx, 2), Z(ctx, 9)}});
  Classification c = classify(a);
  for (const FlagReport* f : {&c.bounded, &c.adjointable, &c.self_adjoint, &c.compact, &c.trace_class, &c.traceable})
    EXPECT_EQ(f->verdict, Verdict::Proven);
}

TEST(Classify, BlockAsymmetryWitness) {
  auto ctx = ext(3, 5);
  MatrixOperator a = from_rows(ctx, {{Z(ctx, 1), Z(ctx, 0, 1)}, {Z(ctx, 0, 1), Z(ctx, 1)}});
  Classification c = classify(a);
  EXPECT_EQ(c.self_adjoint.verdict, Verdict::Refuted);
  ASSERT_TRUE(c.self_adjoint.entry.has_value());
  EXPECT_EQ(*c.self_adjoint.entry, std::make_pair(std::size_t{1}, std::size_t{2}));
  // sqrt(mu) entries are self-adjoint only when placed antisymmetrically.
  MatrixOperator h = from_rows(ctx, {{Z(ctx, 1), Z(ctx, 0, 1)}, {Z(ctx, 0, -1), Z(ctx, 1)}});
  EXPECT_EQ(classify(h).self_adjoint.verdict, Verdict::Proven);
}

TEST(Classify, GeneratorRowDecayOnly) {
  // A_mn = p^m: columns decay, rows do not.
  auto ctx = ext(3, 5);
  EntryFormula f{Z(ctx, 1), 1, 0, 0, false};
  MatrixOperator a = MatrixOperator::from_formula(ctx, 6, f);
  Classification c = classify(a);
  EXPECT_TRUE(c.bounded.positive());
  EXPECT_EQ(c.bounded.verdict, Verdict::CertifiedByDecay);
  EXPECT_EQ(c.adjointable.verdict, Verdict::Refuted);
  EXPECT_EQ(c.trace_class.verdict, Verdict::Refuted);
  EXPECT_EQ(c.self_adjoint.verdict, Verdict::Refuted);
  try {
    (void)adjoint(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAdjointable);
  }
}

TEST(Classify, GeneratorDiagonalDecay) {
  auto ctx = ext(3, 5);
  EntryFormula f{Z(ctx, 1), 1, 0, 0, true};
  Classification c = classify(MatrixOperator::from_formula(ctx, 5, f));
  EXPECT_EQ(c.trace_class.verdict, Verdict::CertifiedByDecay);
  EXPECT_EQ(c.compact.verdict, Verdict::CertifiedByDecay);
  EXPECT_EQ(c.self_adjoint.verdict, Verdict::CertifiedByDecay);
  EXPECT_TRUE(c.adjointable.positive());
}

TEST(Classify, GeneratorSumDecay) {
  auto ctx = ext(5, 2);
  EntryFormula f{Z(ctx, 1), 1, 1, 0, false};
  MatrixOperator a = MatrixOperator::from_formula(ctx, 5, f);
  Classification c = classify(a);
  EXPECT_EQ(c.trace_class.verdict, Verdict::CertifiedByDecay);
  EXPECT_EQ(c.traceable.verdict, Verdict::CertifiedByDecay);
  EXPECT_EQ(c.self_adjoint.verdict, Verdict::CertifiedByDecay);
  MatrixOperator as = adjoint(a);
  EXPECT_FALSE(as.is_block_finite());
  EXPECT_TRUE(eq_mod_precision(as.entry(2, 7), a.entry(7, 2).conj()));
}

TEST(Classify, GeneratorNonDecayingDiagonal) {
  // The identity as a generator: bounded and adjointable, never compact.
  auto ctx = ext(3, 5);
  EntryFormula f{Z(ctx, 1), 0, 0, 0, true};
  Classification c = classify(MatrixOperator::from_formula(ctx, 4, f));
  EXPECT_TRUE(c.bounded.positive());
  EXPECT_TRUE(c.adjointable.positive());
  EXPECT_EQ(c.compact.verdict, Verdict::Refuted);
  EXPECT_EQ(c.trace_class.verdict, Verdict::Refuted);
}

TEST(Classify, GeneratorGrowth) {
  auto ctx = ext(3, 5);
  EntryFormula f{Z(ctx, 1), -1, 0, 0, true};
  Classification c = classify(MatrixOperator::from_formula(ctx, 4, f));
  EXPECT_EQ(c.bounded.verdict, Verdict::Refuted);
  EXPECT_EQ(c.trace_class.verdict, Verdict::Refuted);
}

TEST(Generator, CertificateChecks) {
  auto ctx = ext(3, 5);
  DecayCertificate cert;
  cert.lower = {1, 1, 0};
  auto bad = [&](std::size_t m, std::size_t n) { return m == 3 && n == 3 ? Z(ctx, 1) : QuadExt(ctx); };
  try {
    (void)MatrixOperator::generator(ctx, 4, bad, cert);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidCertificate);
  }
  DecayCertificate inverted = cert;
  inverted.upper = LinearBound{0, 0, 0};
  EXPECT_THROW((void)MatrixOperator::generator(ctx, 4, [&](std::size_t, std::size_t) { return Z(ctx, 1); }, inverted), Error);
  DecayCertificate herm = cert;
  herm.hermitian = true;
  auto asym = [&](std::size_t m, std::size_t n) {
    return QuadExt::from_base(ctx, Q(ctx.base(), mpq_class(pow_p(3, static_cast<long>(m + 2 * n)))));
  };
  EXPECT_THROW((void)MatrixOperator::generator(ctx, 4, asym, herm), Error);
}

TEST(Generator, NormTailAndWindow) {
  auto ctx = ext(3, 5);
  EntryFormula f{Z(ctx, 1), 1, 1, 0, false};
  MatrixOperator a = MatrixOperator::from_formula(ctx, 4, f);
  EXPECT_EQ(operator_norm(a), Norm::from_valuation2(3, 4));
  // Coefficient sqrt(5) * 9 at (1,1) is the same size; a tiny window cannot
  // rule out a larger tail when entries grow along a row.
  EntryFormula g{Z(ctx, 1), 1, 0, 0, false};
  try {
    (void)operator_norm(MatrixOperator::from_formula(ctx, 3, g));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TailDominates);
  }
  EXPECT_THROW((void)apply(a, PVector::basis(ctx, 9)), Error);
  TraceResult t = trace(a);
  ASSERT_TRUE(t.tail_valuation.has_value());
  EXPECT_EQ(*t.tail_valuation, 10);
  EXPECT_TRUE(eq_mod_precision(t.value, Z(ctx, 9 + 81 + 729 + 6561)));
  EXPECT_THROW((void)compose(a, a), Error);
}

TEST(Unitary, Examples) {
  auto c3 = ext(3, 5);
  EXPECT_TRUE(is_unitary(MatrixOperator::identity(c3, 3)));
  auto c2 = ext(2, 14);
  PadicNumber a = sqrt(PadicNumber::from_integer(c2.base(), -7));
  QuadExt A = QuadExt::from_base(c2, a);
  QuadExt B = QuadExt(c2, PadicNumber(c2.base()), PadicNumber::from_integer(c2.base(), 2) / a);
  MatrixOperator u = from_rows(c2, {{A, B}, {B, A}});
  EXPECT_TRUE(is_unitary(u));
  EXPECT_TRUE(is_ip_preserving(u));
  EXPECT_EQ(operator_norm(u), Norm::one(2));
  // Breaking a a-bar + b b-bar = 1 breaks unitarity.
  EXPECT_FALSE(is_unitary(from_rows(c2, {{A + Z(c2, 2), B}, {B, A}})));
}

TEST(Unitary, FourSquaresCounterexample) {
  for (auto [p, mu] : std::vector<std::pair<std::uint64_t, long>>{{3, 5}, {5, 2}, {7, 3}}) {
    auto ctx = ext(p, mu);
    auto sols = four_square_solutions(p, 1, 64);
    ASSERT_FALSE(sols.empty());
    for (const auto& x : sols) {
      EXPECT_EQ(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3], static_cast<long>(p * p));
      EXPECT_TRUE(x[0] % static_cast<long>(p) || x[1] % static_cast<long>(p) || x[2] % static_cast<long>(p) ||
                  x[3] % static_cast<long>(p));
    }
    MatrixOperator a = four_squares_operator(ctx, 1);
    EXPECT_TRUE(is_ip_preserving(a));
    EXPECT_FALSE(is_unitary(a));
    EXPECT_EQ(operator_norm(a), Norm::from_valuation2(p, -2));
    EXPECT_EQ(operator_norm(adjoint(a)), Norm::from_valuation2(p, -2));
    // <Av, Aw> = <v, w> on random vectors.
    Rng rng(83);
    for (int i = 0; i < 30; ++i) {
      PVector v = rand_vector(ctx, 4, rng), w = rand_vector(ctx, 4, rng);
      EXPECT_TRUE(eq_mod_precision(inner_product(apply(a, v), apply(a, w)), inner_product(v, w)));
    }
  }
  auto c3 = ext(3, 5);
  MatrixOperator k2 = four_squares_operator(c3, 2, 0);
  EXPECT_TRUE(is_ip_preserving(k2));
  EXPECT_EQ(operator_norm(k2), Norm::from_valuation2(3, -4));
  EXPECT_THROW((void)four_squares_operator(ext(2, 3), 1), Error);
}

TEST(Trace, Examples) {
  auto ctx = ext(3, 5);
  PVector e1 = PVector::basis(ctx, 1);
  EXPECT_TRUE(eq_mod_precision(trace(MatrixOperator::rank_one(e1, e1)).value, Z(ctx, 1)));
  // A unit vector with <phi, phi> = 1 that is not a basis vector.
  BasisRotation r(ctx, {{1, 2, z35(ctx)}});
  PVector phi = r.image(1);
  EXPECT_TRUE(eq_mod_precision(trace(MatrixOperator::rank_one(phi, phi)).value, Z(ctx, 1)));
  EXPECT_EQ(operator_norm(MatrixOperator::rank_one(phi, phi)), Norm::one(3));
  EXPECT_TRUE(trace(MatrixOperator::zero(ctx, 3)).value.is_exact_zero());
}

TEST(Trace, LinearityConjugationAndRotationInvariance) {
  Rng rng(89);
  for (auto [p, mu] : std::vector<std::pair<std::uint64_t, long>>{{3, 5}, {5, 3}, {3, 2}}) {
    auto ctx = ext(p, mu);
    QuadExt z = find_norm_two(ctx);
    BasisRotation r(ctx, {{1, 4, z}, {2, 3, z.conj()}});
    MatrixOperator u = rotation_operator(r, 5);
    ASSERT_TRUE(is_unitary(u));
    for (int i = 0; i < 40; ++i) {
      MatrixOperator s = rand_block(ctx, 5, rng), t = rand_block(ctx, 5, rng);
      EXPECT_TRUE(eq_mod_precision(trace(add(s, t)).value, trace(s).value + trace(t).value));
      EXPECT_TRUE(eq_mod_precision(trace(adjoint(t)).value, trace(t).value.conj()));
      EXPECT_TRUE(eq_mod_precision(trace(compose(compose(u, t), adjoint(u))).value, trace(t).value));
      // Trace in the rotated basis: sum of <psi_n, T psi_n>.
      QuadExt rotated(ctx);
      for (std::size_t n = 1; n <= 5; ++n) rotated += inner_product(r.image(n), apply(t, r.image(n)));
      EXPECT_TRUE(eq_mod_precision(rotated, trace(t).value));
    }
  }
}

TEST(Trace, CyclicAndBounded) {
  Rng rng(97);
  auto ctx = ext(3, 5);
  PVector a = rand_vector(ctx, 3, rng), b = rand_vector(ctx, 3, rng), c = rand_vector(ctx, 3, rng),
          d = rand_vector(ctx, 3, rng);
  auto [x, y] = verify_cyclic(MatrixOperator::rank_one(a, b), MatrixOperator::rank_one(c, d));
  QuadExt expect = inner_product(b, c) * inner_product(d, a);
  EXPECT_TRUE(eq_mod_precision(x, expect));
  EXPECT_TRUE(eq_mod_precision(y, expect));
  for (int i = 0; i < 100; ++i) {
    MatrixOperator s = rand_block(ctx, 5, rng), t = rand_block(ctx, 5, rng);
    auto [st, ts] = verify_cyclic(s, t);
    EXPECT_TRUE(eq_mod_precision(st, ts));
    EXPECT_LE(ext_abs(st), operator_norm(s) * operator_norm(t));
    auto [it, ti] = verify_cyclic(MatrixOperator::identity(ctx, 5), t);
    EXPECT_TRUE(eq_mod_precision(it, trace(t).value));
    EXPECT_TRUE(eq_mod_precision(ti, trace(t).value));
  }
}

TEST(Trace, IdealProperty) {
  Rng rng(101);
  auto ctx = ext(5, 2);
  for (int i = 0; i < 30; ++i) {
    MatrixOperator b = rand_block(ctx, 4, rng), t = rand_block(ctx, 3, rng);
    EXPECT_EQ(classify(compose(b, t)).trace_class.verdict, Verdict::Proven);
    EXPECT_EQ(classify(compose(t, b)).trace_class.verdict, Verdict::Proven);
  }
  EntryFormula f{Z(ctx, 1), 1, 1, 0, false};
  EXPECT_THROW((void)trace(MatrixOperator::from_formula(ctx, 3, EntryFormula{Z(ctx, 1), 1, 0, 0, false})), Error);
  EXPECT_NO_THROW((void)trace(MatrixOperator::from_formula(ctx, 3, f)));
}

TEST(HilbertSchmidt, MatrixUnits) {
  auto ctx = ext(3, 5);
  auto E = [&](std::size_t j, std::size_t k) {
    return MatrixOperator::rank_one(PVector::basis(ctx, j), PVector::basis(ctx, k));
  };
  EXPECT_TRUE(eq_mod_precision(hs_inner(E(1, 2), E(1, 2)), Z(ctx, 1)));
  EXPECT_TRUE(hs_inner(E(1, 2), E(2, 1)).is_exact_zero());
  Rng rng(103);
  MatrixOperator t = rand_block(ctx, 3, rng);
  for (std::size_t j = 1; j <= 3; ++j)
    for (std::size_t k = 1; k <= 3; ++k) EXPECT_TRUE(eq_mod_precision(hs_inner(E(j, k), t), t.entry(j, k)));
}

TEST(Decomposition, CanonicalExamples) {
  auto ctx = ext(3, 5);
  QuadExt d = Z(ctx, 9, 3);
  CanonicalDecomposition c = canonical_decomposition(MatrixOperator::diagonal(ctx, {d}));
  ASSERT_EQ(c.terms.size(), 1u);
  EXPECT_TRUE(eq_mod_precision(c.terms[0].coefficient, d));
  EXPECT_TRUE(eq_mod_precision(c.terms[0].e, PVector::basis(ctx, 1)));
  EXPECT_TRUE(eq_mod_precision(c.terms[0].f, PVector::basis(ctx, 1)));
  EXPECT_TRUE(canonical_decomposition(MatrixOperator::zero(ctx, 3)).terms.empty());
}

TEST(Decomposition, CanonicalRoundTrip) {
  Rng rng(107);
  for (auto [p, mu] : std::vector<std::pair<std::uint64_t, long>>{{3, 5}, {2, 3}, {5, 10}}) {
    auto ctx = ext(p, mu);
    for (int i = 0; i < 50; ++i) {
      MatrixOperator a = rand_block(ctx, 4, rng);
      CanonicalDecomposition d = canonical_decomposition(a);
      EXPECT_TRUE(eq_mod_precision(reconstruct(ctx, d), a));
      Norm mx = Norm::zero(p);
      std::vector<PVector> es;
      for (const auto& t : d.terms) {
        mx = std::max(mx, ext_abs(t.coefficient));
        EXPECT_EQ(sup_norm(t.f), Norm::one(p));
        EXPECT_FALSE(t.coefficient.is_zero_at_precision());
        es.push_back(t.e);
      }
      if (!es.empty()) { EXPECT_TRUE(is_norm_orthogonal(es)); }
      EXPECT_EQ(mx, operator_norm(a));
      // |tr T| <= max |lambda_j| |<f_j, e_j>| <= ||T||.
      Norm bound = Norm::zero(p);
      for (const auto& t : d.terms) bound = std::max(bound, ext_abs(t.coefficient) * ext_abs(inner_product(t.f, t.e)));
      EXPECT_LE(ext_abs(trace(a).value), bound);
      EXPECT_LE(bound, operator_norm(a));
    }
  }
}

TEST(Decomposition, SymmetricExamples) {
  auto ctx = ext(3, 5);
  PVector e1 = PVector::basis(ctx, 1);
  SymmetricDecomposition d = symmetric_decomposition(MatrixOperator::rank_one(e1, e1));
  ASSERT_EQ(d.terms.size(), 1u);
  EXPECT_TRUE(eq_mod_precision(d.terms[0].coefficient, QuadExt::from_base(ctx, Q(ctx.base(), mpq_class(1, 2)))));
  EXPECT_TRUE(eq_mod_precision(d.terms[0].e, e1));
  EXPECT_TRUE(eq_mod_precision(d.terms[0].f, e1));
  EXPECT_TRUE(symmetric_decomposition(MatrixOperator::zero(ctx, 2)).terms.empty());
  Rng rng(109);
  try {
    (void)symmetric_decomposition(rand_block(ctx, 3, rng, 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSelfAdjoint);
  }
}

TEST(Decomposition, SymmetricRoundTripAndTrace) {
  Rng rng(113);
  for (auto [p, mu] : std::vector<std::pair<std::uint64_t, long>>{{3, 5}, {2, 14}, {7, 3}}) {
    auto ctx = ext(p, mu);
    for (int i = 0; i < 50; ++i) {
      MatrixOperator t = rand_self_adjoint(ctx, 4, rng);
      SymmetricDecomposition d = symmetric_decomposition(t);
      EXPECT_TRUE(eq_mod_precision(reconstruct(ctx, d), t));
      EXPECT_TRUE(eq_mod_precision(decomposition_trace(ctx, d), trace(t).value));
    }
  }
}

TEST(Decomposition, FactorTraceClass) {
  auto ctx = ext(3, 5);
  PVector e1 = PVector::basis(ctx, 1);
  auto [s1, t1] = factor_trace_class(MatrixOperator::rank_one(e1, e1));
  EXPECT_TRUE(eq_mod_precision(s1, MatrixOperator::rank_one(e1, e1)));
  EXPECT_TRUE(eq_mod_precision(t1, MatrixOperator::rank_one(e1, e1)));
  auto [s0, t0] = factor_trace_class(MatrixOperator::zero(ctx, 2));
  EXPECT_TRUE(operator_norm(s0).is_zero());
  EXPECT_TRUE(operator_norm(t0).is_zero());
  Rng rng(127);
  for (auto [p, mu] : std::vector<std::pair<std::uint64_t, long>>{{3, 5}, {2, 3}, {5, 5}}) {
    auto c = ext(p, mu);
    for (int i = 0; i < 40; ++i) {
      MatrixOperator r = rand_block(c, 4, rng);
      auto [s, t] = factor_trace_class(r);
      EXPECT_TRUE(eq_mod_precision(compose(s, t), r));
      EXPECT_EQ(classify(s).trace_class.verdict, Verdict::Proven);
      EXPECT_EQ(classify(t).trace_class.verdict, Verdict::Proven);
    }
  }
}

TEST(Classify, LatticeOverGeneratedOperators) {
  Rng rng(131);
  auto ctx = ext(3, 5);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Classification c;
    if (i % 3 == 0) {
      c = classify(rand_block(ctx, static_cast<std::size_t>(uniform(rng, 1, 4)), rng));
    } else {
      EntryFormula f{Z(ctx, uniform(rng, 1, 4), uniform(rng, 0, 1)), uniform(rng, -1, 2), uniform(rng, -1, 2),
                     uniform(rng, -2, 2), uniform(rng, 0, 3) == 0};
      c = classify(MatrixOperator::from_formula(ctx, 4, f));
    }
    if (c.trace_class.positive()) { EXPECT_TRUE(c.compact.positive() && c.adjointable.positive()); }
    if (c.self_adjoint.positive()) { EXPECT_TRUE(c.adjointable.positive()); }
    if (c.compact.positive()) { EXPECT_TRUE(c.bounded.positive()); }
    ++checked;
  }
  EXPECT_EQ(checked, 300);
}

TEST(Verdict, Names) {
  for (Verdict v : {Verdict::Proven, Verdict::Refuted, Verdict::CertifiedByDecay, Verdict::Undetermined})
    EXPECT_EQ(parse_verdict(verdict_name(v)), v);
  EXPECT_THROW((void)parse_verdict("maybe"), Error);
}

}  // namespace
}  // namespace padicqm::test
