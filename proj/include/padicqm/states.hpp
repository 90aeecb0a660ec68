#pragma once

#include <functional>
#include <vector>

#include "padicqm/matrix_ops.hpp"

namespace padicqm {

/// Q_p-valued weights summing to 1.
class PadicDistribution {
 public:
  // Throws SumNotOne or EmptyList.
  static PadicDistribution validate(const PadicContext& ctx, std::vector<PadicNumber> weights);

  const PadicContext& context() const { return ctx_; }
  const std::vector<PadicNumber>& weights() const { return weights_; }
  Norm sup_norm() const;
  // All weights in Z_p.
  bool in_simplex() const;

 private:
  PadicDistribution(const PadicContext& ctx, std::vector<PadicNumber> w)
      : ctx_(ctx), weights_(std::move(w)) {}
  PadicContext ctx_;
  std::vector<PadicNumber> weights_;
};

// {pi_j pi'_k} in row-major order.
PadicDistribution product(const PadicDistribution& a, const PadicDistribution& b);
// p^(m-1)(1-p) for m < n, last weight p^(n-1) so the sum is exactly 1.
PadicDistribution truncated_geometric(const PadicContext& ctx, std::size_t n);

bool is_qp_affine(const std::vector<PadicNumber>& coefficients);
// Affine with every |lambda_i| <= 1.
bool is_qp_convex(const std::vector<PadicNumber>& coefficients);
// Throws SumNotOne unless affine.
PVector combine(const std::vector<PVector>& points, const std::vector<PadicNumber>& coefficients);
MatrixOperator combine(const std::vector<MatrixOperator>& points,
                       const std::vector<PadicNumber>& coefficients);

// Number of points a convexity test must combine: 2 for odd p, 3 for p = 2.
int convexity_test_arity(std::uint64_t p);
// Every Q_p-convex combination of `arity` of the points, with coefficients
// drawn from `grid` (last coefficient fixed by the sum), satisfies `member`.
bool closed_under_convex_combinations(const std::vector<MatrixOperator>& points,
                                      const std::vector<PadicNumber>& grid,
                                      const std::function<bool(const MatrixOperator&)>& member);

/// Self-adjoint block-finite operator of trace 1.
class StatisticalOperator {
 public:
  // Throws NotBlockFinite, NotSelfAdjoint or TraceNotOne.
  static StatisticalOperator make(const MatrixOperator& op);

  const MatrixOperator& op() const { return op_; }
  const Classification& classification() const { return cls_; }
  Norm norm() const { return norm_; }
  // ||S|| = 1, cross-checked against max |lambda_j| of a canonical decomposition.
  bool is_density() const;

 private:
  explicit StatisticalOperator(MatrixOperator op) : op_(std::move(op)), norm_(Norm::zero(2)) {}
  MatrixOperator op_;
  Classification cls_;
  Norm norm_;
};

struct SimpleStatistical {
  MatrixOperator op;
  bool zero_trace;  // <phi, psi> = 0 branch: trace 0 instead of 1
};

// (sigma |phi><psi| + conj(sigma) |psi><phi|) normalized to trace 1, or by
// (sigma + conj(sigma)) when <phi, psi> = 0. Throws DegenerateNormalizer.
SimpleStatistical simple_statistical(const PVector& phi, const PVector& psi, const QuadExt& sigma);

/// Self-adjoint effects on C^k summing to the identity.
class Sovm {
 public:
  // Throws NotSelfAdjoint, DimensionMismatch, SumNotIdentity, EmptyList.
  static Sovm make(const ExtensionContext& ctx, std::vector<MatrixOperator> effects, std::size_t dim);

  const std::vector<MatrixOperator>& effects() const { return effects_; }
  std::size_t dim() const { return dim_; }
  Norm norm_bound() const { return norm_bound_; }
  bool contractive() const { return norm_bound_ <= Norm::one(norm_bound_.base()); }

 private:
  Sovm(std::vector<MatrixOperator> e, std::size_t dim, Norm bound)
      : effects_(std::move(e)), dim_(dim), norm_bound_(bound) {}
  std::vector<MatrixOperator> effects_;
  std::size_t dim_;
  Norm norm_bound_;
};

struct DerivedSovm {
  Sovm sovm;                       // A_0 = Id - S, A_j = sigma_j|e_j><f_j| + h.c.
  PadicDistribution associated;    // {0, pi_1, ...}, pi_j = sigma_j<f_j,e_j> + conj(sigma_j)<e_j,f_j>
};

DerivedSovm sovm_from_symmetric_decomposition(const StatisticalOperator& s);

struct PairingReport {
  PadicDistribution distribution;  // {tr(A_i S)}
  bool in_simplex;
};

PairingReport pair(const Sovm& sovm, const StatisticalOperator& s);

// S + T for self-adjoint T of trace 0. Throws NotSelfAdjoint or TraceNotZero.
StatisticalOperator zero_trace_perturb(const StatisticalOperator& s, const MatrixOperator& t);

// S = S0 + S1 from the symmetric decomposition terms with <e_j,f_j> = 0 and != 0.
std::pair<MatrixOperator, MatrixOperator> split_by_trace_support(const StatisticalOperator& s);

}  // namespace padicqm
