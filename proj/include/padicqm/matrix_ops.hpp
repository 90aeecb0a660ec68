#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicqm/hilbert.hpp"

namespace padicqm {

/// v(m, n) = row_rate*m + col_rate*n + offset, an additive valuation bound.
struct LinearBound {
  mpq_class row_rate = 0, col_rate = 0, offset = 0;
  mpq_class at(std::size_t m, std::size_t n) const {
    return row_rate * static_cast<unsigned long>(m) + col_rate * static_cast<unsigned long>(n) + offset;
  }
};

/// What the caller promises about the entries outside the window.
struct DecayCertificate {
  LinearBound lower;                 // v(A_mn) >= lower(m, n)
  std::optional<LinearBound> upper;  // A_mn != 0 and v(A_mn) <= upper(m, n) on the support pattern
  bool diagonal = false;             // A_mn = 0 for m != n
  bool hermitian = false;            // A_mn = conj(A_nm) everywhere
};

/// A_mn = coefficient * p^(row_exponent*m + col_exponent*n + offset), zero off
/// the diagonal when `diagonal` is set.
struct EntryFormula {
  QuadExt coefficient;
  long row_exponent = 0, col_exponent = 0, offset = 0;
  bool diagonal = false;

  QuadExt at(std::size_t m, std::size_t n) const;
  // Exact valuations of the formula give both bounds.
  DecayCertificate certificate() const;
};

class MatrixOperator {
 public:
  using EntryFn = std::function<QuadExt(std::size_t, std::size_t)>;

  // Row-major k*k entries.
  static MatrixOperator block(const ExtensionContext& ctx, std::size_t dim, std::vector<QuadExt> entries);
  static MatrixOperator zero(const ExtensionContext& ctx, std::size_t dim = 0);
  static MatrixOperator identity(const ExtensionContext& ctx, std::size_t dim);
  static MatrixOperator diagonal(const ExtensionContext& ctx, const std::vector<QuadExt>& d);
  // |e><f|: psi -> <f, psi> e.
  static MatrixOperator rank_one(const PVector& e, const PVector& f);
  // Materializes and checks the window against the certificate (InvalidCertificate).
  static MatrixOperator generator(const ExtensionContext& ctx, std::size_t window, EntryFn entry,
                                  DecayCertificate cert);
  static MatrixOperator from_formula(const ExtensionContext& ctx, std::size_t window,
                                     const EntryFormula& formula,
                                     std::optional<DecayCertificate> cert = std::nullopt);

  const ExtensionContext& context() const { return ctx_; }
  bool is_block_finite() const { return !gen_; }
  // Block dimension, or the window for generator-backed operators.
  std::size_t dim() const { return dim_; }
  // 1-based; zero outside a block.
  QuadExt entry(std::size_t m, std::size_t n) const;

  const DecayCertificate* certificate() const { return gen_ ? &gen_->cert : nullptr; }
  const EntryFormula* formula() const { return gen_ && gen_->formula ? &*gen_->formula : nullptr; }

 private:
  struct Generator {
    EntryFn entry;
    DecayCertificate cert;
    std::optional<EntryFormula> formula;
  };

  explicit MatrixOperator(const ExtensionContext& ctx) : ctx_(ctx) {}

  ExtensionContext ctx_;
  std::size_t dim_ = 0;
  std::vector<QuadExt> cells_;  // row-major dim_*dim_ (the window for generators)
  std::shared_ptr<const Generator> gen_;
};

void require_block_finite(const MatrixOperator& a);
bool eq_mod_precision(const MatrixOperator& a, const MatrixOperator& b);

// Generator-backed: v must be supported in the window; rows past the window are dropped.
PVector apply(const MatrixOperator& a, const PVector& v);
MatrixOperator compose(const MatrixOperator& a, const MatrixOperator& b);
MatrixOperator add(const MatrixOperator& a, const MatrixOperator& b);
MatrixOperator sub(const MatrixOperator& a, const MatrixOperator& b);
MatrixOperator scale(const QuadExt& s, const MatrixOperator& a);
// Generator-backed operators need a certified adjointable verdict.
MatrixOperator adjoint(const MatrixOperator& a);

// max |A_mn|. Generator-backed: window maximum, TailDominates when the
// certificate cannot keep the tail below it.
Norm operator_norm(const MatrixOperator& a);

enum class Verdict { Proven, Refuted, CertifiedByDecay, Undetermined };
std::string verdict_name(Verdict v);
Verdict parse_verdict(const std::string& s);

struct FlagReport {
  Verdict verdict = Verdict::Undetermined;
  std::string witness;
  std::optional<std::pair<std::size_t, std::size_t>> entry;

  bool positive() const { return verdict == Verdict::Proven || verdict == Verdict::CertifiedByDecay; }
};

struct Classification {
  FlagReport bounded, adjointable, self_adjoint, compact, trace_class, traceable;
};

Classification classify(const MatrixOperator& a);

// Treats the block as the whole finite-dimensional operator.
bool is_unitary(const MatrixOperator& u);
// U*U = Id = UU* on the block, without the norm condition.
bool is_ip_preserving(const MatrixOperator& u);

// Inner-product preserving but not unitary: p^-K times the four-squares matrix of some
// x with sum x_i^2 = p^(2K) and some x_i a unit. `seed` picks among solutions.
MatrixOperator four_squares_operator(const ExtensionContext& ctx, int K, std::uint64_t seed = 0);
std::vector<std::array<long, 4>> four_square_solutions(std::uint64_t p, int K, std::size_t limit);

// Columns are the images of e_1..e_dim.
MatrixOperator rotation_operator(const BasisRotation& r, std::size_t dim);

struct TraceResult {
  QuadExt value;
  // For generator-backed operators: the omitted tail has valuation >= this.
  std::optional<mpq_class> tail_valuation;
};

TraceResult trace(const MatrixOperator& t);
// tr(S* T).
QuadExt hs_inner(const MatrixOperator& s, const MatrixOperator& t);
std::pair<QuadExt, QuadExt> verify_cyclic(const MatrixOperator& b, const MatrixOperator& t);

struct RankOneTerm {
  QuadExt coefficient;  // lambda_j or sigma_j
  PVector e, f;
};

// C = sum lambda_j |e_j><f_j|.
struct CanonicalDecomposition {
  std::vector<RankOneTerm> terms;
};

// T = sum sigma_j |e_j><f_j| + conj(sigma_j) |f_j><e_j|.
struct SymmetricDecomposition {
  std::vector<RankOneTerm> terms;
};

CanonicalDecomposition canonical_decomposition(const MatrixOperator& c);
MatrixOperator reconstruct(const ExtensionContext& ctx, const CanonicalDecomposition& d);
SymmetricDecomposition symmetric_decomposition(const MatrixOperator& t);
MatrixOperator reconstruct(const ExtensionContext& ctx, const SymmetricDecomposition& d);
// sum sigma_j <f_j, e_j> + conj(sigma_j) <e_j, f_j>.
QuadExt decomposition_trace(const ExtensionContext& ctx, const SymmetricDecomposition& d);

// R = S T with S = sum kappa_j |e_j><phi_j|, T = sum nu_j |phi_j><f_j|, kappa_j nu_j = lambda_j.
std::pair<MatrixOperator, MatrixOperator> factor_trace_class(const MatrixOperator& r);

}  // namespace padicqm
