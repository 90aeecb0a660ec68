#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "padicqm/quad_ext.hpp"

namespace padicqm {

/// A finitely supported vector of c0(N, Q_p(sqrt mu)). Indices start at 1.
class PVector {
 public:
  explicit PVector(const ExtensionContext& ctx) : ctx_(ctx) {}
  static PVector basis(const ExtensionContext& ctx, std::size_t i);
  // entries[k] goes to index k + 1.
  static PVector from_entries(const ExtensionContext& ctx, const std::vector<QuadExt>& entries);

  const ExtensionContext& context() const { return ctx_; }
  // Exact zeros are dropped.
  void set(std::size_t i, const QuadExt& z);
  QuadExt get(std::size_t i) const;
  const std::map<std::size_t, QuadExt>& entries() const { return entries_; }
  std::size_t max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }
  bool is_exact_zero() const { return entries_.empty(); }

  friend PVector operator+(const PVector& a, const PVector& b);
  friend PVector operator-(const PVector& a, const PVector& b);
  friend PVector operator*(const QuadExt& s, const PVector& v);

 private:
  ExtensionContext ctx_;
  std::map<std::size_t, QuadExt> entries_;
};

bool eq_mod_precision(const PVector& a, const PVector& b);

// Sum of conj(u_i) v_i.
QuadExt inner_product(const PVector& u, const PVector& v);
Norm sup_norm(const PVector& v);

// Zero vectors in the family are ignored; they never break the max identity.
bool is_norm_orthogonal(const std::vector<PVector>& vs);
bool is_orthonormal_system(const std::vector<PVector>& vs);

/// psi_i = z^-1 (e_i + e_j), psi_j = z^-1 (e_i - e_j) on each pair, identity elsewhere.
class BasisRotation {
 public:
  struct Pair {
    std::size_t i, j;
    QuadExt z;
  };

  // Throws RequiresOddP for p = 2; validates z conj(z) = 2, |z| = 1 and disjointness.
  BasisRotation(const ExtensionContext& ctx, std::vector<Pair> plan);

  const ExtensionContext& context() const { return ctx_; }
  const std::vector<Pair>& plan() const { return plan_; }

  PVector apply(const PVector& v) const;
  PVector apply_inverse(const PVector& v) const;
  // Image of e_i.
  PVector image(std::size_t i) const { return apply(PVector::basis(ctx_, i)); }

 private:
  ExtensionContext ctx_;
  std::vector<Pair> plan_;
};

// Some z with z conj(z) = 2 and |z| = 1, found by a small search. Odd p only.
QuadExt find_norm_two(const ExtensionContext& ctx, long search_bound = 64);

// z with z conj(z) = t, or nullopt when t is not a norm (decided by the
// Hilbert symbol) or the search over y = j p^k, 0 <= j <= bound, misses.
std::optional<QuadExt> solve_norm_equation(const ExtensionContext& ctx, const PadicNumber& t,
                                           long search_bound);

// A nonzero v with <v,v> = 0 and support at most max_support, or nullopt when
// no such vector exists. Throws SearchBoundExceeded if one exists but was not found.
std::optional<PVector> find_isotropic(const ExtensionContext& ctx, std::size_t max_support,
                                      long search_bound = 64);
// Least support size of an isotropic vector: 2 or 3.
int isotropy_index(const ExtensionContext& ctx, long search_bound = 64);

}  // namespace padicqm
