#pragma once

#include <json.hpp>

#include "padicqm/states.hpp"

namespace padicqm {

using nlohmann::json;

// Rationals travel as "num/den" strings (or plain integers).
json rational_to_json(const mpq_class& q);
mpq_class rational_from_json(const json& j);

// {"p", "precision", "valuation", "digits"}; exact values add "exact": "num/den";
// zero has "valuation": null, plus "absolute_precision" when only known to be O(p^A).
json to_json(const PadicNumber& x);
// Also accepts a bare integer or a "num/den" string.
PadicNumber padic_from_json(const json& j, const PadicContext& ctx);

// {"p", "precision", "mu"}.
json to_json(const ExtensionContext& ctx);
ExtensionContext extension_from_json(const json& j);

json to_json(const QuadExt& z);
// Also accepts anything padic_from_json does, as a base-field element.
QuadExt quad_from_json(const json& j, const ExtensionContext& ctx);

json to_json(const Norm& n);

json to_json(const PVector& v);
PVector pvector_from_json(const json& j, const ExtensionContext& ctx);

json to_json(const LinearBound& b);
json to_json(const DecayCertificate& c);
DecayCertificate certificate_from_json(const json& j);

// Block-finite: {"kind": "block_finite", "dim", "entries": [[...]]}. Generator
// backed: {"kind": "generator", "window", "formula", "certificate"}. Both carry "context".
json to_json(const MatrixOperator& a);
// Uses the embedded "context" when present, else `fallback`.
MatrixOperator operator_from_json(const json& j, const ExtensionContext* fallback = nullptr);

json to_json(const Classification& c);
Classification classification_from_json(const json& j);

// {"terms": [{"lambda" or "sigma", "e", "f"}...]}.
json to_json(const CanonicalDecomposition& d);
json to_json(const SymmetricDecomposition& d);
CanonicalDecomposition canonical_from_json(const json& j, const ExtensionContext& ctx);
SymmetricDecomposition symmetric_from_json(const json& j, const ExtensionContext& ctx);

json to_json(const PadicDistribution& d);
PadicDistribution distribution_from_json(const json& j, const PadicContext& ctx);

// {"context", "dim", "effects": [operator...]}.
json to_json(const Sovm& s);
Sovm sovm_from_json(const json& j, const ExtensionContext* fallback = nullptr);

json to_json(const PairingReport& r);

}  // namespace padicqm
