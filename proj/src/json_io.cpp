#include "padicqm/json_io.hpp"

namespace padicqm {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

template <class T>
T get_as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    bad(std::string("bad value for ") + what);
  }
}

void check_base(const json& j, const PadicContext& ctx) {
  if (j.contains("p") && get_as<std::uint64_t>(j.at("p"), "p") != ctx.p())
    throw Error(ErrorCode::ContextMismatch, "value for p=" + j.at("p").dump() + " in a p=" + std::to_string(ctx.p()) + " context");
}

}  // namespace

json rational_to_json(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

mpq_class rational_from_json(const json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) bad("expected a rational, got " + j.dump());
  mpq_class q;
  if (q.set_str(j.get<std::string>(), 10) != 0) bad("bad rational '" + j.get<std::string>() + "'");
  if (q.get_den() == 0) bad("zero denominator");
  q.canonicalize();
  return q;
}

json to_json(const PadicNumber& x) {
  json j;
  j["p"] = x.p();
  j["precision"] = x.context().precision();
  if (x.is_zero_at_precision()) {
    j["valuation"] = nullptr;
    if (auto a = x.absolute_precision()) j["absolute_precision"] = *a;
    return j;
  }
  j["valuation"] = x.valuation();
  j["digits"] = x.digits();
  if (x.is_exact()) j["exact"] = x.exact_value().get_str();
  return j;
}

PadicNumber padic_from_json(const json& j, const PadicContext& ctx) {
  if (j.is_number_integer() || j.is_string()) return PadicNumber::from_rational(ctx, rational_from_json(j));
  if (!j.is_object()) bad("expected a p-adic number, got " + j.dump());
  check_base(j, ctx);
  if (j.contains("exact")) {
    PadicNumber x = PadicNumber::from_rational(ctx, rational_from_json(j.at("exact")));
    if (j.contains("digits") && !x.is_exact_zero() &&
        get_as<std::vector<unsigned>>(j.at("digits"), "digits") != x.digits())
      bad("digits disagree with the exact value");
    return x;
  }
  const json& v = field(j, "valuation");
  if (v.is_null()) {
    if (j.contains("absolute_precision"))
      return PadicNumber::indistinct(ctx, get_as<long>(j.at("absolute_precision"), "absolute_precision"));
    return PadicNumber(ctx);
  }
  auto digits = get_as<std::vector<unsigned>>(field(j, "digits"), "digits");
  return PadicNumber::from_digits(ctx, get_as<long>(v, "valuation"), digits);
}

json to_json(const ExtensionContext& ctx) {
  return {{"p", ctx.p()}, {"precision", ctx.base().precision()}, {"mu", to_json(ctx.mu())}};
}

ExtensionContext extension_from_json(const json& j) {
  PadicContext base(get_as<std::uint64_t>(field(j, "p"), "p"), get_as<int>(field(j, "precision"), "precision"));
  return ExtensionContext(padic_from_json(field(j, "mu"), base));
}

json to_json(const QuadExt& z) {
  return {{"mu", to_json(z.context().mu())}, {"sc", to_json(z.sc())}, {"ac", to_json(z.ac())}};
}

QuadExt quad_from_json(const json& j, const ExtensionContext& ctx) {
  if (!j.is_object() || !j.contains("sc")) return QuadExt::from_base(ctx, padic_from_json(j, ctx.base()));
  if (j.contains("mu") && !eq_mod_precision(padic_from_json(j.at("mu"), ctx.base()), ctx.mu()))
    throw Error(ErrorCode::ContextMismatch, "element over a different mu");
  PadicNumber sc = padic_from_json(j.at("sc"), ctx.base());
  PadicNumber ac = j.contains("ac") ? padic_from_json(j.at("ac"), ctx.base()) : PadicNumber(ctx.base());
  return QuadExt(ctx, sc, ac);
}

json to_json(const Norm& n) { return n.str(); }

json to_json(const PVector& v) {
  json e = json::object();
  for (const auto& [i, z] : v.entries()) e[std::to_string(i)] = to_json(z);
  return {{"entries", e}};
}

PVector pvector_from_json(const json& j, const ExtensionContext& ctx) {
  const json& e = field(j, "entries");
  if (!e.is_object()) bad("vector entries must be an object keyed by index");
  PVector v(ctx);
  for (const auto& [k, z] : e.items()) {
    std::size_t idx = 0;
    try {
      idx = std::stoul(k);
    } catch (const std::exception&) {
      bad("bad vector index '" + k + "'");
    }
    v.set(idx, quad_from_json(z, ctx));
  }
  return v;
}

json to_json(const LinearBound& b) {
  return {{"row_rate", rational_to_json(b.row_rate)},
          {"col_rate", rational_to_json(b.col_rate)},
          {"offset", rational_to_json(b.offset)}};
}

namespace {

LinearBound bound_from_json(const json& j) {
  LinearBound b;
  if (j.contains("row_rate")) b.row_rate = rational_from_json(j.at("row_rate"));
  if (j.contains("col_rate")) b.col_rate = rational_from_json(j.at("col_rate"));
  if (j.contains("offset")) b.offset = rational_from_json(j.at("offset"));
  return b;
}

}  // namespace

json to_json(const DecayCertificate& c) {
  json j{{"lower", to_json(c.lower)}, {"diagonal", c.diagonal}, {"hermitian", c.hermitian}};
  if (c.upper) j["upper"] = to_json(*c.upper);
  return j;
}

DecayCertificate certificate_from_json(const json& j) {
  DecayCertificate c;
  c.lower = bound_from_json(field(j, "lower"));
  if (j.contains("upper")) c.upper = bound_from_json(j.at("upper"));
  if (j.contains("diagonal")) c.diagonal = get_as<bool>(j.at("diagonal"), "diagonal");
  if (j.contains("hermitian")) c.hermitian = get_as<bool>(j.at("hermitian"), "hermitian");
  return c;
}

json to_json(const MatrixOperator& a) {
  json j{{"context", to_json(a.context())}};
  if (a.is_block_finite()) {
    j["kind"] = "block_finite";
    j["dim"] = a.dim();
    json rows = json::array();
    for (std::size_t m = 1; m <= a.dim(); ++m) {
      json row = json::array();
      for (std::size_t n = 1; n <= a.dim(); ++n) row.push_back(to_json(a.entry(m, n)));
      rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
  }
  const EntryFormula* f = a.formula();
  if (!f) throw Error(ErrorCode::ParseError, "only formula generators can be serialized");
  j["kind"] = "generator";
  j["window"] = a.dim();
  j["formula"] = {{"coefficient", to_json(f->coefficient)},
                  {"row_exponent", f->row_exponent},
                  {"col_exponent", f->col_exponent},
                  {"offset", f->offset},
                  {"diagonal", f->diagonal}};
  j["certificate"] = to_json(*a.certificate());
  return j;
}

MatrixOperator operator_from_json(const json& j, const ExtensionContext* fallback) {
  if (!j.is_object()) bad("operator must be an object");
  std::optional<ExtensionContext> own;
  if (j.contains("context")) own = extension_from_json(j.at("context"));
  if (!own && !fallback) bad("operator has no context; pass --p/--mu or embed \"context\"");
  const ExtensionContext& ctx = own ? *own : *fallback;
  std::string kind = get_as<std::string>(field(j, "kind"), "kind");
  if (kind == "block_finite") {
    std::size_t dim = get_as<std::size_t>(field(j, "dim"), "dim");
    const json& rows = field(j, "entries");
    if (!rows.is_array() || rows.size() != dim) bad("entries must be dim rows");
    std::vector<QuadExt> cells;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != dim) bad("each row must have dim entries");
      for (const auto& z : row) cells.push_back(quad_from_json(z, ctx));
    }
    return MatrixOperator::block(ctx, dim, std::move(cells));
  }
  if (kind == "generator") {
    const json& f = field(j, "formula");
    EntryFormula formula{quad_from_json(field(f, "coefficient"), ctx)};
    if (f.contains("row_exponent")) formula.row_exponent = get_as<long>(f.at("row_exponent"), "row_exponent");
    if (f.contains("col_exponent")) formula.col_exponent = get_as<long>(f.at("col_exponent"), "col_exponent");
    if (f.contains("offset")) formula.offset = get_as<long>(f.at("offset"), "offset");
    if (f.contains("diagonal")) formula.diagonal = get_as<bool>(f.at("diagonal"), "diagonal");
    std::optional<DecayCertificate> cert;
    if (j.contains("certificate")) cert = certificate_from_json(j.at("certificate"));
    return MatrixOperator::from_formula(ctx, get_as<std::size_t>(field(j, "window"), "window"), formula, cert);
  }
  bad("unknown operator kind '" + kind + "'");
}

namespace {

json flag_json(const FlagReport& f) {
  json j{{"verdict", verdict_name(f.verdict)}, {"witness", f.witness}};
  if (f.entry) j["entry"] = {f.entry->first, f.entry->second};
  return j;
}

FlagReport flag_from_json(const json& j) {
  FlagReport f;
  f.verdict = parse_verdict(get_as<std::string>(field(j, "verdict"), "verdict"));
  f.witness = get_as<std::string>(field(j, "witness"), "witness");
  if (j.contains("entry")) {
    auto e = get_as<std::vector<std::size_t>>(j.at("entry"), "entry");
    if (e.size() != 2) bad("entry witness must be [m, n]");
    f.entry = std::make_pair(e[0], e[1]);
  }
  return f;
}

}  // namespace

json to_json(const Classification& c) {
  return {{"bounded", flag_json(c.bounded)},         {"adjointable", flag_json(c.adjointable)},
          {"self_adjoint", flag_json(c.self_adjoint)}, {"compact", flag_json(c.compact)},
          {"trace_class", flag_json(c.trace_class)}, {"traceable", flag_json(c.traceable)}};
}

Classification classification_from_json(const json& j) {
  Classification c;
  c.bounded = flag_from_json(field(j, "bounded"));
  c.adjointable = flag_from_json(field(j, "adjointable"));
  c.self_adjoint = flag_from_json(field(j, "self_adjoint"));
  c.compact = flag_from_json(field(j, "compact"));
  c.trace_class = flag_from_json(field(j, "trace_class"));
  c.traceable = flag_from_json(field(j, "traceable"));
  return c;
}

namespace {

json terms_json(const std::vector<RankOneTerm>& terms, const char* coeff) {
  json arr = json::array();
  for (const auto& t : terms) arr.push_back({{coeff, to_json(t.coefficient)}, {"e", to_json(t.e)}, {"f", to_json(t.f)}});
  return {{"terms", arr}};
}

std::vector<RankOneTerm> terms_from_json(const json& j, const ExtensionContext& ctx, const char* coeff) {
  const json& arr = field(j, "terms");
  if (!arr.is_array()) bad("terms must be an array");
  std::vector<RankOneTerm> terms;
  for (const auto& t : arr)
    terms.push_back({quad_from_json(field(t, coeff), ctx), pvector_from_json(field(t, "e"), ctx),
                     pvector_from_json(field(t, "f"), ctx)});
  return terms;
}

}  // namespace

json to_json(const CanonicalDecomposition& d) { return terms_json(d.terms, "lambda"); }
json to_json(const SymmetricDecomposition& d) { return terms_json(d.terms, "sigma"); }

CanonicalDecomposition canonical_from_json(const json& j, const ExtensionContext& ctx) {
  return {terms_from_json(j, ctx, "lambda")};
}

SymmetricDecomposition symmetric_from_json(const json& j, const ExtensionContext& ctx) {
  return {terms_from_json(j, ctx, "sigma")};
}

json to_json(const PadicDistribution& d) {
  json w = json::array();
  for (const auto& x : d.weights()) w.push_back(to_json(x));
  return {{"weights", w}};
}

PadicDistribution distribution_from_json(const json& j, const PadicContext& ctx) {
  const json& w = field(j, "weights");
  if (!w.is_array()) bad("weights must be an array");
  std::vector<PadicNumber> ws;
  for (const auto& x : w) ws.push_back(padic_from_json(x, ctx));
  return PadicDistribution::validate(ctx, std::move(ws));
}

json to_json(const Sovm& s) {
  json effects = json::array();
  for (const auto& a : s.effects()) effects.push_back(to_json(a));
  return {{"context", to_json(s.effects().front().context())}, {"dim", s.dim()}, {"effects", effects}};
}

Sovm sovm_from_json(const json& j, const ExtensionContext* fallback) {
  std::optional<ExtensionContext> own;
  if (j.contains("context")) own = extension_from_json(j.at("context"));
  if (!own && !fallback) bad("SOVM has no context");
  const ExtensionContext& ctx = own ? *own : *fallback;
  const json& e = field(j, "effects");
  if (!e.is_array()) bad("effects must be an array");
  std::vector<MatrixOperator> effects;
  for (const auto& a : e) effects.push_back(operator_from_json(a, &ctx));
  return Sovm::make(ctx, std::move(effects), get_as<std::size_t>(field(j, "dim"), "dim"));
}

json to_json(const PairingReport& r) {
  json values = json::array();
  for (const auto& w : r.distribution.weights())
    values.push_back({{"value", to_json(w)}, {"in_unit_ball", w.abs_bound().value <= Norm::one(w.p())}});
  return {{"distribution", to_json(r.distribution)},
          {"effects", values},
          {"in_simplex", r.in_simplex},
          {"sup_norm", to_json(r.distribution.sup_norm())}};
}

}  // namespace padicqm
