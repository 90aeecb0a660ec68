#include "padicqm/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <thread>

#include "padicqm/json_io.hpp"

namespace padicqm {

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitParse = 3;
constexpr long kSearchBound = 64;

struct Options {
  std::uint64_t p = 0;
  std::string mu;
  int precision = 10;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out;
  std::vector<std::string> files;
  std::string value;
  std::string branch = "principal";
  bool symmetric = false;
  int K = 1;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

PadicContext base_context(const Options& o) {
  if (o.p == 0) throw Error(ErrorCode::InvalidPrime, "--p is required");
  return PadicContext(o.p, o.precision);
}

ExtensionContext extension_context(const Options& o) {
  PadicContext base = base_context(o);
  if (o.mu.empty()) throw Error(ErrorCode::ParseError, "--mu is required");
  return ExtensionContext(padic_from_json(json(o.mu), base));
}

// Context from --p/--mu when both are given, for files without an embedded one.
std::optional<ExtensionContext> optional_context(const Options& o) {
  if (o.p == 0 && o.mu.empty()) return std::nullopt;
  return extension_context(o);
}

MatrixOperator load_operator(const std::string& path, const Options& o) {
  auto ctx = optional_context(o);
  return operator_from_json(read_json_file(path), ctx ? &*ctx : nullptr);
}

json norm_or_null(const MatrixOperator& a) {
  try {
    return to_json(operator_norm(a));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TailDominates) throw;
    return nullptr;
  }
}

json cmd_field(const Options& o) {
  ExtensionContext ctx = extension_context(o);
  const PadicContext& base = ctx.base();
  json classes = json::array();
  for (const auto& c : square_classes(base)) {
    json row{{"representative", c.representative}, {"label", c.label}};
    if (c.representative != 1)
      row["ramified"] = ExtensionContext(base, static_cast<long>(c.representative)).is_ramified();
    classes.push_back(row);
  }
  int nu = isotropy_index(ctx, kSearchBound);
  auto witness = find_isotropic(ctx, static_cast<std::size_t>(nu), kSearchBound);
  json r{{"p", o.p},
         {"precision", o.precision},
         {"mu", to_json(ctx.mu())},
         {"class", ctx.mu_class().label},
         {"ramified", ctx.is_ramified()},
         {"nu", nu},
         {"square_classes", classes},
         {"extensions", classes.size() - 1}};
  r["eta"] = o.p == 2 ? json(nullptr) : json(eta_of(o.p));
  r["witness"] = witness ? to_json(*witness) : json(nullptr);
  return r;
}

json cmd_sqrt(const Options& o) {
  PadicContext base = base_context(o);
  PadicNumber a = padic_from_json(json(o.value), base);
  if (o.branch != "principal" && o.branch != "other")
    throw Error(ErrorCode::ParseError, "--branch must be 'principal' or 'other'");
  Branch b = o.branch == "principal" ? Branch::Principal : Branch::Other;
  PadicNumber root = sqrt(a, b);
  return {{"input", to_json(a)},
          {"branch", o.branch},
          {"root", to_json(root)},
          {"check", eq_mod_precision(root * root, a)}};
}

json classify_report(const MatrixOperator& a) {
  json r{{"classification", to_json(classify(a))}, {"norm", norm_or_null(a)}};
  r["kind"] = a.is_block_finite() ? "block_finite" : "generator";
  if (a.is_block_finite()) {
    r["unitary"] = is_unitary(a);
    r["ip_preserving"] = is_ip_preserving(a);
  }
  return r;
}

// Classifies each file on its own; with several files and --jobs > 1 the
// work is spread over threads but the output keeps the input order.
std::pair<json, int> cmd_classify(const Options& o, std::ostream& err) {
  const auto& files = o.files;
  std::vector<json> reports(files.size());
  std::vector<int> codes(files.size(), 0);
  std::vector<std::string> messages(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      try {
        reports[i] = classify_report(load_operator(files[i], o));
      } catch (const Error& e) {
        codes[i] = e.code() == ErrorCode::ParseError ? kExitParse : kExitValidation;
        messages[i] = files[i] + ": " + e.what();
      } catch (const json::exception& e) {
        codes[i] = kExitParse;
        messages[i] = files[i] + ": " + e.what();
      }
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = 0;
  for (std::size_t i = 0; i < files.size(); ++i)
    if (codes[i] != 0) {
      err << messages[i] << '\n';
      if (code == 0) code = codes[i];
    }
  if (code != 0) return {nullptr, code};
  if (files.size() == 1) return {reports[0], 0};
  json all = json::array();
  for (std::size_t i = 0; i < files.size(); ++i) {
    reports[i]["file"] = files[i];
    all.push_back(reports[i]);
  }
  return {all, 0};
}

json cmd_trace(const Options& o) {
  TraceResult t = trace(load_operator(o.files.at(0), o));
  json r{{"trace", to_json(t.value)}};
  if (t.tail_valuation) r["tail_valuation"] = rational_to_json(*t.tail_valuation);
  return r;
}

json cmd_decompose(const Options& o) {
  MatrixOperator a = load_operator(o.files.at(0), o);
  json r = o.symmetric ? to_json(symmetric_decomposition(a)) : to_json(canonical_decomposition(a));
  r["kind"] = o.symmetric ? "symmetric" : "canonical";
  return r;
}

json cmd_unitary(const Options& o) {
  MatrixOperator a = load_operator(o.files.at(0), o);
  return {{"unitary", is_unitary(a)}, {"ip_preserving", is_ip_preserving(a)}, {"norm", to_json(operator_norm(a))}};
}

json cmd_pair(const Options& o) {
  if (o.files.size() != 2) throw Error(ErrorCode::ParseError, "pair needs an SOVM file and a state file");
  auto ctx = optional_context(o);
  Sovm sovm = sovm_from_json(read_json_file(o.files[0]), ctx ? &*ctx : nullptr);
  const ExtensionContext& sctx = sovm.effects().front().context();
  StatisticalOperator s = StatisticalOperator::make(operator_from_json(read_json_file(o.files[1]), &sctx));
  json r = to_json(pair(sovm, s));
  r["contractive"] = sovm.contractive();
  r["density"] = s.is_density();
  return r;
}

json cmd_counterexample(const Options& o) {
  PadicContext base = base_context(o);
  ExtensionContext ctx = o.mu.empty()
                             ? ExtensionContext(base, static_cast<long>(eta_of(o.p)))
                             : ExtensionContext(padic_from_json(json(o.mu), base));
  auto sols = four_square_solutions(o.p, o.K, 64);
  MatrixOperator a = four_squares_operator(ctx, o.K, o.seed);
  return {{"K", o.K},
          {"seed", o.seed},
          {"solution", sols.at(o.seed % sols.size())},
          {"operator", to_json(a)},
          {"unitary", is_unitary(a)},
          {"ip_preserving", is_ip_preserving(a)},
          {"norm", to_json(operator_norm(a))}};
}

void emit(const json& j, const Options& o, std::ostream& out) {
  std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error(ErrorCode::ParseError, "cannot write '" + o.out + "'");
  f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"p-adic operator calculus over quadratic extensions"};
  app.require_subcommand(1);
  app.add_option("--p", o.p, "prime");
  app.add_option("--mu", o.mu, "non-square generating the extension, e.g. 5 or -1 or 3/2");
  app.add_option("--precision", o.precision, "digits carried by approximate values (>= 5)");
  app.add_option("--seed", o.seed, "selects among solutions of bounded searches");
  app.add_option("--jobs", o.jobs, "threads for batch classification")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "write the JSON report here instead of stdout");
  app.fallthrough();

  auto* field = app.add_subcommand("field", "square classes, ramification and isotropy of Q_p(sqrt mu)");
  auto* sq = app.add_subcommand("sqrt", "square root of a rational in Q_p");
  sq->add_option("value", o.value, "rational, e.g. 7 or -3/5")->required();
  sq->add_option("--branch", o.branch, "principal or other");
  auto* cls = app.add_subcommand("classify", "classify operators read from JSON files");
  cls->add_option("files", o.files)->required();
  auto* tr = app.add_subcommand("trace", "trace of a trace-class operator");
  tr->add_option("file", o.files)->required()->expected(1);
  auto* dec = app.add_subcommand("decompose", "canonical (or symmetric) decomposition");
  dec->add_option("file", o.files)->required()->expected(1);
  dec->add_flag("--symmetric", o.symmetric);
  auto* uc = app.add_subcommand("unitary-check", "unitarity and inner-product preservation of a block");
  uc->add_option("file", o.files)->required()->expected(1);
  auto* pr = app.add_subcommand("pair", "distribution {tr(A_i S)} of an SOVM and a statistical operator");
  pr->add_option("files", o.files, "SOVM file, then state file")->required()->expected(2);
  auto* ce = app.add_subcommand("counterexample", "inner-product preserving non-unitary 4x4 operator");
  ce->add_option("--K", o.K, "exponent K in sum x_i^2 = p^(2K)");

  std::vector<std::string> argv_s{"padicqm"};
  argv_s.insert(argv_s.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_s) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  try {
    json result;
    if (*field) result = cmd_field(o);
    else if (*sq) result = cmd_sqrt(o);
    else if (*cls) {
      auto [r, code] = cmd_classify(o, err);
      if (code != 0) return code;
      result = std::move(r);
    } else if (*tr) result = cmd_trace(o);
    else if (*dec) result = cmd_decompose(o);
    else if (*uc) result = cmd_unitary(o);
    else if (*pr) result = cmd_pair(o);
    else result = cmd_counterexample(o);
    emit(result, o, out);
    return 0;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.code() == ErrorCode::ParseError ? kExitParse : kExitValidation;
  } catch (const json::exception& e) {
    err << "ParseError: " << e.what() << '\n';
    return kExitParse;
  }
}

}  // namespace padicqm
