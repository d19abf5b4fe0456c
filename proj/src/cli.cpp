#include "mmt/cli.hpp"

#include <CLI11.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <random>

#include "mmt/codegen.hpp"
#include "mmt/constructions.hpp"
#include "mmt/errors.hpp"
#include "mmt/parser.hpp"
#include "mmt/transforms.hpp"

namespace mmt::cli {

namespace {

constexpr std::string_view kBuiltinPrefix = "builtin:";

struct Options {
  std::string tensor;
  std::string compare;
  std::string lambda = "1";
  std::string out_path;
  std::string format = "text";
  std::size_t i = 1, j = 1, k = 1;
  bool lift = false;
  std::string iso;
  std::size_t element = 0;
  std::string group;
  bool merge = false;
  std::string construct_name;
  std::string shape;
  std::string multiple = "1";
  std::string style = "flat";
  bool count = false;
  std::size_t size = 4;
  std::uint64_t seed = 1;
  std::size_t threshold = 1;
  std::string family = "signed-perm";
};

Scalar lambda_of(const Options& o) { return parse_scalar(o.lambda); }

bool is_builtin(std::string_view ref) { return ref.substr(0, kBuiltinPrefix.size()) == kBuiltinPrefix; }

Tensor load_tensor(const std::string& ref, const Scalar& lambda) {
  if (is_builtin(ref)) return builtin_tensor(ref.substr(kBuiltinPrefix.size()), lambda);
  const std::string text = read_text_file(ref);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return read_tensor_file(text);
  return parse_trilinear(text, lambda);
}

// JSON documents of either kind, or a partition file, told apart by content.
bool is_partition_file(const std::string& text) { return text.find("\"mmt-orbit-partition\"") != std::string::npos; }

void emit_tensor(const Tensor& t, const Options& o, std::ostream& out) {
  if (!o.out_path.empty()) {
    write_text_file(o.out_path, write_tensor_file(t));
    out << "wrote " << o.out_path << " terms=" << decomposition_length(t) << "\n";
    return;
  }
  if (o.format == "json")
    out << write_tensor_file(t);
  else
    out << print_trilinear(t) << "\n";
}

std::string triple_text(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
}

std::string monomial_text(const Monomial& m) { return triple_text(m.i, m.j, m.k); }

Matrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  Matrix m(n, n);
  for (std::size_t r = 1; r <= n; ++r)
    for (std::size_t c = 1; c <= n; ++c) {
      m(r, c) = Scalar(num(rng), den(rng));
      m(r, c).canonicalize();
    }
  return m;
}

// "233,332" -> {(2,3,3), (3,3,2)}
std::vector<Monomial> parse_shape(const std::string& text) {
  std::vector<Monomial> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (item.size() != 3 || item.find_first_not_of("123456789") != std::string::npos)
      throw ParseError("shape entries are three index digits, e.g. 233");
    out.push_back({std::size_t(item[0] - '0'), std::size_t(item[1] - '0'), std::size_t(item[2] - '0')});
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_show(const Options& o, std::ostream& out) {
  emit_tensor(load_tensor(o.tensor, lambda_of(o)), o, out);
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Tensor t = load_tensor(o.tensor, lambda_of(o));
  if (!is_matmul_tensor(t)) {
    out << "NOT A MULTIPLICATION TENSOR\n";
    return kFailed;
  }
  out << "VERIFIED n=" << t.dim() << " terms=" << decomposition_length(t) << "\n";
  return kOk;
}

int cmd_type(const Options& o, std::ostream& out) {
  const TensorType type = tensor_type(load_tensor(o.tensor, lambda_of(o)));
  out << "type " << to_string(type) << " terms=" << type.total() << "\n";
  if (o.compare.empty()) return kOk;
  const TensorType other = tensor_type(load_tensor(o.compare, lambda_of(o)));
  if (type == other) {
    out << "TYPE MATCH\n";
    return kOk;
  }
  out << "compare " << to_string(other) << "\nTYPE MISMATCH\n";
  return kFailed;
}

int cmd_project(const Options& o, std::ostream& out, bool zero) {
  const Tensor t = load_tensor(o.tensor, lambda_of(o));
  const IndexTriple idx{o.i, o.j, o.k};
  emit_tensor(zero ? tensor_zero(t, idx) : o.lift ? tensor_lift(t, idx) : tensor_project(t, idx), o, out);
  return kOk;
}

Isotropy load_isotropy(const Options& o) {
  if (o.iso == "builtin:winograd") return winograd_isotropy(lambda_of(o));
  if (is_builtin(o.iso)) throw ValueError("unknown builtin isotropy '" + o.iso + "'");
  const TensorDocument doc = read_tensor_document(read_text_file(o.iso));
  if (doc.kind != DocumentKind::IsotropyGroup || doc.terms.empty())
    throw ParseError("isotropy file must be a non-empty isotropy-group document");
  const std::size_t e = o.element == 0 ? doc.terms.size() : o.element;
  if (e > doc.terms.size()) throw ValueError("element index out of range");
  const auto& triple = doc.terms[e - 1];
  return Isotropy(triple.a, triple.b, triple.c);
}

int cmd_act(const Options& o, std::ostream& out) {
  emit_tensor(act(load_isotropy(o), load_tensor(o.tensor, lambda_of(o))), o, out);
  return kOk;
}

IsotropyGroup load_group(const std::string& ref) {
  if (ref == "builtin:klein") return klein_group();
  if (is_builtin(ref)) throw ValueError("no explicit elements for group '" + ref + "'");
  return read_isotropy_group(read_text_file(ref));
}

int cmd_orbit(const Options& o, std::ostream& out) {
  const Tensor sum = orbit_sum(load_group(o.group), load_tensor(o.tensor, lambda_of(o)));
  emit_tensor(o.merge ? merge_shared_factors(sum) : sum, o, out);
  return kOk;
}

int cmd_merge(const Options& o, std::ostream& out) {
  emit_tensor(merge_shared_factors(load_tensor(o.tensor, lambda_of(o))), o, out);
  return kOk;
}

int cmd_construct(const Options& o, std::ostream& out) {
  if (o.construct_name != "laderman-variant" && o.construct_name != "winograd")
    throw ValueError("construct supports laderman-variant and winograd");
  const Scalar lambda = lambda_of(o);
  const Tensor t = builtin_tensor(o.construct_name, lambda);
  if (!o.out_path.empty()) {
    write_text_file(o.out_path, write_tensor_file(t, lambda));
    out << "wrote " << o.out_path << " ";
  } else {
    out << print_trilinear(t) << "\n";
  }
  out << "terms=" << decomposition_length(t) << (is_matmul_tensor(t) ? " verified" : " unverified") << "\n";
  return kOk;
}

int cmd_correction(const Options& o, std::ostream& out) {
  const Scalar multiple = parse_scalar(o.multiple);
  CorrectionShape shape;
  std::function<CorrectionResult(const CorrectionShape&)> solve;
  if (o.group == "builtin:klein") {
    shape = klein_correction_shape();
    solve = [&](const CorrectionShape& s) { return correction_term(klein_group(), s, multiple); };
  } else if (o.group == "builtin:cyclic") {
    shape = cyclic_correction_shape();
    solve = [&](const CorrectionShape& s) { return correction_term(cyclic_partition(), s, multiple); };
  } else if (is_builtin(o.group)) {
    throw ValueError("unknown builtin group '" + o.group + "'");
  } else {
    const std::string text = read_text_file(o.group);
    shape = klein_correction_shape();
    if (is_partition_file(text)) {
      auto p = std::make_shared<MonomialOrbitPartition>(read_orbit_partition(text));
      solve = [p, &multiple](const CorrectionShape& s) { return correction_term(*p, s, multiple); };
    } else {
      auto g = std::make_shared<IsotropyGroup>(read_isotropy_group(text));
      solve = [g, &multiple](const CorrectionShape& s) { return correction_term(*g, s, multiple); };
    }
  }
  if (!o.shape.empty()) shape = {parse_shape(o.shape), {}};

  CorrectionResult r;
  try {
    r = solve(shape);
  } catch (const ValueError& e) {
    out << "IDENTITY FAILS: " << e.what() << "\n";
    return kFailed;
  }
  for (std::size_t s = 0; s < shape.representatives.size(); ++s) {
    out << monomial_text(shape.representatives[s]) << " coefficient=" << to_string(r.coefficients[s]);
    if (s < r.printed.size()) out << " printed=" << to_string(r.printed[s]);
    out << "\n";
  }
  for (std::size_t s : r.discrepancies())
    out << "DISCREPANCY " << monomial_text(shape.representatives[s]) << " derived=" << to_string(r.coefficients[s])
        << " printed=" << to_string(r.printed[s]) << "\n";
  out << "IDENTITY HOLDS\n";
  return kOk;
}

int cmd_codegen(const Options& o, std::ostream& out) {
  const Schedule s = extract_schedule(load_tensor(o.tensor, lambda_of(o)));
  if (o.count) {
    out << to_string(op_count(s)) << "\n";
    return kOk;
  }
  out << emit_code(s, o.style == "annotated" ? CodeStyle::Annotated : CodeStyle::Flat);
  return kOk;
}

int cmd_mul(const Options& o, std::ostream& out) {
  if (o.size == 0) throw ValueError("size must be positive");
  const Tensor base = load_tensor(o.tensor, lambda_of(o));
  std::mt19937_64 rng(o.seed);
  const Matrix a = random_matrix(o.size, rng);
  const Matrix b = random_matrix(o.size, rng);
  const RecursiveProduct r = recursive_multiply(base, a, b, o.threshold);
  const bool match = r.product == schoolbook_multiply(a, b);
  out << "size=" << o.size << " multiplications=" << r.multiplications << (match ? " MATCH" : " MISMATCH") << "\n";
  return match ? kOk : kFailed;
}

int cmd_stabilizer_search(const Options& o, std::ostream& out) {
  if (o.family != "signed-perm") throw ValueError("unknown candidate family '" + o.family + "'");
  const StabilizerSearchResult r = monomial_stabilizer_search(load_tensor(o.tensor, lambda_of(o)));
  out << "candidates=" << r.candidates_checked << " stabilizers=" << r.stabilizers.size() << "\n";
  for (const auto& triple : r.stabilizers) {
    const Isotropy g = triple.to_isotropy();
    out << to_string(g.g1()) << " " << to_string(g.g2()) << " " << to_string(g.g3()) << "\n";
  }
  return kOk;
}

int cmd_census(const Options& o, std::ostream& out) {
  const Tensor t = load_tensor(o.tensor, lambda_of(o));
  const std::size_t n = t.dim();
  if (n < 2) throw DimensionError("census needs dimension at least 2");
  std::map<std::size_t, std::vector<std::string>> by_length;
  bool all_verified = true;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t k = 1; k <= n; ++k) {
        const Tensor p = tensor_project(t, {i, j, k});
        const Tensor merged = merge_shared_factors(p);
        const bool ok = is_matmul_tensor(merged);
        all_verified = all_verified && ok;
        const std::size_t len = decomposition_length(merged);
        by_length[len].push_back(triple_text(i, j, k));
        out << triple_text(i, j, k) << " raw=" << decomposition_length(p) << " merged=" << len
            << (ok ? " verified" : " NOT VERIFIED") << "\n";
      }
  for (const auto& [len, triples] : by_length) {
    out << len << "-term projections: " << triples.size() << " ";
    for (std::size_t q = 0; q < triples.size(); ++q) out << (q ? " " : "") << triples[q];
    out << "\n";
  }
  return all_verified ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-arithmetic workbench for matrix-multiplication tensors", "mmt"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto tensor_opt = [&](CLI::App* sub) { sub->add_option("--tensor", o.tensor, "builtin:<name> or file")->required(); };
  auto lambda_opt = [&](CLI::App* sub) { sub->add_option("--lambda", o.lambda, "parameter as p or p/q"); };
  auto output_opts = [&](CLI::App* sub) {
    sub->add_option("--out", o.out_path, "write a JSON tensor file");
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  auto index_opts = [&](CLI::App* sub) {
    sub->add_option("--i", o.i)->required();
    sub->add_option("--j", o.j)->required();
    sub->add_option("--k", o.k)->required();
  };
  auto command = [&](const char* name, const char* help, std::function<int()> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };

  auto* show = command("show", "print a tensor", [&] { return cmd_show(o, out); });
  tensor_opt(show), lambda_opt(show), output_opts(show);

  auto* verify = command("verify", "check the multiplication identity", [&] { return cmd_verify(o, out); });
  tensor_opt(verify), lambda_opt(verify);

  auto* type = command("type", "factor-rank type", [&] { return cmd_type(o, out); });
  tensor_opt(type), lambda_opt(type);
  type->add_option("--compare", o.compare, "second tensor");

  auto* project = command("project", "delete (or insert with --lift) row/column patterns",
                          [&] { return cmd_project(o, out, false); });
  tensor_opt(project), lambda_opt(project), output_opts(project), index_opts(project);
  project->add_flag("--lift", o.lift);

  auto* zero = command("zero", "zero row/column patterns", [&] { return cmd_project(o, out, true); });
  tensor_opt(zero), lambda_opt(zero), output_opts(zero), index_opts(zero);

  auto* actc = command("act", "apply an isotropy", [&] { return cmd_act(o, out); });
  tensor_opt(actc), lambda_opt(actc), output_opts(actc);
  actc->add_option("--iso", o.iso, "builtin:winograd or isotropy-group file")->required();
  actc->add_option("--element", o.element, "1-based element of the file (default: last)");

  auto* orbit = command("orbit", "sum over a group", [&] { return cmd_orbit(o, out); });
  tensor_opt(orbit), lambda_opt(orbit), output_opts(orbit);
  orbit->add_option("--group", o.group, "builtin:klein or isotropy-group file")->required();
  orbit->add_flag("--merge", o.merge, "merge terms sharing two factors");

  auto* merge = command("merge", "merge terms sharing two factors", [&] { return cmd_merge(o, out); });
  tensor_opt(merge), lambda_opt(merge), output_opts(merge);

  auto* construct = command("construct", "build laderman-variant or winograd", [&] { return cmd_construct(o, out); });
  construct->add_option("name", o.construct_name)->required();
  lambda_opt(construct);
  construct->add_option("--out", o.out_path, "write a JSON tensor file");

  auto* correction = command("correction", "solve the correction term", [&] { return cmd_correction(o, out); });
  correction->add_option("--group", o.group, "builtin:klein, builtin:cyclic, group or partition file")->required();
  correction->add_option("--shape", o.shape, "representatives, e.g. 233,332,323,333");
  correction->add_option("--multiple", o.multiple, "multiple of the classical tensor");

  auto* codegen = command("codegen", "emit a straight-line schedule", [&] { return cmd_codegen(o, out); });
  tensor_opt(codegen), lambda_opt(codegen);
  codegen->add_option("--style", o.style)->check(CLI::IsMember({"flat", "annotated"}));
  codegen->add_flag("--count", o.count, "print operation counts only");

  auto* mul = command("mul", "recursive multiply of random rational matrices", [&] { return cmd_mul(o, out); });
  mul->add_option("--base", o.tensor, "base tensor")->required();
  lambda_opt(mul);
  mul->add_option("--size", o.size);
  mul->add_option("--seed", o.seed);
  mul->add_option("--threshold", o.threshold);

  auto* search = command("stabilizer-search", "signed-permutation stabilizers",
                         [&] { return cmd_stabilizer_search(o, out); });
  tensor_opt(search), lambda_opt(search);
  search->add_option("--family", o.family)->check(CLI::IsMember({"signed-perm"}));

  auto* census = command("census", "project at every index triple", [&] { return cmd_census(o, out); });
  tensor_opt(census), lambda_opt(census);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace mmt::cli
