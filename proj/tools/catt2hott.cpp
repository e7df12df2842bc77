// Batch driver: check a file of coherence/let declarations, or translate
// selected entries into the internal MLTT fragment and emit them.
//
// Exit codes: 0 success, 1 user error (bad input, unknown name, ill-typed
// declaration), 2 internal invariant breach (a translated term the kernel
// refused, which indicates a defect in this program, not in the input).

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "catt2hott/emit.hpp"
#include "catt2hott/errors.hpp"
#include "catt2hott/surface.hpp"
#include "catt2hott/translate.hpp"

namespace {

using namespace catt2hott;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::SyntaxError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Entry {
  std::string name;
  catt::CattCtx ctx;
  catt::TermPtr tm;
  catt::TypePtr ty;
};

// The checked judgement behind an environment entry: a coherence is applied
// to its own context (identity substitution), a let is its body.
Entry judgement_of(const catt::Environment& env, std::size_t i) {
  Entry e;
  e.name = env.name_of(i);
  if (const auto* coh = std::get_if<catt::Coherence>(&env.entry(i))) {
    e.ctx = coh->ctx;
    e.ty = coh->ty;
    catt::CattSub id;
    for (const auto& [x, _] : e.ctx.decls) id.bindings.emplace_back(x, catt::mk_var(x));
    e.tm = catt::mk_coh_app(i, std::move(id));
  } else {
    const auto* let = std::get_if<catt::LetDef>(&env.entry(i));
    e.ctx = let->ctx;
    e.ty = let->ty;
    e.tm = let->body;
  }
  return e;
}

int run_check(const std::string& path, bool keep_going) {
  std::string text = slurp(path);
  auto decls = surface::parse(text);
  catt::Environment env;
  int failures = 0;
  for (const auto& d : decls) {
    try {
      surface::process_decl(env, d);
    } catch (const CheckError& e) {
      std::cerr << path << ":" << d.line << ":" << d.col << ": " << e.what() << "\n";
      if (!keep_going) return 1;
      ++failures;
    }
  }
  std::cout << "checked " << env.size() << " entries\n";
  return failures == 0 ? 0 : 1;
}

int run_translate(const std::string& path, std::vector<std::string> names,
                  const std::string& format, const std::string& out_path, bool stats,
                  bool verify) {
  std::string text = slurp(path);
  catt::Environment env;
  for (const auto& d : surface::parse(text)) surface::process_decl(env, d);

  std::vector<std::size_t> selected;
  if (names.empty()) {
    for (std::size_t i = 0; i < env.size(); ++i) selected.push_back(i);
  } else {
    for (const auto& n : names) {
      auto i = env.lookup(n);
      if (!i) fail(ErrorKind::UnknownName, "no entry named '" + n + "' in " + path);
      selected.push_back(*i);
    }
  }

  emit::EmitFormat fmt =
      format == "vernacular" ? emit::EmitFormat::Vernacular : emit::EmitFormat::Internal;

  std::string out;
  out += fmt == emit::EmitFormat::Internal ? std::string(emit::internal_header()) + "\n"
                                           : emit::vernacular_preamble();
  translate::Translator tr(env, /*verify_elim_subs=*/verify);
  for (std::size_t i : selected) {
    Entry e = judgement_of(env, i);
    auto res = tr.translate_judgement(e.ctx, e.tm, e.ty);
    out += emit::emit(e.name, res, fmt);
    out += "\n";
    if (stats) {
      auto m = emit::measure(res);
      std::cerr << e.name << ": node_count=" << m.node_count
                << " printed_size=" << m.printed_size << "\n";
    }
  }

  if (out_path.empty()) {
    std::cout << out;
  } else {
    std::ofstream o(out_path, std::ios::binary);
    if (!o) fail(ErrorKind::SyntaxError, "cannot write '" + out_path + "'");
    o << out;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"checker and MLTT translator for coherence declarations"};
  app.require_subcommand(1);

  std::string check_path;
  bool keep_going = false;
  auto* check = app.add_subcommand("check", "type-check a declaration file");
  check->add_option("file", check_path, "input file")->required();
  check->add_flag("--keep-going", keep_going, "report all failing declarations, not just the first");

  std::string tr_path, format = "internal", out_path;
  std::vector<std::string> names;
  bool stats = false, no_verify = false;
  auto* translate = app.add_subcommand("translate", "translate entries to closed MLTT terms");
  translate->add_option("file", tr_path, "input file")->required();
  translate->add_option("--names", names, "entries to translate (default: all)");
  translate->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"internal", "vernacular"}));
  translate->add_option("--out", out_path, "output file (default: stdout)");
  translate->add_flag("--stats", stats, "print node_count and printed_size per entry");
  // Profiling-only escape hatch; kernel verification of emitted judgements
  // itself is never skipped.
  translate->add_flag("--unsafe-skip-sub-checks", no_verify)->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(check_path, keep_going);
    return run_translate(tr_path, names, format, out_path, stats, !no_verify);
  } catch (const catt2hott::CheckError& e) {
    std::cerr << "error: " << e.what() << "\n";
    using catt2hott::ErrorKind;
    bool internal = e.kind() == ErrorKind::KernelRejected || e.kind() == ErrorKind::Internal;
    return internal ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
