#include <doctest.h>

#include "helpers.hpp"

using namespace catt2hott;
using namespace catt2hott::catt;
using namespace catt2hott::surface;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const CheckError& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("parsing declarations") {
  auto decls = parse("coh comp (x : *) (y : *) (f : x -> y) (z : *) (g : y -> z) : x -> z");
  REQUIRE(decls.size() == 1);
  CHECK(decls[0].kind == SurfaceDecl::Kind::Coh);
  CHECK(decls[0].name == "comp");
  REQUIRE(decls[0].telescope.size() == 5);
  CHECK(decls[0].telescope[2].names == std::vector<std::string>{"f"});
  CHECK(std::holds_alternative<SurfaceExpr::ArrowTy>(decls[0].ty->node));

  // grouped binders share a type
  auto grouped = parse("coh c (x y z : *) (f : x -> y) (g : y -> z) : x -> z");
  REQUIRE(grouped[0].telescope.size() == 3);
  CHECK(grouped[0].telescope[0].names == (std::vector<std::string>{"x", "y", "z"}));

  // a let with a nested application body
  auto lets = parse(
      "let lcomp (x y z w : *) (f : x -> y) (g : y -> z) (h : z -> w) : x -> w"
      " = comp (comp f g) h");
  REQUIRE(lets.size() == 1);
  CHECK(lets[0].kind == SurfaceDecl::Kind::Let);
  const auto* app = std::get_if<SurfaceExpr::App>(&lets[0].body->node);
  REQUIRE(app != nullptr);
  CHECK(app->head == "comp");
  REQUIRE(app->args.size() == 2);
  CHECK(std::holds_alternative<SurfaceExpr::App>(app->args[0]->node));

  CHECK(kind_of([] { parse("coh bad (x : *) :"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse("coh bad : x -> y"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse("def nope = x"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("comments and whitespace") {
  auto decls = parse("# leading comment\ncoh idc (x : *) # trailing\n : x -> x\n# done\n");
  REQUIRE(decls.size() == 1);
  CHECK(decls[0].name == "idc");
}

TEST_CASE("meta-operation syntax is rejected with a diagnostic") {
  auto expect_meta = [](const std::string& src, const std::string& needle) {
    try {
      Environment env;
      for (const auto& d : parse(src)) process_decl(env, d);
      FAIL("expected MetaOperationUnsupported for: " << src);
    } catch (const CheckError& e) {
      CHECK(e.kind() == ErrorKind::MetaOperationUnsupported);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
      CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
  };
  expect_meta("let a = comp _ g", "hole '_'");
  expect_meta("let a = op { 1 } comp", "opposite 'op'");
  expect_meta("let a = I f", "inverse/cancellation 'I'");
  expect_meta("let a = U f", "inverse/cancellation 'U'");
  expect_meta("let a = f [ g ]", "functorialisation bracket");
  expect_meta("let a = { 1 }", "opposite block");
  expect_meta("coh c (x (f) y : *) : x -> y", "abbreviated ps-context binder");
}

TEST_CASE("the meta-operation corpus file is rejected at its first hole") {
  std::string src = testutil::slurp(testutil::data_file("eckmann_hilton.catt"));
  try {
    process_file(src);
    FAIL("expected MetaOperationUnsupported");
  } catch (const CheckError& e) {
    CHECK(e.kind() == ErrorKind::MetaOperationUnsupported);
    CHECK(std::string(e.what()).find("hole '_'") != std::string::npos);
  }
}

TEST_CASE("implicit argument masks") {
  // boundary variables (those appearing in another declared type) are implicit
  CattCtx g2 = testutil::chain_ctx(3);  // p0 p1 e0 p2 e1
  std::vector<bool> mask = infer_implicit_mask(g2);
  CHECK(mask == (std::vector<bool>{true, true, false, true, false}));

  CattCtx pt;
  pt.decls.emplace_back("x", mk_obj());
  CHECK(infer_implicit_mask(pt) == std::vector<bool>{false});

  // W: x,y,f,g implicit (endpoints of a or h), the top cells a,h explicit
  CattCtx w;
  w.decls.emplace_back("x", mk_obj());
  w.decls.emplace_back("y", mk_obj());
  w.decls.emplace_back("f", mk_arr(mk_obj(), mk_var("x"), mk_var("y")));
  w.decls.emplace_back("g", mk_arr(mk_obj(), mk_var("x"), mk_var("y")));
  w.decls.emplace_back("a", mk_arr(mk_arr(mk_obj(), mk_var("x"), mk_var("y")), mk_var("f"),
                                   mk_var("g")));
  w.decls.emplace_back("z", mk_obj());
  w.decls.emplace_back("h", mk_arr(mk_obj(), mk_var("y"), mk_var("z")));
  CHECK(infer_implicit_mask(w) ==
        (std::vector<bool>{true, true, true, true, false, true, false}));
}

TEST_CASE("elaboration of applications") {
  const auto& env = testutil::corpus_env();
  Elaborator elab(env);
  CattCtx g3 = testutil::chain_ctx(4);  // p0..p3, e0..e2
  std::size_t comp = *env.lookup("comp");

  // implicit endpoints are recovered from the argument types
  TermPtr t = elab.elaborate(g3, parse("let t = comp e0 e1")[0].body);
  const auto* app = as_coh_app(t);
  REQUIRE(app != nullptr);
  CHECK(app->coh == comp);
  CHECK(term_eq(*sub_lookup(app->sub, "x"), mk_var("p0")));
  CHECK(term_eq(*sub_lookup(app->sub, "y"), mk_var("p1")));
  CHECK(term_eq(*sub_lookup(app->sub, "z"), mk_var("p2")));
  CHECK(type_eq(check_term(env, g3, t),
                mk_arr(mk_obj(), mk_var("p0"), mk_var("p2"))));

  // nested application; lets are transparent, so lcomp's body must equal
  // the directly elaborated nesting
  TermPtr nested = elab.elaborate(g3, parse("let t = comp (comp e0 e1) e2")[0].body);
  testutil::Judgement lcomp = testutil::judgement_of(env, *env.lookup("lcomp"));
  CattSub rename;
  int pi = 0, ei = 0;
  for (const auto& [x, ty] : lcomp.ctx.decls)
    rename.bindings.emplace_back(
        x, mk_var(is_obj(ty) ? "p" + std::to_string(pi++) : "e" + std::to_string(ei++)));
  CHECK(term_eq(nested, apply_sub_term(lcomp.tm, rename)));

  // full-positional mode: all five arguments given explicitly
  TermPtr full = elab.elaborate(g3, parse("let t = comp p0 p1 e0 p2 e1")[0].body);
  CHECK(term_eq(full, elab.elaborate(g3, parse("let t = comp e0 e1")[0].body)));

  // non-composable arguments
  CHECK(kind_of([&] { elab.elaborate(g3, parse("let t = comp e0 e0")[0].body); }) ==
        ErrorKind::ElaborationTypeMismatch);
  // wrong arity
  CHECK(kind_of([&] { elab.elaborate(g3, parse("let t = comp e0")[0].body); }) ==
        ErrorKind::ArityMismatch);
  // a plain variable must not be applied
  CHECK(kind_of([&] { elab.elaborate(g3, parse("let t = e0 e1")[0].body); }) ==
        ErrorKind::ArityMismatch);
  CHECK(kind_of([&] { elab.elaborate(g3, parse("let t = nosuch e0")[0].body); }) ==
        ErrorKind::UnknownCoherence);
}

TEST_CASE("type elaboration infers the arrow base") {
  const auto& env = testutil::corpus_env();
  Elaborator elab(env);
  CattCtx g2 = testutil::chain_ctx(3);
  TypePtr ty = elab.elaborate_type(g2, parse("coh c (x : *) : p0 -> p2")[0].ty);
  CHECK(type_eq(ty, mk_arr(mk_obj(), mk_var("p0"), mk_var("p2"))));

  // a 2-cell type between composites: base is inferred as p0 -> p2
  TypePtr ty2 =
      elab.elaborate_type(g2, parse("coh c (x : *) : comp e0 e1 -> comp e0 e1")[0].ty);
  CHECK(dim(ty2) == 1);

  CHECK(kind_of([&] {
          elab.elaborate_type(g2, parse("coh c (x : *) : p0 -> e0")[0].ty);
        }) == ErrorKind::SourceTargetTypeMismatch);
}

TEST_CASE("whole-file processing builds the corpus environment") {
  const auto& env = testutil::corpus_env();
  CHECK(env.size() >= 30);
  CHECK(env.lookup("comp").has_value());
  CHECK(env.lookup("assoc").has_value());
  CHECK_FALSE(env.lookup("nosuch").has_value());
}

TEST_CASE("printing round-trips through full-positional elaboration") {
  const auto& env = testutil::corpus_env();
  Elaborator elab(env);
  testutil::PathGen gen(env, 314);
  for (int trial = 0; trial < 100; ++trial) {
    int n = gen.pick(2, 5);
    CattCtx ctx = testutil::chain_ctx(n);
    TermPtr t = gen.path(0, n - 1);
    std::string printed = print_term(env, t);
    auto reparsed = parse("let t = " + printed);
    TermPtr back = elab.elaborate(ctx, reparsed[0].body);
    CHECK(term_eq(back, t));
  }
}
