#include <doctest.h>

#include "helpers.hpp"

#include "catt2hott/gsett.hpp"

using namespace catt2hott;
using namespace catt2hott::catt;
using catt2hott::gsett::check_ctx;
using catt2hott::gsett::check_sub;
using catt2hott::gsett::check_type;
using catt2hott::gsett::check_var;

namespace {

TypePtr arr01(const Var& a, const Var& b) { return mk_arr(mk_obj(), mk_var(a), mk_var(b)); }

CattCtx loop_ctx() {  // (x:⋆, f : x -> x)
  CattCtx ctx;
  ctx.decls.emplace_back("x", mk_obj());
  ctx.decls.emplace_back("f", arr01("x", "x"));
  return ctx;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const CheckError& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("context checking") {
  CHECK_NOTHROW(check_ctx(loop_ctx()));

  CattCtx bad;
  bad.decls.emplace_back("f", arr01("x", "y"));
  CHECK(kind_of([&] { check_ctx(bad); }) == ErrorKind::UnboundVariable);

  // 2-cell context: x, f : x -> x, alpha : f -> f
  CattCtx two = loop_ctx();
  two.decls.emplace_back("alpha", mk_arr(arr01("x", "x"), mk_var("f"), mk_var("f")));
  CHECK_NOTHROW(check_ctx(two));

  CattCtx dup;
  dup.decls.emplace_back("x", mk_obj());
  dup.decls.emplace_back("x", mk_obj());
  CHECK(kind_of([&] { check_ctx(dup); }) == ErrorKind::DuplicateVariable);
}

TEST_CASE("type checking") {
  CattCtx ctx = testutil::chain_ctx(2);  // p0, p1, e0
  CHECK_NOTHROW(check_type(ctx, mk_obj()));
  CHECK_NOTHROW(check_type(ctx, arr01("p0", "p1")));
  CHECK(kind_of([&] { check_type(ctx, arr01("p0", "q")); }) == ErrorKind::UnboundVariable);

  // endpoints at different types
  CattCtx two = loop_ctx();
  two.decls.emplace_back("a", mk_arr(arr01("x", "x"), mk_var("f"), mk_var("f")));
  CHECK(kind_of([&] { check_type(two, mk_arr(mk_obj(), mk_var("x"), mk_var("f"))); }) ==
        ErrorKind::SourceTargetTypeMismatch);
}

TEST_CASE("variable lookup judgement") {
  CattCtx g = testutil::chain_ctx(2);  // p0:*, p1:*, e0:p0->p1
  auto [j1, ty1] = check_var(g, "p1");
  CHECK(type_eq(ty1, mk_obj()));
  auto [j2, ty2] = check_var(loop_ctx(), "f");
  CHECK(type_eq(ty2, arr01("x", "x")));
  CHECK(kind_of([&] { check_var(g, "zz"); }) == ErrorKind::UnboundVariable);
}

TEST_CASE("substitution checking") {
  CattCtx delta;
  delta.decls.emplace_back("a", mk_obj());

  CHECK_NOTHROW(check_sub(delta, CattSub{}, CattCtx{}));

  CattCtx two_pts;
  two_pts.decls.emplace_back("x", mk_obj());
  two_pts.decls.emplace_back("y", mk_obj());
  CattSub s;
  s.bindings.emplace_back("x", mk_var("a"));
  s.bindings.emplace_back("y", mk_var("a"));
  CHECK_NOTHROW(check_sub(delta, s, two_pts));

  CattSub missing;
  missing.bindings.emplace_back("x", mk_var("a"));
  CHECK(kind_of([&] { check_sub(delta, missing, two_pts); }) == ErrorKind::MissingBinding);

  CattSub extra = s;
  extra.bindings.emplace_back("z", mk_var("a"));
  CHECK(kind_of([&] { check_sub(delta, extra, two_pts); }) == ErrorKind::ExtraBinding);
}

TEST_CASE("gsett cut admissibility and weakening on random instances") {
  testutil::PathGen gen(testutil::corpus_env(), 99);
  for (int trial = 0; trial < 300; ++trial) {
    int n = gen.pick(2, 4), m = gen.pick(n, 7);
    CattCtx gamma_ctx = testutil::chain_ctx(n);
    CattCtx delta_ctx = testutil::chain_ctx(m);

    // variable-image substitution: shift the chain into a longer chain
    int off = gen.pick(0, m - n);
    CattSub shift;
    shift.bindings.emplace_back("p0", mk_var("p" + std::to_string(off)));
    for (int i = 1; i < n; ++i) {
      shift.bindings.emplace_back("p" + std::to_string(i),
                                  mk_var("p" + std::to_string(off + i)));
      shift.bindings.emplace_back("e" + std::to_string(i - 1),
                                  mk_var("e" + std::to_string(off + i - 1)));
    }
    CHECK_NOTHROW(check_sub(delta_ctx, shift, gamma_ctx));

    TypePtr a = arr01("p0", "p" + std::to_string(gen.pick(1, n - 1)));
    CHECK_NOTHROW(check_type(gamma_ctx, a));
    CHECK_NOTHROW(check_type(delta_ctx, apply_sub_type(a, shift)));  // cut

    // weakening: a fresh declaration on top preserves judgements
    CattCtx weakened = gamma_ctx;
    weakened.decls.emplace_back("w", mk_obj());
    CHECK_NOTHROW(check_type(weakened, a));
  }
}
