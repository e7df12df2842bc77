#pragma once

// Derivability checking for GSeTT judgements. Terms of GSeTT are variables
// only; contexts, types and substitutions are checked syntax-directed.

#include <set>
#include <string>

#include "catt2hott/errors.hpp"
#include "catt2hott/syntax.hpp"

namespace catt2hott::gsett {

using namespace catt2hott::catt;

struct Judgement {
  enum class Form { CtxOk, TypeOk, TermOk, SubOk } form;
};

namespace detail {

inline void require_var_only_term(const TermPtr& t) {
  if (!as_var(t))
    fail(ErrorKind::IllTypedDeclaration, "GSeTT terms are variables only");
}

}  // namespace detail

inline Judgement check_ctx(const CattCtx& ctx);

// Γ ⊢ A, assuming Γ already checked.
inline Judgement check_type(const CattCtx& ctx, const TypePtr& a) {
  if (is_obj(a)) return {Judgement::Form::TypeOk};
  const auto* arr = as_arr(a);
  check_type(ctx, arr->base);
  for (const TermPtr& end : {arr->src, arr->tgt}) {
    detail::require_var_only_term(end);
    const Var& v = as_var(end)->v;
    auto declared = ctx_assoc(ctx, v);
    if (!declared) fail(ErrorKind::UnboundVariable, "variable '" + v + "' not declared");
    if (!type_eq(*declared, arr->base))
      fail(ErrorKind::SourceTargetTypeMismatch,
           "endpoint '" + v + "' does not have the arrow's base type");
  }
  return {Judgement::Form::TypeOk};
}

// Γ ⊢ x : assoc(Γ, x)
inline std::pair<Judgement, TypePtr> check_var(const CattCtx& ctx, const Var& x) {
  auto declared = ctx_assoc(ctx, x);
  if (!declared) fail(ErrorKind::UnboundVariable, "variable '" + x + "' not declared");
  return {{Judgement::Form::TermOk}, *declared};
}

inline Judgement check_ctx(const CattCtx& ctx) {
  std::set<Var> seen;
  CattCtx prefix;
  for (const auto& [x, a] : ctx.decls) {
    if (!seen.insert(x).second)
      fail(ErrorKind::DuplicateVariable, "variable '" + x + "' declared twice");
    try {
      check_type(prefix, a);
    } catch (const CheckError& e) {
      if (e.kind() == ErrorKind::UnboundVariable || e.kind() == ErrorKind::SourceTargetTypeMismatch)
        throw;
      fail(ErrorKind::IllTypedDeclaration, "declaration of '" + x + "': " + e.what());
    }
    prefix.decls.emplace_back(x, a);
  }
  return {Judgement::Form::CtxOk};
}

// Δ ⊢ γ : Γ — γ binds exactly the variables of Γ in order.
inline Judgement check_sub(const CattCtx& delta, const CattSub& gamma, const CattCtx& ctx) {
  if (gamma.bindings.size() > ctx.decls.size())
    fail(ErrorKind::ExtraBinding,
         "binding of '" + gamma.bindings[ctx.decls.size()].first + "' has no declaration");
  CattSub prefix;
  for (std::size_t i = 0; i < ctx.decls.size(); ++i) {
    const auto& [x, a] = ctx.decls[i];
    if (i >= gamma.bindings.size() || gamma.bindings[i].first != x)
      fail(ErrorKind::MissingBinding, "missing binding for '" + x + "'");
    const TermPtr& image = gamma.bindings[i].second;
    detail::require_var_only_term(image);
    auto [_, got] = check_var(delta, as_var(image)->v);
    TypePtr expected = apply_sub_type(a, prefix);
    if (!type_eq(got, expected))
      fail(ErrorKind::TypeMismatch, "image of '" + x + "' has the wrong type");
    prefix.bindings.emplace_back(x, image);
  }
  return {Judgement::Form::SubOk};
}

}  // namespace catt2hott::gsett
