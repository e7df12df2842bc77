#pragma once

// Full CaTT judgement checking over an environment of validated coherences
// and let-definitions.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "catt2hott/errors.hpp"
#include "catt2hott/gsett.hpp"
#include "catt2hott/pasting.hpp"
#include "catt2hott/syntax.hpp"

namespace catt2hott::catt {

enum class CohKind { FullCoverage, Composition };

struct Coherence {
  std::string name;
  pasting::PsDerivation ps;
  CattCtx ctx;  // ps_context(ps), cached
  TypePtr ty;   // an arrow type
  int boundary_level = 0;
  CohKind kind = CohKind::FullCoverage;
  std::vector<bool> implicit_mask;  // aligned with ctx.decls
};

struct LetDef {
  std::string name;
  CattCtx ctx;
  TypePtr ty;
  TermPtr body;
  std::vector<bool> implicit_mask;
};

class Environment {
 public:
  using Entry = std::variant<Coherence, LetDef>;

  std::size_t size() const { return entries_.size(); }
  const Entry& entry(std::size_t i) const { return entries_.at(i); }

  const Coherence& coherence(CoherenceRef i) const {
    const auto* c = std::get_if<Coherence>(&entries_.at(i));
    if (!c) fail(ErrorKind::Internal, "environment entry is not a coherence");
    return *c;
  }

  std::optional<std::size_t> lookup(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& name_of(std::size_t i) const { return names_.at(i); }

  std::size_t append(std::string name, Entry e) {
    if (index_.count(name)) fail(ErrorKind::DuplicateName, "name '" + name + "' already defined");
    std::size_t i = entries_.size();
    index_.emplace(name, i);
    names_.push_back(name);
    entries_.push_back(std::move(e));
    return i;
  }

 private:
  std::vector<Entry> entries_;
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
};

// x is implicit iff it occurs free in the declared type of some other
// variable of the context.
inline std::vector<bool> infer_implicit_mask(const CattCtx& ctx) {
  std::set<Var> used;
  for (const auto& [_, ty] : ctx.decls) collect_vars(ty, used);
  std::vector<bool> mask;
  mask.reserve(ctx.decls.size());
  for (const auto& [x, _] : ctx.decls) mask.push_back(used.count(x) > 0);
  return mask;
}

TypePtr check_term(const Environment& env, const CattCtx& ctx, const TermPtr& t);

inline gsett::Judgement check_type(const Environment& env, const CattCtx& ctx, const TypePtr& a) {
  if (is_obj(a)) return {gsett::Judgement::Form::TypeOk};
  const auto* arr = as_arr(a);
  check_type(env, ctx, arr->base);
  TypePtr src_ty = check_term(env, ctx, arr->src);
  TypePtr tgt_ty = check_term(env, ctx, arr->tgt);
  if (!type_eq(src_ty, arr->base) || !type_eq(tgt_ty, arr->base))
    fail(ErrorKind::SourceTargetTypeMismatch, "arrow endpoints do not check at the base type");
  return {gsett::Judgement::Form::TypeOk};
}

inline gsett::Judgement check_ctx(const Environment& env, const CattCtx& ctx) {
  std::set<Var> seen;
  CattCtx prefix;
  for (const auto& [x, a] : ctx.decls) {
    if (!seen.insert(x).second)
      fail(ErrorKind::DuplicateVariable, "variable '" + x + "' declared twice");
    check_type(env, prefix, a);
    prefix.decls.emplace_back(x, a);
  }
  return {gsett::Judgement::Form::CtxOk};
}

// Δ ⊢ γ : Γ with coherence terms allowed as images.
inline gsett::Judgement check_sub_catt(const Environment& env, const CattCtx& delta,
                                       const CattSub& gamma, const CattCtx& ctx) {
  if (gamma.bindings.size() > ctx.decls.size())
    fail(ErrorKind::ExtraBinding,
         "binding of '" + gamma.bindings[ctx.decls.size()].first + "' has no declaration");
  CattSub prefix;
  for (std::size_t i = 0; i < ctx.decls.size(); ++i) {
    const auto& [x, a] = ctx.decls[i];
    if (i >= gamma.bindings.size() || gamma.bindings[i].first != x)
      fail(ErrorKind::MissingBinding, "missing binding for '" + x + "'");
    const TermPtr& image = gamma.bindings[i].second;
    TypePtr got = check_term(env, delta, image);
    TypePtr expected = apply_sub_type(a, prefix);
    if (!type_eq(got, expected))
      fail(ErrorKind::TypeMismatch, "image of '" + x + "' has the wrong type");
    prefix.bindings.emplace_back(x, image);
  }
  return {gsett::Judgement::Form::SubOk};
}

inline TypePtr check_term(const Environment& env, const CattCtx& ctx, const TermPtr& t) {
  if (const auto* v = as_var(t)) {
    auto declared = ctx_assoc(ctx, v->v);
    if (!declared) fail(ErrorKind::UnboundVariable, "variable '" + v->v + "' not declared");
    return *declared;
  }
  const auto* app = as_coh_app(t);
  if (app->coh >= env.size())
    fail(ErrorKind::UnknownCoherence, "coherence reference out of range");
  const Coherence& c = env.coherence(app->coh);
  check_sub_catt(env, ctx, app->sub, c.ctx);
  return apply_sub_type(c.ty, app->sub);
}

// Rule (coh-wd): A = arr_B u v; for i in {dim Γ - 1, dim Γ}, u and v check
// in the i-boundaries and the Var side conditions hold exactly. The
// composition case (smaller i) is tried first; both cases are disjoint in
// practice so the accepted set is unchanged.
inline Coherence check_coh(const Environment& env, const CattCtx& ctx, const TypePtr& a) {
  pasting::PsDerivation ps = pasting::check_ps(ctx);
  const auto* arr = as_arr(a);
  if (!arr) fail(ErrorKind::NotArrowType, "coherence type must be an arrow type");
  int d = pasting::dim_ctx(ps);

  auto try_level = [&](int i) -> std::optional<Coherence> {
    CattCtx minus = pasting::boundary(ps, i, pasting::Side::Minus);
    CattCtx plus = pasting::boundary(ps, i, pasting::Side::Plus);
    try {
      check_type(env, minus, arr->base);
      TypePtr src_ty = check_term(env, minus, arr->src);
      if (!type_eq(src_ty, arr->base)) return std::nullopt;
      check_type(env, plus, arr->base);
      TypePtr tgt_ty = check_term(env, plus, arr->tgt);
      if (!type_eq(tgt_ty, arr->base)) return std::nullopt;
    } catch (const CheckError&) {
      return std::nullopt;
    }
    std::set<Var> src_vars = var_set_term(arr->src, arr->base);
    std::set<Var> tgt_vars = var_set_term(arr->tgt, arr->base);
    if (src_vars != var_set_ctx(minus)) return std::nullopt;
    if (tgt_vars != var_set_ctx(plus)) return std::nullopt;
    Coherence coh;
    coh.ps = ps;
    coh.ctx = pasting::ps_context(ps);
    coh.ty = a;
    coh.boundary_level = i;
    coh.kind = (i == d) ? CohKind::FullCoverage : CohKind::Composition;
    coh.implicit_mask = infer_implicit_mask(coh.ctx);
    return coh;
  };

  if (d >= 1)
    if (auto coh = try_level(d - 1)) return *coh;
  if (auto coh = try_level(d)) return *coh;

  // Report the Var-condition mismatch at full coverage for a usable message.
  CattCtx minus = pasting::boundary(ps, d, pasting::Side::Minus);
  CattCtx plus = pasting::boundary(ps, d, pasting::Side::Plus);
  auto describe = [](const char* side, const std::set<Var>& have, const std::set<Var>& want) {
    std::string msg = std::string("side ") + side + ": {";
    for (const auto& v : want)
      if (!have.count(v)) msg += " missing " + v;
    for (const auto& v : have)
      if (!want.count(v)) msg += " extra " + v;
    return msg + " }";
  };
  std::set<Var> src_vars = var_set_term(arr->src, arr->base);
  std::set<Var> tgt_vars = var_set_term(arr->tgt, arr->base);
  std::string detail;
  if (src_vars != var_set_ctx(minus)) detail += describe("source", src_vars, var_set_ctx(minus));
  if (tgt_vars != var_set_ctx(plus)) {
    if (!detail.empty()) detail += "; ";
    detail += describe("target", tgt_vars, var_set_ctx(plus));
  }
  if (detail.empty()) detail = "boundary terms do not check";
  fail(ErrorKind::VarConditionFailed, detail);
}

// Validates and appends a coherence declaration.
inline CoherenceRef register_coherence(Environment& env, const std::string& name,
                                       const CattCtx& ctx, const TypePtr& ty) {
  if (env.lookup(name)) fail(ErrorKind::DuplicateName, "name '" + name + "' already defined");
  Coherence coh = check_coh(env, ctx, ty);
  coh.name = name;
  return env.append(name, std::move(coh));
}

// Validates and appends a let-definition. The optional ascription is checked
// by syntactic equality (bodies are already fully let-expanded).
inline std::size_t register_let(Environment& env, const std::string& name, const CattCtx& ctx,
                                const TermPtr& body, const TypePtr& ascribed = nullptr) {
  if (env.lookup(name)) fail(ErrorKind::DuplicateName, "name '" + name + "' already defined");
  check_ctx(env, ctx);
  TypePtr inferred = check_term(env, ctx, body);
  if (ascribed) {
    check_type(env, ctx, ascribed);
    if (!type_eq(inferred, ascribed))
      fail(ErrorKind::TypeMismatch, "ascribed type of '" + name + "' differs from inferred type");
  }
  LetDef def{name, ctx, inferred, body, infer_implicit_mask(ctx)};
  return env.append(name, std::move(def));
}

}  // namespace catt2hott::catt
