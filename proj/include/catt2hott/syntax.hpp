#pragma once

// Pre-syntax of GSeTT and CaTT: variables, the two type constructors,
// coherence applications and the substitution algebra.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "catt2hott/errors.hpp"

namespace catt2hott::catt {

// Variables are plain names. Names starting with '%' form a reserved
// namespace the surface grammar cannot produce; the translator draws its
// generated HoTT variables from it.
using Var = std::string;

inline bool is_reserved(const Var& v) { return !v.empty() && v[0] == '%'; }

using CoherenceRef = std::size_t;

struct CattTerm;
struct CattType;
using TermPtr = std::shared_ptr<const CattTerm>;
using TypePtr = std::shared_ptr<const CattType>;

// Association list; later bindings shadow earlier ones, order kept for
// printing.
struct CattSub {
  std::vector<std::pair<Var, TermPtr>> bindings;
};

struct CattTerm {
  struct VarT {
    Var v;
  };
  struct CohApp {
    CoherenceRef coh;
    CattSub sub;
  };
  std::variant<VarT, CohApp> node;
};

struct CattType {
  struct Obj {};
  struct Arr {
    TypePtr base;
    TermPtr src;
    TermPtr tgt;
  };
  std::variant<Obj, Arr> node;
};

struct CattCtx {
  std::vector<std::pair<Var, TypePtr>> decls;
};

inline TermPtr mk_var(Var v) {
  return std::make_shared<const CattTerm>(CattTerm{CattTerm::VarT{std::move(v)}});
}
inline TermPtr mk_coh_app(CoherenceRef c, CattSub sub) {
  return std::make_shared<const CattTerm>(CattTerm{CattTerm::CohApp{c, std::move(sub)}});
}
inline TypePtr mk_obj() {
  static const TypePtr obj = std::make_shared<const CattType>(CattType{CattType::Obj{}});
  return obj;
}
inline TypePtr mk_arr(TypePtr base, TermPtr src, TermPtr tgt) {
  return std::make_shared<const CattType>(
      CattType{CattType::Arr{std::move(base), std::move(src), std::move(tgt)}});
}

inline const CattTerm::VarT* as_var(const TermPtr& t) {
  return std::get_if<CattTerm::VarT>(&t->node);
}
inline const CattTerm::CohApp* as_coh_app(const TermPtr& t) {
  return std::get_if<CattTerm::CohApp>(&t->node);
}
inline bool is_obj(const TypePtr& a) { return std::holds_alternative<CattType::Obj>(a->node); }
inline const CattType::Arr* as_arr(const TypePtr& a) {
  return std::get_if<CattType::Arr>(&a->node);
}

// --- syntactic equality ---

bool term_eq(const TermPtr& a, const TermPtr& b);

inline bool sub_eq(const CattSub& a, const CattSub& b) {
  if (a.bindings.size() != b.bindings.size()) return false;
  for (std::size_t i = 0; i < a.bindings.size(); ++i) {
    if (a.bindings[i].first != b.bindings[i].first) return false;
    if (!term_eq(a.bindings[i].second, b.bindings[i].second)) return false;
  }
  return true;
}

inline bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (const auto* va = as_var(a)) {
    const auto* vb = as_var(b);
    return vb && va->v == vb->v;
  }
  const auto* ca = as_coh_app(a);
  const auto* cb = as_coh_app(b);
  return ca && cb && ca->coh == cb->coh && sub_eq(ca->sub, cb->sub);
}

inline bool type_eq(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (is_obj(a)) return is_obj(b);
  const auto* ra = as_arr(a);
  const auto* rb = as_arr(b);
  return ra && rb && type_eq(ra->base, rb->base) && term_eq(ra->src, rb->src) &&
         term_eq(ra->tgt, rb->tgt);
}

inline bool ctx_eq(const CattCtx& a, const CattCtx& b) {
  if (a.decls.size() != b.decls.size()) return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    if (a.decls[i].first != b.decls[i].first) return false;
    if (!type_eq(a.decls[i].second, b.decls[i].second)) return false;
  }
  return true;
}

// --- dimension ---

inline int dim(const TypePtr& a) {
  if (is_obj(a)) return -1;
  return dim(as_arr(a)->base) + 1;
}

// --- association-list lookups (last binding wins) ---

inline std::optional<TermPtr> sub_lookup(const CattSub& sub, const Var& x) {
  for (auto it = sub.bindings.rbegin(); it != sub.bindings.rend(); ++it)
    if (it->first == x) return it->second;
  return std::nullopt;
}

inline std::optional<TypePtr> ctx_assoc(const CattCtx& ctx, const Var& x) {
  for (auto it = ctx.decls.rbegin(); it != ctx.decls.rend(); ++it)
    if (it->first == x) return it->second;
  return std::nullopt;
}

// --- substitution action ---

TermPtr apply_sub_term(const TermPtr& t, const CattSub& sub);

inline CattSub compose(const CattSub& delta, const CattSub& gamma) {
  CattSub out;
  out.bindings.reserve(delta.bindings.size());
  for (const auto& [x, t] : delta.bindings) out.bindings.emplace_back(x, apply_sub_term(t, gamma));
  return out;
}

inline TermPtr apply_sub_term(const TermPtr& t, const CattSub& sub) {
  if (const auto* v = as_var(t)) {
    if (auto img = sub_lookup(sub, v->v)) return *img;
    fail(ErrorKind::UnboundVariable, "variable '" + v->v + "' has no binding in substitution");
  }
  const auto* c = as_coh_app(t);
  return mk_coh_app(c->coh, compose(c->sub, sub));
}

inline TypePtr apply_sub_type(const TypePtr& a, const CattSub& sub) {
  if (is_obj(a)) return a;
  const auto* r = as_arr(a);
  return mk_arr(apply_sub_type(r->base, sub), apply_sub_term(r->src, sub),
                apply_sub_term(r->tgt, sub));
}

inline CattSub id_sub(const CattCtx& ctx) {
  CattSub out;
  out.bindings.reserve(ctx.decls.size());
  for (const auto& [x, _] : ctx.decls) out.bindings.emplace_back(x, mk_var(x));
  return out;
}

// --- variable sets ---

inline void collect_vars(const TermPtr& t, std::set<Var>& out) {
  if (const auto* v = as_var(t)) {
    out.insert(v->v);
    return;
  }
  for (const auto& [_, img] : as_coh_app(t)->sub.bindings) collect_vars(img, out);
}

inline void collect_vars(const TypePtr& a, std::set<Var>& out) {
  if (is_obj(a)) return;
  const auto* r = as_arr(a);
  collect_vars(r->base, out);
  collect_vars(r->src, out);
  collect_vars(r->tgt, out);
}

inline std::set<Var> var_set_term(const TermPtr& t, const TypePtr& a) {
  std::set<Var> out;
  collect_vars(t, out);
  collect_vars(a, out);
  return out;
}

inline std::set<Var> var_set_ctx(const CattCtx& ctx) {
  std::set<Var> out;
  for (const auto& [x, _] : ctx.decls) out.insert(x);
  return out;
}

}  // namespace catt2hott::catt
