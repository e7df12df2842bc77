#pragma once

// The Martin-Löf fragment used as the referee kernel: a Tarski universe of
// fixed size, identity types with the Paulin-Mohring J eliminator, Pi-types.
// Named variables throughout; substitution is capture-avoiding and
// alpha-equivalence is decided with binder maps.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "catt2hott/errors.hpp"
#include "catt2hott/syntax.hpp"

namespace catt2hott::hott {

using catt::Var;
using catt::is_reserved;

struct HottTerm;
struct HottType;
using HTermPtr = std::shared_ptr<const HottTerm>;
using HTypePtr = std::shared_ptr<const HottType>;

struct Motive {
  Var x, y, e;  // endpoints and path
  HTypePtr body;
};

struct HottTerm {
  struct HVar {
    Var v;
  };
  struct Refl {
    HTypePtr ty;
    HTermPtr tm;
  };
  struct J {
    HTypePtr ty;      // A
    HTermPtr point;   // u, the fixed endpoint
    Motive motive;    // P(x, y, e)
    HTermPtr base;    // p : P(u, u, refl)
  };
  struct Lam {
    Var x;
    HTypePtr dom;
    HTermPtr body;
  };
  struct App {
    HTermPtr fn;
    HTermPtr arg;
  };
  std::variant<HVar, Refl, J, Lam, App> node;
};

struct HottType {
  struct TypeU {};
  struct El {
    HTermPtr code;
  };
  struct Id {
    HTypePtr ty;
    HTermPtr lhs;
    HTermPtr rhs;
  };
  struct Pi {
    Var x;
    HTypePtr dom;
    HTypePtr cod;
  };
  std::variant<TypeU, El, Id, Pi> node;
};

struct HottCtx {
  std::vector<std::pair<Var, HTypePtr>> decls;
};

struct HottSub {
  std::vector<std::pair<Var, HTermPtr>> bindings;
};

// --- constructors ---

inline HTermPtr hvar(Var v) {
  return std::make_shared<const HottTerm>(HottTerm{HottTerm::HVar{std::move(v)}});
}
inline HTermPtr hrefl(HTypePtr ty, HTermPtr tm) {
  return std::make_shared<const HottTerm>(HottTerm{HottTerm::Refl{std::move(ty), std::move(tm)}});
}
inline HTermPtr hj(HTypePtr ty, HTermPtr point, Motive motive, HTermPtr base) {
  return std::make_shared<const HottTerm>(
      HottTerm{HottTerm::J{std::move(ty), std::move(point), std::move(motive), std::move(base)}});
}
inline HTermPtr hlam(Var x, HTypePtr dom, HTermPtr body) {
  return std::make_shared<const HottTerm>(
      HottTerm{HottTerm::Lam{std::move(x), std::move(dom), std::move(body)}});
}
inline HTermPtr happ(HTermPtr fn, HTermPtr arg) {
  return std::make_shared<const HottTerm>(HottTerm{HottTerm::App{std::move(fn), std::move(arg)}});
}
inline HTypePtr type_u() {
  static const HTypePtr u = std::make_shared<const HottType>(HottType{HottType::TypeU{}});
  return u;
}
inline HTypePtr hel(HTermPtr code) {
  return std::make_shared<const HottType>(HottType{HottType::El{std::move(code)}});
}
inline HTypePtr hid(HTypePtr ty, HTermPtr lhs, HTermPtr rhs) {
  return std::make_shared<const HottType>(
      HottType{HottType::Id{std::move(ty), std::move(lhs), std::move(rhs)}});
}
inline HTypePtr hpi(Var x, HTypePtr dom, HTypePtr cod) {
  return std::make_shared<const HottType>(
      HottType{HottType::Pi{std::move(x), std::move(dom), std::move(cod)}});
}

template <class T>
const T* as(const HTermPtr& t) {
  return std::get_if<T>(&t->node);
}
template <class T>
const T* as_ty(const HTypePtr& t) {
  return std::get_if<T>(&t->node);
}

// --- fresh reserved names ---

inline Var fresh_var(const std::string& stem) {
  static std::atomic<std::uint64_t> counter{0};
  return "%" + stem + std::to_string(counter.fetch_add(1));
}

// --- free variables ---

inline void free_vars(const HTermPtr& t, std::set<Var>& out);

inline void free_vars(const HTypePtr& a, std::set<Var>& out) {
  if (as_ty<HottType::TypeU>(a)) return;
  if (const auto* el = as_ty<HottType::El>(a)) {
    free_vars(el->code, out);
  } else if (const auto* id = as_ty<HottType::Id>(a)) {
    free_vars(id->ty, out);
    free_vars(id->lhs, out);
    free_vars(id->rhs, out);
  } else {
    const auto* pi = as_ty<HottType::Pi>(a);
    free_vars(pi->dom, out);
    std::set<Var> inner;
    free_vars(pi->cod, inner);
    inner.erase(pi->x);
    out.insert(inner.begin(), inner.end());
  }
}

inline void free_vars(const HTermPtr& t, std::set<Var>& out) {
  if (const auto* v = as<HottTerm::HVar>(t)) {
    out.insert(v->v);
  } else if (const auto* r = as<HottTerm::Refl>(t)) {
    free_vars(r->ty, out);
    free_vars(r->tm, out);
  } else if (const auto* j = as<HottTerm::J>(t)) {
    free_vars(j->ty, out);
    free_vars(j->point, out);
    std::set<Var> inner;
    free_vars(j->motive.body, inner);
    inner.erase(j->motive.x);
    inner.erase(j->motive.y);
    inner.erase(j->motive.e);
    out.insert(inner.begin(), inner.end());
    free_vars(j->base, out);
  } else if (const auto* l = as<HottTerm::Lam>(t)) {
    free_vars(l->dom, out);
    std::set<Var> inner;
    free_vars(l->body, inner);
    inner.erase(l->x);
    out.insert(inner.begin(), inner.end());
  } else {
    const auto* a = as<HottTerm::App>(t);
    free_vars(a->fn, out);
    free_vars(a->arg, out);
  }
}

inline std::set<Var> free_vars(const HTermPtr& t) {
  std::set<Var> out;
  free_vars(t, out);
  return out;
}
inline std::set<Var> free_vars(const HTypePtr& a) {
  std::set<Var> out;
  free_vars(a, out);
  return out;
}

// --- substitution ---
//
// Total mode errors on a free variable with no binding (the translator's
// substitutions cover their whole scope); partial mode leaves it unchanged
// (used for motive instantiation and binder openings).

namespace detail {

struct SubstEnv {
  const HottSub& sub;
  bool partial;
  std::set<Var> range_vars;  // free variables of the images, for capture checks
};

inline std::optional<HTermPtr> lookup(const HottSub& sub, const Var& x) {
  for (auto it = sub.bindings.rbegin(); it != sub.bindings.rend(); ++it)
    if (it->first == x) return it->second;
  return std::nullopt;
}

inline bool sub_binds(const HottSub& sub, const Var& x) {
  return lookup(sub, x).has_value();
}

HTermPtr subst(const HTermPtr& t, const SubstEnv& env, HottSub& local);
HTypePtr subst(const HTypePtr& a, const SubstEnv& env, HottSub& local);

// Opens a binder: picks a replacement name avoiding capture and records it
// in the local renaming.
inline Var open_binder(const Var& x, const SubstEnv& env, HottSub& local) {
  bool clash = env.range_vars.count(x) > 0 || sub_binds(env.sub, x) || sub_binds(local, x);
  Var x2 = clash ? fresh_var("r") : x;
  local.bindings.emplace_back(x, hvar(x2));
  return x2;
}

inline HTermPtr subst(const HTermPtr& t, const SubstEnv& env, HottSub& local) {
  if (const auto* v = as<HottTerm::HVar>(t)) {
    if (auto img = lookup(local, v->v)) return *img;
    if (auto img = lookup(env.sub, v->v)) return *img;
    if (env.partial) return t;
    fail(ErrorKind::UnboundVariable, "variable '" + v->v + "' has no binding in substitution");
  }
  if (const auto* r = as<HottTerm::Refl>(t))
    return hrefl(subst(r->ty, env, local), subst(r->tm, env, local));
  if (const auto* j = as<HottTerm::J>(t)) {
    HTypePtr ty = subst(j->ty, env, local);
    HTermPtr point = subst(j->point, env, local);
    HTermPtr base = subst(j->base, env, local);
    HottSub inner = local;
    Var x2 = open_binder(j->motive.x, env, inner);
    Var y2 = open_binder(j->motive.y, env, inner);
    Var e2 = open_binder(j->motive.e, env, inner);
    HTypePtr body = subst(j->motive.body, env, inner);
    return hj(std::move(ty), std::move(point), Motive{x2, y2, e2, std::move(body)},
              std::move(base));
  }
  if (const auto* l = as<HottTerm::Lam>(t)) {
    HTypePtr dom = subst(l->dom, env, local);
    HottSub inner = local;
    Var x2 = open_binder(l->x, env, inner);
    return hlam(x2, std::move(dom), subst(l->body, env, inner));
  }
  const auto* a = as<HottTerm::App>(t);
  return happ(subst(a->fn, env, local), subst(a->arg, env, local));
}

inline HTypePtr subst(const HTypePtr& a, const SubstEnv& env, HottSub& local) {
  if (as_ty<HottType::TypeU>(a)) return a;
  if (const auto* el = as_ty<HottType::El>(a)) return hel(subst(el->code, env, local));
  if (const auto* id = as_ty<HottType::Id>(a))
    return hid(subst(id->ty, env, local), subst(id->lhs, env, local), subst(id->rhs, env, local));
  const auto* pi = as_ty<HottType::Pi>(a);
  HTypePtr dom = subst(pi->dom, env, local);
  HottSub inner = local;
  Var x2 = open_binder(pi->x, env, inner);
  return hpi(x2, std::move(dom), subst(pi->cod, env, inner));
}

inline SubstEnv make_env(const HottSub& sub, bool partial) {
  SubstEnv env{sub, partial, {}};
  for (const auto& [_, img] : sub.bindings) free_vars(img, env.range_vars);
  return env;
}

}  // namespace detail

inline HTermPtr h_subst(const HTermPtr& t, const HottSub& sub, bool partial = false) {
  auto env = detail::make_env(sub, partial);
  HottSub local;
  return detail::subst(t, env, local);
}

inline HTypePtr h_subst(const HTypePtr& a, const HottSub& sub, bool partial = false) {
  auto env = detail::make_env(sub, partial);
  HottSub local;
  return detail::subst(a, env, local);
}

inline HTermPtr subst1(const HTermPtr& t, const Var& x, const HTermPtr& u) {
  HottSub sub;
  sub.bindings.emplace_back(x, u);
  return h_subst(t, sub, /*partial=*/true);
}

inline HTypePtr subst1(const HTypePtr& a, const Var& x, const HTermPtr& u) {
  HottSub sub;
  sub.bindings.emplace_back(x, u);
  return h_subst(a, sub, /*partial=*/true);
}

inline HottSub compose(const HottSub& delta, const HottSub& gamma, bool partial = false) {
  HottSub out;
  out.bindings.reserve(delta.bindings.size());
  for (const auto& [x, t] : delta.bindings) out.bindings.emplace_back(x, h_subst(t, gamma, partial));
  return out;
}

inline HottSub id_sub(const HottCtx& ctx) {
  HottSub out;
  out.bindings.reserve(ctx.decls.size());
  for (const auto& [x, _] : ctx.decls) out.bindings.emplace_back(x, hvar(x));
  return out;
}

// --- alpha-equivalence ---

namespace detail {

struct AlphaMap {
  std::vector<std::pair<Var, Var>> pairs;

  bool var_eq(const Var& a, const Var& b) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      if (it->first == a || it->second == b) return it->first == a && it->second == b;
    }
    return a == b;
  }
};

bool alpha_eq(const HTermPtr& a, const HTermPtr& b, AlphaMap& m);

inline bool alpha_eq(const HTypePtr& a, const HTypePtr& b, AlphaMap& m) {
  if (as_ty<HottType::TypeU>(a)) return as_ty<HottType::TypeU>(b) != nullptr;
  if (const auto* ea = as_ty<HottType::El>(a)) {
    const auto* eb = as_ty<HottType::El>(b);
    return eb && alpha_eq(ea->code, eb->code, m);
  }
  if (const auto* ia = as_ty<HottType::Id>(a)) {
    const auto* ib = as_ty<HottType::Id>(b);
    return ib && alpha_eq(ia->ty, ib->ty, m) && alpha_eq(ia->lhs, ib->lhs, m) &&
           alpha_eq(ia->rhs, ib->rhs, m);
  }
  const auto* pa = as_ty<HottType::Pi>(a);
  const auto* pb = as_ty<HottType::Pi>(b);
  if (!pa || !pb) return false;
  if (!alpha_eq(pa->dom, pb->dom, m)) return false;
  m.pairs.emplace_back(pa->x, pb->x);
  bool ok = alpha_eq(pa->cod, pb->cod, m);
  m.pairs.pop_back();
  return ok;
}

inline bool alpha_eq(const HTermPtr& a, const HTermPtr& b, AlphaMap& m) {
  if (const auto* va = as<HottTerm::HVar>(a)) {
    const auto* vb = as<HottTerm::HVar>(b);
    return vb && m.var_eq(va->v, vb->v);
  }
  if (const auto* ra = as<HottTerm::Refl>(a)) {
    const auto* rb = as<HottTerm::Refl>(b);
    return rb && alpha_eq(ra->ty, rb->ty, m) && alpha_eq(ra->tm, rb->tm, m);
  }
  if (const auto* ja = as<HottTerm::J>(a)) {
    const auto* jb = as<HottTerm::J>(b);
    if (!jb) return false;
    if (!alpha_eq(ja->ty, jb->ty, m) || !alpha_eq(ja->point, jb->point, m)) return false;
    if (!alpha_eq(ja->base, jb->base, m)) return false;
    m.pairs.emplace_back(ja->motive.x, jb->motive.x);
    m.pairs.emplace_back(ja->motive.y, jb->motive.y);
    m.pairs.emplace_back(ja->motive.e, jb->motive.e);
    bool ok = alpha_eq(ja->motive.body, jb->motive.body, m);
    m.pairs.pop_back();
    m.pairs.pop_back();
    m.pairs.pop_back();
    return ok;
  }
  if (const auto* la = as<HottTerm::Lam>(a)) {
    const auto* lb = as<HottTerm::Lam>(b);
    if (!lb) return false;
    if (!alpha_eq(la->dom, lb->dom, m)) return false;
    m.pairs.emplace_back(la->x, lb->x);
    bool ok = alpha_eq(la->body, lb->body, m);
    m.pairs.pop_back();
    return ok;
  }
  const auto* aa = as<HottTerm::App>(a);
  const auto* ab = as<HottTerm::App>(b);
  return aa && ab && alpha_eq(aa->fn, ab->fn, m) && alpha_eq(aa->arg, ab->arg, m);
}

}  // namespace detail

inline bool alpha_eq(const HTermPtr& a, const HTermPtr& b) {
  detail::AlphaMap m;
  return detail::alpha_eq(a, b, m);
}
inline bool alpha_eq(const HTypePtr& a, const HTypePtr& b) {
  detail::AlphaMap m;
  return detail::alpha_eq(a, b, m);
}

// --- reduction: beta and the J computation rule ---

inline std::size_t default_max_reduction_steps() {
  static std::size_t steps = [] {
    if (const char* env = std::getenv("CATT2HOTT_MAX_STEPS")) {
      std::size_t v = std::strtoull(env, nullptr, 10);
      if (v > 0) return v;
    }
    return std::size_t{10'000'000};
  }();
  return steps;
}

struct Budget {
  std::size_t remaining = default_max_reduction_steps();

  void spend() {
    if (remaining == 0)
      fail(ErrorKind::ReductionBudgetExceeded, "reduction step budget exhausted");
    --remaining;
  }
};

// Single leftmost-outermost step; nullopt if the term is normal.
inline std::optional<HTermPtr> reduce(const HTermPtr& t);

namespace detail {

inline std::optional<HTypePtr> reduce_ty(const HTypePtr& a) {
  if (const auto* el = as_ty<HottType::El>(a)) {
    if (auto c = reduce(el->code)) return hel(*c);
    return std::nullopt;
  }
  if (const auto* id = as_ty<HottType::Id>(a)) {
    if (auto x = reduce_ty(id->ty)) return hid(*x, id->lhs, id->rhs);
    if (auto l = reduce(id->lhs)) return hid(id->ty, *l, id->rhs);
    if (auto r = reduce(id->rhs)) return hid(id->ty, id->lhs, *r);
    return std::nullopt;
  }
  if (const auto* pi = as_ty<HottType::Pi>(a)) {
    if (auto d = reduce_ty(pi->dom)) return hpi(pi->x, *d, pi->cod);
    if (auto c = reduce_ty(pi->cod)) return hpi(pi->x, pi->dom, *c);
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<HTermPtr> reduce(const HTermPtr& t) {
  if (const auto* app = as<HottTerm::App>(t)) {
    // beta
    if (const auto* lam = as<HottTerm::Lam>(app->fn)) return subst1(lam->body, lam->x, app->arg);
    // J computation: J(A,u,P,p) v refl == p
    if (const auto* inner = as<HottTerm::App>(app->fn)) {
      if (as<HottTerm::J>(inner->fn) && as<HottTerm::Refl>(app->arg))
        return as<HottTerm::J>(inner->fn)->base;
    }
    if (auto f = reduce(app->fn)) return happ(*f, app->arg);
    if (auto a = reduce(app->arg)) return happ(app->fn, *a);
    return std::nullopt;
  }
  if (const auto* r = as<HottTerm::Refl>(t)) {
    if (auto ty = detail::reduce_ty(r->ty)) return hrefl(*ty, r->tm);
    if (auto tm = reduce(r->tm)) return hrefl(r->ty, *tm);
    return std::nullopt;
  }
  if (const auto* j = as<HottTerm::J>(t)) {
    if (auto ty = detail::reduce_ty(j->ty)) return hj(*ty, j->point, j->motive, j->base);
    if (auto p = reduce(j->point)) return hj(j->ty, *p, j->motive, j->base);
    if (auto body = detail::reduce_ty(j->motive.body))
      return hj(j->ty, j->point, Motive{j->motive.x, j->motive.y, j->motive.e, *body}, j->base);
    if (auto b = reduce(j->base)) return hj(j->ty, j->point, j->motive, *b);
    return std::nullopt;
  }
  if (const auto* l = as<HottTerm::Lam>(t)) {
    if (auto d = detail::reduce_ty(l->dom)) return hlam(l->x, *d, l->body);
    if (auto b = reduce(l->body)) return hlam(l->x, l->dom, *b);
    return std::nullopt;
  }
  return std::nullopt;
}

inline HTermPtr normalize(const HTermPtr& t, Budget& budget);

namespace detail {

inline HTypePtr normalize_ty(const HTypePtr& a, Budget& budget) {
  if (as_ty<HottType::TypeU>(a)) return a;
  if (const auto* el = as_ty<HottType::El>(a)) return hel(normalize(el->code, budget));
  if (const auto* id = as_ty<HottType::Id>(a))
    return hid(normalize_ty(id->ty, budget), normalize(id->lhs, budget),
               normalize(id->rhs, budget));
  const auto* pi = as_ty<HottType::Pi>(a);
  return hpi(pi->x, normalize_ty(pi->dom, budget), normalize_ty(pi->cod, budget));
}

}  // namespace detail

inline HTermPtr normalize(const HTermPtr& t, Budget& budget) {
  if (as<HottTerm::HVar>(t)) return t;
  if (const auto* r = as<HottTerm::Refl>(t))
    return hrefl(detail::normalize_ty(r->ty, budget), normalize(r->tm, budget));
  if (const auto* j = as<HottTerm::J>(t))
    return hj(detail::normalize_ty(j->ty, budget), normalize(j->point, budget),
              Motive{j->motive.x, j->motive.y, j->motive.e,
                     detail::normalize_ty(j->motive.body, budget)},
              normalize(j->base, budget));
  if (const auto* l = as<HottTerm::Lam>(t))
    return hlam(l->x, detail::normalize_ty(l->dom, budget), normalize(l->body, budget));
  const auto* app = as<HottTerm::App>(t);
  HTermPtr fn = normalize(app->fn, budget);
  HTermPtr arg = normalize(app->arg, budget);
  if (const auto* lam = as<HottTerm::Lam>(fn)) {
    budget.spend();
    return normalize(subst1(lam->body, lam->x, arg), budget);
  }
  if (const auto* inner = as<HottTerm::App>(fn)) {
    if (as<HottTerm::J>(inner->fn) && as<HottTerm::Refl>(arg)) {
      budget.spend();
      return as<HottTerm::J>(inner->fn)->base;  // already normal
    }
  }
  return happ(std::move(fn), std::move(arg));
}

inline HTermPtr normalize(const HTermPtr& t) {
  Budget budget;
  return normalize(t, budget);
}

inline HTypePtr normalize(const HTypePtr& a) {
  Budget budget;
  return detail::normalize_ty(a, budget);
}

inline bool convertible(const HTermPtr& a, const HTermPtr& b) {
  return alpha_eq(normalize(a), normalize(b));
}
inline bool convertible(const HTypePtr& a, const HTypePtr& b) {
  return alpha_eq(normalize(a), normalize(b));
}

// --- diagnostic printing (compact, for error messages only) ---

inline std::string debug_print(const HTermPtr& t);

inline std::string debug_print(const HTypePtr& a) {
  if (as_ty<HottType::TypeU>(a)) return "Type";
  if (const auto* el = as_ty<HottType::El>(a)) return "(El " + debug_print(el->code) + ")";
  if (const auto* id = as_ty<HottType::Id>(a))
    return "(Id " + debug_print(id->ty) + " " + debug_print(id->lhs) + " " + debug_print(id->rhs) +
           ")";
  const auto* pi = as_ty<HottType::Pi>(a);
  return "(Pi (" + pi->x + " " + debug_print(pi->dom) + ") " + debug_print(pi->cod) + ")";
}

inline std::string debug_print(const HTermPtr& t) {
  if (const auto* v = as<HottTerm::HVar>(t)) return v->v;
  if (const auto* r = as<HottTerm::Refl>(t))
    return "(refl " + debug_print(r->ty) + " " + debug_print(r->tm) + ")";
  if (const auto* j = as<HottTerm::J>(t))
    return "(J " + debug_print(j->ty) + " " + debug_print(j->point) + " (" + j->motive.x + " " +
           j->motive.y + " " + j->motive.e + " " + debug_print(j->motive.body) + ") " +
           debug_print(j->base) + ")";
  if (const auto* l = as<HottTerm::Lam>(t))
    return "(lam (" + l->x + " " + debug_print(l->dom) + ") " + debug_print(l->body) + ")";
  const auto* app = as<HottTerm::App>(t);
  return "(app " + debug_print(app->fn) + " " + debug_print(app->arg) + ")";
}

// --- bidirectional checking ---

inline std::optional<HTypePtr> ctx_assoc(const HottCtx& ctx, const Var& x) {
  for (auto it = ctx.decls.rbegin(); it != ctx.decls.rend(); ++it)
    if (it->first == x) return it->second;
  return std::nullopt;
}

inline void check_type_wf(const HottCtx& ctx, const HTypePtr& a);
inline HTypePtr infer_hott(const HottCtx& ctx, const HTermPtr& t);

inline void check_against(const HottCtx& ctx, const HTermPtr& t, const HTypePtr& expected) {
  HTypePtr inferred = infer_hott(ctx, t);
  if (!convertible(inferred, expected))
    fail(ErrorKind::HottTypeError, "term " + debug_print(t) + " does not have the expected type; inferred " +
                                       debug_print(inferred) + ", expected " +
                                       debug_print(expected));
}

inline HTypePtr infer_hott(const HottCtx& ctx, const HTermPtr& t) {
  if (const auto* v = as<HottTerm::HVar>(t)) {
    auto declared = ctx_assoc(ctx, v->v);
    if (!declared) fail(ErrorKind::HottTypeError, "variable '" + v->v + "' not declared");
    return *declared;
  }
  if (const auto* r = as<HottTerm::Refl>(t)) {
    check_type_wf(ctx, r->ty);
    check_against(ctx, r->tm, r->ty);
    return hid(r->ty, r->tm, r->tm);
  }
  if (const auto* j = as<HottTerm::J>(t)) {
    check_type_wf(ctx, j->ty);
    check_against(ctx, j->point, j->ty);
    // Based path induction: the first motive variable stands for the fixed
    // point u, so the body is checked in ctx, y:A, e:Id_A(u,y) with x
    // instantiated at u. The remaining binders are renamed apart first.
    Var y = fresh_var("y");
    Var e = fresh_var("e");
    HottSub rename;
    rename.bindings.emplace_back(j->motive.x, j->point);
    rename.bindings.emplace_back(j->motive.y, hvar(y));
    rename.bindings.emplace_back(j->motive.e, hvar(e));
    HTypePtr body = h_subst(j->motive.body, rename, /*partial=*/true);
    HottCtx extended = ctx;
    extended.decls.emplace_back(y, j->ty);
    extended.decls.emplace_back(e, hid(j->ty, j->point, hvar(y)));
    check_type_wf(extended, body);
    // p : P(u, u, refl)
    HottSub at_point;
    at_point.bindings.emplace_back(y, j->point);
    at_point.bindings.emplace_back(e, hrefl(j->ty, j->point));
    check_against(ctx, j->base, h_subst(body, at_point, /*partial=*/true));
    // Pi (v : A) (e : Id_A(u, v)). P(u, v, e)
    Var v = fresh_var("v");
    Var e2 = fresh_var("e");
    HottSub at_end;
    at_end.bindings.emplace_back(y, hvar(v));
    at_end.bindings.emplace_back(e, hvar(e2));
    HTypePtr result = h_subst(body, at_end, /*partial=*/true);
    return hpi(v, j->ty, hpi(e2, hid(j->ty, j->point, hvar(v)), result));
  }
  if (const auto* l = as<HottTerm::Lam>(t)) {
    check_type_wf(ctx, l->dom);
    Var x = l->x;
    HTermPtr body = l->body;
    if (ctx_assoc(ctx, x)) {
      Var x2 = fresh_var("r");
      body = subst1(body, x, hvar(x2));
      x = x2;
    }
    HottCtx extended = ctx;
    extended.decls.emplace_back(x, l->dom);
    HTypePtr cod = infer_hott(extended, body);
    return hpi(x, l->dom, cod);
  }
  const auto* app = as<HottTerm::App>(t);
  HTypePtr fn_ty = normalize(infer_hott(ctx, app->fn));
  const auto* pi = as_ty<HottType::Pi>(fn_ty);
  if (!pi) fail(ErrorKind::HottTypeError, "application head is not of Pi type");
  check_against(ctx, app->arg, pi->dom);
  return subst1(pi->cod, pi->x, app->arg);
}

inline void check_type_wf(const HottCtx& ctx, const HTypePtr& a) {
  if (as_ty<HottType::TypeU>(a)) return;
  if (const auto* el = as_ty<HottType::El>(a)) {
    check_against(ctx, el->code, type_u());
    return;
  }
  if (const auto* id = as_ty<HottType::Id>(a)) {
    check_type_wf(ctx, id->ty);
    check_against(ctx, id->lhs, id->ty);
    check_against(ctx, id->rhs, id->ty);
    return;
  }
  const auto* pi = as_ty<HottType::Pi>(a);
  check_type_wf(ctx, pi->dom);
  Var x = pi->x;
  HTypePtr cod = pi->cod;
  if (ctx_assoc(ctx, x)) {
    Var x2 = fresh_var("r");
    cod = subst1(cod, x, hvar(x2));
    x = x2;
  }
  HottCtx extended = ctx;
  extended.decls.emplace_back(x, pi->dom);
  check_type_wf(extended, cod);
}

inline void check_hott_ctx(const HottCtx& ctx) {
  std::set<Var> seen;
  HottCtx prefix;
  for (const auto& [x, a] : ctx.decls) {
    if (!seen.insert(x).second)
      fail(ErrorKind::HottTypeError, "variable '" + x + "' declared twice");
    check_type_wf(prefix, a);
    prefix.decls.emplace_back(x, a);
  }
}

inline bool check_hott(const HottCtx& ctx, const HTermPtr& t, const HTypePtr& a) {
  try {
    check_type_wf(ctx, a);
    check_against(ctx, t, a);
    return true;
  } catch (const CheckError& e) {
    if (e.kind() == ErrorKind::ReductionBudgetExceeded) throw;
    return false;
  }
}

// Delta ⊢ sub : Gamma in HoTT (bindings in declaration order of Gamma).
inline bool check_hott_sub(const HottCtx& delta, const HottSub& sub, const HottCtx& gamma) {
  if (sub.bindings.size() != gamma.decls.size()) return false;
  HottSub prefix;
  try {
    for (std::size_t i = 0; i < gamma.decls.size(); ++i) {
      const auto& [x, a] = gamma.decls[i];
      if (sub.bindings[i].first != x) return false;
      check_against(delta, sub.bindings[i].second, h_subst(a, prefix, /*partial=*/true));
      prefix.bindings.emplace_back(x, sub.bindings[i].second);
    }
  } catch (const CheckError&) {
    return false;
  }
  return true;
}

// --- iterated identity types and reflexivity ---

inline HTypePtr id_tower(const HTypePtr& a, const HTermPtr& u, int n);

inline HTermPtr refl_tower(const HTypePtr& a, const HTermPtr& u, int n) {
  if (n == 0) return u;
  return hrefl(id_tower(a, u, n - 1), refl_tower(a, u, n - 1));
}

inline HTypePtr id_tower(const HTypePtr& a, const HTermPtr& u, int n) {
  if (n == 0) return a;
  HTermPtr r = refl_tower(a, u, n - 1);
  return hid(id_tower(a, u, n - 1), r, r);
}

// --- Pi- and lambda-lifting ---

inline HTypePtr pi_lift(const HottCtx& ctx, HTypePtr a) {
  for (auto it = ctx.decls.rbegin(); it != ctx.decls.rend(); ++it)
    a = hpi(it->first, it->second, std::move(a));
  return a;
}

inline HTermPtr lam_lift(const HottCtx& ctx, HTermPtr t) {
  for (auto it = ctx.decls.rbegin(); it != ctx.decls.rend(); ++it)
    t = hlam(it->first, it->second, std::move(t));
  return t;
}

}  // namespace catt2hott::hott
