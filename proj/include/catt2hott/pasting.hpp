#pragma once

// Recognition of ps-contexts and computation of their i-sources/i-targets.
// A ps-context is processed as a one-element list plus (target, filler)
// pairs; the derivation is unique, so recognition is a deterministic scan.

#include <set>
#include <string>
#include <vector>

#include "catt2hott/errors.hpp"
#include "catt2hott/syntax.hpp"

namespace catt2hott::pasting {

using namespace catt2hott::catt;

// One application of (pse) after the forced (psd) descents: introduces
// y : ty and filler : arr_ty src y.
struct PsStep {
  Var target;   // y
  TypePtr ty;   // C
  Var filler;   // f
  Var src;      // x
};

struct PsDerivation {
  Var base;  // the initial object of (pss)
  std::vector<PsStep> steps;
};

inline CattCtx ps_context(const PsDerivation& d) {
  CattCtx ctx;
  ctx.decls.emplace_back(d.base, mk_obj());
  for (const auto& s : d.steps) {
    ctx.decls.emplace_back(s.target, s.ty);
    ctx.decls.emplace_back(s.filler, mk_arr(s.ty, mk_var(s.src), mk_var(s.target)));
  }
  return ctx;
}

inline int dim_ctx(const PsDerivation& d) {
  int best = 0;
  for (const auto& s : d.steps) best = std::max(best, dim(s.ty) + 2);
  return best;
}

inline PsDerivation check_ps(const CattCtx& ctx) {
  if (ctx.decls.empty()) fail(ErrorKind::NotPs, "empty context is not a ps-context");
  if (ctx.decls.size() % 2 == 0)
    fail(ErrorKind::NotPs, "ps-contexts have odd length (one object plus pairs)");

  std::set<Var> seen;
  auto declare = [&seen](const Var& v) {
    if (!seen.insert(v).second)
      fail(ErrorKind::NotPs, "variable '" + v + "' bound twice in ps-context");
  };

  const auto& [base, base_ty] = ctx.decls[0];
  if (!is_obj(base_ty))
    fail(ErrorKind::NotPs, "first variable '" + base + "' must be an object");
  declare(base);

  PsDerivation deriv{base, {}};
  // Current dangling cell (variable, its type).
  Var dangling = base;
  TypePtr dangling_ty = mk_obj();

  for (std::size_t i = 1; i + 1 < ctx.decls.size() + 1; i += 2) {
    const auto& [y, c] = ctx.decls[i];
    const auto& [f, fty] = ctx.decls[i + 1];
    const auto* arr = as_arr(fty);
    if (!arr || !as_var(arr->src) || !as_var(arr->tgt))
      fail(ErrorKind::NotPs, "filler '" + f + "' must have an arrow type between variables");
    const Var& src = as_var(arr->src)->v;
    const Var& tgt = as_var(arr->tgt)->v;
    if (tgt != y)
      fail(ErrorKind::NotPs, "filler '" + f + "' must target the preceding variable '" + y + "'");
    if (!type_eq(arr->base, c))
      fail(ErrorKind::NotPs, "filler '" + f + "' base type differs from type of '" + y + "'");

    // Apply (psd) until the dangling cell matches the required source.
    while (!(dangling == src && type_eq(dangling_ty, c))) {
      const auto* d = as_arr(dangling_ty);
      if (!d)
        fail(ErrorKind::NotPs,
             "wrong source: '" + src + "' is not reachable from the dangling cell");
      dangling = as_var(d->tgt)->v;
      dangling_ty = d->base;
    }

    declare(y);
    declare(f);
    deriv.steps.push_back(PsStep{y, c, f, src});
    dangling = f;
    dangling_ty = fty;
  }

  // Rule (ps): descend the dangling cell to an object, always possible.
  return deriv;
}

enum class Side { Minus, Plus };

// ∂ᵢ±Γ. For each (y:C, f:arr_C x y) pair, with d = dim C + 1 (the dimension
// of the cell y): minus drops the pair when d >= i; plus drops when d > i,
// replaces the previous dangling cell by y when d = i, and keeps otherwise.
inline CattCtx boundary(const PsDerivation& d, int i, Side side) {
  if (i < 0) fail(ErrorKind::Internal, "boundary level must be non-negative");
  CattCtx out;
  out.decls.emplace_back(d.base, mk_obj());
  for (const auto& s : d.steps) {
    int cell_dim = dim(s.ty) + 1;
    if (side == Side::Minus) {
      if (cell_dim >= i) continue;
      out.decls.emplace_back(s.target, s.ty);
      out.decls.emplace_back(s.filler, mk_arr(s.ty, mk_var(s.src), mk_var(s.target)));
    } else {
      if (cell_dim > i) continue;
      if (cell_dim == i) {
        out.decls.pop_back();
        out.decls.emplace_back(s.target, s.ty);
      } else {
        out.decls.emplace_back(s.target, s.ty);
        out.decls.emplace_back(s.filler, mk_arr(s.ty, mk_var(s.src), mk_var(s.target)));
      }
    }
  }
  return out;
}

}  // namespace catt2hott::pasting
