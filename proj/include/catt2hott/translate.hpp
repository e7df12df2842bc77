#pragma once

// Interpretation of CaTT syntax into the MLTT fragment: contexts, types,
// terms and substitutions map structurally; a coherence becomes a nest of J
// applications built by `elim`, one per ps-context peeling step. Every
// translated judgement is re-checked by the kernel before being returned.

#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "catt2hott/catt.hpp"
#include "catt2hott/errors.hpp"
#include "catt2hott/hott.hpp"
#include "catt2hott/pasting.hpp"

namespace catt2hott::translate {

using namespace catt2hott::catt;
namespace h = catt2hott::hott;

struct TranslationResult {
  h::HottCtx ctx;
  h::HTypePtr ty;
  h::HTermPtr tm;
  h::HTypePtr closed_ty;
  h::HTermPtr closed_tm;
};

// The reserved base-type variable; unproducible by the surface grammar.
inline const Var& base_type_var() {
  static const Var b = "%B";
  return b;
}

class Translator {
 public:
  explicit Translator(const Environment& env, bool verify_elim_subs = true)
      : env_(env), verify_elim_subs_(verify_elim_subs) {}

  h::HottCtx interp_ctx(const CattCtx& ctx) {
    h::HottCtx out;
    out.decls.emplace_back(base_type_var(), h::type_u());
    for (const auto& [x, a] : ctx.decls) out.decls.emplace_back(x, interp_type(a));
    return out;
  }

  h::HTypePtr interp_type(const TypePtr& a) {
    if (is_obj(a)) return h::hel(h::hvar(base_type_var()));
    const auto* arr = as_arr(a);
    return h::hid(interp_type(arr->base), interp_term(arr->src), interp_term(arr->tgt));
  }

  h::HTermPtr interp_term(const TermPtr& t) {
    if (const auto* v = as_var(t)) return h::hvar(v->v);
    const auto* app = as_coh_app(t);
    return h::h_subst(interp_coh(app->coh), interp_sub(app->sub));
  }

  h::HottSub interp_sub(const CattSub& sub) {
    h::HottSub out;
    out.bindings.emplace_back(base_type_var(), h::hvar(base_type_var()));
    for (const auto& [x, t] : sub.bindings) out.bindings.emplace_back(x, interp_term(t));
    return out;
  }

  // ⟦coh_{Γ,A}⟧ = elim(Γ, A, Γ, id); memoized per coherence.
  h::HTermPtr interp_coh(CoherenceRef ref) {
    auto it = coh_memo_.find(ref);
    if (it != coh_memo_.end()) return it->second;
    const Coherence& coh = env_.coherence(ref);
    h::HottCtx hctx = interp_ctx(coh.ctx);
    h::HTermPtr result = elim(coh.ps, coh.ps.steps.size(), coh.ty, h::id_sub(hctx));
    coh_memo_.emplace(ref, result);
    return result;
  }

  // elim over the derivation prefix with `steps` construction steps.
  // gamma maps the variables of the coherence's full translated context
  // into the scope of the prefix's translated context.
  h::HTermPtr elim(const pasting::PsDerivation& ps, std::size_t steps, const TypePtr& a,
                   const h::HottSub& gamma) {
    h::HTermPtr result;
    if (steps == 0) {
      // refl^(dim A + 1) over the lone object.
      result = h::refl_tower(h::hel(h::hvar(base_type_var())), h::hvar(ps.base), dim(a) + 1);
    } else {
      const pasting::PsStep& step = ps.steps[steps - 1];
      h::HTypePtr c = interp_type(step.ty);  // GSeTT type, no inductive call
      // Motive: ⟦A⟧[gamma] with the peeled x, y, f replaced by fresh names.
      Var x2 = h::fresh_var("v");
      Var y2 = h::fresh_var("v");
      Var f2 = h::fresh_var("v");
      h::HottSub primed;
      primed.bindings.emplace_back(step.src, h::hvar(x2));
      primed.bindings.emplace_back(step.target, h::hvar(y2));
      primed.bindings.emplace_back(step.filler, h::hvar(f2));
      h::HTypePtr motive_body =
          h::h_subst(h::h_subst(interp_type(a), gamma), primed, /*partial=*/true);
      // p = elim(Δ, A, Γ, gamma ∘ ⟨id_⟦Δ⟧, y↦x, f↦refl⟩)
      h::HottSub collapse = prefix_id_sub(ps, steps - 1);
      collapse.bindings.emplace_back(step.target, h::hvar(step.src));
      collapse.bindings.emplace_back(step.filler, h::hrefl(c, h::hvar(step.src)));
      h::HTermPtr p = elim(ps, steps - 1, a, h::compose(gamma, collapse));
      result = h::happ(h::happ(h::hj(c, h::hvar(step.src), h::Motive{x2, y2, f2, motive_body}, p),
                               h::hvar(step.target)),
                       h::hvar(step.filler));
    }
    assert_free_vars_in_prefix(result, ps, steps);
    if (verify_elim_subs_) verify_sub(ps, steps, gamma);
    return result;
  }

  TranslationResult translate_judgement(const CattCtx& ctx, const TermPtr& t, const TypePtr& a) {
    TranslationResult res;
    res.ctx = interp_ctx(ctx);
    res.ty = interp_type(a);
    res.tm = interp_term(t);
    try {
      h::check_hott_ctx(res.ctx);
    } catch (const CheckError& e) {
      fail(ErrorKind::KernelRejected, std::string("translated context ill-formed: ") + e.what());
    }
    if (!h::check_hott(res.ctx, res.tm, res.ty))
      fail(ErrorKind::KernelRejected, "translated open judgement does not kernel-check");
    res.closed_ty = h::pi_lift(res.ctx, res.ty);
    res.closed_tm = h::lam_lift(res.ctx, res.tm);
    if (!h::check_hott(h::HottCtx{}, res.closed_tm, res.closed_ty))
      fail(ErrorKind::KernelRejected, "closed lifting does not kernel-check");
    return res;
  }

 private:
  // id on the translated prefix context (B plus the prefix's variables).
  h::HottSub prefix_id_sub(const pasting::PsDerivation& ps, std::size_t steps) const {
    h::HottSub out;
    out.bindings.emplace_back(base_type_var(), h::hvar(base_type_var()));
    out.bindings.emplace_back(ps.base, h::hvar(ps.base));
    for (std::size_t i = 0; i < steps; ++i) {
      out.bindings.emplace_back(ps.steps[i].target, h::hvar(ps.steps[i].target));
      out.bindings.emplace_back(ps.steps[i].filler, h::hvar(ps.steps[i].filler));
    }
    return out;
  }

  // Free variables of an elim result must be declared in the translated
  // prefix context.
  void assert_free_vars_in_prefix(const h::HTermPtr& t, const pasting::PsDerivation& ps,
                                  std::size_t steps) const {
    std::set<Var> allowed{base_type_var(), ps.base};
    for (std::size_t i = 0; i < steps; ++i) {
      allowed.insert(ps.steps[i].target);
      allowed.insert(ps.steps[i].filler);
    }
    for (const Var& v : h::free_vars(t))
      if (!allowed.count(v))
        fail(ErrorKind::Internal, "elim produced a term with stray free variable '" + v + "'");
  }

  CattCtx prefix_ctx(const pasting::PsDerivation& ps, std::size_t steps) const {
    pasting::PsDerivation prefix{ps.base, {ps.steps.begin(), ps.steps.begin() + steps}};
    return pasting::ps_context(prefix);
  }

  void verify_sub(const pasting::PsDerivation& ps, std::size_t steps, const h::HottSub& gamma) {
    h::HottCtx delta = interp_ctx(prefix_ctx(ps, steps));
    h::HottCtx full = interp_ctx(prefix_ctx(ps, ps.steps.size()));
    if (!h::check_hott_sub(delta, gamma, full))
      fail(ErrorKind::Internal, "elim invoked with a substitution that fails its kernel check");
  }

  const Environment& env_;
  bool verify_elim_subs_;
  std::unordered_map<CoherenceRef, h::HTermPtr> coh_memo_;
};

}  // namespace catt2hott::translate
