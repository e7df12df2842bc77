#pragma once

#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "catt2hott/catt.hpp"
#include "catt2hott/surface.hpp"
#include "catt2hott/translate.hpp"

namespace testutil {

using namespace catt2hott;

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw std::runtime_error("cannot open test data file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_file(const std::string& name) {
  return std::string(DATA_DIR) + "/" + name;
}

inline const catt::Environment& corpus_env() {
  static catt::Environment env = surface::process_file(slurp(data_file("corpus.catt")));
  return env;
}

struct Judgement {
  std::string name;
  catt::CattCtx ctx;
  catt::TermPtr tm;
  catt::TypePtr ty;
};

inline Judgement judgement_of(const catt::Environment& env, std::size_t i) {
  Judgement j;
  j.name = env.name_of(i);
  if (const auto* coh = std::get_if<catt::Coherence>(&env.entry(i))) {
    j.ctx = coh->ctx;
    j.ty = coh->ty;
    catt::CattSub id;
    for (const auto& [x, _] : j.ctx.decls) id.bindings.emplace_back(x, catt::mk_var(x));
    j.tm = catt::mk_coh_app(i, std::move(id));
  } else {
    const auto* let = std::get_if<catt::LetDef>(&env.entry(i));
    j.ctx = let->ctx;
    j.ty = let->ty;
    j.tm = let->body;
  }
  return j;
}

// A context describing a chain of n objects joined by n-1 composable arrows:
// p0, p1, e0 : p0 -> p1, p2, e1 : p1 -> p2, ...  (a ps-context of dimension 1
// for n >= 2). Used by the randomized substitution suites.
inline catt::CattCtx chain_ctx(int n) {
  catt::CattCtx ctx;
  auto pt = [](int i) { return "p" + std::to_string(i); };
  ctx.decls.emplace_back(pt(0), catt::mk_obj());
  for (int i = 1; i < n; ++i) {
    ctx.decls.emplace_back(pt(i), catt::mk_obj());
    ctx.decls.emplace_back("e" + std::to_string(i - 1),
                           catt::mk_arr(catt::mk_obj(), catt::mk_var(pt(i - 1)),
                                        catt::mk_var(pt(i))));
  }
  return ctx;
}

// Random 1-cell from p_a to p_b in chain_ctx(n), built from the corpus
// coherences id / comp / comp3 and the chain's edges.
struct PathGen {
  const catt::Environment& env;
  std::mt19937 rng;
  std::size_t id_ref, comp_ref, comp3_ref;

  explicit PathGen(const catt::Environment& e, unsigned seed)
      : env(e), rng(seed),
        id_ref(*e.lookup("id")),
        comp_ref(*e.lookup("comp")),
        comp3_ref(*e.lookup("comp3")) {}

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  catt::TermPtr point(int i) { return catt::mk_var("p" + std::to_string(i)); }
  catt::TermPtr edge(int i) { return catt::mk_var("e" + std::to_string(i)); }

  catt::TermPtr id_at(int i) {
    catt::CattSub s;
    s.bindings.emplace_back("x", point(i));
    return catt::mk_coh_app(id_ref, std::move(s));
  }

  catt::TermPtr comp2(int a, int m, int b, catt::TermPtr f, catt::TermPtr g) {
    catt::CattSub s;
    s.bindings.emplace_back("x", point(a));
    s.bindings.emplace_back("y", point(m));
    s.bindings.emplace_back("f", std::move(f));
    s.bindings.emplace_back("z", point(b));
    s.bindings.emplace_back("g", std::move(g));
    return catt::mk_coh_app(comp_ref, std::move(s));
  }

  // Random term of type p_a -> p_b (a <= b), depth-bounded.
  catt::TermPtr path(int a, int b, int depth = 0) {
    if (a == b) {
      if (depth < 3 && pick(0, 2) == 0) {
        int m = a;
        return comp2(a, m, b, path(a, m, depth + 1), path(m, b, depth + 1));
      }
      return id_at(a);
    }
    if (b == a + 1 && (depth >= 3 || pick(0, 2) != 0)) return edge(a);
    int m = pick(a, b);
    if (depth >= 4) {  // keep terms small
      catt::TermPtr t = edge(a);
      for (int i = a + 1; i < b; ++i) t = comp2(a, i, i + 1, std::move(t), edge(i));
      return t;
    }
    return comp2(a, m, b, path(a, m, depth + 1), path(m, b, depth + 1));
  }

  // Random substitution chain_ctx(m) <- chain_ctx(n): points map to a sorted
  // random selection, edges to random paths between consecutive images.
  catt::CattSub chain_sub(int n, int m) {
    std::vector<int> idx;
    idx.push_back(pick(0, m - 1));
    for (int i = 1; i < n; ++i) idx.push_back(pick(idx.back(), m - 1));
    catt::CattSub s;
    s.bindings.emplace_back("p0", point(idx[0]));
    for (int i = 1; i < n; ++i) {
      s.bindings.emplace_back("p" + std::to_string(i), point(idx[i]));
      s.bindings.emplace_back("e" + std::to_string(i - 1), path(idx[i - 1], idx[i]));
    }
    return s;
  }
};

}  // namespace testutil
