#pragma once

// Concrete syntax: the `coh`/`let` declaration language, with grouped
// binders `(x y : ty)`, `*` for the object type, `u -> v` arrows with an
// inferred base, `#` line comments, and application-style substitutions
// with implicit arguments.
//
// The meta-operation syntax of the full CaTT tool (`op { .. }`, inverses
// `I`/`U`, functorialisation brackets `[..]`, holes `_`, nested ps-context
// binders) is recognised and rejected with a dedicated diagnostic.

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "catt2hott/catt.hpp"
#include "catt2hott/errors.hpp"
#include "catt2hott/syntax.hpp"

namespace catt2hott::surface {

using namespace catt2hott::catt;

// --- surface AST ---

struct SurfaceExpr;
using ExprPtr = std::shared_ptr<const SurfaceExpr>;

struct SurfaceExpr {
  struct Ident {
    std::string name;
  };
  struct App {
    std::string head;
    std::vector<ExprPtr> args;
  };
  struct ArrowTy {
    ExprPtr src;
    ExprPtr tgt;
  };
  struct Star {};
  std::variant<Ident, App, ArrowTy, Star> node;
  int line = 0, col = 0;
};

struct Binder {
  std::vector<std::string> names;
  ExprPtr ty;
};

struct SurfaceDecl {
  enum class Kind { Coh, Let } kind;
  std::string name;
  std::vector<Binder> telescope;
  ExprPtr ty;    // required for Coh, optional ascription for Let
  ExprPtr body;  // Let only
  int line = 0, col = 0;
};

// --- lexer ---

namespace detail {

struct Token {
  enum class Kind { Ident, LParen, RParen, Colon, Equals, Arrow, Star, KwCoh, KwLet, Eof } kind;
  std::string text;
  int line, col;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };
  auto meta = [&](const std::string& what) {
    fail(ErrorKind::MetaOperationUnsupported,
         "meta-operation unsupported: " + what + " at line " + std::to_string(line) + ", column " +
             std::to_string(col));
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    int tl = line, tc = col;
    switch (c) {
      case '(': out.push_back({Token::Kind::LParen, "(", tl, tc}); advance(1); continue;
      case ')': out.push_back({Token::Kind::RParen, ")", tl, tc}); advance(1); continue;
      case ':': out.push_back({Token::Kind::Colon, ":", tl, tc}); advance(1); continue;
      case '=': out.push_back({Token::Kind::Equals, "=", tl, tc}); advance(1); continue;
      case '*': out.push_back({Token::Kind::Star, "*", tl, tc}); advance(1); continue;
      case '[': case ']': meta("functorialisation bracket"); break;
      case '{': case '}': meta("opposite block"); break;
      default: break;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Token::Kind::Arrow, "->", tl, tc});
      advance(2);
      continue;
    }
    if (ident_start(c)) {
      std::size_t start = i;
      while (i < text.size() && ident_char(text[i])) advance(1);
      std::string word = text.substr(start, i - start);
      if (word == "_") meta("hole '_'");
      if (word == "op") meta("opposite 'op'");
      if (word == "I" || word == "U") meta("inverse/cancellation '" + word + "'");
      if (word == "coh") {
        out.push_back({Token::Kind::KwCoh, word, tl, tc});
      } else if (word == "let") {
        out.push_back({Token::Kind::KwLet, word, tl, tc});
      } else {
        out.push_back({Token::Kind::Ident, word, tl, tc});
      }
      continue;
    }
    fail(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "' at line " +
                                     std::to_string(line) + ", column " + std::to_string(col));
  }
  out.push_back({Token::Kind::Eof, "", line, col});
  return out;
}

// --- parser ---

struct Parser {
  std::vector<Token> toks;
  std::size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  const Token& next() { return toks[pos++]; }

  [[noreturn]] void err(const std::string& expected) {
    const Token& t = peek();
    fail(ErrorKind::SyntaxError, "expected " + expected + " at line " + std::to_string(t.line) +
                                     ", column " + std::to_string(t.col) +
                                     (t.text.empty() ? "" : " (found '" + t.text + "')"));
  }

  std::string expect_ident() {
    if (peek().kind != Token::Kind::Ident) err("identifier");
    return next().text;
  }

  void expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k) err(what);
    next();
  }

  ExprPtr atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Ident) {
      next();
      return std::make_shared<const SurfaceExpr>(
          SurfaceExpr{SurfaceExpr::Ident{t.text}, t.line, t.col});
    }
    if (t.kind == Token::Kind::LParen) {
      next();
      ExprPtr e = expr();
      expect(Token::Kind::RParen, "')'");
      return e;
    }
    err("expression");
  }

  bool at_atom_start() const {
    return peek().kind == Token::Kind::Ident || peek().kind == Token::Kind::LParen;
  }

  // expr := atom atom*  — an application's head must be a plain name.
  ExprPtr expr() {
    const Token& t = peek();
    ExprPtr head = atom();
    if (!at_atom_start()) return head;
    const auto* id = std::get_if<SurfaceExpr::Ident>(&head->node);
    if (!id) err("no curried application of a parenthesized expression;");
    std::vector<ExprPtr> args;
    while (at_atom_start()) args.push_back(atom());
    return std::make_shared<const SurfaceExpr>(
        SurfaceExpr{SurfaceExpr::App{id->name, std::move(args)}, t.line, t.col});
  }

  // tyexpr := '*' | expr '->' expr
  ExprPtr tyexpr() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Star) {
      next();
      return std::make_shared<const SurfaceExpr>(SurfaceExpr{SurfaceExpr::Star{}, t.line, t.col});
    }
    ExprPtr src = expr();
    expect(Token::Kind::Arrow, "'->'");
    ExprPtr tgt = expr();
    return std::make_shared<const SurfaceExpr>(
        SurfaceExpr{SurfaceExpr::ArrowTy{std::move(src), std::move(tgt)}, t.line, t.col});
  }

  Binder binder() {
    expect(Token::Kind::LParen, "'(' starting a binder group");
    Binder b;
    while (peek().kind == Token::Kind::Ident) b.names.push_back(next().text);
    if (b.names.empty()) err("binder name");
    if (peek().kind == Token::Kind::LParen)
      fail(ErrorKind::MetaOperationUnsupported,
           "meta-operation unsupported: abbreviated ps-context binder at line " +
               std::to_string(peek().line) + ", column " + std::to_string(peek().col));
    expect(Token::Kind::Colon, "':' in binder");
    b.ty = tyexpr();
    expect(Token::Kind::RParen, "')' closing a binder group");
    return b;
  }

  SurfaceDecl decl() {
    const Token& t = peek();
    SurfaceDecl d;
    d.line = t.line;
    d.col = t.col;
    if (t.kind == Token::Kind::KwCoh) {
      next();
      d.kind = SurfaceDecl::Kind::Coh;
      d.name = expect_ident();
      while (peek().kind == Token::Kind::LParen) d.telescope.push_back(binder());
      if (d.telescope.empty()) err("binder group");
      expect(Token::Kind::Colon, "':' before the coherence type");
      d.ty = tyexpr();
      return d;
    }
    if (t.kind == Token::Kind::KwLet) {
      next();
      d.kind = SurfaceDecl::Kind::Let;
      d.name = expect_ident();
      while (peek().kind == Token::Kind::LParen) d.telescope.push_back(binder());
      if (peek().kind == Token::Kind::Colon) {
        next();
        d.ty = tyexpr();
      }
      expect(Token::Kind::Equals, "'='");
      d.body = expr();
      return d;
    }
    err("'coh' or 'let'");
  }
};

}  // namespace detail

inline std::vector<SurfaceDecl> parse(const std::string& text) {
  detail::Parser p{detail::lex(text)};
  std::vector<SurfaceDecl> out;
  while (p.peek().kind != detail::Token::Kind::Eof) out.push_back(p.decl());
  return out;
}

// --- first-order matching for implicit arguments ---

namespace detail {

using Unifier = std::map<Var, TermPtr>;

bool match_term(const TermPtr& pattern, const TermPtr& concrete, Unifier& u);

inline bool match_type(const TypePtr& pattern, const TypePtr& concrete, Unifier& u) {
  if (is_obj(pattern)) return is_obj(concrete);
  const auto* pa = as_arr(pattern);
  const auto* ca = as_arr(concrete);
  return pa && ca && match_type(pa->base, ca->base, u) && match_term(pa->src, ca->src, u) &&
         match_term(pa->tgt, ca->tgt, u);
}

inline bool match_term(const TermPtr& pattern, const TermPtr& concrete, Unifier& u) {
  if (const auto* v = as_var(pattern)) {
    auto it = u.find(v->v);
    if (it != u.end()) return term_eq(it->second, concrete);
    u.emplace(v->v, concrete);
    return true;
  }
  const auto* pc = as_coh_app(pattern);
  const auto* cc = as_coh_app(concrete);
  if (!pc || !cc || pc->coh != cc->coh) return false;
  if (pc->sub.bindings.size() != cc->sub.bindings.size()) return false;
  for (std::size_t i = 0; i < pc->sub.bindings.size(); ++i) {
    if (pc->sub.bindings[i].first != cc->sub.bindings[i].first) return false;
    if (!match_term(pc->sub.bindings[i].second, cc->sub.bindings[i].second, u)) return false;
  }
  return true;
}

}  // namespace detail

// --- elaboration ---

class Elaborator {
 public:
  explicit Elaborator(const Environment& env) : env_(env) {}

  // Elaborates an expression in the given ambient context.
  TermPtr elaborate(const CattCtx& ctx, const ExprPtr& e) const {
    if (const auto* id = std::get_if<SurfaceExpr::Ident>(&e->node)) {
      if (ctx_assoc(ctx, id->name)) return mk_var(id->name);
      if (env_.lookup(id->name)) return elaborate_app(ctx, id->name, {}, e);
      fail(ErrorKind::UnboundVariable, "unknown name '" + id->name + "' at " + at(e));
    }
    if (const auto* app = std::get_if<SurfaceExpr::App>(&e->node)) {
      if (ctx_assoc(ctx, app->head))
        fail(ErrorKind::ArityMismatch, "variable '" + app->head + "' applied to arguments at " + at(e));
      return elaborate_app(ctx, app->head, app->args, e);
    }
    fail(ErrorKind::SyntaxError, "expected a term expression at " + at(e));
  }

  // `u -> v` with the base type inferred from the endpoints; `*` is Obj.
  TypePtr elaborate_type(const CattCtx& ctx, const ExprPtr& e) const {
    if (std::holds_alternative<SurfaceExpr::Star>(e->node)) return mk_obj();
    if (const auto* arrow = std::get_if<SurfaceExpr::ArrowTy>(&e->node)) {
      TermPtr src = elaborate(ctx, arrow->src);
      TermPtr tgt = elaborate(ctx, arrow->tgt);
      TypePtr src_ty = check_term(env_, ctx, src);
      TypePtr tgt_ty = check_term(env_, ctx, tgt);
      if (!type_eq(src_ty, tgt_ty))
        fail(ErrorKind::SourceTargetTypeMismatch,
             "arrow endpoints have different types at " + at(e));
      return mk_arr(src_ty, std::move(src), std::move(tgt));
    }
    fail(ErrorKind::SyntaxError, "expected a type expression at " + at(e));
  }

  CattCtx elaborate_telescope(const std::vector<Binder>& telescope) const {
    CattCtx ctx;
    for (const auto& b : telescope) {
      TypePtr ty = elaborate_type(ctx, b.ty);
      for (const auto& name : b.names) ctx.decls.emplace_back(name, ty);
    }
    return ctx;
  }

 private:
  std::string at(const ExprPtr& e) const {
    return "line " + std::to_string(e->line) + ", column " + std::to_string(e->col);
  }

  struct Target {
    const CattCtx* ctx;
    const std::vector<bool>* mask;
    bool is_let;
    const LetDef* let = nullptr;
    CoherenceRef ref = 0;
  };

  Target resolve(const std::string& head, const ExprPtr& e) const {
    auto idx = env_.lookup(head);
    if (!idx) fail(ErrorKind::UnknownCoherence, "unknown name '" + head + "' at " + at(e));
    const auto& entry = env_.entry(*idx);
    if (const auto* coh = std::get_if<Coherence>(&entry))
      return Target{&coh->ctx, &coh->implicit_mask, false, nullptr, *idx};
    const auto* let = std::get_if<LetDef>(&entry);
    return Target{&let->ctx, &let->implicit_mask, true, let, *idx};
  }

  TermPtr elaborate_app(const CattCtx& ctx, const std::string& head,
                        const std::vector<ExprPtr>& args, const ExprPtr& e) const {
    Target target = resolve(head, e);
    const CattCtx& decl_ctx = *target.ctx;
    const std::vector<bool>& mask = *target.mask;

    std::size_t explicit_count = 0;
    for (bool implicit : mask)
      if (!implicit) ++explicit_count;

    bool full_positional = args.size() == decl_ctx.decls.size() && explicit_count != decl_ctx.decls.size();
    if (args.size() != explicit_count && !full_positional)
      fail(ErrorKind::ArityMismatch,
           "'" + head + "' expects " + std::to_string(explicit_count) + " arguments, got " +
               std::to_string(args.size()) + " at " + at(e));

    detail::Unifier unifier;
    std::size_t arg_index = 0;
    for (std::size_t i = 0; i < decl_ctx.decls.size(); ++i) {
      const auto& [x, declared_ty] = decl_ctx.decls[i];
      bool takes_arg = full_positional || !mask[i];
      if (!takes_arg) continue;
      TermPtr image = elaborate(ctx, args[arg_index++]);
      TypePtr inferred = check_term(env_, ctx, image);
      // Bind the variable itself, then recover implicits by matching the
      // declared type against the inferred type of the image.
      auto it = unifier.find(x);
      if (it != unifier.end()) {
        if (!term_eq(it->second, image))
          fail(ErrorKind::ElaborationTypeMismatch,
               "conflicting images for '" + x + "' at " + at(e));
      } else {
        unifier.emplace(x, image);
      }
      if (!detail::match_type(declared_ty, inferred, unifier))
        fail(ErrorKind::ElaborationTypeMismatch,
             "argument for '" + x + "' of '" + head + "' has an incompatible type at " + at(e));
    }

    CattSub sub;
    for (const auto& [x, _] : decl_ctx.decls) {
      auto it = unifier.find(x);
      if (it == unifier.end())
        fail(ErrorKind::CannotInferImplicit,
             "cannot infer implicit argument '" + x + "' of '" + head + "' at " + at(e));
      sub.bindings.emplace_back(x, it->second);
    }
    check_sub_catt(env_, ctx, sub, decl_ctx);

    if (target.is_let) return apply_sub_term(target.let->body, sub);  // lets are transparent
    return mk_coh_app(target.ref, std::move(sub));
  }

  const Environment& env_;
};

// --- declaration processing ---

inline std::size_t process_decl(Environment& env, const SurfaceDecl& d) {
  Elaborator elab(env);
  CattCtx ctx = elab.elaborate_telescope(d.telescope);
  if (d.kind == SurfaceDecl::Kind::Coh) {
    check_ctx(env, ctx);
    TypePtr ty = elab.elaborate_type(ctx, d.ty);
    return register_coherence(env, d.name, ctx, ty);
  }
  check_ctx(env, ctx);
  TermPtr body = elab.elaborate(ctx, d.body);
  TypePtr ascribed = d.ty ? elab.elaborate_type(ctx, d.ty) : nullptr;
  return register_let(env, d.name, ctx, body, ascribed);
}

inline Environment process_file(const std::string& text) {
  Environment env;
  for (const auto& d : parse(text)) process_decl(env, d);
  return env;
}

// --- printing (fully explicit application syntax) ---

inline void print_term(const Environment& env, const TermPtr& t, std::string& out,
                       bool parens = false) {
  if (const auto* v = as_var(t)) {
    out += v->v;
    return;
  }
  const auto* app = as_coh_app(t);
  if (parens) out += "(";
  out += env.name_of(app->coh);
  for (const auto& [_, image] : app->sub.bindings) {
    out += " ";
    print_term(env, image, out, /*parens=*/as_coh_app(image) != nullptr);
  }
  if (parens) out += ")";
}

inline std::string print_term(const Environment& env, const TermPtr& t) {
  std::string out;
  print_term(env, t, out);
  return out;
}

}  // namespace catt2hott::surface
