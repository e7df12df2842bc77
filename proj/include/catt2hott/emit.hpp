#pragma once

// Serialization of translated judgements. Two formats:
//   Internal  — fully parenthesized prefix notation, re-parseable, with a
//               versioned header line (see docs/formats.md).
//   Vernacular — one Definition per entry after a preamble defining Id,
//               refl and J; Tarski codes are erased (El B prints as B).
// Both are deterministic: reserved-namespace variables are canonically
// renamed before printing (the base type variable keeps the name B,
// generated names become v0, v1, ...).

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catt2hott/errors.hpp"
#include "catt2hott/hott.hpp"
#include "catt2hott/translate.hpp"

namespace catt2hott::emit {

namespace h = catt2hott::hott;
using catt::Var;

enum class EmitFormat { Internal, Vernacular };

inline const char* internal_header() { return ";; catt2hott internal v1"; }

// --- canonical renaming of reserved-namespace variables ---

namespace detail {

struct Renamer {
  std::map<Var, Var> assigned;
  std::set<std::string> taken;
  std::size_t next = 0;

  Var display(const Var& v) {
    if (!catt::is_reserved(v)) return v;
    auto it = assigned.find(v);
    if (it != assigned.end()) return it->second;
    std::string name;
    if (v == translate::base_type_var() && !taken.count("B")) {
      name = "B";
    } else {
      do {
        name = "v" + std::to_string(next++);
      } while (taken.count(name));
    }
    taken.insert(name);
    assigned.emplace(v, name);
    return name;
  }
};

inline void collect_names(const h::HTermPtr& t, std::set<std::string>& out);

inline void collect_names(const h::HTypePtr& a, std::set<std::string>& out) {
  if (h::as_ty<h::HottType::TypeU>(a)) return;
  if (const auto* el = h::as_ty<h::HottType::El>(a)) {
    collect_names(el->code, out);
  } else if (const auto* id = h::as_ty<h::HottType::Id>(a)) {
    collect_names(id->ty, out);
    collect_names(id->lhs, out);
    collect_names(id->rhs, out);
  } else {
    const auto* pi = h::as_ty<h::HottType::Pi>(a);
    if (!catt::is_reserved(pi->x)) out.insert(pi->x);
    collect_names(pi->dom, out);
    collect_names(pi->cod, out);
  }
}

inline void collect_names(const h::HTermPtr& t, std::set<std::string>& out) {
  if (const auto* v = h::as<h::HottTerm::HVar>(t)) {
    if (!catt::is_reserved(v->v)) out.insert(v->v);
  } else if (const auto* r = h::as<h::HottTerm::Refl>(t)) {
    collect_names(r->ty, out);
    collect_names(r->tm, out);
  } else if (const auto* j = h::as<h::HottTerm::J>(t)) {
    collect_names(j->ty, out);
    collect_names(j->point, out);
    for (const Var& b : {j->motive.x, j->motive.y, j->motive.e})
      if (!catt::is_reserved(b)) out.insert(b);
    collect_names(j->motive.body, out);
    collect_names(j->base, out);
  } else if (const auto* l = h::as<h::HottTerm::Lam>(t)) {
    if (!catt::is_reserved(l->x)) out.insert(l->x);
    collect_names(l->dom, out);
    collect_names(l->body, out);
  } else {
    const auto* a = h::as<h::HottTerm::App>(t);
    collect_names(a->fn, out);
    collect_names(a->arg, out);
  }
}

inline h::HTermPtr rename(const h::HTermPtr& t, Renamer& r);

inline h::HTypePtr rename(const h::HTypePtr& a, Renamer& r) {
  if (h::as_ty<h::HottType::TypeU>(a)) return a;
  if (const auto* el = h::as_ty<h::HottType::El>(a)) return h::hel(rename(el->code, r));
  if (const auto* id = h::as_ty<h::HottType::Id>(a))
    return h::hid(rename(id->ty, r), rename(id->lhs, r), rename(id->rhs, r));
  const auto* pi = h::as_ty<h::HottType::Pi>(a);
  Var x = r.display(pi->x);
  return h::hpi(x, rename(pi->dom, r), rename(pi->cod, r));
}

inline h::HTermPtr rename(const h::HTermPtr& t, Renamer& r) {
  if (const auto* v = h::as<h::HottTerm::HVar>(t)) return h::hvar(r.display(v->v));
  if (const auto* rf = h::as<h::HottTerm::Refl>(t))
    return h::hrefl(rename(rf->ty, r), rename(rf->tm, r));
  if (const auto* j = h::as<h::HottTerm::J>(t)) {
    h::HTypePtr ty = rename(j->ty, r);
    h::HTermPtr point = rename(j->point, r);
    Var x = r.display(j->motive.x);
    Var y = r.display(j->motive.y);
    Var e = r.display(j->motive.e);
    h::HTypePtr body = rename(j->motive.body, r);
    return h::hj(std::move(ty), std::move(point), h::Motive{x, y, e, std::move(body)},
                 rename(j->base, r));
  }
  if (const auto* l = h::as<h::HottTerm::Lam>(t)) {
    h::HTypePtr dom = rename(l->dom, r);
    Var x = r.display(l->x);
    return h::hlam(x, std::move(dom), rename(l->body, r));
  }
  const auto* a = h::as<h::HottTerm::App>(t);
  return h::happ(rename(a->fn, r), rename(a->arg, r));
}

}  // namespace detail

inline h::HTermPtr canonical_names(const h::HTermPtr& t) {
  detail::Renamer r;
  detail::collect_names(t, r.taken);
  return detail::rename(t, r);
}

inline h::HTypePtr canonical_names(const h::HTypePtr& a) {
  detail::Renamer r;
  detail::collect_names(a, r.taken);
  return detail::rename(a, r);
}

// --- Internal format ---

namespace detail {

inline void print_internal(const h::HTermPtr& t, std::string& out);

inline void print_internal(const h::HTypePtr& a, std::string& out) {
  if (h::as_ty<h::HottType::TypeU>(a)) {
    out += "Type";
  } else if (const auto* el = h::as_ty<h::HottType::El>(a)) {
    out += "(El ";
    print_internal(el->code, out);
    out += ")";
  } else if (const auto* id = h::as_ty<h::HottType::Id>(a)) {
    out += "(Id ";
    print_internal(id->ty, out);
    out += " ";
    print_internal(id->lhs, out);
    out += " ";
    print_internal(id->rhs, out);
    out += ")";
  } else {
    const auto* pi = h::as_ty<h::HottType::Pi>(a);
    out += "(Pi (" + pi->x + " ";
    print_internal(pi->dom, out);
    out += ") ";
    print_internal(pi->cod, out);
    out += ")";
  }
}

inline void print_internal(const h::HTermPtr& t, std::string& out) {
  if (const auto* v = h::as<h::HottTerm::HVar>(t)) {
    out += v->v;
  } else if (const auto* r = h::as<h::HottTerm::Refl>(t)) {
    out += "(refl ";
    print_internal(r->ty, out);
    out += " ";
    print_internal(r->tm, out);
    out += ")";
  } else if (const auto* j = h::as<h::HottTerm::J>(t)) {
    out += "(J ";
    print_internal(j->ty, out);
    out += " ";
    print_internal(j->point, out);
    out += " (" + j->motive.x + " " + j->motive.y + " " + j->motive.e + " ";
    print_internal(j->motive.body, out);
    out += ") ";
    print_internal(j->base, out);
    out += ")";
  } else if (const auto* l = h::as<h::HottTerm::Lam>(t)) {
    out += "(lam (" + l->x + " ";
    print_internal(l->dom, out);
    out += ") ";
    print_internal(l->body, out);
    out += ")";
  } else {
    const auto* a = h::as<h::HottTerm::App>(t);
    out += "(app ";
    print_internal(a->fn, out);
    out += " ";
    print_internal(a->arg, out);
    out += ")";
  }
}

}  // namespace detail

inline std::string print_internal_term(const h::HTermPtr& t) {
  std::string out;
  detail::print_internal(canonical_names(t), out);
  return out;
}

inline std::string print_internal_type(const h::HTypePtr& a) {
  std::string out;
  detail::print_internal(canonical_names(a), out);
  return out;
}

// --- Internal format re-parser (round-trip checking) ---

namespace detail {

struct SexpParser {
  const std::string& src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\n' || src[pos] == '\t')) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(ErrorKind::SyntaxError, std::string("expected '") + c + "' in internal form");
  }

  std::string atom() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() && src[pos] != ' ' && src[pos] != '(' && src[pos] != ')' &&
           src[pos] != '\n' && src[pos] != '\t')
      ++pos;
    if (start == pos) fail(ErrorKind::SyntaxError, "expected atom in internal form");
    return src.substr(start, pos - start);
  }

  std::string peek_atom() {
    std::size_t save = pos;
    std::string a = atom();
    pos = save;
    return a;
  }

  h::HTypePtr parse_type() {
    skip_ws();
    if (pos < src.size() && src[pos] != '(') {
      std::string a = atom();
      if (a == "Type") return h::type_u();
      fail(ErrorKind::SyntaxError, "unexpected type atom '" + a + "'");
    }
    expect('(');
    std::string head = atom();
    if (head == "El") {
      h::HTermPtr code = parse_term();
      expect(')');
      return h::hel(std::move(code));
    }
    if (head == "Id") {
      h::HTypePtr ty = parse_type();
      h::HTermPtr lhs = parse_term();
      h::HTermPtr rhs = parse_term();
      expect(')');
      return h::hid(std::move(ty), std::move(lhs), std::move(rhs));
    }
    if (head == "Pi") {
      expect('(');
      std::string x = atom();
      h::HTypePtr dom = parse_type();
      expect(')');
      h::HTypePtr cod = parse_type();
      expect(')');
      return h::hpi(x, std::move(dom), std::move(cod));
    }
    fail(ErrorKind::SyntaxError, "unexpected type head '" + head + "'");
  }

  h::HTermPtr parse_term() {
    skip_ws();
    if (pos < src.size() && src[pos] != '(') return h::hvar(atom());
    expect('(');
    std::string head = atom();
    if (head == "refl") {
      h::HTypePtr ty = parse_type();
      h::HTermPtr tm = parse_term();
      expect(')');
      return h::hrefl(std::move(ty), std::move(tm));
    }
    if (head == "lam") {
      expect('(');
      std::string x = atom();
      h::HTypePtr dom = parse_type();
      expect(')');
      h::HTermPtr body = parse_term();
      expect(')');
      return h::hlam(x, std::move(dom), std::move(body));
    }
    if (head == "app") {
      h::HTermPtr fn = parse_term();
      h::HTermPtr arg = parse_term();
      expect(')');
      return h::happ(std::move(fn), std::move(arg));
    }
    if (head == "J") {
      h::HTypePtr ty = parse_type();
      h::HTermPtr point = parse_term();
      expect('(');
      std::string x = atom();
      std::string y = atom();
      std::string e = atom();
      h::HTypePtr body = parse_type();
      expect(')');
      h::HTermPtr base = parse_term();
      expect(')');
      return h::hj(std::move(ty), std::move(point), h::Motive{x, y, e, std::move(body)},
                   std::move(base));
    }
    fail(ErrorKind::SyntaxError, "unexpected term head '" + head + "'");
  }
};

}  // namespace detail

inline h::HTermPtr parse_internal(const std::string& text) {
  detail::SexpParser p{text};
  h::HTermPtr t = p.parse_term();
  p.skip_ws();
  if (p.pos != text.size()) fail(ErrorKind::SyntaxError, "trailing input after internal term");
  return t;
}

// --- Vernacular format ---

namespace detail {

void print_vernacular(const h::HTermPtr& t, std::string& out, bool parens);

inline void print_vernacular(const h::HTypePtr& a, std::string& out, bool parens) {
  if (h::as_ty<h::HottType::TypeU>(a)) {
    out += "Type";
  } else if (const auto* el = h::as_ty<h::HottType::El>(a)) {
    // Tarski codes erased: El B prints as B.
    print_vernacular(el->code, out, parens);
  } else if (const auto* id = h::as_ty<h::HottType::Id>(a)) {
    if (parens) out += "(";
    out += "Id ";
    print_vernacular(id->ty, out, true);
    out += " ";
    print_vernacular(id->lhs, out, true);
    out += " ";
    print_vernacular(id->rhs, out, true);
    if (parens) out += ")";
  } else {
    const auto* pi = h::as_ty<h::HottType::Pi>(a);
    if (parens) out += "(";
    out += "forall (" + pi->x + " : ";
    print_vernacular(pi->dom, out, false);
    out += "), ";
    print_vernacular(pi->cod, out, false);
    if (parens) out += ")";
  }
}

inline void print_vernacular(const h::HTermPtr& t, std::string& out, bool parens) {
  if (const auto* v = h::as<h::HottTerm::HVar>(t)) {
    out += v->v;
  } else if (const auto* r = h::as<h::HottTerm::Refl>(t)) {
    if (parens) out += "(";
    out += "refl ";
    print_vernacular(r->ty, out, true);
    out += " ";
    print_vernacular(r->tm, out, true);
    if (parens) out += ")";
  } else if (const auto* j = h::as<h::HottTerm::J>(t)) {
    // The preamble J fixes the first endpoint, so the motive is emitted
    // with x instantiated to the point.
    if (parens) out += "(";
    out += "J ";
    print_vernacular(j->ty, out, true);
    out += " ";
    print_vernacular(j->point, out, true);
    out += " (fun (" + j->motive.y + " : ";
    print_vernacular(j->ty, out, false);
    out += ") (" + j->motive.e + " : Id ";
    print_vernacular(j->ty, out, true);
    out += " ";
    print_vernacular(j->point, out, true);
    out += " " + j->motive.y + ") => ";
    h::HTypePtr body = h::subst1(j->motive.body, j->motive.x, j->point);
    print_vernacular(body, out, false);
    out += ") ";
    print_vernacular(j->base, out, true);
    if (parens) out += ")";
  } else if (const auto* l = h::as<h::HottTerm::Lam>(t)) {
    if (parens) out += "(";
    out += "fun (" + l->x + " : ";
    print_vernacular(l->dom, out, false);
    out += ") => ";
    print_vernacular(l->body, out, false);
    if (parens) out += ")";
  } else {
    const auto* a = h::as<h::HottTerm::App>(t);
    if (parens) out += "(";
    print_vernacular(a->fn, out, false);
    out += " ";
    print_vernacular(a->arg, out, true);
    if (parens) out += ")";
  }
}

}  // namespace detail

inline std::string vernacular_preamble() {
  return "(* catt2hott vernacular v1 *)\n"
         "Inductive Id (A : Type) (u : A) : A -> Type := refl : Id A u u.\n"
         "Definition J (A : Type) (u : A) (P : forall (y : A), Id A u y -> Type)\n"
         "  (p : P u (refl A u)) : forall (y : A) (e : Id A u y), P y e :=\n"
         "  fun (y : A) (e : Id A u y) => match e with refl _ _ => p end.\n";
}

// --- top-level emission ---

inline std::string emit(const std::string& name, const translate::TranslationResult& res,
                        EmitFormat fmt) {
  if (fmt == EmitFormat::Internal) {
    std::string out = "(def " + name + " " + print_internal_type(res.closed_ty) + " " +
                      print_internal_term(res.closed_tm) + ")";
    return out;
  }
  h::HTypePtr ty = canonical_names(res.closed_ty);
  h::HTermPtr tm = canonical_names(res.closed_tm);
  std::string out = "Definition " + name + " : ";
  detail::print_vernacular(ty, out, false);
  out += " :=\n  ";
  detail::print_vernacular(tm, out, false);
  out += ".";
  return out;
}

// --- size statistics ---
//
// Node taxonomy: every constructor and variable occurrence counts one node
// (lam, Pi, app, Id, refl, J, Type, variables), except that El applied to a
// variable code counts as a single base-type reference.

namespace detail {

std::size_t nodes(const h::HTermPtr& t);

inline std::size_t nodes(const h::HTypePtr& a) {
  if (h::as_ty<h::HottType::TypeU>(a)) return 1;
  if (const auto* el = h::as_ty<h::HottType::El>(a)) {
    if (h::as<h::HottTerm::HVar>(el->code)) return 1;
    return 1 + nodes(el->code);
  }
  if (const auto* id = h::as_ty<h::HottType::Id>(a))
    return 1 + nodes(id->ty) + nodes(id->lhs) + nodes(id->rhs);
  const auto* pi = h::as_ty<h::HottType::Pi>(a);
  return 1 + nodes(pi->dom) + nodes(pi->cod);
}

inline std::size_t nodes(const h::HTermPtr& t) {
  if (h::as<h::HottTerm::HVar>(t)) return 1;
  if (const auto* r = h::as<h::HottTerm::Refl>(t)) return 1 + nodes(r->ty) + nodes(r->tm);
  if (const auto* j = h::as<h::HottTerm::J>(t))
    return 1 + nodes(j->ty) + nodes(j->point) + nodes(j->motive.body) + nodes(j->base);
  if (const auto* l = h::as<h::HottTerm::Lam>(t)) return 1 + nodes(l->dom) + nodes(l->body);
  const auto* a = h::as<h::HottTerm::App>(t);
  return nodes(a->fn) + nodes(a->arg) + 1;
}

}  // namespace detail

struct Measure {
  std::size_t node_count = 0;
  std::size_t printed_size = 0;
};

inline Measure measure(const translate::TranslationResult& res) {
  h::HTermPtr nf = h::normalize(res.closed_tm);
  Measure m;
  m.node_count = detail::nodes(nf);
  m.printed_size = print_internal_term(nf).size();
  return m;
}

}  // namespace catt2hott::emit
