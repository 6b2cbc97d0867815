#include <cctype>
#include <optional>
#include <regex>

#include "chcv/ast.hpp"

namespace chcv {
namespace {

enum class Tok {
  Ident,   // lowercase-initial
  VarTok,  // uppercase- or underscore-initial
  Number,
  LParen,
  RParen,
  Comma,
  Dot,
  Neck,  // :-
  Plus,
  Minus,
  Star,
  Slash,
  Rel,
  End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, col;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      if (pos_ >= s_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '%') {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token next() {
    const std::size_t line = line_, col = col_, start = pos_;
    auto make = [&](Tok k) { return Token{k, std::string(s_.substr(start, pos_ - start)), line, col}; };
    char c = s_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) advance();
      return make(std::islower(static_cast<unsigned char>(c)) ? Tok::Ident : Tok::VarTok);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance();
      if (pos_ + 1 < s_.size() && s_[pos_] == '.' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
        advance();
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) advance();
      }
      return make(Tok::Number);
    }
    auto peek = [&](std::size_t k) { return pos_ + k < s_.size() ? s_[pos_ + k] : '\0'; };
    advance();
    switch (c) {
      case '(': return make(Tok::LParen);
      case ')': return make(Tok::RParen);
      case ',': return make(Tok::Comma);
      case '.': return make(Tok::Dot);
      case '+': return make(Tok::Plus);
      case '-': return make(Tok::Minus);
      case '*': return make(Tok::Star);
      case '/': return make(Tok::Slash);
      case ':':
        if (peek(0) == '-') {
          advance();
          return make(Tok::Neck);
        }
        break;
      case '=':
        if (peek(0) == '<') advance();
        return make(Tok::Rel);
      case '<':
      case '>':
        if (peek(0) == '=') advance();
        return make(Tok::Rel);
      default: break;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }

  std::string_view s_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

Rational parse_number(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(text);
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  mpz_class den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  Rational q(mpz_class(digits), den);
  q.canonicalize();
  return q;
}

RelOp parse_rel(const std::string& s) {
  if (s == "=") return RelOp::Eq;
  if (s == "=<" || s == "<=") return RelOp::Le;
  if (s == ">=") return RelOp::Ge;
  if (s == "<") return RelOp::Lt;
  return RelOp::Gt;
}

struct RawAtom {
  std::string predicate;
  std::vector<LinearTerm> args;
  std::size_t line, col;
};

struct RawClause {
  std::optional<std::string> label;
  bool constrained_head = false;
  std::vector<LinearConstraint> head_constraint;
  std::optional<RawAtom> head;
  std::vector<LinearConstraint> constraints;
  std::vector<RawAtom> body;
  VarSet names;
  std::size_t line, col;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  std::vector<RawClause> clauses() {
    std::vector<RawClause> out;
    while (peek().kind != Tok::End) out.push_back(clause());
    return out;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
  Token take() { return t_[i_ < t_.size() - 1 ? i_++ : i_]; }
  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg + (at.kind == Tok::End ? " at end of input" : " near '" + at.text + "'"), at.line,
                     at.col);
  }
  Token expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what, peek());
    return take();
  }

  RawClause clause() {
    RawClause rc;
    rc.line = peek().line;
    rc.col = peek().col;
    anon_ = 0;
    names_ = &rc.names;
    if (peek().kind == Tok::Ident && peek(1).kind == Tok::Dot && peek().text != "false" &&
        peek().text != "true") {
      rc.label = take().text;
      take();
    }
    // Head: `false`, an atom, or (extended form) a constraint conjunction.
    if (peek().kind == Tok::Ident && peek().text == "false") {
      take();
      rc.head = RawAtom{std::string(kFalse), {}, rc.line, rc.col};
    } else if (peek().kind == Tok::Ident && peek().text != "true") {
      rc.head = atom();
    } else {
      rc.constrained_head = true;
      rc.head_constraint.push_back(constraint_item());
      while (peek().kind == Tok::Comma) {
        take();
        rc.head_constraint.push_back(constraint_item());
      }
    }
    if (peek().kind == Tok::Neck) {
      take();
      body_item(rc);
      while (peek().kind == Tok::Comma) {
        take();
        body_item(rc);
      }
    }
    expect(Tok::Dot, "'.' at end of clause");
    return rc;
  }

  void body_item(RawClause& rc) {
    const Token& t = peek();
    if (t.kind == Tok::Ident && (t.text == "true" || t.text == "false")) {
      take();
      rc.constraints.push_back(t_[i_ - 1].text == "false" ? LinearConstraint::falsum() : LinearConstraint::verum());
      return;
    }
    if (t.kind == Tok::Ident) {
      rc.body.push_back(atom());
      return;
    }
    rc.constraints.push_back(constraint_item());
  }

  LinearConstraint constraint_item() {
    if (peek().kind == Tok::Ident && peek().text == "true") {
      take();
      return LinearConstraint::verum();
    }
    LinearTerm lhs = expr();
    if (peek().kind != Tok::Rel) fail("expected a relation (=, =<, <=, >=, <, >)", peek());
    RelOp op = parse_rel(take().text);
    LinearTerm rhs = expr();
    return LinearConstraint::make(lhs, op, rhs);
  }

  RawAtom atom() {
    Token name = expect(Tok::Ident, "predicate name");
    RawAtom a{name.text, {}, name.line, name.col};
    if (peek().kind == Tok::LParen) {
      take();
      a.args.push_back(expr());
      while (peek().kind == Tok::Comma) {
        take();
        a.args.push_back(expr());
      }
      expect(Tok::RParen, "')'");
    }
    return a;
  }

  LinearTerm expr() {
    LinearTerm t = product();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = take().kind == Tok::Minus;
      LinearTerm r = product();
      if (minus) {
        t -= r;
      } else {
        t += r;
      }
    }
    return t;
  }

  LinearTerm product() {
    LinearTerm t = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      Token op = take();
      LinearTerm r = unary();
      if (op.kind == Tok::Star) {
        if (!t.is_constant() && !r.is_constant()) fail("non-linear term", op);
        t = t.is_constant() ? r * t.constant() : t * r.constant();
      } else {
        if (!r.is_constant()) fail("non-linear term (division by a variable)", op);
        if (sgn(r.constant()) == 0) fail("division by zero", op);
        t = t * (Rational(1) / r.constant());
      }
    }
    return t;
  }

  LinearTerm unary() {
    if (peek().kind == Tok::Minus) {
      take();
      return -unary();
    }
    if (peek().kind == Tok::Plus) {
      take();
      return unary();
    }
    return primary();
  }

  LinearTerm primary() {
    Token t = take();
    switch (t.kind) {
      case Tok::Number: return LinearTerm(parse_number(t.text));
      case Tok::VarTok: {
        Var v(t.text);
        if (t.text == "_") v = Var("_Anon" + std::to_string(++anon_));
        names_->insert(v);
        return LinearTerm(v);
      }
      case Tok::LParen: {
        LinearTerm e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      default: fail("expected a term", t);
    }
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
  std::size_t anon_ = 0;
  VarSet* names_ = nullptr;
};

// Atom arguments become distinct variables; constants, compound terms and
// repeated variables are replaced by fresh variables plus equalities.
class Flattener {
 public:
  explicit Flattener(RawClause& rc) : rc_(rc) {}

  Atom flatten(const RawAtom& a, std::vector<LinearConstraint>& extra) {
    Atom out{a.predicate, {}};
    VarSet seen;
    for (const auto& term : a.args) {
      std::optional<Var> plain;
      if (term.coeffs().size() == 1 && sgn(term.constant()) == 0 && term.coeffs().begin()->second == 1) {
        plain = term.coeffs().begin()->first;
      }
      if (plain && !seen.count(*plain)) {
        seen.insert(*plain);
        out.args.push_back(*plain);
        continue;
      }
      Var f = plain ? fresh(plain->name + "_") : fresh("_K");
      extra.push_back(LinearConstraint::make(LinearTerm(f), RelOp::Eq, term));
      seen.insert(f);
      out.args.push_back(f);
    }
    return out;
  }

 private:
  Var fresh(const std::string& base) {
    for (std::size_t k = 1;; ++k) {
      Var v(base + std::to_string(k));
      if (!rc_.names.count(v)) {
        rc_.names.insert(v);
        return v;
      }
    }
  }
  RawClause& rc_;
};

void check_name(const RawAtom& a, const ParseOptions& opts) {
  if (!opts.reserve_generated_names) return;
  static const std::regex reserved(R"(.*(__q|__a|_[0-9]+)$)");
  if (std::regex_match(a.predicate, reserved)) {
    throw ParseError("predicate name " + a.predicate + " is reserved for generated predicates", a.line, a.col);
  }
}

}  // namespace

Program parse_program(std::string_view text, const ParseOptions& opts) {
  std::vector<RawClause> raw = Parser(Lexer(text).run()).clauses();
  std::vector<Clause> out;
  std::set<std::string> labels;
  for (const auto& rc : raw) {
    if (rc.label) labels.insert(*rc.label);
  }
  std::size_t auto_id = 0;
  for (auto& rc : raw) {
    Clause c;
    if (rc.label) {
      c.id = *rc.label;
    } else {
      do {
        c.id = "c" + std::to_string(++auto_id);
      } while (labels.count(c.id));
      labels.insert(c.id);
    }
    Flattener flat(rc);
    std::vector<LinearConstraint> extra;
    if (rc.constrained_head) {
      c.constrained_head = true;
      c.head = Atom{std::string(kFalse), {}};
      c.head_constraint = rc.head_constraint;
    } else {
      check_name(*rc.head, opts);
      if (rc.head->predicate == kFalse && !rc.head->args.empty()) {
        throw ParseError("false takes no arguments", rc.line, rc.col);
      }
      c.head = flat.flatten(*rc.head, extra);
    }
    for (const auto& b : rc.body) {
      check_name(b, opts);
      c.body.push_back(flat.flatten(b, extra));
    }
    for (const auto& k : rc.constraints) c.constraint.add(k);
    for (const auto& k : extra) c.constraint.add(k);
    out.push_back(std::move(c));
  }
  try {
    return Program(std::move(out));
  } catch (const ParseError&) {
    throw;
  } catch (const ProgramError& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

}  // namespace chcv
