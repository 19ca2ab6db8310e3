#include "kbound/syntax.hpp"

#include <cctype>
#include <set>

#include "kbound/error.hpp"

namespace kbound {

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, Arrow, At, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    Token t{Tok::End, "", line_, column_};
    if (pos_ >= text_.size()) return t;
    char c = text_[pos_];
    if (is_ident_char(c)) {
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) t.text.push_back(advance());
      t.kind = Tok::Ident;
      return t;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      advance();
      advance();
      t.kind = Tok::Arrow;
      return t;
    }
    advance();
    switch (c) {
      case '(': t.kind = Tok::LParen; return t;
      case ')': t.kind = Tok::RParen; return t;
      case ',': t.kind = Tok::Comma; return t;
      case '.': t.kind = Tok::Dot; return t;
      case '@': t.kind = Tok::At; return t;
      default: throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
    }
  }

 private:
  static bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

struct Statement {
  std::string label;
  Token label_token{Tok::End, "", 0, 0};
  std::vector<Atom> body;
  std::vector<Atom> head;
  bool is_rule = false;
  Token start{Tok::End, "", 0, 0};
};

class Parser {
 public:
  Parser(std::string_view text, Signature& signature) : lexer_(text), signature_(signature) {
    current_ = lexer_.next();
  }

  bool done() const { return current_.kind == Tok::End; }

  Statement statement() {
    Statement s;
    s.start = current_;
    if (current_.kind == Tok::At) {
      shift();
      s.label_token = current_;
      s.label = expect(Tok::Ident, "rule label").text;
    }
    s.body = conjunction();
    if (current_.kind == Tok::Arrow) {
      shift();
      s.is_rule = true;
      s.head = conjunction();
    }
    expect(Tok::Dot, "'.'");
    return s;
  }

 private:
  void shift() { current_ = lexer_.next(); }

  Token expect(Tok kind, const char* what) {
    if (current_.kind != kind) {
      throw ParseError(std::string("expected ") + what, current_.line, current_.column);
    }
    Token t = current_;
    shift();
    return t;
  }

  std::vector<Atom> conjunction() {
    std::vector<Atom> atoms{atom()};
    while (current_.kind == Tok::Comma) {
      shift();
      atoms.push_back(atom());
    }
    return atoms;
  }

  Atom atom() {
    Token name = expect(Tok::Ident, "predicate");
    if (!std::islower(static_cast<unsigned char>(name.text[0]))) {
      throw ParseError("predicate must start with a lowercase letter: " + name.text, name.line,
                       name.column);
    }
    std::vector<Term> args;
    if (current_.kind == Tok::LParen) {
      shift();
      if (current_.kind != Tok::RParen) {
        args.push_back(term());
        while (current_.kind == Tok::Comma) {
          shift();
          args.push_back(term());
        }
      }
      expect(Tok::RParen, "')'");
    }
    try {
      signature_.declare(name.text, args.size());
    } catch (const ArityConflict& e) {
      throw ArityConflict(std::to_string(name.line) + ":" + std::to_string(name.column) + ": " +
                          e.what());
    }
    for (Term t : args) signature_.add_constant(t);
    return Atom(Predicate(name.text), std::move(args));
  }

  Term term() {
    Token t = expect(Tok::Ident, "term");
    char c = t.text[0];
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') return Term::variable(t.text);
    return Term::constant(t.text);
  }

  Lexer lexer_;
  Signature& signature_;
  Token current_;
};

std::string atoms_text(const std::vector<Atom>& atoms) {
  std::string s;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) s += ", ";
    s += to_string(atoms[i]);
  }
  return s;
}

}  // namespace

RuleSet parse_rules(std::string_view text, Signature* signature) {
  Signature local = signature ? *signature : Signature();
  Parser parser(text, local);
  std::vector<Statement> statements;
  std::set<std::string> labels;
  while (!parser.done()) {
    Statement s = parser.statement();
    if (!s.is_rule) throw ParseError("expected '->' in rule", s.start.line, s.start.column);
    if (!s.label.empty() && !labels.insert(s.label).second) {
      throw ParseError("duplicate rule id " + s.label, s.label_token.line, s.label_token.column);
    }
    statements.push_back(std::move(s));
  }
  RuleSet rules;
  std::size_t position = 0;
  for (Statement& s : statements) {
    ++position;
    std::string id = s.label;
    if (id.empty()) {
      id = "R" + std::to_string(position);
      for (std::size_t extra = 1; labels.count(id); ++extra) {
        id = "R" + std::to_string(position) + "_" + std::to_string(extra);
      }
      labels.insert(id);
    }
    try {
      rules.add(Rule(id, std::move(s.body), std::move(s.head)));
    } catch (const InvalidRule& e) {
      throw ParseError(e.what(), s.start.line, s.start.column);
    }
  }
  if (signature) *signature = std::move(local);
  return rules;
}

FactBase parse_facts(std::string_view text, Signature* signature) {
  Signature local = signature ? *signature : Signature();
  Parser parser(text, local);
  FactBase f;
  while (!parser.done()) {
    Statement s = parser.statement();
    if (s.is_rule || !s.label.empty()) {
      throw ParseError("expected facts, found a rule", s.start.line, s.start.column);
    }
    for (const Atom& a : s.body) f.insert(a);
  }
  if (signature) *signature = std::move(local);
  return f;
}

std::string print_rule(const Rule& r) {
  return "@" + r.id() + " " + atoms_text(r.body()) + " -> " + atoms_text(r.head()) + ".";
}

std::string print_rules(const RuleSet& rules) {
  std::string s;
  for (const RulePtr& r : rules) s += print_rule(*r) + "\n";
  return s;
}

std::string print_facts(const FactBase& f) {
  std::string s;
  for (const Atom& a : f.sorted()) s += to_string(a) + ".\n";
  return s;
}

}  // namespace kbound
