#include "inqmc/parse.hpp"

#include <cctype>
#include <optional>
#include <utility>
#include <vector>

namespace inqmc {

namespace {

enum class TokKind {
  LParen, RParen, Comma, Semicolon, Dot,
  Amp, Vee, ClassicalOr, Arrow, Equal, NotEqual, Tilde, Question,
  Bottom, Ident, End,
};

struct Token {
  TokKind kind;
  std::string_view text;
  SourceSpan span;
};

const char* tok_name(TokKind k) {
  switch (k) {
    case TokKind::LParen: return "'('";
    case TokKind::RParen: return "')'";
    case TokKind::Comma: return "','";
    case TokKind::Semicolon: return "';'";
    case TokKind::Dot: return "'.'";
    case TokKind::Amp: return "'&'";
    case TokKind::Vee: return "'V'";
    case TokKind::ClassicalOr: return "'\\/'";
    case TokKind::Arrow: return "'->'";
    case TokKind::Equal: return "'='";
    case TokKind::NotEqual: return "'!='";
    case TokKind::Tilde: return "'~'";
    case TokKind::Question: return "'?'";
    case TokKind::Bottom: return "'_|_'";
    case TokKind::Ident: return "identifier";
    case TokKind::End: return "end of input";
  }
  return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto make_span = [](std::size_t b, std::size_t e) {
    return SourceSpan{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(e)};
  };
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t b = i;
    if (text.substr(i, 3) == "_|_") {
      out.push_back({TokKind::Bottom, text.substr(i, 3), make_span(b, i + 3)});
      i += 3;
      continue;
    }
    if (text.substr(i, 2) == "->") {
      out.push_back({TokKind::Arrow, text.substr(i, 2), make_span(b, i + 2)});
      i += 2;
      continue;
    }
    if (text.substr(i, 2) == "!=") {
      out.push_back({TokKind::NotEqual, text.substr(i, 2), make_span(b, i + 2)});
      i += 2;
      continue;
    }
    if (text.substr(i, 2) == "\\/") {
      out.push_back({TokKind::ClassicalOr, text.substr(i, 2), make_span(b, i + 2)});
      i += 2;
      continue;
    }
    switch (c) {
      case '(': out.push_back({TokKind::LParen, text.substr(i, 1), make_span(b, i + 1)}); ++i; continue;
      case ')': out.push_back({TokKind::RParen, text.substr(i, 1), make_span(b, i + 1)}); ++i; continue;
      case ',': out.push_back({TokKind::Comma, text.substr(i, 1), make_span(b, i + 1)}); ++i; continue;
      case ';': out.push_back({TokKind::Semicolon, text.substr(i, 1), make_span(b, i + 1)}); ++i; continue;
      case '.': out.push_back({TokKind::Dot, text.substr(i, 1), make_span(b, i + 1)}); ++i; continue;
      case '&': out.push_back({TokKind::Amp, text.substr(i, 1), make_span(b, i + 1)}); ++i; continue;
      case '~': out.push_back({TokKind::Tilde, text.substr(i, 1), make_span(b, i + 1)}); ++i; continue;
      case '?': out.push_back({TokKind::Question, text.substr(i, 1), make_span(b, i + 1)}); ++i; continue;
      case '=': out.push_back({TokKind::Equal, text.substr(i, 1), make_span(b, i + 1)}); ++i; continue;
      default: break;
    }
    if (ident_start(c)) {
      std::size_t e = i + 1;
      while (e < n && ident_char(text[e])) ++e;
      std::string_view word = text.substr(i, e - i);
      TokKind kind = (word == "V") ? TokKind::Vee : TokKind::Ident;
      out.push_back({kind, word, make_span(b, e)});
      i = e;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", make_span(b, b + 1));
  }
  out.push_back({TokKind::End, {}, make_span(n, n)});
  return out;
}

SourceSpan merge(SourceSpan a, SourceSpan b) {
  return {std::min(a.begin, b.begin), std::max(a.end, b.end)};
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig)
      : tokens_(lex(text)), sig_(sig) {}

  Formula parse_full_formula() {
    Formula f = parse_formula();
    expect(TokKind::End);
    return f;
  }

  Term parse_full_term() {
    Term t = parse_term();
    expect(TokKind::End);
    return t;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token advance() { return tokens_[pos_++]; }

  Token expect(TokKind kind) {
    if (peek().kind != kind)
      throw ParseError(std::string("expected ") + tok_name(kind) + ", found " +
                           tok_name(peek().kind),
                       peek().span);
    return advance();
  }

  bool is_keyword(std::string_view w) const {
    return w == "forall" || w == "iexists" || w == "exists" || w == "lam" ||
           w == "mu" || w == "dep";
  }

  Formula parse_formula() {
    Formula left = parse_disj();
    if (peek().kind == TokKind::Arrow) {
      advance();
      Formula right = parse_formula();  // right-associative
      SourceSpan span = merge(left.span(), right.span());
      return Formula::implies(std::move(left), std::move(right), span);
    }
    return left;
  }

  Formula parse_disj() {
    Formula acc = parse_conj();
    while (peek().kind == TokKind::Vee || peek().kind == TokKind::ClassicalOr) {
      bool classical = advance().kind == TokKind::ClassicalOr;
      Formula rhs = parse_conj();
      SourceSpan span = merge(acc.span(), rhs.span());
      acc = classical ? make_or(std::move(acc), std::move(rhs))
                      : Formula::inq_disj(std::move(acc), std::move(rhs), span);
    }
    return acc;
  }

  Formula parse_conj() {
    Formula acc = parse_unary();
    while (peek().kind == TokKind::Amp) {
      advance();
      Formula rhs = parse_unary();
      SourceSpan span = merge(acc.span(), rhs.span());
      acc = Formula::conj(std::move(acc), std::move(rhs), span);
    }
    return acc;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case TokKind::Tilde: {
        advance();
        return make_not(parse_unary());
      }
      case TokKind::Question: {
        advance();
        return make_qmark(parse_unary());
      }
      case TokKind::Ident: {
        std::string_view word = peek().text;
        if (word == "forall" || word == "iexists" || word == "exists")
          return parse_quantifier();
        return parse_atom();
      }
      default:
        return parse_atom();
    }
  }

  Formula parse_quantifier() {
    Token head = advance();
    Token var = expect(TokKind::Ident);
    if (is_keyword(var.text))
      throw ParseError("cannot bind keyword '" + std::string(var.text) + "'",
                       var.span);
    if (sig_.declares(var.text))
      throw ParseError(
          "cannot bind '" + std::string(var.text) + "': declared in signature",
          var.span);
    expect(TokKind::Dot);
    Formula body = parse_formula();  // extends maximally to the right
    SourceSpan span = merge(head.span, body.span());
    std::string name(var.text);
    if (head.text == "forall")
      return Formula::forall(std::move(name), std::move(body), span);
    if (head.text == "iexists")
      return Formula::inq_exists(std::move(name), std::move(body), span);
    return make_exists(std::move(name), std::move(body));
  }

  Formula parse_atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case TokKind::Bottom: {
        Token t = advance();
        return Formula::bottom(t.span);
      }
      case TokKind::LParen: {
        advance();
        Formula f = parse_formula();
        expect(TokKind::RParen);
        return f;
      }
      case TokKind::Ident:
        break;
      default:
        throw ParseError(std::string("expected a formula, found ") +
                             tok_name(tok.kind),
                         tok.span);
    }

    std::string_view word = tok.text;
    if (word == "lam" || word == "mu") {
      Token head = advance();
      expect(TokKind::LParen);
      Term t = parse_term();
      expect(TokKind::RParen);
      return head.text == "lam" ? make_lambda(t, &sig_) : make_mu(t, &sig_);
    }
    if (word == "dep") {
      advance();
      expect(TokKind::LParen);
      std::vector<Term> determinants;
      determinants.push_back(parse_term());
      while (peek().kind == TokKind::Comma) {
        advance();
        determinants.push_back(parse_term());
      }
      expect(TokKind::Semicolon);
      Term dependent = parse_term();
      expect(TokKind::RParen);
      return make_dep(determinants, dependent, &sig_);
    }
    if (const PredicateDecl* pred = sig_.find_predicate(word)) {
      Token head = advance();
      std::vector<Term> args;
      SourceSpan span = head.span;
      if (peek().kind == TokKind::LParen) {
        advance();
        if (peek().kind != TokKind::RParen) {
          args.push_back(parse_term());
          while (peek().kind == TokKind::Comma) {
            advance();
            args.push_back(parse_term());
          }
        }
        span = merge(span, expect(TokKind::RParen).span);
      }
      if (static_cast<int>(args.size()) != pred->arity)
        throw ParseError("arity mismatch for predicate '" + pred->name +
                             "': declared " + std::to_string(pred->arity) +
                             ", used with " + std::to_string(args.size()),
                         span);
      return Formula::atom(pred->name, std::move(args), span);
    }

    // Not a predicate: must be the left side of an (in)equality.
    Term lhs = parse_term();
    if (peek().kind == TokKind::Equal) {
      advance();
      Term rhs = parse_term();
      return Formula::equals(std::move(lhs), std::move(rhs));
    }
    if (peek().kind == TokKind::NotEqual) {
      advance();
      Term rhs = parse_term();
      return make_neq(std::move(lhs), std::move(rhs));
    }
    throw ParseError(std::string("expected '=' or '!=' after term, found ") +
                         tok_name(peek().kind),
                     peek().span);
  }

  Term parse_term() {
    Token head = expect(TokKind::Ident);
    if (is_keyword(head.text))
      throw ParseError("keyword '" + std::string(head.text) +
                           "' cannot start a term",
                       head.span);
    std::string name(head.text);
    if (peek().kind == TokKind::LParen) {
      const FunctionDecl* fn = sig_.find_function(name);
      if (fn == nullptr)
        throw ParseError("unknown function symbol: " + name, head.span);
      advance();
      std::vector<Term> args;
      if (peek().kind != TokKind::RParen) {
        args.push_back(parse_term());
        while (peek().kind == TokKind::Comma) {
          advance();
          args.push_back(parse_term());
        }
      }
      Token close = expect(TokKind::RParen);
      if (static_cast<int>(args.size()) != fn->arity)
        throw ParseError("arity mismatch for function '" + name +
                             "': declared " + std::to_string(fn->arity) +
                             ", used with " + std::to_string(args.size()),
                         merge(head.span, close.span));
      return Term::apply(std::move(name), std::move(args));
    }
    if (const FunctionDecl* fn = sig_.find_function(name)) {
      if (fn->arity != 0)
        throw ParseError("function '" + name + "' needs " +
                             std::to_string(fn->arity) + " arguments",
                         head.span);
      return Term::constant(std::move(name));
    }
    if (sig_.find_predicate(name) != nullptr)
      throw ParseError("predicate '" + name + "' used as a term", head.span);
    return Term::variable(std::move(name));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig,
                      const ParseOptions& options) {
  Parser parser(text, sig);
  Formula f = parser.parse_full_formula();
  if (!options.allow_free_variables) {
    std::set<std::string> fv = free_vars(f);
    if (!fv.empty())
      throw ParseError("formula has free variable '" + *fv.begin() + "'",
                       SourceSpan{0, static_cast<std::uint32_t>(text.size())});
  }
  return f;
}

Term parse_term(std::string_view text, const Signature& sig) {
  Parser parser(text, sig);
  return parser.parse_full_term();
}

}  // namespace inqmc
