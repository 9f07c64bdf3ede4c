#include "cooperkit/parser.hpp"

#include <cctype>
#include <optional>

namespace cooperkit {

namespace {

enum class Tok { Var, Const, Prefix, Binary, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  Conn conn = Conn::Neg;
  std::size_t pos = 0;
};

bool isKeyword(std::string_view w) { return w == "cap" || w == "cup" || w == "cvee"; }

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    const std::size_t start = i_;
    if (i_ >= s_.size()) return {Tok::End, "", Conn::Neg, start};
    const char c = s_[i_];
    auto take = [&](std::size_t n, Tok k, Conn conn) {
      i_ += n;
      return Token{k, std::string(s_.substr(start, n)), conn, start};
    };
    if (c == '(') return take(1, Tok::LParen, Conn::Neg);
    if (c == ')') return take(1, Tok::RParen, Conn::Neg);
    if (c == ',') return take(1, Tok::Comma, Conn::Neg);
    if (c == '~') return take(1, Tok::Prefix, Conn::Neg);
    if (c == '&') return take(1, Tok::Binary, Conn::And);
    if (c == '|') return take(1, Tok::Binary, Conn::Or);
    if (starts("<->")) return take(3, Tok::Binary, Conn::Iff);
    if (starts("<>")) return take(2, Tok::Prefix, Conn::Dia);
    if (starts("->")) return take(2, Tok::Binary, Conn::Imp);
    if (starts("=>")) return take(2, Tok::Binary, Conn::DImp);
    if (starts(">>")) return take(2, Tok::Binary, Conn::Hook);
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) ++j;
      const auto word = s_.substr(i_, j - i_);
      if (word == "cap") return take(j - i_, Tok::Binary, Conn::Cap);
      if (word == "cup") return take(j - i_, Tok::Binary, Conn::Cup);
      if (word == "cvee") return take(j - i_, Tok::Binary, Conn::CVee);
      if (word == "HALF") return take(j - i_, Tok::Const, Conn::Half);
      if (word == "ONE") return take(j - i_, Tok::Const, Conn::One);
      if (word == "ZERO") return take(j - i_, Tok::Const, Conn::Zero);
      if (std::islower(static_cast<unsigned char>(c)) && !isKeyword(word))
        return take(j - i_, Tok::Var, Conn::Neg);
      throw ParseError("invalid identifier '" + std::string(word) + "'", start);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start);
  }

 private:
  bool starts(std::string_view t) const { return s_.substr(i_, t.size()) == t; }
  std::string_view s_;
  std::size_t i_ = 0;
};

int binaryPrecedence(Conn c) {
  switch (c) {
    case Conn::Iff: return 1;
    case Conn::Imp:
    case Conn::DImp:
    case Conn::Hook: return 2;
    case Conn::Or:
    case Conn::Cup:
    case Conn::CVee: return 3;
    default: return 4;
  }
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : lex_(text), sig_(sig) { advance(); }

  Formula formula(int minPrec = 1) {
    Formula lhs = prefix();
    while (cur_.kind == Tok::Binary && binaryPrecedence(cur_.conn) >= minPrec) {
      const Token op = cur_;
      const int prec = binaryPrecedence(op.conn);
      advance();
      // Right associative at the implication level.
      Formula rhs = formula(prec == 2 ? prec : prec + 1);
      lhs = build(op, {lhs, rhs});
    }
    return lhs;
  }

  const Token& current() const { return cur_; }
  void advance() { cur_ = lex_.next(); }

 private:
  Formula prefix() {
    switch (cur_.kind) {
      case Tok::Prefix: {
        const Token op = cur_;
        advance();
        return build(op, {prefix()});
      }
      case Tok::Var: {
        Formula v = Formula::var(cur_.text);
        advance();
        return v;
      }
      case Tok::Const: {
        const Token op = cur_;
        advance();
        return build(op, {});
      }
      case Tok::LParen: {
        advance();
        Formula inner = formula();
        if (cur_.kind != Tok::RParen) throw ParseError("expected ')'", cur_.pos);
        advance();
        return inner;
      }
      case Tok::End: throw ParseError("unexpected end of input", cur_.pos);
      default: throw ParseError("unexpected token '" + cur_.text + "'", cur_.pos);
    }
  }

  Formula build(const Token& op, std::vector<Formula> args) {
    if (isPrimitive(op.conn)) {
      auto declared = sig_.arityOf(op.conn);
      if (!declared)
        throw ParseError("unknown connective '" + op.text + "' (not in signature " +
                             sig_.toString() + ")",
                         op.pos);
      if (*declared != static_cast<int>(args.size()))
        throw ParseError("arity mismatch for '" + op.text + "': declared " +
                             std::to_string(*declared) + ", used with " +
                             std::to_string(args.size()),
                         op.pos);
    }
    return Formula::app(op.conn, std::move(args));
  }

  Lexer lex_;
  const Signature& sig_;
  Token cur_;
};

}  // namespace

Formula parse(std::string_view text, const Signature& sig) {
  Parser p(text, sig);
  Formula f = p.formula();
  if (p.current().kind != Tok::End)
    throw ParseError("unexpected token '" + p.current().text + "'", p.current().pos);
  return f;
}

std::vector<Formula> parseList(std::string_view text, const Signature& sig) {
  std::vector<Formula> out;
  bool blank = true;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
  if (blank) return out;
  Parser p(text, sig);
  while (true) {
    out.push_back(p.formula());
    if (p.current().kind == Tok::Comma) {
      p.advance();
      continue;
    }
    if (p.current().kind != Tok::End)
      throw ParseError("unexpected token '" + p.current().text + "'", p.current().pos);
    break;
  }
  return out;
}

}  // namespace cooperkit
