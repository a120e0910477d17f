#include "fixgame/syntax.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fixgame {

ParseError::ParseError(SourcePos pos, const std::string& message)
    : InvalidArgument(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
      pos_(pos),
      message_(message) {}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

enum class Tok { ident, number, symbol, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  Lexer(std::string_view text, SourcePos origin) : text_(text), pos_(origin) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      Token t;
      t.pos = pos_;
      if (i_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::ident;
        while (i_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_' ||
                                     text_[i_] == '\''))
          t.text += take();
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::number;
        digits(t.text);
        if (peek(0) == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
          t.text += take();
          digits(t.text);
        } else if (peek(0) == '/' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
          t.text += take();
          digits(t.text);
        }
      } else {
        t.kind = Tok::symbol;
        static const char* symbols[] = {"(+)", "(.)", "[]", "<>", "\\/", "/\\", "(", ")", "&", "|",
                                        "~",   "*",   ".",  ","};
        bool found = false;
        for (const char* s : symbols) {
          std::string_view sv(s);
          if (text_.substr(i_, sv.size()) == sv) {
            for (std::size_t k = 0; k < sv.size(); ++k) t.text += take();
            found = true;
            break;
          }
        }
        if (!found) throw ParseError(pos_, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char peek(std::size_t k) const { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; }

  char take() {
    char c = text_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  void digits(std::string& s) {
    while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) s += take();
  }

  void skip_space() {
    while (i_ < text_.size()) {
      char c = text_[i_];
      if (c == '#') {
        while (i_ < text_.size() && text_[i_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Expr parse_all() {
    Expr e = expr();
    if (cur().kind != Tok::end) fail("unexpected '" + cur().text + "'");
    return e;
  }

 private:
  const Token& cur() const { return toks_[k_]; }
  const Token& ahead(std::size_t d) const { return toks_[std::min(k_ + d, toks_.size() - 1)]; }
  bool is(const char* sym) const { return cur().kind == Tok::symbol && cur().text == sym; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(cur().pos, cur().kind == Tok::end ? msg + " (at end of input)" : msg);
  }

  void expect(const char* sym) {
    if (!is(sym)) fail(std::string("expected '") + sym + "'");
    ++k_;
  }

  bool is_binder() const {
    return cur().kind == Tok::ident && (cur().text == "mu" || cur().text == "nu") && ahead(1).kind == Tok::ident;
  }

  Expr expr() { return binary_level(0); }

  Expr binary_level(int level) {
    static const std::vector<std::vector<std::string>> ops{{"|", "\\/"}, {"&", "/\\"}, {"(+)"}, {"(.)"}};
    if (level == static_cast<int>(ops.size())) return unary();
    Expr lhs = binary_level(level + 1);
    while (cur().kind == Tok::symbol) {
      const auto& here = ops[static_cast<std::size_t>(level)];
      if (std::find(here.begin(), here.end(), cur().text) == here.end()) break;
      Expr node;
      node.kind = Expr::Kind::binary;
      node.text = cur().text;
      node.pos = cur().pos;
      ++k_;
      Expr rhs = binary_level(level + 1);
      node.kids.push_back(std::move(lhs));
      node.kids.push_back(std::move(rhs));
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr unary() {
    if (is("[]") || is("<>") || is("~")) {
      Expr node;
      node.kind = Expr::Kind::unary;
      node.text = cur().text;
      node.pos = cur().pos;
      ++k_;
      node.kids.push_back(unary());
      return node;
    }
    if (cur().kind == Tok::number && ahead(1).kind == Tok::symbol && ahead(1).text == "*") {
      Expr node;
      node.kind = Expr::Kind::unary;
      node.text = "*";
      node.pos = cur().pos;
      node.number = number();
      ++k_;
      node.kids.push_back(unary());
      return node;
    }
    return primary();
  }

  Rational number() {
    const Token& t = cur();
    Rational r;
    try {
      r = parse_rational(t.text);
    } catch (const std::exception&) {
      fail("malformed number '" + t.text + "'");
    }
    ++k_;
    return r;
  }

  Expr primary() {
    Expr node;
    node.pos = cur().pos;
    if (is_binder()) {
      node.kind = Expr::Kind::binder;
      node.sign = cur().text == "mu" ? Sign::mu : Sign::nu;
      ++k_;
      node.text = cur().text;
      ++k_;
      expect(".");
      node.kids.push_back(expr());
      return node;
    }
    if (cur().kind == Tok::number) {
      node.kind = Expr::Kind::number;
      node.text = cur().text;
      node.number = number();
      return node;
    }
    if (cur().kind == Tok::ident) {
      if (cur().text == "mu" || cur().text == "nu") fail("expected a variable after '" + cur().text + "'");
      node.text = cur().text;
      ++k_;
      if (is("(")) {
        node.kind = Expr::Kind::call;
        ++k_;
        node.kids.push_back(expr());
        while (is(",")) {
          ++k_;
          node.kids.push_back(expr());
        }
        expect(")");
      } else {
        node.kind = Expr::Kind::ident;
      }
      return node;
    }
    if (is("(")) {
      ++k_;
      Expr inner = expr();
      expect(")");
      return inner;
    }
    fail(cur().kind == Tok::end ? "expected an expression" : "unexpected '" + cur().text + "'");
  }

  std::vector<Token> toks_;
  std::size_t k_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::binder:
      return 0;
    case Expr::Kind::binary:
      if (e.text == "|" || e.text == "\\/") return 1;
      if (e.text == "&" || e.text == "/\\") return 2;
      if (e.text == "(+)") return 3;
      return 4;
    case Expr::Kind::unary:
      return 5;
    default:
      return 6;
  }
}

void print(const Expr& e, std::string& out) {
  auto child = [&](const Expr& k, int min) {
    bool paren = precedence(k) < min;
    if (paren) out += "(";
    print(k, out);
    if (paren) out += ")";
  };
  switch (e.kind) {
    case Expr::Kind::number:
    case Expr::Kind::ident:
      out += e.text;
      break;
    case Expr::Kind::unary:
      if (e.text == "*") {
        out += format_rational(e.number) + "*";
      } else {
        out += e.text;
        if (e.text != "~") out += " ";
      }
      child(e.kids[0], 5);
      break;
    case Expr::Kind::binary: {
      int p = precedence(e);
      child(e.kids[0], p);
      out += " " + e.text + " ";
      child(e.kids[1], p + 1);
      break;
    }
    case Expr::Kind::binder:
      out += std::string(e.sign == Sign::mu ? "mu " : "nu ") + e.text + ". ";
      print(e.kids[0], out);
      break;
    case Expr::Kind::call:
      out += e.text + "(";
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        if (i) out += ", ";
        print(e.kids[i], out);
      }
      out += ")";
      break;
  }
}

}  // namespace

Expr parse_expr(std::string_view text, SourcePos origin) { return Parser(Lexer(text, origin).run()).parse_all(); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

std::vector<DslEquation> parse_system_dsl(std::string_view text) {
  std::vector<DslEquation> out;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    std::size_t cut = line.find('#');
    std::string_view body = line.substr(0, cut);
    std::size_t i = 0;
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
    if (i < body.size()) {
      DslEquation eq;
      eq.pos = {line_no, i + 1};
      std::size_t j = i;
      while (j < body.size() && (std::isalnum(static_cast<unsigned char>(body[j])) || body[j] == '_' ||
                                 body[j] == '\''))
        ++j;
      if (j == i) throw ParseError(eq.pos, "expected an equation name");
      eq.name = std::string(body.substr(i, j - i));
      while (j < body.size() && std::isspace(static_cast<unsigned char>(body[j]))) ++j;
      SourcePos at{line_no, j + 1};
      if (body.substr(j, 3) == "=mu") {
        eq.sign = Sign::mu;
      } else if (body.substr(j, 3) == "=nu") {
        eq.sign = Sign::nu;
      } else {
        throw ParseError(at, "expected '=mu' or '=nu' after " + eq.name);
      }
      j += 3;
      for (const auto& prev : out)
        if (prev.name == eq.name) throw ParseError(eq.pos, "equation " + eq.name + " is defined twice");
      eq.body = parse_expr(body.substr(j), {line_no, j + 1});
      out.push_back(std::move(eq));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (out.empty()) throw ParseError({line_no == 0 ? 1 : line_no, 1}, "no equations");
  return out;
}

}  // namespace fixgame
