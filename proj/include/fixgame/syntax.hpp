#pragma once

#include "fixgame/eqsys.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace fixgame {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

// Malformed input. what() already carries "line:column: ".
class ParseError : public InvalidArgument {
 public:
  ParseError(SourcePos pos, const std::string& message);
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

// Unreadable file or similar; reported like a parse error.
class InputError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

std::string read_file(const std::string& path);

// Shared syntax of μ-calculus formulas, Łukasiewicz terms and equation
// bodies. Operators, loosest first:
//   mu x. e / nu x. e      (extends as far right as possible)
//   |  \/   (either spelling)
//   &  /\   (either spelling)
//   (+)
//   (.)
//   [] e   <> e   ~e   r*e
// Atoms: identifiers, numbers (0.375, 1/3), calls name(e, ...), (e).
struct Expr {
  enum class Kind { number, ident, unary, binary, binder, call };

  Kind kind = Kind::ident;
  std::string text;  // identifier, operator symbol, bound variable or callee
  Rational number;   // literal, or the factor of r*e
  Sign sign = Sign::mu;
  std::vector<Expr> kids;
  SourcePos pos;
};

Expr parse_expr(std::string_view text, SourcePos origin = {});

std::string to_string(const Expr& e);

struct DslEquation {
  std::string name;
  Sign sign = Sign::mu;
  Expr body;
  SourcePos pos;
};

// One equation per line: `name =mu expr` or `name =nu expr`; `#` starts a
// comment.
std::vector<DslEquation> parse_system_dsl(std::string_view text);

}  // namespace fixgame
