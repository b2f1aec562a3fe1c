#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "diskmap/errors.hpp"
#include "diskmap/wirtinger.hpp"

namespace diskmap {

/// Malformed expression text. `position` counts Unicode code points from the
/// start of the input and never exceeds its length.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string message)
      : Error("parse error at offset " + std::to_string(position) + ": " + message),
        position_(position),
        message_(std::move(message)) {}
  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

enum class ExprOp : std::uint8_t {
  Literal,
  Variable,
  ConstI,
  ConstE,
  ConstPi,
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  IntPow,  // child ^ int_exponent
  Conj,
  Re,
  Im,
  Abs,
  Log,
  Exp,
  Pow,  // pow(child, real_exponent)
};

struct ExprNode {
  ExprOp op = ExprOp::Literal;
  std::size_t position = 0;
  cplx literal{};
  int int_exponent = 0;
  double real_exponent = 0.0;
  std::int32_t lhs = -1;
  std::int32_t rhs = -1;
};

struct ParseOptions {
  std::string variable = "z";
};

inline constexpr int kMaxIntExponent = 64;
inline constexpr int kMaxTreeDepth = 256;

/// Immutable parsed expression in one complex variable.
///
/// Grammar (whitespace is insignificant, `−` U+2212 is accepted for `-`):
///
///     expr   := term (('+' | '-') term)*
///     term   := factor (('*' | '/') factor)*
///     factor := '-' factor | power
///     power  := atom ('^' ['+'|'-'] integer)?
///     atom   := number | var | 'i' | 'e' | 'pi'
///             | func '(' expr ')' | 'pow' '(' expr ',' expr ')' | '(' expr ')'
///     func   := conj | re | im | abs | log | exp
///
/// The second argument of `pow` must be a real constant. Nodes are stored in
/// post-order, so evaluation is a single forward sweep.
class Expr {
 public:
  static Expr parse(std::string_view text, const ParseOptions& options = {});

  /// Exact jet by forward propagation of (value, d/dz, d/dzbar).
  WirtingerJet jet(cplx z) const;
  cplx value(cplx z) const;

  /// Fully parenthesized text that reparses to a structurally equal tree.
  std::string to_string() const;

  bool depends_on_variable() const;
  const std::string& variable() const noexcept { return variable_; }
  const std::string& source() const noexcept { return source_; }
  std::span<const ExprNode> nodes() const noexcept { return *nodes_; }
  std::size_t depth() const noexcept { return depth_; }

  /// Structural equality; source positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  Expr(std::shared_ptr<const std::vector<ExprNode>> nodes, std::string variable, std::string source,
       std::size_t depth)
      : nodes_(std::move(nodes)), variable_(std::move(variable)), source_(std::move(source)), depth_(depth) {}

  std::shared_ptr<const std::vector<ExprNode>> nodes_;
  std::string variable_;
  std::string source_;
  std::size_t depth_ = 0;
};

inline Expr parse_expr(std::string_view text, const ParseOptions& options = {}) {
  return Expr::parse(text, options);
}

inline WirtingerJet eval_jet(const Expr& e, cplx z) { return e.jet(z); }

/// Parses and evaluates an expression that must not mention the variable.
cplx eval_constant(std::string_view text);

/// Shortest decimal that round-trips to `x`.
std::string format_double(double x);

}  // namespace diskmap
