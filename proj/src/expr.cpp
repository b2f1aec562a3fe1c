#include "diskmap/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <system_error>

namespace diskmap {

namespace {

std::vector<char32_t> decode_utf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      cp = c;
    } else if ((c & 0xE0) == 0xC0) {
      cp = c & 0x1F;
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      cp = c & 0x0F;
      extra = 2;
    } else if ((c & 0xF8) == 0xF0) {
      cp = c & 0x07;
      extra = 3;
    } else {
      throw ParseError(out.size(), "invalid UTF-8 byte");
    }
    for (int k = 1; k <= extra; ++k) {
      if (i + k >= text.size()) throw ParseError(out.size(), "truncated UTF-8 sequence");
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) throw ParseError(out.size(), "invalid UTF-8 continuation byte");
      cp = (cp << 6) | (cc & 0x3F);
    }
    out.push_back(cp);
    i += 1 + extra;
  }
  return out;
}

bool is_space(char32_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }
bool is_alpha(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

constexpr char32_t kUnicodeMinus = 0x2212;

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options)
      : chars_(decode_utf8(text)), variable_(options.variable) {}

  std::vector<ExprNode> run(std::size_t& depth) {
    std::int32_t root = parse_sum(0);
    skip_space();
    if (pos_ < chars_.size()) fail("unexpected character '" + describe(chars_[pos_]) + "'");
    depth = depth_[static_cast<std::size_t>(root)];
    return std::move(nodes_);
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const {
    throw ParseError(pos, message);
  }

  static std::string describe(char32_t c) {
    if (c < 0x80) return std::string(1, static_cast<char>(c));
    return "U+" + std::to_string(static_cast<unsigned long>(c));
  }

  void skip_space() {
    while (pos_ < chars_.size() && is_space(chars_[pos_])) ++pos_;
  }

  char32_t peek() {
    skip_space();
    if (pos_ >= chars_.size()) return 0;
    char32_t c = chars_[pos_];
    return c == kUnicodeMinus ? U'-' : c;
  }

  void guard_recursion(int level) const {
    if (level > kMaxTreeDepth) fail("expression nesting exceeds depth limit");
  }

  std::int32_t push(ExprNode node) {
    std::size_t d = 1;
    if (node.lhs >= 0) d = std::max(d, 1 + depth_[static_cast<std::size_t>(node.lhs)]);
    if (node.rhs >= 0) d = std::max(d, 1 + depth_[static_cast<std::size_t>(node.rhs)]);
    if (d > static_cast<std::size_t>(kMaxTreeDepth)) {
      fail_at(node.position, "expression tree depth exceeds " + std::to_string(kMaxTreeDepth));
    }
    nodes_.push_back(node);
    depth_.push_back(d);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  std::int32_t binary(ExprOp op, std::size_t position, std::int32_t lhs, std::int32_t rhs) {
    ExprNode n;
    n.op = op;
    n.position = position;
    n.lhs = lhs;
    n.rhs = rhs;
    return push(n);
  }

  std::int32_t unary(ExprOp op, std::size_t position, std::int32_t child) {
    ExprNode n;
    n.op = op;
    n.position = position;
    n.lhs = child;
    return push(n);
  }

  std::int32_t parse_sum(int level) {
    guard_recursion(level);
    std::int32_t lhs = parse_product(level + 1);
    for (;;) {
      const char32_t c = peek();
      if (c != '+' && c != '-') return lhs;
      const std::size_t at = pos_++;
      std::int32_t rhs = parse_product(level + 1);
      lhs = binary(c == '+' ? ExprOp::Add : ExprOp::Sub, at, lhs, rhs);
    }
  }

  std::int32_t parse_product(int level) {
    guard_recursion(level);
    std::int32_t lhs = parse_factor(level + 1);
    for (;;) {
      const char32_t c = peek();
      if (c != '*' && c != '/') return lhs;
      const std::size_t at = pos_++;
      std::int32_t rhs = parse_factor(level + 1);
      lhs = binary(c == '*' ? ExprOp::Mul : ExprOp::Div, at, lhs, rhs);
    }
  }

  std::int32_t parse_factor(int level) {
    guard_recursion(level);
    if (peek() == '-') {
      const std::size_t at = pos_++;
      return unary(ExprOp::Neg, at, parse_factor(level + 1));
    }
    return parse_power(level + 1);
  }

  std::int32_t parse_power(int level) {
    std::int32_t base = parse_atom(level + 1);
    if (peek() != '^') return base;
    const std::size_t at = pos_++;
    int sign = 1;
    char32_t c = peek();
    if (c == '+' || c == '-') {
      sign = c == '-' ? -1 : 1;
      ++pos_;
    }
    skip_space();
    const std::size_t digits_at = pos_;
    if (pos_ >= chars_.size() || !is_digit(chars_[pos_])) {
      fail("'^' expects an integer exponent (use pow(u, c) for real exponents)");
    }
    long long n = 0;
    while (pos_ < chars_.size() && is_digit(chars_[pos_])) {
      n = n * 10 + static_cast<long long>(chars_[pos_] - '0');
      if (n > 1'000'000) fail_at(digits_at, "integer exponent too large");
      ++pos_;
    }
    if (pos_ < chars_.size() && (chars_[pos_] == '.' || chars_[pos_] == 'e' || chars_[pos_] == 'E')) {
      fail_at(digits_at, "'^' expects an integer exponent (use pow(u, c) for real exponents)");
    }
    if (n > kMaxIntExponent) {
      fail_at(digits_at, "integer exponent magnitude exceeds " + std::to_string(kMaxIntExponent));
    }
    ExprNode node;
    node.op = ExprOp::IntPow;
    node.position = at;
    node.int_exponent = sign * static_cast<int>(n);
    node.lhs = base;
    return push(node);
  }

  std::int32_t parse_number() {
    const std::size_t start = pos_;
    std::string ascii;
    auto take_digits = [&] {
      std::size_t count = 0;
      while (pos_ < chars_.size() && is_digit(chars_[pos_])) {
        ascii.push_back(static_cast<char>(chars_[pos_++]));
        ++count;
      }
      return count;
    };
    std::size_t mantissa = take_digits();
    if (pos_ < chars_.size() && chars_[pos_] == '.') {
      ascii.push_back('.');
      ++pos_;
      mantissa += take_digits();
    }
    if (mantissa == 0) fail_at(start, "malformed number");
    if (pos_ < chars_.size() && (chars_[pos_] == 'e' || chars_[pos_] == 'E')) {
      // Only an exponent when followed by digits; otherwise `e` is left for the caller.
      std::size_t look = pos_ + 1;
      if (look < chars_.size() && (chars_[look] == '+' || chars_[look] == '-')) ++look;
      if (look < chars_.size() && is_digit(chars_[look])) {
        ascii.push_back('e');
        ++pos_;
        if (chars_[pos_] == '+' || chars_[pos_] == '-') ascii.push_back(static_cast<char>(chars_[pos_++]));
        take_digits();
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(ascii.data(), ascii.data() + ascii.size(), v);
    if (ec != std::errc{} || ptr != ascii.data() + ascii.size() || !std::isfinite(v)) {
      fail_at(start, "number out of range");
    }
    ExprNode node;
    node.op = ExprOp::Literal;
    node.position = start;
    node.literal = cplx{v, 0.0};
    return push(node);
  }

  void expect(char32_t c, const char* what) {
    if (peek() != c) {
      if (pos_ >= chars_.size()) fail(std::string("unexpected end of input, expected ") + what);
      fail(std::string("expected ") + what);
    }
    ++pos_;
  }

  std::int32_t parse_atom(int level) {
    guard_recursion(level);
    const char32_t c = peek();
    const std::size_t start = pos_;
    if (pos_ >= chars_.size()) fail("unexpected end of input");
    if (is_digit(c) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      std::int32_t inner = parse_sum(level + 1);
      expect(')', "')'");
      return inner;
    }
    if (!is_alpha(c)) fail("unexpected character '" + describe(c) + "'");

    std::string ident;
    while (pos_ < chars_.size() && (is_alpha(chars_[pos_]) || is_digit(chars_[pos_]))) {
      ident.push_back(static_cast<char>(chars_[pos_++]));
    }

    ExprNode leaf;
    leaf.position = start;
    if (ident == variable_) {
      leaf.op = ExprOp::Variable;
      return push(leaf);
    }
    if (ident == "i") {
      leaf.op = ExprOp::ConstI;
      return push(leaf);
    }
    if (ident == "e") {
      leaf.op = ExprOp::ConstE;
      return push(leaf);
    }
    if (ident == "pi") {
      leaf.op = ExprOp::ConstPi;
      return push(leaf);
    }

    static constexpr std::pair<const char*, ExprOp> kUnary[] = {
        {"conj", ExprOp::Conj}, {"re", ExprOp::Re},   {"im", ExprOp::Im},
        {"abs", ExprOp::Abs},   {"log", ExprOp::Log}, {"exp", ExprOp::Exp},
    };
    for (const auto& [name, op] : kUnary) {
      if (ident == name) {
        expect('(', "'(' after function name");
        std::int32_t arg = parse_sum(level + 1);
        if (peek() == ',') fail(ident + "() takes one argument");
        expect(')', "')'");
        return unary(op, start, arg);
      }
    }
    if (ident == "pow") {
      expect('(', "'(' after function name");
      std::int32_t base = parse_sum(level + 1);
      expect(',', "',' in pow(u, c)");
      skip_space();
      const std::size_t exp_at = pos_;
      const std::size_t mark = nodes_.size();
      std::int32_t exponent = parse_sum(level + 1);
      expect(')', "')'");
      (void)exponent;
      double c_value = constant_real(mark, exp_at);
      // Drop the exponent subtree; only its value is kept.
      nodes_.resize(mark);
      depth_.resize(mark);
      ExprNode node;
      node.op = ExprOp::Pow;
      node.position = start;
      node.real_exponent = c_value;
      node.lhs = base;
      return push(node);
    }
    fail_at(start, "unknown identifier '" + ident + "'");
  }

  double constant_real(std::size_t first, std::size_t at) {
    for (std::size_t k = first; k < nodes_.size(); ++k) {
      if (nodes_[k].op == ExprOp::Variable) fail_at(at, "pow exponent must be a real constant");
    }
    std::vector<ExprNode> sub(nodes_.begin() + static_cast<std::ptrdiff_t>(first), nodes_.end());
    for (auto& n : sub) {
      if (n.lhs >= 0) n.lhs -= static_cast<std::int32_t>(first);
      if (n.rhs >= 0) n.rhs -= static_cast<std::int32_t>(first);
    }
    cplx v;
    try {
      v = evaluate_tape(sub);
    } catch (const EvalError&) {
      fail_at(at, "pow exponent cannot be evaluated");
    }
    if (std::abs(v.imag()) > 0.0 || !std::isfinite(v.real())) fail_at(at, "pow exponent must be a real constant");
    return v.real();
  }

  static cplx evaluate_tape(const std::vector<ExprNode>& tape);

  std::vector<char32_t> chars_;
  std::string variable_;
  std::size_t pos_ = 0;
  std::vector<ExprNode> nodes_;
  std::vector<std::size_t> depth_;

  friend class Expr;
};

cplx ipow(cplx b, int n) {
  if (n < 0) return 1.0 / ipow(b, -n);
  cplx result{1.0, 0.0};
  while (n > 0) {
    if (n & 1) result *= b;
    b *= b;
    n >>= 1;
  }
  return result;
}

cplx constant_of(ExprOp op) {
  switch (op) {
    case ExprOp::ConstI:
      return {0.0, 1.0};
    case ExprOp::ConstE:
      return {std::numbers::e, 0.0};
    case ExprOp::ConstPi:
      return {std::numbers::pi, 0.0};
    default:
      return {};
  }
}

const cplx kI{0.0, 1.0};

// Value-only sweep; `z` is the variable's value.
cplx evaluate_values(std::span<const ExprNode> tape, cplx z, std::vector<cplx>& v) {
  v.resize(tape.size());
  for (std::size_t k = 0; k < tape.size(); ++k) {
    const ExprNode& n = tape[k];
    auto L = [&] { return v[static_cast<std::size_t>(n.lhs)]; };
    auto R = [&] { return v[static_cast<std::size_t>(n.rhs)]; };
    switch (n.op) {
      case ExprOp::Literal:
        v[k] = n.literal;
        break;
      case ExprOp::Variable:
        v[k] = z;
        break;
      case ExprOp::ConstI:
      case ExprOp::ConstE:
      case ExprOp::ConstPi:
        v[k] = constant_of(n.op);
        break;
      case ExprOp::Neg:
        v[k] = -L();
        break;
      case ExprOp::Add:
        v[k] = L() + R();
        break;
      case ExprOp::Sub:
        v[k] = L() - R();
        break;
      case ExprOp::Mul:
        v[k] = L() * R();
        break;
      case ExprOp::Div:
        if (R() == cplx{}) throw EvalError("division by zero", n.position);
        v[k] = L() / R();
        break;
      case ExprOp::IntPow:
        if (n.int_exponent < 0 && L() == cplx{}) throw EvalError("negative power of zero", n.position);
        v[k] = ipow(L(), n.int_exponent);
        break;
      case ExprOp::Conj:
        v[k] = std::conj(L());
        break;
      case ExprOp::Re:
        v[k] = {L().real(), 0.0};
        break;
      case ExprOp::Im:
        v[k] = {L().imag(), 0.0};
        break;
      case ExprOp::Abs:
        v[k] = {std::abs(L()), 0.0};
        break;
      case ExprOp::Log:
        if (L() == cplx{}) throw EvalError("log of zero", n.position);
        v[k] = std::log(L());
        break;
      case ExprOp::Exp:
        v[k] = std::exp(L());
        break;
      case ExprOp::Pow:
        if (L() == cplx{}) throw EvalError("pow of zero", n.position);
        v[k] = std::exp(n.real_exponent * std::log(L()));
        break;
    }
  }
  return v.back();
}

cplx Parser::evaluate_tape(const std::vector<ExprNode>& tape) {
  std::vector<cplx> scratch;
  return evaluate_values(tape, cplx{}, scratch);
}

// abs(u) at u = 0 has no derivative; such nodes are tagged and only an
// integer power >= 2 may absorb them (|u|^n is C^1 with zero jet there).
struct JetSlot {
  WirtingerJet j;
  bool abs_at_zero = false;
};

WirtingerJet evaluate_jets(std::span<const ExprNode> tape, cplx z, std::vector<JetSlot>& s) {
  s.resize(tape.size());
  for (std::size_t k = 0; k < tape.size(); ++k) {
    const ExprNode& n = tape[k];
    JetSlot& out = s[k];
    out.abs_at_zero = false;
    const JetSlot* a = n.lhs >= 0 ? &s[static_cast<std::size_t>(n.lhs)] : nullptr;
    const JetSlot* b = n.rhs >= 0 ? &s[static_cast<std::size_t>(n.rhs)] : nullptr;

    if (a && a->abs_at_zero) {
      if (n.op == ExprOp::IntPow && n.int_exponent >= 2) {
        out.j = {};
        continue;
      }
      throw EvalError("abs has no derivative at zero", tape[static_cast<std::size_t>(n.lhs)].position);
    }
    if (b && b->abs_at_zero) {
      throw EvalError("abs has no derivative at zero", tape[static_cast<std::size_t>(n.rhs)].position);
    }

    WirtingerJet& r = out.j;
    switch (n.op) {
      case ExprOp::Literal:
        r = {n.literal, {}, {}};
        break;
      case ExprOp::Variable:
        r = {z, {1.0, 0.0}, {}};
        break;
      case ExprOp::ConstI:
      case ExprOp::ConstE:
      case ExprOp::ConstPi:
        r = {constant_of(n.op), {}, {}};
        break;
      case ExprOp::Neg:
        r = {-a->j.value, -a->j.dz, -a->j.dzbar};
        break;
      case ExprOp::Add:
        r = {a->j.value + b->j.value, a->j.dz + b->j.dz, a->j.dzbar + b->j.dzbar};
        break;
      case ExprOp::Sub:
        r = {a->j.value - b->j.value, a->j.dz - b->j.dz, a->j.dzbar - b->j.dzbar};
        break;
      case ExprOp::Mul: {
        const auto& u = a->j;
        const auto& w = b->j;
        r = {u.value * w.value, u.dz * w.value + u.value * w.dz, u.dzbar * w.value + u.value * w.dzbar};
        break;
      }
      case ExprOp::Div: {
        const auto& u = a->j;
        const auto& w = b->j;
        if (w.value == cplx{}) throw EvalError("division by zero", n.position);
        const cplx q = u.value / w.value;
        r = {q, (u.dz - q * w.dz) / w.value, (u.dzbar - q * w.dzbar) / w.value};
        break;
      }
      case ExprOp::IntPow: {
        const auto& u = a->j;
        const int m = n.int_exponent;
        if (m == 0) {
          r = {{1.0, 0.0}, {}, {}};
          break;
        }
        if (m < 0 && u.value == cplx{}) throw EvalError("negative power of zero", n.position);
        const cplx lower = ipow(u.value, m - 1);
        const cplx scale = static_cast<double>(m) * lower;
        r = {lower * u.value, scale * u.dz, scale * u.dzbar};
        break;
      }
      case ExprOp::Conj: {
        const auto& u = a->j;
        r = {std::conj(u.value), std::conj(u.dzbar), std::conj(u.dz)};
        break;
      }
      case ExprOp::Re: {
        const auto& u = a->j;
        r = {{u.value.real(), 0.0}, 0.5 * (u.dz + std::conj(u.dzbar)), 0.5 * (u.dzbar + std::conj(u.dz))};
        break;
      }
      case ExprOp::Im: {
        const auto& u = a->j;
        r = {{u.value.imag(), 0.0},
             (u.dz - std::conj(u.dzbar)) / (2.0 * kI),
             (u.dzbar - std::conj(u.dz)) / (2.0 * kI)};
        break;
      }
      case ExprOp::Abs: {
        const auto& u = a->j;
        const double m = std::abs(u.value);
        if (m == 0.0) {
          r = {};
          out.abs_at_zero = true;
          break;
        }
        const cplx ub = std::conj(u.value);
        r = {{m, 0.0},
             (ub * u.dz + u.value * std::conj(u.dzbar)) / (2.0 * m),
             (ub * u.dzbar + u.value * std::conj(u.dz)) / (2.0 * m)};
        break;
      }
      case ExprOp::Log: {
        const auto& u = a->j;
        if (u.value == cplx{}) throw EvalError("log of zero", n.position);
        r = {std::log(u.value), u.dz / u.value, u.dzbar / u.value};
        break;
      }
      case ExprOp::Exp: {
        const auto& u = a->j;
        const cplx e = std::exp(u.value);
        r = {e, e * u.dz, e * u.dzbar};
        break;
      }
      case ExprOp::Pow: {
        const auto& u = a->j;
        if (u.value == cplx{}) throw EvalError("pow of zero", n.position);
        const cplx p = std::exp(n.real_exponent * std::log(u.value));
        const cplx d = n.real_exponent * p / u.value;
        r = {p, d * u.dz, d * u.dzbar};
        break;
      }
    }
  }
  if (s.back().abs_at_zero) throw EvalError("abs has no derivative at zero", tape.back().position);
  return s.back().j;
}

void print_node(std::span<const ExprNode> t, std::int32_t idx, const std::string& var, std::string& out) {
  const ExprNode& n = t[static_cast<std::size_t>(idx)];
  auto binary = [&](const char* op) {
    out += '(';
    print_node(t, n.lhs, var, out);
    out += op;
    print_node(t, n.rhs, var, out);
    out += ')';
  };
  auto call = [&](const char* name) {
    out += name;
    out += '(';
    print_node(t, n.lhs, var, out);
    out += ')';
  };
  switch (n.op) {
    case ExprOp::Literal:
      if (n.literal.imag() == 0.0 && n.literal.real() >= 0.0 && !std::signbit(n.literal.real())) {
        out += format_double(n.literal.real());
      } else {
        out += "(" + format_double(n.literal.real()) + " + " + format_double(n.literal.imag()) + "*i)";
      }
      break;
    case ExprOp::Variable:
      out += var;
      break;
    case ExprOp::ConstI:
      out += 'i';
      break;
    case ExprOp::ConstE:
      out += 'e';
      break;
    case ExprOp::ConstPi:
      out += "pi";
      break;
    case ExprOp::Neg:
      out += "(-";
      print_node(t, n.lhs, var, out);
      out += ')';
      break;
    case ExprOp::Add:
      binary(" + ");
      break;
    case ExprOp::Sub:
      binary(" - ");
      break;
    case ExprOp::Mul:
      binary("*");
      break;
    case ExprOp::Div:
      binary("/");
      break;
    case ExprOp::IntPow:
      out += '(';
      print_node(t, n.lhs, var, out);
      out += '^';
      out += std::to_string(n.int_exponent);
      out += ')';
      break;
    case ExprOp::Conj:
      call("conj");
      break;
    case ExprOp::Re:
      call("re");
      break;
    case ExprOp::Im:
      call("im");
      break;
    case ExprOp::Abs:
      call("abs");
      break;
    case ExprOp::Log:
      call("log");
      break;
    case ExprOp::Exp:
      call("exp");
      break;
    case ExprOp::Pow:
      out += "pow(";
      print_node(t, n.lhs, var, out);
      out += ", ";
      if (n.real_exponent < 0.0 || std::signbit(n.real_exponent)) {
        out += "-" + format_double(-n.real_exponent);
      } else {
        out += format_double(n.real_exponent);
      }
      out += ')';
      break;
  }
}

bool same_tree(std::span<const ExprNode> a, std::int32_t ia, std::span<const ExprNode> b, std::int32_t ib) {
  if ((ia < 0) != (ib < 0)) return false;
  if (ia < 0) return true;
  const ExprNode& x = a[static_cast<std::size_t>(ia)];
  const ExprNode& y = b[static_cast<std::size_t>(ib)];
  if (x.op != y.op) return false;
  switch (x.op) {
    case ExprOp::Literal:
      if (x.literal != y.literal) return false;
      break;
    case ExprOp::IntPow:
      if (x.int_exponent != y.int_exponent) return false;
      break;
    case ExprOp::Pow:
      if (x.real_exponent != y.real_exponent) return false;
      break;
    default:
      break;
  }
  return same_tree(a, x.lhs, b, y.lhs) && same_tree(a, x.rhs, b, y.rhs);
}

}  // namespace

Expr Expr::parse(std::string_view text, const ParseOptions& options) {
  Parser p(text, options);
  std::size_t depth = 0;
  auto nodes = p.run(depth);
  return Expr(std::make_shared<const std::vector<ExprNode>>(std::move(nodes)), options.variable,
              std::string(text), depth);
}

WirtingerJet Expr::jet(cplx z) const {
  thread_local std::vector<JetSlot> scratch;
  return evaluate_jets(*nodes_, z, scratch);
}

cplx Expr::value(cplx z) const {
  thread_local std::vector<cplx> scratch;
  return evaluate_values(*nodes_, z, scratch);
}

std::string Expr::to_string() const {
  std::string out;
  print_node(*nodes_, static_cast<std::int32_t>(nodes_->size() - 1), variable_, out);
  return out;
}

bool Expr::depends_on_variable() const {
  return std::any_of(nodes_->begin(), nodes_->end(), [](const ExprNode& n) { return n.op == ExprOp::Variable; });
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.variable_ != b.variable_) return false;
  return same_tree(*a.nodes_, static_cast<std::int32_t>(a.nodes_->size() - 1), *b.nodes_,
                   static_cast<std::int32_t>(b.nodes_->size() - 1));
}

cplx eval_constant(std::string_view text) {
  Expr e = Expr::parse(text);
  if (e.depends_on_variable()) throw DomainError("expected a constant, got an expression in z: " + std::string(text));
  return e.value(cplx{});
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

}  // namespace diskmap
