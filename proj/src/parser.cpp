#include "pcfp/parser.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <optional>
#include <unordered_set>
#include <vector>

namespace pcfp {

namespace {

enum class Tok {
  Ident,
  Int,
  Decimal,
  String,
  LBracket,
  RBracket,
  LParen,
  RParen,
  Semi,
  Colon,
  Prime,
  Assign,  // '='
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Amp,
  Pipe,
  Bang,
  Plus,
  Minus,
  Star,
  Slash,
  DotDot,
  Arrow,
  Eof,
};

struct Token {
  Tok kind = Tok::Eof;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_trivia();
      Token t = next();
      bool eof = t.kind == Tok::Eof;
      out.push_back(std::move(t));
      if (eof) break;
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, SourceSpan at) {
    throw ParseError(msg, at);
  }

  SourceSpan here() const { return {line_, col_, pos_}; }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_trivia() {
    for (;;) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token next() {
    SourceSpan span = here();
    if (pos_ >= src_.size()) return {Tok::Eof, "", span};
    char c = advance();
    auto tok = [&](Tok k, std::string text) {
      return Token{k, std::move(text), span};
    };
    switch (c) {
      case '[': return tok(Tok::LBracket, "[");
      case ']': return tok(Tok::RBracket, "]");
      case '(': return tok(Tok::LParen, "(");
      case ')': return tok(Tok::RParen, ")");
      case ';': return tok(Tok::Semi, ";");
      case ':': return tok(Tok::Colon, ":");
      case '\'': return tok(Tok::Prime, "'");
      case '=': return tok(Tok::Assign, "=");
      case '&': return tok(Tok::Amp, "&");
      case '|': return tok(Tok::Pipe, "|");
      case '+': return tok(Tok::Plus, "+");
      case '*': return tok(Tok::Star, "*");
      case '/': return tok(Tok::Slash, "/");
      case '!':
        if (peek() == '=') {
          advance();
          return tok(Tok::Ne, "!=");
        }
        return tok(Tok::Bang, "!");
      case '<':
        if (peek() == '=') {
          advance();
          return tok(Tok::Le, "<=");
        }
        return tok(Tok::Lt, "<");
      case '>':
        if (peek() == '=') {
          advance();
          return tok(Tok::Ge, ">=");
        }
        return tok(Tok::Gt, ">");
      case '-':
        if (peek() == '>') {
          advance();
          return tok(Tok::Arrow, "->");
        }
        return tok(Tok::Minus, "-");
      case '.':
        if (peek() == '.') {
          advance();
          return tok(Tok::DotDot, "..");
        }
        fail("unexpected '.'", span);
      case '"': {
        std::string s;
        for (;;) {
          if (pos_ >= src_.size() || peek() == '\n') {
            fail("unterminated string literal", span);
          }
          char d = advance();
          if (d == '"') break;
          s.push_back(d);
        }
        return tok(Tok::String, std::move(s));
      }
      default:
        break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits(1, c);
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits.push_back(advance());
      }
      // "<digits>.<digits>" is a decimal literal; "<digits>.." is a range.
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        advance();  // '.'
        digits.push_back('.');
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
          digits.push_back(advance());
        }
        return tok(Tok::Decimal, std::move(digits));
      }
      if (peek() == '.' && peek(1) != '.') {
        fail("malformed number", span);
      }
      return tok(Tok::Int, std::move(digits));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name(1, c);
      while (std::isalnum(static_cast<unsigned char>(peek())) ||
             peek() == '_') {
        name.push_back(advance());
      }
      return tok(Tok::Ident, std::move(name));
    }
    fail(std::string("unexpected character '") + c + "'", span);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view text, std::string_view cf_name)
      : tokens_(Lexer(text).run()), cf_name_(cf_name) {}

  Program run() {
    expect_keyword("dtmc");
    expect_keyword("module");
    prog_.cf_var = cf_name_;
    prog_.module_name = expect(Tok::Ident, "module name").text;

    bool saw_command = false;
    while (!at_keyword("endmodule")) {
      if (at(Tok::LBracket)) {
        saw_command = true;
        parse_command();
      } else if (at(Tok::Ident)) {
        if (saw_command) {
          fail("declarations must precede commands", peek_token().span);
        }
        parse_decl();
      } else {
        fail("expected a declaration, a command, or 'endmodule'",
             peek_token().span);
      }
    }
    SourceSpan module_end = peek_token().span;
    expect_keyword("endmodule");
    if (!have_cf_decl_) {
      fail("control-flow variable '" + std::string(cf_name_) +
               "' is not declared",
           module_end);
    }

    while (at_keyword("label")) parse_label();
    if (!at(Tok::Eof)) {
      fail("expected 'label' or end of input", peek_token().span);
    }

    bool location_zero = false;
    for (const auto& c : prog_.commands) {
      if (c.location == 0) location_zero = true;
    }
    if (!location_zero) fail("no command at location 0", module_end);
    return std::move(prog_);
  }

 private:
  // --- token plumbing ---

  const Token& peek_token(std::size_t ahead = 0) const {
    std::size_t i = idx_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }

  bool at(Tok k) const { return peek_token().kind == k; }

  bool at_keyword(std::string_view kw) const {
    return at(Tok::Ident) && peek_token().text == kw;
  }

  Token take() { return tokens_[idx_ < tokens_.size() - 1 ? idx_++ : idx_]; }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) {
      fail("expected " + what + ", found '" + peek_token().text + "'",
           peek_token().span);
    }
    return take();
  }

  void expect_keyword(const std::string& kw) {
    if (!at_keyword(kw)) {
      fail("expected '" + kw + "'", peek_token().span);
    }
    take();
  }

  bool accept(Tok k) {
    if (at(k)) {
      take();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg, SourceSpan at) const {
    throw ParseError(msg, at);
  }

  // --- pieces ---

  std::int64_t parse_int_literal() {
    bool neg = accept(Tok::Minus);
    Token t = expect(Tok::Int, "an integer");
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(t.text.c_str(), &end, 10);
    if (errno != 0 || *end != '\0') {
      fail("integer literal out of range", t.span);
    }
    return neg ? -v : v;
  }

  void parse_decl() {
    Token name = expect(Tok::Ident, "a variable name");
    expect(Tok::Colon, "':'");
    expect(Tok::LBracket, "'['");
    std::int64_t lo = parse_int_literal();
    expect(Tok::DotDot, "'..'");
    std::int64_t hi = parse_int_literal();
    expect(Tok::RBracket, "']'");
    expect_keyword("init");
    std::int64_t init = parse_int_literal();
    expect(Tok::Semi, "';'");

    if (lo > hi) fail("empty domain for '" + name.text + "'", name.span);
    if (init < lo || init > hi) {
      fail("initial value of '" + name.text + "' outside its domain",
           name.span);
    }
    if (name.text == cf_name_) {
      if (have_cf_decl_) {
        fail("duplicate declaration of the control-flow variable", name.span);
      }
      if (lo != 0) {
        fail("control-flow domain must start at 0", name.span);
      }
      if (init != 0) {
        fail("control-flow variable must have init 0", name.span);
      }
      have_cf_decl_ = true;
      prog_.cf_lo = 0;
      prog_.cf_hi = hi;
      return;
    }
    if (prog_.find_decl(name.text)) {
      fail("duplicate declaration of '" + name.text + "'", name.span);
    }
    prog_.decls.push_back({name.text, lo, hi, init});
  }

  void parse_command() {
    SourceSpan start = peek_token().span;
    expect(Tok::LBracket, "'['");
    expect(Tok::RBracket, "']'");
    ExprPtr full_guard = parse_or(/*allow_cf=*/true);

    // Strip the mandatory top-level `cf=<int>` conjunct into the location,
    // preserving the shape of the remaining guard.
    ExprPtr residual;
    std::optional<std::int64_t> location = strip_cf_conjunct(full_guard,
                                                             residual);
    if (!location) {
      fail("non-control-flow command: guard lacks a top-level conjunct '" +
               std::string(cf_name_) + "=<location>'",
           start);
    }
    if (!residual) residual = Expr::bool_lit(true);
    std::vector<ExprPtr> rest;
    flatten_and(residual, rest);
    for (const auto& c : rest) {
      if (cf_location_conjunct(*c)) {
        fail("multiple control-flow conjuncts in guard", start);
      }
    }
    if (*location < 0 || *location > prog_.cf_hi) {
      fail("location " + std::to_string(*location) +
               " outside the control-flow domain",
           start);
    }

    Command cmd;
    cmd.id = static_cast<int>(prog_.commands.size());
    cmd.location = *location;
    cmd.guard = std::move(residual);
    check_bool(cmd.guard, start, "guard");

    expect(Tok::Arrow, "'->'");
    do {
      cmd.updates.push_back(parse_update());
    } while (accept(Tok::Plus));
    expect(Tok::Semi, "';'");
    prog_.commands.push_back(std::move(cmd));
  }

  StochUpdate parse_update() {
    StochUpdate upd;
    SourceSpan pstart = peek_token().span;
    upd.prob = parse_probability();
    expect(Tok::Colon, "':'");

    bool have_cf_target = false;
    do {
      SourceSpan aspan = peek_token().span;
      expect(Tok::LParen, "'('");
      Token target = expect(Tok::Ident, "a variable name");
      expect(Tok::Prime, "''' (primed variable)");
      expect(Tok::Assign, "'='");
      ExprPtr rhs = parse_add(/*allow_cf=*/true);
      expect(Tok::RParen, "')'");

      if (target.text == cf_name_) {
        if (have_cf_target) {
          fail("control-flow variable updated more than once", aspan);
        }
        if (rhs->kind != ExprKind::IntLit) {
          fail("non-literal control-flow target", aspan);
        }
        if (rhs->int_value < 0 || rhs->int_value > prog_.cf_hi) {
          fail("control-flow target " + std::to_string(rhs->int_value) +
                   " outside the domain",
               aspan);
        }
        have_cf_target = true;
        upd.cf_target = rhs->int_value;
        continue;
      }
      if (!prog_.find_decl(target.text)) {
        fail("unknown variable '" + target.text + "'", target.span);
      }
      if (upd.find_assign(target.text)) {
        fail("variable '" + target.text + "' updated more than once", aspan);
      }
      check_int(rhs, aspan, "assignment right-hand side");
      upd.assigns.push_back({target.text, std::move(rhs)});
    } while (accept(Tok::Amp));

    if (!have_cf_target) {
      fail("update does not assign the control-flow variable", pstart);
    }
    return upd;
  }

  // decimal literal | <intExpr> | <intExpr>/<intExpr>; literal ratios fold
  // into exact rational literals.
  ExprPtr parse_probability() {
    SourceSpan span = peek_token().span;
    if (at(Tok::Decimal)) {
      Token t = take();
      auto dot = t.text.find('.');
      return Expr::prob_lit(rational_from_decimal(
          t.text.substr(0, dot), t.text.substr(dot + 1)));
    }
    ExprPtr num = parse_add(/*allow_cf=*/false);
    if (!accept(Tok::Slash)) {
      if (num->kind != ExprKind::IntLit) {
        fail("probability must be a decimal literal or a ratio", span);
      }
      return Expr::prob_lit(make_rational(num->int_value));
    }
    ExprPtr den = parse_add(/*allow_cf=*/false);
    check_int(num, span, "probability numerator");
    check_int(den, span, "probability denominator");
    if (num->kind == ExprKind::IntLit && den->kind == ExprKind::IntLit) {
      if (den->int_value == 0) fail("zero denominator in probability", span);
      return Expr::prob_lit(make_rational(num->int_value, den->int_value));
    }
    return Expr::ratio(std::move(num), std::move(den));
  }

  void parse_label() {
    expect_keyword("label");
    Token name = expect(Tok::String, "a label name string");
    expect(Tok::Assign, "'='");
    SourceSpan espan = peek_token().span;
    ExprPtr e = parse_or(/*allow_cf=*/true);
    expect(Tok::Semi, "';'");
    if (prog_.find_label(name.text)) {
      fail("duplicate label \"" + name.text + "\"", name.span);
    }
    check_bool(e, espan, "label");
    prog_.labels.push_back({name.text, std::move(e)});
  }

  // --- expressions ---

  ExprPtr parse_or(bool allow_cf) {
    ExprPtr e = parse_and(allow_cf);
    while (at(Tok::Pipe)) {
      take();
      e = Expr::lor(std::move(e), parse_and(allow_cf));
    }
    return e;
  }

  ExprPtr parse_and(bool allow_cf) {
    ExprPtr e = parse_not(allow_cf);
    while (at(Tok::Amp)) {
      take();
      e = Expr::land(std::move(e), parse_not(allow_cf));
    }
    return e;
  }

  ExprPtr parse_not(bool allow_cf) {
    if (accept(Tok::Bang)) return Expr::lnot(parse_not(allow_cf));
    return parse_rel(allow_cf);
  }

  ExprPtr parse_rel(bool allow_cf) {
    ExprPtr e = parse_add(allow_cf);
    ExprKind k;
    switch (peek_token().kind) {
      case Tok::Assign: k = ExprKind::Eq; break;
      case Tok::Ne: k = ExprKind::Ne; break;
      case Tok::Lt: k = ExprKind::Lt; break;
      case Tok::Le: k = ExprKind::Le; break;
      case Tok::Gt: k = ExprKind::Gt; break;
      case Tok::Ge: k = ExprKind::Ge; break;
      default: return e;
    }
    take();
    return Expr::binary(k, std::move(e), parse_add(allow_cf));
  }

  ExprPtr parse_add(bool allow_cf) {
    ExprPtr e = parse_mul(allow_cf);
    for (;;) {
      if (at(Tok::Plus)) {
        // '+' also separates stochastic updates; inside an expression it is
        // unambiguous because expressions never end before an operand.
        take();
        e = Expr::add(std::move(e), parse_mul(allow_cf));
      } else if (at(Tok::Minus)) {
        take();
        e = Expr::sub(std::move(e), parse_mul(allow_cf));
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_mul(bool allow_cf) {
    ExprPtr e = parse_primary(allow_cf);
    while (at(Tok::Star)) {
      take();
      e = Expr::mul(std::move(e), parse_primary(allow_cf));
    }
    return e;
  }

  ExprPtr parse_primary(bool allow_cf) {
    const Token& t = peek_token();
    switch (t.kind) {
      case Tok::Int:
      case Tok::Minus:
        return Expr::int_lit(parse_int_literal());
      case Tok::LParen: {
        take();
        ExprPtr e = parse_or(allow_cf);
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        Token name = take();
        if (name.text == "true") return Expr::bool_lit(true);
        if (name.text == "false") return Expr::bool_lit(false);
        if (name.text == cf_name_) {
          if (!allow_cf) {
            fail("control-flow variable not allowed in this expression",
                 name.span);
          }
          return Expr::var_ref(name.text);
        }
        if (!prog_.find_decl(name.text)) {
          fail("unknown variable '" + name.text + "'", name.span);
        }
        return Expr::var_ref(name.text);
      }
      default:
        fail("expected an expression, found '" + t.text + "'", t.span);
    }
  }

  // --- helpers ---

  static void flatten_and(const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (e->kind == ExprKind::And) {
      flatten_and(e->lhs, out);
      flatten_and(e->rhs, out);
    } else {
      out.push_back(e);
    }
  }

  // Removes the leftmost top-level `cf=<int>` conjunct. Returns its
  // location and leaves the rest of the conjunction tree intact in `rest`
  // (null when the conjunct was the entire guard).
  std::optional<std::int64_t> strip_cf_conjunct(const ExprPtr& e,
                                                ExprPtr& rest) const {
    if (auto loc = cf_location_conjunct(*e)) {
      rest = nullptr;
      return loc;
    }
    if (e->kind == ExprKind::And) {
      ExprPtr sub;
      if (auto loc = strip_cf_conjunct(e->lhs, sub)) {
        rest = sub ? Expr::land(std::move(sub), e->rhs) : e->rhs;
        return loc;
      }
      if (auto loc = strip_cf_conjunct(e->rhs, sub)) {
        rest = sub ? Expr::land(e->lhs, std::move(sub)) : e->lhs;
        return loc;
      }
    }
    rest = e;
    return std::nullopt;
  }

  std::optional<std::int64_t> cf_location_conjunct(const Expr& e) const {
    if (e.kind != ExprKind::Eq) return std::nullopt;
    const Expr& l = *e.lhs;
    const Expr& r = *e.rhs;
    if (l.kind == ExprKind::VarRef && l.var == cf_name_ &&
        r.kind == ExprKind::IntLit) {
      return r.int_value;
    }
    if (r.kind == ExprKind::VarRef && r.var == cf_name_ &&
        l.kind == ExprKind::IntLit) {
      return l.int_value;
    }
    return std::nullopt;
  }

  void check_bool(const ExprPtr& e, SourceSpan span, const char* what) {
    try {
      if (type_of(*e) != ExprType::Bool) {
        fail(std::string(what) + " must be a boolean expression", span);
      }
    } catch (const EvalError& err) {
      fail(std::string(what) + ": " + err.what(), span);
    }
  }

  void check_int(const ExprPtr& e, SourceSpan span, const char* what) {
    try {
      if (type_of(*e) != ExprType::Int) {
        fail(std::string(what) + " must be an integer expression", span);
      }
    } catch (const EvalError& err) {
      fail(std::string(what) + ": " + err.what(), span);
    }
  }

  std::vector<Token> tokens_;
  std::size_t idx_ = 0;
  std::string cf_name_;
  Program prog_;
  bool have_cf_decl_ = false;
};

}  // namespace

Program parse(std::string_view text, std::string_view cf_var_name) {
  return Parser(text, cf_var_name).run();
}

}  // namespace pcfp
