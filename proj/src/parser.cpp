#include "crucible/parser.hpp"

#include <algorithm>
#include <set>

#include "crucible/lexer.hpp"

namespace crucible {

namespace {

Span cover(const Span& from, const Span& to) {
  Span s = from;
  std::size_t end = std::max(from.offset + from.length, to.offset + to.length);
  s.length = end - from.offset;
  return s;
}

// Expressions and formulas share one grammar; a Term is whatever a production
// yielded before the surrounding context decides which one it needs.
struct Term {
  ExprPtr expr;
  FormulaPtr formula;
  bool isCall = false;  // `name[args]`: predicate call or box join
  std::string callee;
  Span calleeSpan;
  std::vector<ExprPtr> callArgs;
  Span span;
};

Term expr_term(ExprPtr e) {
  Term t;
  t.span = e->span;
  t.expr = std::move(e);
  return t;
}

Term formula_term(FormulaPtr f) {
  Term t;
  t.span = f->span;
  t.formula = std::move(f);
  return t;
}

std::optional<Multiplicity> formula_mult(const Token& t) {
  if (t.kind != TokenKind::Keyword) return std::nullopt;
  if (t.text == "no") return Multiplicity::No;
  if (t.text == "some") return Multiplicity::Some;
  if (t.text == "lone") return Multiplicity::Lone;
  if (t.text == "one") return Multiplicity::One;
  return std::nullopt;
}

std::optional<Quantifier> quantifier_of(const Token& t) {
  if (t.kind != TokenKind::Keyword) return std::nullopt;
  if (t.text == "all") return Quantifier::All;
  if (t.text == "some") return Quantifier::Some;
  if (t.text == "no") return Quantifier::No;
  if (t.text == "lone") return Quantifier::Lone;
  if (t.text == "one") return Quantifier::One;
  return std::nullopt;
}

std::optional<FieldMultiplicity> field_mult(const Token& t) {
  if (t.kind != TokenKind::Keyword) return std::nullopt;
  if (t.text == "set") return FieldMultiplicity::Set;
  if (t.text == "some") return FieldMultiplicity::Some;
  if (t.text == "lone") return FieldMultiplicity::Lone;
  if (t.text == "one") return FieldMultiplicity::One;
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), tokens_(tokenize(text)) {}

  SourceModel model() {
    SourceModel out;
    out.text = std::string(text_);
    while (!at_end()) parse_declaration(out.declarations);
    return out;
  }

  FormulaPtr formula_sequence() {
    std::vector<FormulaPtr> parts;
    Span start = peek().span;
    while (!at_end()) parts.push_back(as_formula(parse_or()));
    if (parts.size() == 1) return parts.front();
    Span whole = parts.empty() ? start : cover(parts.front()->span, parts.back()->span);
    return make_block(std::move(parts), whole);
  }

 private:
  // -- token helpers --------------------------------------------------------

  const Token& peek(std::size_t k = 0) const {
    return tokens_[std::min(pos_ + k, tokens_.size() - 1)];
  }
  bool at_end() const { return peek().kind == TokenKind::End; }
  const Token& take() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  const Token& previous() const { return tokens_[pos_ == 0 ? 0 : pos_ - 1]; }

  bool accept_symbol(std::string_view s) {
    if (!peek().is_symbol(s)) return false;
    take();
    return true;
  }
  bool accept_keyword(std::string_view k) {
    if (!peek().is_keyword(k)) return false;
    take();
    return true;
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw Error(ErrorCode::SyntaxError, message, at.span);
  }
  [[noreturn]] void unsupported(const Token& at, const std::string& feature) const {
    throw Error(ErrorCode::UnsupportedFeature, "unsupported feature: " + feature, at.span);
  }

  static std::string describe(const Token& t) {
    if (t.kind == TokenKind::End) return "end of input";
    return "'" + t.text + "'";
  }

  const Token& expect_symbol(std::string_view s) {
    if (!peek().is_symbol(s)) fail(peek(), "expected '" + std::string(s) + "' but found " + describe(peek()));
    return take();
  }

  const Token& expect_identifier(std::string_view what) {
    const Token& t = peek();
    if (t.kind == TokenKind::Identifier) return take();
    if (t.is_keyword("Int") || t.is_keyword("int")) unsupported(t, "integers");
    if (t.is_keyword("seq")) unsupported(t, "sequences");
    fail(t, "expected " + std::string(what) + " but found " + describe(t));
  }

  // -- declarations ---------------------------------------------------------

  void parse_declaration(std::vector<Declaration>& out) {
    const Token& t = peek();
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "module") return skip_module_header();
      if (t.text == "open") unsupported(t, "module imports (open)");
      if (t.text == "fun") unsupported(t, "functions (fun)");
      if (t.text == "private") unsupported(t, "private declarations");
      if (t.text == "enum") unsupported(t, "enum declarations");
      if (t.text == "var") unsupported(t, "mutable (var) declarations");
      if (t.text == "let") unsupported(t, "let");
      if (t.text == "abstract" || t.text == "sig" || t.text == "one" || t.text == "lone" ||
          t.text == "some")
        {
        out.emplace_back(parse_sig());
        return;
      }
      if (t.text == "pred") {
        out.emplace_back(parse_pred(false));
        return;
      }
      if (t.text == "assert") {
        out.emplace_back(parse_pred(true));
        return;
      }
      if (t.text == "fact") {
        out.emplace_back(parse_fact());
        return;
      }
      if (t.text == "run" || t.text == "check") {
        out.emplace_back(parse_command());
        return;
      }
    }
    if (t.kind == TokenKind::Identifier && peek(1).is_symbol(":") &&
        (peek(2).is_keyword("run") || peek(2).is_keyword("check"))) {
      take();
      take();
      {
        out.emplace_back(parse_command());
        return;
      }
    }
    fail(t, "expected a declaration but found " + describe(t));
  }

  void skip_module_header() {
    take();
    expect_identifier("module name");
    while (accept_symbol("/")) expect_identifier("module name");
    if (peek().is_symbol("[")) unsupported(peek(), "parameterized modules");
  }

  SigDeclaration parse_sig() {
    SigDeclaration sig;
    Span start = peek().span;
    for (;;) {
      const Token& t = peek();
      if (t.is_keyword("abstract")) {
        if (sig.isAbstract) fail(t, "duplicate 'abstract'");
        sig.isAbstract = true;
      } else if (t.is_keyword("one") || t.is_keyword("lone") || t.is_keyword("some")) {
        if (sig.multiplicity != SigMultiplicity::Any) fail(t, "duplicate signature multiplicity");
        sig.multiplicity = t.text == "one"    ? SigMultiplicity::One
                           : t.text == "lone" ? SigMultiplicity::Lone
                                              : SigMultiplicity::Some;
        if (sig.isAbstract) unsupported(t, "multiplicity on abstract signatures");
      } else {
        break;
      }
      take();
    }
    if (!accept_keyword("sig")) fail(peek(), "expected 'sig' but found " + describe(peek()));
    if (sig.isAbstract && sig.multiplicity != SigMultiplicity::Any)
      unsupported(previous(), "multiplicity on abstract signatures");

    do {
      sig.names.push_back(expect_identifier("signature name").text);
    } while (accept_symbol(","));

    if (accept_keyword("extends")) {
      sig.extendsParent = expect_identifier("parent signature").text;
    } else if (accept_keyword("in")) {
      do {
        sig.inParents.push_back(expect_identifier("parent signature").text);
      } while (accept_symbol("+"));
    }

    expect_symbol("{");
    while (!peek().is_symbol("}")) {
      parse_field_group(sig.fields);
      if (!accept_symbol(",")) break;
    }
    const Token& close = expect_symbol("}");
    sig.span = cover(start, close.span);
    if (peek().is_symbol("{")) unsupported(peek(), "signature facts");
    return sig;
  }

  void parse_field_group(std::vector<FieldDeclaration>& out) {
    std::vector<const Token*> names;
    do {
      if (peek().is_keyword("var")) unsupported(peek(), "mutable (var) fields");
      names.push_back(&expect_identifier("field name"));
    } while (accept_symbol(","));
    expect_symbol(":");
    if (peek().is_keyword("disj")) unsupported(peek(), "disjoint fields");

    FieldDeclaration proto;
    Span start = names.front()->span;
    if (auto m = field_mult(peek())) {
      proto.multiplicity = *m;
      take();
    }
    auto column = [&]() {
      const Token& t = peek();
      if (t.is_keyword("univ")) unsupported(t, "univ as a field column");
      const Token& id = expect_identifier("signature name");
      proto.columns.push_back(id.text);
      proto.columnSpans.push_back(id.span);
    };
    column();
    for (;;) {
      ArrowMult arrow;
      if (auto m = field_mult(peek()); m && peek(1).is_symbol("->")) {
        arrow.left = *m;
        take();
      } else if (!peek().is_symbol("->")) {
        break;
      }
      expect_symbol("->");
      if (auto m = field_mult(peek())) {
        arrow.right = *m;
        take();
      }
      column();
      proto.arrows.push_back(arrow);
    }
    const Token& next = peek();
    if (!next.is_symbol(",") && !next.is_symbol("}")) {
      static const std::set<std::string> kTypeOps = {"+", "-", "&", ".", "[", "(", "<:", ":>", "++"};
      if (next.kind == TokenKind::Symbol && kTypeOps.count(next.text))
        unsupported(next, "field type expressions beyond sig products");
      fail(next, "expected ',' or '}' after field declaration but found " + describe(next));
    }
    if (!proto.arrows.empty() && proto.multiplicity && *proto.multiplicity != FieldMultiplicity::Set)
      unsupported(*names.front(), "leading multiplicity on higher-arity field");

    proto.span = cover(start, previous().span);
    for (const Token* n : names) {
      FieldDeclaration f = proto;
      f.name = n->text;
      out.push_back(std::move(f));
    }
  }

  PredDeclaration parse_pred(bool isAssert) {
    PredDeclaration pred;
    pred.isAssert = isAssert;
    Span start = take().span;
    const Token& name = expect_identifier(isAssert ? "assertion name" : "predicate name");
    if (peek().is_symbol(".")) unsupported(peek(), "receiver-style predicate declarations");
    pred.name = name.text;
    if (!isAssert && (peek().is_symbol("[") || peek().is_symbol("("))) {
      std::string close = take().text == "[" ? "]" : ")";
      if (!peek().is_symbol(close)) {
        do {
          if (peek().is_keyword("disj")) unsupported(peek(), "disjoint parameters");
          std::vector<const Token*> names;
          do {
            names.push_back(&expect_identifier("parameter name"));
          } while (accept_symbol(","));
          expect_symbol(":");
          accept_keyword("one");
          if (field_mult(peek())) unsupported(peek(), "non-scalar parameters");
          const Token& type = expect_identifier("parameter signature");
          if (!peek().is_symbol(",") && !peek().is_symbol(close))
            unsupported(peek(), "parameter types beyond a single signature");
          for (const Token* n : names) pred.params.push_back(Param{n->text, type.text, n->span});
        } while (accept_symbol(","));
      }
      expect_symbol(close);
    }
    FormulaPtr body = parse_block();
    pred.body = body;
    pred.span = cover(start, body->span);
    return pred;
  }

  FactDeclaration parse_fact() {
    FactDeclaration fact;
    Span start = take().span;
    if (peek().kind == TokenKind::Identifier) fact.name = take().text;
    fact.body = parse_block();
    fact.span = cover(start, fact.body->span);
    return fact;
  }

  CommandDeclaration parse_command() {
    CommandDeclaration cmd;
    const Token& kw = take();
    cmd.kind = kw.text == "run" ? CommandKind::Run : CommandKind::Check;
    if (peek().kind == TokenKind::Identifier) cmd.target = take().text;
    if (peek().is_symbol("{")) cmd.body = parse_block();
    if (cmd.target.empty() && !cmd.body) fail(peek(), "expected a name or block after '" + kw.text + "'");
    if (accept_keyword("for")) {
      if (peek().kind == TokenKind::Number) {
        cmd.scope = std::stoi(take().text);
        if (accept_keyword("but")) parse_type_scopes();
      } else {
        parse_type_scopes();
      }
    }
    if (accept_keyword("expect")) {
      if (peek().kind != TokenKind::Number) fail(peek(), "expected a number after 'expect'");
      take();
    }
    cmd.span = cover(kw.span, previous().span);
    return cmd;
  }

  void parse_type_scopes() {
    do {
      accept_keyword("exactly");
      if (peek().kind != TokenKind::Number) fail(peek(), "expected a scope bound but found " + describe(peek()));
      take();
      const Token& t = peek();
      if (t.kind == TokenKind::Identifier || t.is_keyword("Int") || t.is_keyword("int") ||
          t.is_keyword("seq")) {
        take();
      } else {
        fail(t, "expected a signature name in scope but found " + describe(t));
      }
    } while (accept_symbol(","));
  }

  // -- formulas and expressions ---------------------------------------------

  FormulaPtr parse_block() {
    const Token& open = expect_symbol("{");
    if (peek().kind == TokenKind::Identifier && (peek(1).is_symbol(":") || peek(1).is_symbol(",")))
      unsupported(peek(), "set comprehensions");
    std::vector<FormulaPtr> parts;
    while (!peek().is_symbol("}")) {
      if (at_end()) fail(peek(), "expected '}' but found end of input");
      parts.push_back(as_formula(parse_or()));
    }
    const Token& close = take();
    return make_block(std::move(parts), cover(open.span, close.span));
  }

  ExprPtr as_expr(const Term& t) const {
    if (t.formula)
      throw Error(ErrorCode::SyntaxError, "expected an expression but found a formula", t.span);
    if (t.isCall) return box_join(make_ref(ExprKind::Name, t.callee, t.calleeSpan), t.callArgs, t.span);
    return t.expr;
  }

  FormulaPtr as_formula(const Term& t) const {
    if (t.formula) return t.formula;
    if (t.isCall) return make_pred_call(t.callee, t.callArgs, t.span);
    if (t.expr->kind == ExprKind::Name) return make_pred_call(t.expr->name, {}, t.span);
    throw Error(ErrorCode::SyntaxError, "expected a formula but found an expression", t.span);
  }

  // e[a1, ..., an] == an.(...(a1.e))
  static ExprPtr box_join(ExprPtr target, const std::vector<ExprPtr>& args, Span span) {
    for (const auto& a : args) target = make_binary(ExprKind::Join, a, target, span);
    return target;
  }

  Term parse_or() {
    Term lhs = parse_iff();
    while (peek().is_symbol("||") || peek().is_keyword("or")) {
      take();
      Term rhs = parse_iff();
      Span s = cover(lhs.span, rhs.span);
      lhs = formula_term(make_connective(FormulaKind::Or, as_formula(lhs), as_formula(rhs), s));
    }
    return lhs;
  }

  Term parse_iff() {
    Term lhs = parse_implies();
    while (peek().is_symbol("<=>") || peek().is_keyword("iff")) {
      take();
      Term rhs = parse_implies();
      Span s = cover(lhs.span, rhs.span);
      lhs = formula_term(make_connective(FormulaKind::Iff, as_formula(lhs), as_formula(rhs), s));
    }
    return lhs;
  }

  Term parse_implies() {
    Term lhs = parse_and();
    if (!peek().is_symbol("=>") && !peek().is_keyword("implies")) return lhs;
    take();
    Term rhs = parse_implies();
    FormulaPtr elseBranch;
    Span s = cover(lhs.span, rhs.span);
    if (accept_keyword("else")) {
      Term e = parse_implies();
      elseBranch = as_formula(e);
      s = cover(lhs.span, e.span);
    }
    return formula_term(
        make_connective(FormulaKind::Implies, as_formula(lhs), as_formula(rhs), s, elseBranch));
  }

  Term parse_and() {
    Term lhs = parse_not();
    while (peek().is_symbol("&&") || peek().is_keyword("and")) {
      take();
      Term rhs = parse_not();
      Span s = cover(lhs.span, rhs.span);
      lhs = formula_term(make_connective(FormulaKind::And, as_formula(lhs), as_formula(rhs), s));
    }
    return lhs;
  }

  bool at_quantifier() const {
    if (!quantifier_of(peek())) return false;
    if (peek(1).is_keyword("disj")) return true;
    return peek(1).kind == TokenKind::Identifier && (peek(2).is_symbol(":") || peek(2).is_symbol(","));
  }

  Term parse_not() {
    if (peek().is_symbol("!") || peek().is_keyword("not")) {
      Span start = take().span;
      Term operand = parse_not();
      return formula_term(make_not(as_formula(operand), cover(start, operand.span)));
    }
    if (peek().is_keyword("let")) unsupported(peek(), "let");
    if (at_quantifier()) return parse_quantifier();
    if (peek().is_keyword("all")) fail(peek(1), "expected a variable declaration after 'all'");
    return parse_compare();
  }

  Term parse_quantifier() {
    const Token& kw = take();
    Quantifier q = *quantifier_of(kw);
    std::vector<QuantDecl> decls;
    std::set<std::string> seen;
    do {
      QuantDecl d;
      d.span = peek().span;
      d.disjoint = accept_keyword("disj");
      do {
        const Token& n = expect_identifier("variable name");
        if (!seen.insert(n.text).second)
          fail(n, "variable '" + n.text + "' declared twice in one quantifier");
        d.names.push_back(n.text);
      } while (accept_symbol(","));
      expect_symbol(":");
      accept_keyword("one");
      if (field_mult(peek())) unsupported(peek(), "higher-order quantification");
      d.domain = as_expr(parse_union());
      d.span = cover(d.span, d.domain->span);
      decls.push_back(std::move(d));
    } while (accept_symbol(","));

    FormulaPtr body;
    if (accept_symbol("|")) {
      body = as_formula(parse_or());
    } else if (peek().is_symbol("{")) {
      body = parse_block();
    } else {
      fail(peek(), "expected '|' or '{' after quantifier declarations but found " + describe(peek()));
    }
    return formula_term(make_quantified(q, std::move(decls), body, cover(kw.span, body->span)));
  }

  Term parse_compare() {
    Term lhs = parse_mult_prefix();
    const Token& t = peek();
    FormulaKind kind;
    bool negate = false;
    if (t.is_keyword("in")) {
      kind = FormulaKind::Subset;
      take();
    } else if (t.is_symbol("=")) {
      kind = FormulaKind::Equal;
      take();
    } else if (t.is_symbol("!=")) {
      kind = FormulaKind::NotEqual;
      take();
    } else if ((t.is_symbol("!") || t.is_keyword("not")) && peek(1).is_keyword("in")) {
      kind = FormulaKind::Subset;
      negate = true;
      take();
      take();
    } else if ((t.is_symbol("!") || t.is_keyword("not")) && peek(1).is_symbol("=")) {
      kind = FormulaKind::NotEqual;
      take();
      take();
    } else if (t.is_symbol("<") || t.is_symbol(">") || t.is_symbol("=<") || t.is_symbol("<=") ||
               t.is_symbol(">=")) {
      unsupported(t, "integer comparison");
    } else {
      return lhs;
    }
    Term rhs = parse_mult_prefix();
    Span s = cover(lhs.span, rhs.span);
    FormulaPtr f = make_compare(kind, as_expr(lhs), as_expr(rhs), s);
    if (negate) f = make_not(f, s);
    return formula_term(f);
  }

  Term parse_mult_prefix() {
    if (auto m = formula_mult(peek())) {
      Span start = take().span;
      Term operand = parse_union();
      return formula_term(make_mult(*m, as_expr(operand), cover(start, operand.span)));
    }
    if (peek().is_keyword("set")) fail(peek(), "unexpected 'set'");
    return parse_union();
  }

  Term parse_union() {
    Term lhs = parse_intersect();
    for (;;) {
      ExprKind kind;
      if (peek().is_symbol("+")) {
        kind = ExprKind::Union;
      } else if (peek().is_symbol("-")) {
        kind = ExprKind::Difference;
      } else if (peek().is_symbol("++")) {
        unsupported(peek(), "relational override (++)");
      } else {
        return lhs;
      }
      take();
      Term rhs = parse_intersect();
      Span s = cover(lhs.span, rhs.span);
      lhs = expr_term(make_binary(kind, as_expr(lhs), as_expr(rhs), s));
    }
  }

  Term parse_intersect() {
    Term lhs = parse_product();
    while (accept_symbol("&")) {
      Term rhs = parse_product();
      Span s = cover(lhs.span, rhs.span);
      lhs = expr_term(make_binary(ExprKind::Intersection, as_expr(lhs), as_expr(rhs), s));
    }
    return lhs;
  }

  Term parse_product() {
    Term lhs = parse_join();
    for (;;) {
      if (peek().is_symbol("<:") || peek().is_symbol(":>"))
        unsupported(peek(), "domain/range restriction");
      if (field_mult(peek()) && peek(1).is_symbol("->"))
        unsupported(peek(), "multiplicities in arrow expressions");
      if (!accept_symbol("->")) return lhs;
      if (field_mult(peek())) unsupported(peek(), "multiplicities in arrow expressions");
      Term rhs = parse_join();
      Span s = cover(lhs.span, rhs.span);
      lhs = expr_term(make_binary(ExprKind::Product, as_expr(lhs), as_expr(rhs), s));
    }
  }

  Term parse_join() {
    Term lhs = parse_prefix();
    for (;;) {
      if (accept_symbol(".")) {
        Term rhs = parse_prefix();
        Span s = cover(lhs.span, rhs.span);
        lhs = expr_term(make_binary(ExprKind::Join, as_expr(lhs), as_expr(rhs), s));
      } else if (peek().is_symbol("[")) {
        take();
        std::vector<ExprPtr> args;
        if (!peek().is_symbol("]")) {
          do {
            args.push_back(as_expr(parse_union()));
          } while (accept_symbol(","));
        }
        const Token& close = expect_symbol("]");
        Span s = cover(lhs.span, close.span);
        if (!lhs.formula && !lhs.isCall && lhs.expr->kind == ExprKind::Name) {
          Term call;
          call.isCall = true;
          call.callee = lhs.expr->name;
          call.calleeSpan = lhs.expr->span;
          call.callArgs = std::move(args);
          call.span = s;
          lhs = std::move(call);
        } else {
          lhs = expr_term(box_join(as_expr(lhs), args, s));
        }
      } else {
        return lhs;
      }
    }
  }

  Term parse_prefix() {
    const Token& t = peek();
    ExprKind kind;
    if (t.is_symbol("~")) {
      kind = ExprKind::Transpose;
    } else if (t.is_symbol("^")) {
      kind = ExprKind::Closure;
    } else if (t.is_symbol("*")) {
      kind = ExprKind::ReflexiveClosure;
    } else if (t.is_symbol("#")) {
      unsupported(t, "cardinality (#)");
    } else {
      return parse_primary();
    }
    Span start = take().span;
    Term operand = parse_prefix();
    return expr_term(make_unary(kind, as_expr(operand), cover(start, operand.span)));
  }

  Term parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Identifier:
        take();
        return expr_term(make_ref(ExprKind::Name, t.text, t.span));
      case TokenKind::Number:
        unsupported(t, "integer literals");
      case TokenKind::Keyword:
        if (t.text == "univ") return take(), expr_term(make_constant(ExprKind::Univ, t.span));
        if (t.text == "iden") return take(), expr_term(make_constant(ExprKind::Iden, t.span));
        if (t.text == "none") return take(), expr_term(make_constant(ExprKind::None, t.span));
        if (t.text == "Int" || t.text == "int" || t.text == "sum") unsupported(t, "integers");
        if (t.text == "seq") unsupported(t, "sequences");
        if (t.text == "this") unsupported(t, "this");
        if (t.text == "let") unsupported(t, "let");
        fail(t, "unexpected keyword '" + t.text + "'");
      case TokenKind::Symbol:
        if (t.text == "(") {
          Span open = take().span;
          Term inner = parse_or();
          const Token& close = expect_symbol(")");
          inner.span = cover(open, close.span);
          return inner;
        }
        if (t.text == "{") return formula_term(parse_block());
        if (t.text == "@") unsupported(t, "@-references");
        if (t.text == "-") unsupported(t, "integer negation");
        fail(t, "expected an expression or formula but found " + describe(t));
      case TokenKind::End:
        fail(t, "unexpected end of input");
    }
    fail(t, "unexpected token");
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

SourceModel parse_model(std::string_view text) { return Parser(text).model(); }

FormulaPtr parse_formula_text(std::string_view text) { return Parser(text).formula_sequence(); }

}  // namespace crucible
