#include "crucible/printer.hpp"

namespace crucible {

namespace {

std::string_view binary_symbol(ExprKind k) {
  switch (k) {
    case ExprKind::Join: return ".";
    case ExprKind::Product: return "->";
    case ExprKind::Union: return "+";
    case ExprKind::Difference: return "-";
    case ExprKind::Intersection: return "&";
    default: return "?";
  }
}

std::string_view unary_symbol(ExprKind k) {
  switch (k) {
    case ExprKind::Transpose: return "~";
    case ExprKind::Closure: return "^";
    case ExprKind::ReflexiveClosure: return "*";
    default: return "?";
  }
}

void print_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::Name:
    case ExprKind::SigRef:
    case ExprKind::FieldRef:
    case ExprKind::VarRef:
      out += e.name;
      return;
    case ExprKind::Univ: out += "univ"; return;
    case ExprKind::Iden: out += "iden"; return;
    case ExprKind::None: out += "none"; return;
    case ExprKind::Transpose:
    case ExprKind::Closure:
    case ExprKind::ReflexiveClosure:
      out += unary_symbol(e.kind);
      out += '(';
      print_expr(*e.lhs, out);
      out += ')';
      return;
    case ExprKind::Join:
    case ExprKind::Product:
    case ExprKind::Union:
    case ExprKind::Difference:
    case ExprKind::Intersection:
      out += '(';
      print_expr(*e.lhs, out);
      out += ' ';
      out += binary_symbol(e.kind);
      out += ' ';
      print_expr(*e.rhs, out);
      out += ')';
      return;
  }
}

void print_formula(const Formula& f, std::string& out) {
  auto compare = [&](std::string_view op) {
    out += '(';
    print_expr(*f.left, out);
    out += ' ';
    out += op;
    out += ' ';
    print_expr(*f.right, out);
    out += ')';
  };
  auto connective = [&](std::string_view op) {
    out += '(';
    print_formula(*f.first, out);
    out += ' ';
    out += op;
    out += ' ';
    print_formula(*f.second, out);
    if (f.third) {
      out += " else ";
      print_formula(*f.third, out);
    }
    out += ')';
  };
  switch (f.kind) {
    case FormulaKind::Subset: return compare("in");
    case FormulaKind::Equal: return compare("=");
    case FormulaKind::NotEqual: return compare("!=");
    case FormulaKind::Mult:
      out += '(';
      out += keyword(f.mult);
      out += ' ';
      print_expr(*f.left, out);
      out += ')';
      return;
    case FormulaKind::Quantified: {
      out += '(';
      out += keyword(f.quantifier);
      out += ' ';
      for (std::size_t i = 0; i < f.decls.size(); ++i) {
        const auto& d = f.decls[i];
        if (i) out += ", ";
        if (d.disjoint) out += "disj ";
        for (std::size_t j = 0; j < d.names.size(); ++j) {
          if (j) out += ", ";
          out += d.names[j];
        }
        out += " : ";
        print_expr(*d.domain, out);
      }
      out += " | ";
      print_formula(*f.first, out);
      out += ')';
      return;
    }
    case FormulaKind::Not:
      out += "!(";
      print_formula(*f.first, out);
      out += ')';
      return;
    case FormulaKind::And: return connective("&&");
    case FormulaKind::Or: return connective("||");
    case FormulaKind::Implies: return connective("=>");
    case FormulaKind::Iff: return connective("<=>");
    case FormulaKind::PredCall:
      out += f.name;
      if (!f.args.empty()) {
        out += '[';
        for (std::size_t i = 0; i < f.args.size(); ++i) {
          if (i) out += ", ";
          print_expr(*f.args[i], out);
        }
        out += ']';
      }
      return;
    case FormulaKind::Block:
      out += '{';
      for (const auto& c : f.children) {
        out += ' ';
        print_formula(*c, out);
      }
      out += " }";
      return;
  }
}

}  // namespace

std::string print(const Expr& e) {
  std::string out;
  print_expr(e, out);
  return out;
}

std::string print(const Formula& f) {
  std::string out;
  print_formula(f, out);
  return out;
}

}  // namespace crucible
