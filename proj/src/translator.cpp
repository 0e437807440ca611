#include "crucible/translator.hpp"

#include <cctype>
#include <chrono>

#include "crucible/schema.hpp"

namespace crucible {

namespace {

struct Parts {
  std::vector<std::string> quantifiers;
  std::vector<std::string> equalities;
  std::vector<std::string> literals;
  std::vector<bool> literalHasArgs;
};

std::string equality(const std::string& name, const std::vector<std::string>& terms) {
  if (terms.empty()) return "no " + name;
  std::string out = name + " = ";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += " + ";
    out += terms[i];
  }
  return out;
}

Parts build(const TestCase& test, const ModelSchema& schema) {
  Parts p;
  const auto concrete = concrete_sigs(schema);
  for (const auto& sig : concrete) {
    std::string names;
    for (const auto& a : test.atoms) {
      if (a.sig != sig) continue;
      if (!names.empty()) names += ", ";
      names += a.nickname;
    }
    if (names.empty()) continue;
    // Direct atoms of a sig that also has children must stay apart from the
    // children's atoms, which live in other quantifier groups.
    std::string domain = sig;
    for (const auto& child : schema.children_of(sig)) domain += " - " + child;
    p.quantifiers.push_back("some disj " + names + " : " + domain + " {");
  }
  for (const auto& sig : concrete) {
    std::vector<std::string> terms;
    for (const auto& a : test.atoms)
      if (is_subtype(schema, a.sig, sig)) terms.push_back(a.nickname);
    p.equalities.push_back(equality(sig, terms));
  }
  for (const auto& sig : schema.sigs) {
    if (sig.kind != SigKind::Subset) continue;
    std::vector<std::string> terms;
    for (const auto& a : test.atoms)
      for (const auto& m : a.subsets)
        if (is_subtype(schema, m, sig.name)) {
          terms.push_back(a.nickname);
          break;
        }
    p.equalities.push_back(equality(sig.name, terms));
  }
  for (const auto& f : schema.fields) {
    std::vector<std::string> terms;
    for (const auto& c : test.connections)
      if (c.relation == f.name) terms.push_back(render_tuple(c, test));
    p.equalities.push_back(equality(f.name, terms));
  }
  for (const auto& pred : schema.preds) {
    auto it = test.predicateStates.find(pred.name);
    if (it == test.predicateStates.end() || it->second.state == PredicateState::DontTest) continue;
    std::string lit = it->second.state == PredicateState::Invalid ? "!" : "";
    lit += pred.name;
    if (!it->second.args.empty()) {
      lit += '[';
      for (std::size_t i = 0; i < it->second.args.size(); ++i) {
        if (i) lit += ", ";
        lit += test.atom(it->second.args[i]).nickname;
      }
      lit += ']';
    }
    p.literals.push_back(std::move(lit));
    p.literalHasArgs.push_back(!it->second.args.empty());
  }
  return p;
}

void append_line(std::string& out, std::string_view indent, std::string_view line) {
  if (!out.empty()) out += '\n';
  out += indent;
  out += line;
}

std::string identifier(const std::string& name) {
  std::string out;
  for (char c : name) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out.insert(out.begin(), 'T');
  return out;
}

}  // namespace

std::string render_tuple(const Connection& connection, const TestCase& test) {
  std::string out;
  for (std::size_t i = 0; i < connection.atomIds.size(); ++i) {
    if (i) out += "->";
    out += test.atom(connection.atomIds[i]).nickname;
  }
  return out;
}

CommandString generate_command_string(const TestCase& test, const ModelSchema& schema) {
  Parts p = build(test, schema);
  CommandString cmd;
  const std::string_view indent = p.quantifiers.empty() ? "" : "  ";
  for (const auto& q : p.quantifiers) append_line(cmd.text, "", q);
  for (const auto& e : p.equalities) append_line(cmd.text, indent, e);
  for (const auto& l : p.literals) append_line(cmd.text, indent, l);
  if (!p.quantifiers.empty()) append_line(cmd.text, "", std::string(p.quantifiers.size(), '}'));
  cmd.predicateSuffixes = std::move(p.literals);
  return cmd;
}

std::string generate_aunit_file(const TestCase& test, const ModelSchema& schema) {
  Parts p = build(test, schema);
  const std::string name = identifier(test.name);
  std::string out = "val " + name + " {";
  std::string indent = "  ";
  for (const auto& q : p.quantifiers) {
    out += '\n' + indent + q;
    indent += "  ";
  }
  for (const auto& e : p.equalities) out += '\n' + indent + e;
  // Literals with atom arguments need the quantified nicknames in scope.
  std::vector<std::string> outside;
  for (std::size_t i = 0; i < p.literals.size(); ++i) {
    if (p.literalHasArgs[i]) out += '\n' + indent + p.literals[i];
    else outside.push_back(p.literals[i]);
  }
  for (std::size_t i = p.quantifiers.size(); i > 0; --i) out += '\n' + std::string(2 * i, ' ') + "}";
  out += "\n}\n@Test " + name + "_cmd: run { ";
  for (const auto& l : outside) out += l + " and ";
  out += name + " }\n";
  return out;
}

double bench_translate(const TestCase& test, const ModelSchema& schema, int iterations) {
  if (iterations <= 0) throw Error(ErrorCode::BadArgs, "iterations must be positive");
  volatile std::size_t sink = 0;
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < iterations; ++i) sink = sink + generate_command_string(test, schema).text.size();
  auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  return elapsed.count() / iterations;
}

}  // namespace crucible
