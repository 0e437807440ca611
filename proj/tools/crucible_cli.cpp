// Command-line driver over the store and the engine.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "crucible/json_io.hpp"
#include "crucible/oracle.hpp"
#include "crucible/parser.hpp"
#include "crucible/run.hpp"
#include "crucible/service.hpp"
#include "crucible/store.hpp"
#include "crucible/translator.hpp"

using namespace crucible;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTestFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitEngine = 3;

struct Options {
  std::string storeDir;
  std::string output = "text";
  bool json() const { return output == "json"; }
};

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return v && *v ? v : fallback;
}

std::string read_source(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_schema(const ModelSchema& s, const Options& o) {
  if (o.json()) {
    std::cout << to_json(s).dump(2) << "\n";
    return;
  }
  for (const auto& sig : s.sigs) {
    std::cout << "sig " << sig.name;
    if (sig.multiplicity != SigMultiplicity::Any) std::cout << " (" << keyword(sig.multiplicity) << ")";
    if (sig.isAbstract) std::cout << " abstract";
    if (sig.kind == SigKind::Extends) std::cout << " extends " << sig.parent;
    if (sig.kind == SigKind::Subset) {
      std::cout << " in";
      for (std::size_t i = 0; i < sig.subsetOf.size(); ++i) std::cout << (i ? " + " : " ") << sig.subsetOf[i];
    }
    std::cout << "\n";
  }
  for (const auto& f : s.fields) {
    std::cout << "field " << f.name << " : " << f.owner;
    for (const auto& c : f.columns) std::cout << " -> " << c;
    if (f.arity() == 2) std::cout << " (" << keyword(f.multiplicity) << ")";
    std::cout << "\n";
  }
  for (const auto& p : s.preds) {
    std::cout << (p.isAssert ? "assert " : "pred ") << p.name;
    if (!p.params.empty()) {
      std::cout << "[";
      for (std::size_t i = 0; i < p.params.size(); ++i)
        std::cout << (i ? ", " : "") << p.params[i].name << " : " << p.params[i].sig;
      std::cout << "]";
    }
    std::cout << "\n";
  }
}

int cmd_run(Store& store, const Options& o, const std::string& id, const std::string& only, bool allowStructural) {
  Project p = store.load_project(id);
  std::vector<std::string> names;
  if (!only.empty()) {
    p.test(only);
    names.push_back(only);
  } else {
    for (const auto& [name, t] : p.tests) names.push_back(name);
  }
  bool allPassed = true;
  Json report = Json::array();
  for (const auto& name : names) {
    Json entry{{"test", name}};
    try {
      RunResult r = run_test(p.test(name), p.schema, {.allowStructuralFailure = allowStructural});
      allPassed = allPassed && r.passed;
      entry["result"] = to_json(r);
      if (!o.json()) {
        std::cout << name << ": " << (r.passed ? "pass" : "fail") << "\n";
        for (const auto& d : r.failures()) std::cout << "  " << d.detail << "\n";
      }
    } catch (const StructuralBlock& b) {
      allPassed = false;
      entry["blocked"] = to_json(b.report());
      if (!o.json()) {
        std::cout << name << ": blocked\n";
        for (const auto& v : b.report().violations) std::cout << "  " << v.kind << " " << v.subject << ": " << v.detail << "\n";
      }
    }
    report.push_back(std::move(entry));
  }
  if (o.json()) std::cout << report.dump(2) << "\n";
  return allPassed ? kExitOk : kExitTestFailure;
}

int cmd_oracle(Store& store, const Options& o, const std::string& id, const std::string& test, int scope) {
  Project p = store.load_project(id);
  const TestCase& t = p.test(test);
  CommandString c = generate_command_string(t, p.schema);
  Scope bounds;
  bounds.defaultCount = scope;
  OracleResult oracle = enumerate_satisfiable(p.schema, *parse_formula_block(c.text, p.schema), bounds);
  RunResult r = run_test(t, p.schema, {.allowStructuralFailure = true});
  bool agree = oracle.satisfiable == r.passed;
  if (o.json()) {
    Json out = to_json(oracle);
    out["runStatus"] = r.passed ? "pass" : "fail";
    out["agree"] = agree;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "oracle: " << (oracle.satisfiable ? "sat" : "unsat") << " (" << oracle.valuationsChecked
              << " valuations)\nrun: " << (r.passed ? "pass" : "fail") << "\n"
              << (agree ? "agree" : "DISAGREE") << "\n";
  }
  return agree ? kExitOk : kExitTestFailure;
}

int cmd_serve(const Options& o, const std::string& bindAddress, int port, const std::string& uiDir) {
  Service service({.bindAddress = bindAddress, .port = port, .storeDir = o.storeDir, .uiDir = uiDir});
  int bound = service.bind();
  std::cerr << "crucible: serving " << o.storeDir << " on http://" << bindAddress << ":" << bound << "\n";
  service.listen();
  return kExitOk;
}

void report_error(const Error& e, const Options& o) {
  if (o.json()) std::cerr << to_json(e).dump() << "\n";
  else std::cerr << "crucible: " << to_string(e.code()) << ": " << e.what() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Graphical unit tests for Alloy models, headless driver"};
  app.require_subcommand(1);
  app.fallthrough();
  o.storeDir = env_or("CRUCIBLE_STORE_DIR", "crucible-store");
  app.add_option("--store-dir", o.storeDir, "Project store directory")->capture_default_str();
  app.add_option("--output", o.output, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string file, name, project, test;
  bool allowStructural = false, aunitFile = false;
  int iterations = 10, scope = 3;
  std::string bindAddress = "127.0.0.1", uiDir;
  int port = std::atoi(env_or("CRUCIBLE_PORT", "8080").c_str());

  auto* import = app.add_subcommand("import", "Create a project from an .als file and print its schema");
  import->add_option("file", file)->required()->check(CLI::ExistingFile);
  import->add_option("--name", name)->required();

  auto* schema = app.add_subcommand("schema", "Print a project's schema");
  schema->add_option("project", project)->required();

  auto* run = app.add_subcommand("run", "Run a project's tests; exit 0 iff all pass");
  run->add_option("project", project)->required();
  run->add_option("--test", test);
  run->add_flag("--allow-structural-failure", allowStructural);

  auto* translate = app.add_subcommand("translate", "Print the command string of a test");
  translate->add_option("project", project)->required();
  translate->add_option("test", test)->required();
  translate->add_flag("--aunit-file", aunitFile, "Print the val/@Test wrapper instead");

  auto* bench = app.add_subcommand("bench-translate", "Mean command-string generation time in ms");
  bench->add_option("project", project)->required();
  bench->add_option("test", test)->required();
  bench->add_option("--iterations", iterations)->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle-check", "Compare run_test with brute-force enumeration");
  oracle->add_option("project", project)->required();
  oracle->add_option("test", test)->required();
  oracle->add_option("--scope", scope)->check(CLI::Range(0, kOracleMaxUniverse));

  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--bind", bindAddress);
  serve->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve->add_option("--ui-dir", uiDir, "Static files served under /ui/");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*serve) return cmd_serve(o, bindAddress, port, uiDir);
    Store store(o.storeDir);
    if (*import) {
      print_schema(store.create_project(name, read_source(file)).schema, o);
      return kExitOk;
    }
    if (*schema) {
      print_schema(store.load_project(project).schema, o);
      return kExitOk;
    }
    if (*run) return cmd_run(store, o, project, test, allowStructural);
    if (*translate) {
      Project p = store.load_project(project);
      const TestCase& t = p.test(test);
      std::string text = aunitFile ? generate_aunit_file(t, p.schema) : generate_command_string(t, p.schema).text + "\n";
      if (o.json()) std::cout << Json{{"commandString", text}}.dump(2) << "\n";
      else std::cout << text;
      return kExitOk;
    }
    if (*bench) {
      Project p = store.load_project(project);
      double ms = bench_translate(p.test(test), p.schema, iterations);
      if (o.json()) std::cout << Json{{"meanMs", ms}, {"iterations", iterations}}.dump(2) << "\n";
      else std::cout << ms << " ms\n";
      return kExitOk;
    }
    if (*oracle) return cmd_oracle(store, o, project, test, scope);
  } catch (const Error& e) {
    report_error(e, o);
    return kExitEngine;
  } catch (const std::exception& e) {
    report_error(Error(ErrorCode::IoError, e.what()), o);
    return kExitEngine;
  }
  return kExitUsage;
}
