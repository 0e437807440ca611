#include "crucible/run.hpp"

#include <algorithm>
#include <chrono>

#include "crucible/evaluator.hpp"
#include "crucible/schema.hpp"

namespace crucible {

namespace {

std::string summarize(const PreRunReport& report) {
  std::string out = "canvas violates structural constraints:";
  for (const auto& v : report.violations) out += " [" + v.kind + " " + v.subject + "]";
  return out;
}

}  // namespace

StructuralBlock::StructuralBlock(PreRunReport report)
    : Error(ErrorCode::StructuralBlock, summarize(report)), report_(std::move(report)) {}

std::vector<Diagnostic> RunResult::failures() const {
  std::vector<Diagnostic> out;
  for (const auto& d : diagnostics)
    if (!d.holds) out.push_back(d);
  return out;
}

RunResult run_test(const TestCase& test, const ModelSchema& schema, const RunOptions& options) {
  auto start = std::chrono::steady_clock::now();
  if (!options.allowStructuralFailure) {
    PreRunReport report = pre_run_check(test, schema);
    if (!report.empty()) throw StructuralBlock(std::move(report));
  }
  RunResult result;
  result.command = generate_command_string(test, schema);
  Instance inst = Instance::from_valuation(derive_valuation(test, schema), schema);
  result.diagnostics = check_structural(inst, schema);
  for (auto& d : check_facts(inst, schema)) result.diagnostics.push_back(std::move(d));
  std::size_t literal = 0;
  for (const auto& pred : schema.preds) {
    auto it = test.predicateStates.find(pred.name);
    if (it == test.predicateStates.end() || it->second.state == PredicateState::DontTest) continue;
    std::vector<TupleSet> args;
    for (const auto& id : it->second.args) args.push_back(TupleSet::singleton(*inst.find_atom(id)));
    const bool value = eval_pred(schema, pred.name, args, inst);
    const bool expectValid = it->second.state == PredicateState::Valid;
    Diagnostic d;
    d.kind = ConstraintKind::Predicate;
    d.subject = result.command.predicateSuffixes[literal++];
    d.holds = value == expectValid;
    std::string call = d.subject.front() == '!' ? d.subject.substr(1) : d.subject;
    d.detail = call + " expected " + std::string(expectValid ? "valid" : "invalid") + ", evaluated " +
               (value ? "true" : "false");
    result.diagnostics.push_back(std::move(d));
  }
  result.passed = std::all_of(result.diagnostics.begin(), result.diagnostics.end(),
                              [](const Diagnostic& d) { return d.holds; });
  result.elapsedMs =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace crucible
