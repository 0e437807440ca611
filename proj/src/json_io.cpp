#include "crucible/json_io.hpp"

#include <algorithm>

namespace crucible {

namespace {

std::string_view kind_name(SigKind kind) {
  switch (kind) {
    case SigKind::Top: return "top";
    case SigKind::Extends: return "extends";
    case SigKind::Subset: return "subset";
  }
  return "top";
}

}  // namespace

Json to_json(const ModelSchema& schema) {
  const auto concrete = concrete_sigs(schema);
  Json sigs = Json::array();
  for (const auto& s : schema.sigs) {
    Json j;
    j["name"] = s.name;
    j["multiplicity"] = s.multiplicity == SigMultiplicity::Any ? "" : std::string(keyword(s.multiplicity));
    j["abstract"] = s.isAbstract;
    j["kind"] = kind_name(s.kind);
    if (s.kind == SigKind::Extends) j["parent"] = s.parent;
    if (s.kind == SigKind::Subset) j["subsetOf"] = s.subsetOf;
    j["concrete"] = std::find(concrete.begin(), concrete.end(), s.name) != concrete.end();
    j["fields"] = s.fields;
    sigs.push_back(std::move(j));
  }
  Json fields = Json::array();
  for (const auto& f : schema.fields) {
    Json j;
    j["name"] = f.name;
    j["owner"] = f.owner;
    std::vector<std::string> columns{f.owner};
    columns.insert(columns.end(), f.columns.begin(), f.columns.end());
    j["columns"] = columns;
    j["arity"] = f.arity();
    if (f.arity() == 2) {
      j["multiplicity"] = keyword(f.multiplicity);
    } else {
      Json arrows = Json::array();
      for (const auto& a : f.arrowMults) arrows.push_back({{"left", keyword(a.left)}, {"right", keyword(a.right)}});
      j["arrowMults"] = std::move(arrows);
    }
    fields.push_back(std::move(j));
  }
  Json preds = Json::array();
  for (const auto& p : schema.preds) {
    Json params = Json::array();
    for (const auto& param : p.params) params.push_back({{"name", param.name}, {"sig", param.sig}});
    preds.push_back({{"name", p.name}, {"params", std::move(params)}, {"assert", p.isAssert}});
  }
  Json facts = Json::array();
  for (const auto& f : schema.facts) facts.push_back(f.name);
  return {{"sigs", std::move(sigs)}, {"fields", std::move(fields)}, {"preds", std::move(preds)}, {"facts", std::move(facts)}};
}

Json to_json(const Atom& atom) {
  return {{"id", atom.id}, {"sig", atom.sig}, {"nickname", atom.nickname},
          {"subsets", atom.subsets}, {"x", atom.x}, {"y", atom.y}};
}

Json to_json(const Connection& connection) {
  return {{"relation", connection.relation}, {"atomIds", connection.atomIds}};
}

Json to_json(const TestCase& test) {
  Json atoms = Json::array();
  for (const auto& a : test.atoms) atoms.push_back(to_json(a));
  Json connections = Json::array();
  for (const auto& c : test.connections) connections.push_back(to_json(c));
  Json preds = Json::object();
  for (const auto& [name, e] : test.predicateStates) preds[name] = {{"state", to_string(e.state)}, {"args", e.args}};
  Json counters = Json::object();
  for (const auto& [sig, n] : test.nicknameCounters) counters[sig] = n;
  return {{"name", test.name},
          {"atoms", std::move(atoms)},
          {"connections", std::move(connections)},
          {"predicateStates", std::move(preds)},
          {"nicknameCounters", std::move(counters)}};
}

Json to_json(const Valuation& valuation) {
  Json sigs = Json::object();
  for (const auto& [name, set] : valuation.sigSets) sigs[name] = set;
  Json rels = Json::object();
  for (const auto& [name, tuples] : valuation.relTuples) rels[name] = tuples;
  return {{"sigSets", std::move(sigs)}, {"relTuples", std::move(rels)}};
}

Json to_json(const Diagnostic& d) {
  return {{"kind", to_string(d.kind)}, {"rule", d.rule}, {"subject", d.subject}, {"holds", d.holds}, {"detail", d.detail}};
}

Json to_json(const GuidanceVerdict& v) {
  return {{"allowed", v.allowed()}, {"rule", v.rule}, {"message", v.message}, {"culprit", v.culprit}};
}

Json to_json(const PreRunReport& report) {
  Json out = Json::array();
  for (const auto& v : report.violations)
    out.push_back({{"kind", v.kind}, {"subject", v.subject}, {"detail", v.detail}});
  return {{"violations", std::move(out)}};
}

Json to_json(const RunResult& r) {
  Json diags = Json::array();
  for (const auto& d : r.diagnostics) diags.push_back(to_json(d));
  Json failures = Json::array();
  for (const auto& d : r.failures()) failures.push_back(to_json(d));
  return {{"status", r.passed ? "pass" : "fail"},
          {"commandString", r.command.text},
          {"predicateSuffixes", r.command.predicateSuffixes},
          {"diagnostics", std::move(diags)},
          {"failures", std::move(failures)},
          {"elapsedMs", r.elapsedMs}};
}

Json to_json(const OracleResult& r) {
  Json out{{"satisfiable", r.satisfiable}, {"valuationsChecked", r.valuationsChecked}};
  out["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return out;
}

Json to_json(const Error& error) {
  Json details = Json::object();
  if (const auto* g = dynamic_cast<const GuidanceViolation*>(&error)) details = to_json(g->verdict());
  else if (const auto* b = dynamic_cast<const StructuralBlock*>(&error)) details = to_json(b->report());
  if (error.span()) details["line"] = error.span()->line, details["column"] = error.span()->column;
  return {{"code", to_string(error.code())}, {"message", error.what()}, {"details", std::move(details)}};
}

TestCase test_case_from_json(const Json& json, ErrorCode onBadShape) {
  try {
    TestCase t;
    t.name = json.at("name").get<std::string>();
    for (const auto& a : json.at("atoms")) {
      Atom atom;
      atom.id = a.at("id").get<std::string>();
      atom.sig = a.at("sig").get<std::string>();
      atom.nickname = a.at("nickname").get<std::string>();
      atom.subsets = a.at("subsets").get<std::vector<std::string>>();
      atom.x = a.at("x").get<double>();
      atom.y = a.at("y").get<double>();
      t.atoms.push_back(std::move(atom));
    }
    for (const auto& c : json.at("connections"))
      t.connections.push_back({c.at("relation").get<std::string>(), c.at("atomIds").get<std::vector<std::string>>()});
    for (const auto& [name, e] : json.at("predicateStates").items()) {
      auto state = parse_predicate_state(e.at("state").get<std::string>());
      if (!state) throw Error(onBadShape, "bad predicate state for " + name);
      if (*state == PredicateState::DontTest) continue;
      t.predicateStates[name] = {*state, e.at("args").get<std::vector<std::string>>()};
    }
    for (const auto& [sig, n] : json.at("nicknameCounters").items()) t.nicknameCounters[sig] = n.get<int>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(onBadShape, std::string("malformed test case: ") + e.what());
  }
}

}  // namespace crucible
