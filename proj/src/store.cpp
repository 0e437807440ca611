#include "crucible/store.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "crucible/json_io.hpp"

namespace crucible {

namespace fs = std::filesystem;

TestCase& Project::test(const std::string& name) {
  auto it = tests.find(name);
  if (it == tests.end()) throw Error(ErrorCode::UnknownTest, "no test named " + name + " in project " + id);
  return it->second;
}

const TestCase& Project::test(const std::string& name) const {
  return const_cast<Project&>(*this).test(name);
}

bool is_valid_name(std::string_view name) noexcept {
  if (name.empty() || name.size() > 64) return false;
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  return true;
}

std::string serialize_project(const Project& p) {
  Json tests = Json::object();
  for (const auto& [name, t] : p.tests) {
    Json j = to_json(t);
    j.erase("name");
    tests[name] = std::move(j);
  }
  Json colors = Json::object();
  for (const auto& [sig, color] : p.colorAssignments) colors[sig] = color;
  Json doc{{"formatVersion", kProjectFormatVersion},
           {"name", p.name},
           {"modelSource", p.modelSource},
           {"schema", to_json(p.schema)},
           {"colorAssignments", std::move(colors)},
           {"tests", std::move(tests)}};
  return doc.dump(2) + "\n";
}

Project deserialize_project(const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw Error(ErrorCode::CorruptProject, "project file is not a JSON object");
  try {
    int version = doc.at("formatVersion").get<int>();
    if (version != kProjectFormatVersion)
      throw Error(ErrorCode::CorruptProject, "unsupported formatVersion " + std::to_string(version));
    Project p;
    p.name = p.id = doc.at("name").get<std::string>();
    p.modelSource = doc.at("modelSource").get<std::string>();
    // The cached schema is for readers of the file; the live one comes from the source.
    p.schema = load_schema(p.modelSource);
    for (const auto& [sig, color] : doc.at("colorAssignments").items()) p.colorAssignments[sig] = color.get<std::string>();
    for (const auto& [name, t] : doc.at("tests").items()) {
      Json j = t;
      j["name"] = name;
      p.tests[name] = test_case_from_json(j, ErrorCode::CorruptProject);
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptProject, std::string("malformed project file: ") + e.what());
  }
}

Store::Store(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create store directory " + dir_.string() + ": " + ec.message());
}

fs::path Store::path_for(const std::string& id) const {
  if (!is_valid_name(id)) throw Error(ErrorCode::InvalidName, "invalid project name '" + id + "'");
  return dir_ / (id + ".json");
}

std::mutex& Store::lock_for(const std::string& id) {
  std::lock_guard guard(locksMutex_);
  auto& slot = locks_[id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

Project Store::create_project(const std::string& name, const std::string& modelSource) {
  fs::path path = path_for(name);
  Project p;
  p.id = p.name = name;
  p.modelSource = modelSource;
  p.schema = load_schema(modelSource);
  std::lock_guard guard(lock_for(name));
  if (fs::exists(path)) throw Error(ErrorCode::DuplicateProjectName, "project " + name + " already exists");
  save_project(p);
  return p;
}

std::vector<std::string> Store::list_projects() const {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(dir_, ec))
    if (entry.path().extension() == ".json" && is_valid_name(entry.path().stem().string()))
      ids.push_back(entry.path().stem().string());
  if (ec) throw Error(ErrorCode::IoError, "cannot list " + dir_.string() + ": " + ec.message());
  std::sort(ids.begin(), ids.end());
  return ids;
}

Project Store::load_project(const std::string& id) const {
  fs::path path = path_for(id);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (!fs::exists(path)) throw Error(ErrorCode::NotFound, "no project named " + id);
    throw Error(ErrorCode::IoError, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  Project p = deserialize_project(buf.str());
  if (p.id != id) throw Error(ErrorCode::CorruptProject, "file " + path.string() + " holds project " + p.id);
  return p;
}

void Store::save_project(const Project& project) {
  fs::path path = path_for(project.id);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << serialize_project(project);
    out.close();
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot replace " + path.string() + ": " + ec.message());
}

void Store::delete_project(const std::string& id) {
  fs::path path = path_for(id);
  std::lock_guard guard(lock_for(id));
  if (!fs::remove(path)) throw Error(ErrorCode::NotFound, "no project named " + id);
}

void Store::update(const std::string& id, const std::function<void(Project&)>& fn) {
  std::lock_guard guard(lock_for(id));
  Project p = load_project(id);
  fn(p);
  save_project(p);
}

TestCase Store::create_test(const std::string& id, const std::string& testName) {
  if (!is_valid_name(testName)) throw Error(ErrorCode::InvalidName, "invalid test name '" + testName + "'");
  TestCase created;
  update(id, [&](Project& p) {
    if (p.tests.count(testName)) throw Error(ErrorCode::DuplicateTestName, "test " + testName + " already exists");
    created.name = testName;
    p.tests[testName] = created;
  });
  return created;
}

void Store::delete_test(const std::string& id, const std::string& testName) {
  update(id, [&](Project& p) {
    if (!p.tests.erase(testName)) throw Error(ErrorCode::UnknownTest, "no test named " + testName);
  });
}

}  // namespace crucible
