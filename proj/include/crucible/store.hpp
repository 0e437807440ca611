#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "crucible/schema.hpp"
#include "crucible/testcase.hpp"

namespace crucible {

inline constexpr int kProjectFormatVersion = 1;

struct Project {
  std::string id;  // equal to the name
  std::string name;
  std::string modelSource;
  ModelSchema schema;
  std::map<std::string, TestCase> tests;
  std::map<std::string, std::string> colorAssignments;

  TestCase& test(const std::string& name);  // throws UnknownTest
  const TestCase& test(const std::string& name) const;
};

/// Names double as file names and URL segments: 1 to 64 characters from
/// [A-Za-z0-9_-].
bool is_valid_name(std::string_view name) noexcept;

/// One JSON document per project in `dir`. Mutations on one project are
/// serialized; every mutation reloads the document, applies the change and
/// writes it back through a temporary file and a rename.
class Store {
 public:
  explicit Store(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  /// Throws InvalidName, DuplicateProjectName or the model's parse errors.
  Project create_project(const std::string& name, const std::string& modelSource);
  std::vector<std::string> list_projects() const;
  /// Throws NotFound, IoError or CorruptProject.
  Project load_project(const std::string& id) const;
  void save_project(const Project& project);
  void delete_project(const std::string& id);

  /// Runs `fn` on a freshly loaded copy of the project and saves the result
  /// if `fn` returns normally.
  void update(const std::string& id, const std::function<void(Project&)>& fn);

  /// Shorthands over update().
  TestCase create_test(const std::string& id, const std::string& testName);
  void delete_test(const std::string& id, const std::string& testName);

 private:
  std::filesystem::path path_for(const std::string& id) const;
  std::mutex& lock_for(const std::string& id);

  std::filesystem::path dir_;
  std::mutex locksMutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

/// The on-disk document. Exposed for tests and the CLI.
std::string serialize_project(const Project& project);
/// Throws CorruptProject on malformed documents or an unknown formatVersion.
Project deserialize_project(const std::string& text);

}  // namespace crucible
