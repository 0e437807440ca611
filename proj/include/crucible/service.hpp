#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "crucible/error.hpp"

namespace crucible {

class Store;

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON, empty for 204
};

/// HTTP status for an engine error: 404 for missing resources, 400 for bad
/// requests, 409 for edits the canvas rules refuse, 422 for models that do not
/// load, 500 for storage faults.
int http_status(ErrorCode code) noexcept;

/// Routes one request against the store without any transport. The server
/// below and the tests both go through here.
HttpResponse handle_request(Store& store, const std::string& method, const std::string& path,
                            const std::string& body);

struct ServiceConfig {
  std::string bindAddress = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path storeDir = "crucible-store";
  /// Static files served under /ui/; disabled when empty.
  std::filesystem::path uiDir;
};

class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the socket and returns the port. Throws Error(IoError) on failure.
  int bind();
  /// Blocks until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace crucible
