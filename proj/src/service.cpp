#include "crucible/service.hpp"

#include <httplib.h>

#include <charconv>

#include "crucible/json_io.hpp"
#include "crucible/run.hpp"
#include "crucible/store.hpp"
#include "crucible/translator.hpp"

namespace crucible {

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotFound:
    case ErrorCode::UnknownTest:
    case ErrorCode::UnknownAtom:
    case ErrorCode::UnknownConnection:
      return 404;
    case ErrorCode::InvalidName:
    case ErrorCode::UnknownSig:
    case ErrorCode::UnknownPred:
    case ErrorCode::UnknownRelation:
    case ErrorCode::ArityMismatch:
    case ErrorCode::BadArgs:
    case ErrorCode::BadPrefix:
    case ErrorCode::BadRequest:
      return 400;
    case ErrorCode::DuplicateProjectName:
    case ErrorCode::DuplicateTestName:
    case ErrorCode::AbstractSig:
    case ErrorCode::GuidanceViolation:
    case ErrorCode::StructuralBlock:
      return 409;
    case ErrorCode::SyntaxError:
    case ErrorCode::UnsupportedFeature:
    case ErrorCode::UnknownName:
    case ErrorCode::DuplicateName:
    case ErrorCode::CyclicHierarchy:
    case ErrorCode::InvalidHierarchy:
    case ErrorCode::ArityError:
    case ErrorCode::RecursiveCall:
    case ErrorCode::UniverseTooLarge:
      return 422;
    case ErrorCode::IoError:
    case ErrorCode::CorruptProject:
      return 500;
  }
  return 500;
}

namespace {

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i < path.size()) {
    if (path[i] == '/') {
      ++i;
      continue;
    }
    std::size_t j = path.find('/', i);
    if (j == std::string::npos) j = path.size();
    parts.push_back(httplib::detail::decode_url(path.substr(i, j - i), false));
    i = j;
  }
  return parts;
}

Json parse_body(const std::string& body) {
  if (body.empty()) return Json::object();
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::BadRequest, "request body must be a JSON object");
  return j;
}

template <typename T>
T field(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) throw Error(ErrorCode::BadRequest, std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::BadRequest, std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
T field_or(const Json& body, const char* key, T fallback) {
  return body.contains(key) ? field<T>(body, key) : fallback;
}

std::size_t parse_index(const std::string& text) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size())
    throw Error(ErrorCode::BadRequest, "connection index must be a number");
  return value;
}

HttpResponse ok(Json body, int status = 200) { return {status, body.dump()}; }

Json project_summary(const Project& p) {
  std::vector<std::string> tests;
  for (const auto& [name, t] : p.tests) tests.push_back(name);
  Json colors = Json::object();
  for (const auto& [sig, c] : p.colorAssignments) colors[sig] = c;
  return {{"id", p.id},       {"name", p.name},     {"modelSource", p.modelSource},
          {"schema", to_json(p.schema)}, {"colorAssignments", std::move(colors)}, {"tests", tests}};
}

class Router {
 public:
  Router(Store& store, const std::string& method, std::vector<std::string> parts, Json body)
      : store_(store), method_(method), parts_(std::move(parts)), body_(std::move(body)) {}

  HttpResponse dispatch() {
    if (parts_.empty() || parts_[0] != "projects") return not_found();
    if (parts_.size() == 1) return projects();
    const std::string& id = parts_[1];
    if (parts_.size() == 2) return project(id);
    if (parts_[2] != "tests") return not_found();
    if (parts_.size() == 3) {
      if (method_ != "POST") return not_allowed();
      return ok(to_json(store_.create_test(id, field<std::string>(body_, "name"))), 201);
    }
    const std::string& test = parts_[3];
    if (parts_.size() == 4) return test_resource(id, test);
    return test_action(id, test);
  }

 private:
  HttpResponse projects() {
    if (method_ == "GET") {
      Json list = Json::array();
      for (const auto& id : store_.list_projects()) list.push_back({{"id", id}, {"name", id}});
      return ok(std::move(list));
    }
    if (method_ == "POST") {
      Project p = store_.create_project(field<std::string>(body_, "name"), field<std::string>(body_, "modelSource"));
      return ok(project_summary(p), 201);
    }
    return not_allowed();
  }

  HttpResponse project(const std::string& id) {
    if (method_ == "GET") return ok(project_summary(store_.load_project(id)));
    if (method_ == "DELETE") {
      store_.delete_project(id);
      return {204, ""};
    }
    if (method_ == "PATCH") {
      auto colors = field<std::map<std::string, std::string>>(body_, "colorAssignments");
      Json out;
      store_.update(id, [&](Project& p) {
        for (const auto& [sig, c] : colors)
          if (!p.schema.find_sig(sig)) throw Error(ErrorCode::UnknownSig, "no sig named " + sig);
        p.colorAssignments = colors;
        out = project_summary(p);
      });
      return ok(std::move(out));
    }
    return not_allowed();
  }

  HttpResponse test_resource(const std::string& id, const std::string& test) {
    if (method_ == "GET") return ok(to_json(store_.load_project(id).test(test)));
    if (method_ == "DELETE") {
      store_.delete_test(id, test);
      return {204, ""};
    }
    return not_allowed();
  }

  HttpResponse test_action(const std::string& id, const std::string& test) {
    const std::string& action = parts_[4];
    const std::string* arg = parts_.size() == 6 ? &parts_[5] : nullptr;
    if (parts_.size() > 6) return not_found();

    if (action == "atoms" && !arg && method_ == "POST") {
      Json out;
      mutate(id, test, [&](TestCase& t, const ModelSchema& s) {
        out = to_json(add_atom(t, s, field<std::string>(body_, "sig"), field_or(body_, "x", 0.0),
                               field_or(body_, "y", 0.0)));
      });
      return ok(std::move(out), 201);
    }
    if (action == "atoms" && arg && method_ == "DELETE") {
      Json removed = Json::array();
      mutate(id, test, [&](TestCase& t, const ModelSchema&) {
        for (const auto& c : remove_atom(t, *arg)) removed.push_back(to_json(c));
      });
      return ok({{"removedConnections", std::move(removed)}});
    }
    if (action == "atoms" && arg && method_ == "PATCH") {
      Json out;
      mutate(id, test, [&](TestCase& t, const ModelSchema& s) {
        const Atom& a = t.atom(*arg);
        if (body_.contains("x") || body_.contains("y"))
          move_atom(t, *arg, field_or(body_, "x", a.x), field_or(body_, "y", a.y));
        if (body_.contains("subsets"))
          set_atom_subsets(t, s, *arg, field<std::vector<std::string>>(body_, "subsets"));
        out = to_json(t.atom(*arg));
      });
      return ok(std::move(out));
    }
    if (action == "connections" && !arg && method_ == "POST") {
      Json out;
      mutate(id, test, [&](TestCase& t, const ModelSchema& s) {
        const Connection& c = add_connection(t, s, field<std::string>(body_, "relation"),
                                             field<std::vector<std::string>>(body_, "atomIds"));
        out = {{"index", t.connections.size() - 1}, {"connection", to_json(c)}};
      });
      return ok(std::move(out), 201);
    }
    if (action == "connections" && arg && method_ == "DELETE") {
      std::size_t index = parse_index(*arg);
      Json removed = Json::array();
      mutate(id, test, [&](TestCase& t, const ModelSchema&) {
        for (const auto& c : remove_connection(t, index)) removed.push_back(to_json(c));
      });
      return ok({{"removed", std::move(removed)}});
    }
    if (action == "predicates" && arg && method_ == "PUT") {
      std::string stateText = field<std::string>(body_, "state");
      auto state = parse_predicate_state(stateText);
      if (!state) throw Error(ErrorCode::BadRequest, "unknown predicate state '" + stateText + "'");
      Json out;
      mutate(id, test, [&](TestCase& t, const ModelSchema& s) {
        set_predicate_state(t, s, *arg, *state, field_or(body_, "args", std::vector<std::string>{}));
        out = to_json(t);
      });
      return ok(std::move(out));
    }
    if (arg || method_ != "POST") return parts_.size() == 5 && is_action(action) ? not_allowed() : not_found();

    Project p = store_.load_project(id);
    const TestCase& t = p.test(test);
    if (action == "valid-targets") {
      auto targets = valid_connection_targets(t, p.schema, field<std::string>(body_, "relation"),
                                              field_or(body_, "prefixAtomIds", std::vector<std::string>{}));
      return ok({{"targets", targets}});
    }
    if (action == "run") {
      RunOptions options{.allowStructuralFailure = field_or(body_, "allowStructuralFailure", false)};
      return ok(to_json(run_test(t, p.schema, options)));
    }
    if (action == "translate") {
      CommandString c = generate_command_string(t, p.schema);
      return ok({{"commandString", c.text},
                 {"predicateSuffixes", c.predicateSuffixes},
                 {"aunitFile", generate_aunit_file(t, p.schema)}});
    }
    return not_found();
  }

  static bool is_action(const std::string& a) {
    return a == "atoms" || a == "connections" || a == "predicates" || a == "valid-targets" || a == "run" ||
           a == "translate";
  }

  template <typename F>
  void mutate(const std::string& id, const std::string& test, F&& fn) {
    store_.update(id, [&](Project& p) { fn(p.test(test), p.schema); });
  }

  HttpResponse not_found() const {
    return error(Error(ErrorCode::NotFound, "no route for " + method_ + " /" + join()), 404);
  }
  HttpResponse not_allowed() const {
    return error(Error(ErrorCode::BadRequest, method_ + " is not supported on /" + join()), 405);
  }
  static HttpResponse error(const Error& e, int status) { return {status, to_json(e).dump()}; }

  std::string join() const {
    std::string out;
    for (const auto& p : parts_) out += (out.empty() ? "" : "/") + p;
    return out;
  }

  Store& store_;
  std::string method_;
  std::vector<std::string> parts_;
  Json body_;
};

}  // namespace

HttpResponse handle_request(Store& store, const std::string& method, const std::string& path,
                            const std::string& body) {
  try {
    return Router(store, method, split_path(path), parse_body(body)).dispatch();
  } catch (const Error& e) {
    return {http_status(e.code()), to_json(e).dump()};
  } catch (const std::exception& e) {
    return {500, Json{{"code", "Internal"}, {"message", e.what()}, {"details", Json::object()}}.dump()};
  }
}

struct Service::Impl {
  ServiceConfig config;
  Store store;
  httplib::Server server;

  explicit Impl(ServiceConfig c) : config(std::move(c)), store(config.storeDir) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
      HttpResponse r = handle_request(store, req.method, req.path, req.body);
      res.status = r.status;
      if (!r.body.empty()) res.set_content(r.body, "application/json");
    };
    const char* api = R"(/projects(/.*)?)";
    server.Get(api, handler);
    server.Post(api, handler);
    server.Put(api, handler);
    server.Patch(api, handler);
    server.Delete(api, handler);
    if (!config.uiDir.empty()) server.set_mount_point("/ui", config.uiDir.string());
  }
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
Service::~Service() = default;

int Service::bind() {
  auto& c = impl_->config;
  int port = c.port == 0 ? impl_->server.bind_to_any_port(c.bindAddress) : c.port;
  if (c.port != 0 && !impl_->server.bind_to_port(c.bindAddress, c.port)) port = -1;
  if (port < 0)
    throw Error(ErrorCode::IoError, "cannot bind " + c.bindAddress + ":" + std::to_string(c.port));
  return port;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() { impl_->server.stop(); }

}  // namespace crucible
