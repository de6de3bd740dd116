#include "parweigh/service.hpp"

#include <cctype>
#include <charconv>
#include <regex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "parweigh/capacity.hpp"
#include "parweigh/solve.hpp"
#include "parweigh/strategy_file.hpp"

namespace parweigh::service {
namespace {

using nlohmann::json;

struct HttpError {
  int status;
  std::string code;
  std::string message;
};

Response reply(int status, const json& body) { return {status, body.dump()}; }

Response error_reply(int status, const std::string& code, const std::string& message) {
  return reply(status, {{"code", code}, {"message", message}});
}

// "InstanceTooLarge" -> "instance-too-large".
std::string kebab(std::string_view name) {
  std::string out;
  for (char ch : name) {
    if (std::isupper(static_cast<unsigned char>(ch))) {
      if (!out.empty()) out += '-';
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else {
      out += ch;
    }
  }
  return out;
}

Response from_error(const PuzzleError& e) {
  const std::string& reason = e.reason();
  if (reason == "not-active" || reason == "budget-exhausted")
    return error_reply(409, reason, e.what());
  std::string code = reason.empty() ? kebab(error_code_name(e.code())) : reason;
  return error_reply(422, code, e.what());
}

[[noreturn]] void malformed(const std::string& what) { throw HttpError{400, "bad-request", what}; }

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    json j = json::parse(body);
    if (!j.is_object()) malformed("body must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
}

int int_field(const json& j, const char* name, std::optional<int> fallback = std::nullopt) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) {
    if (fallback) return *fallback;
    malformed(std::string("missing field \"") + name + "\"");
  }
  if (!it->is_number_integer()) malformed(std::string("\"") + name + "\" must be an integer");
  return it->get<int>();
}

std::optional<std::string> string_field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) malformed(std::string("\"") + name + "\" must be a string");
  return it->get<std::string>();
}

Supply supply_field(const json& j) {
  auto it = j.find("supply");
  if (it == j.end() || it->is_null()) return Supply::none();
  if (it->is_number_integer()) {
    if (it->get<int>() < 0) throw HttpError{422, "invalid-argument", "supply must be >= 0"};
    return Supply::finite(it->get<int>());
  }
  if (it->is_string())
    if (auto s = verify::parse_supply(it->get<std::string>())) return *s;
  throw HttpError{422, "invalid-argument", "supply must be \"none\", \"unlimited\" or an integer"};
}

Problem problem_text(const std::optional<std::string>& text) {
  if (!text) return Problem::kJustFind;
  auto p = parse_problem(*text);
  if (!p) throw HttpError{422, "invalid-argument", "unknown problem \"" + *text + "\""};
  return *p;
}

json weighing_json(const ParallelWeighing& w) {
  json scales = json::array();
  for (const auto& load : w.loads) scales.push_back({{"left", load.left}, {"right", load.right}});
  return {{"scales", scales}};
}

ParallelWeighing parse_weighing(const json& j) {
  auto it = j.find("scales");
  if (it == j.end() || !it->is_array()) malformed("\"scales\" must be an array");
  ParallelWeighing w;
  for (const auto& load : *it) {
    if (!load.is_object()) malformed("each scale must be an object");
    ScaleLoad l;
    for (auto [name, pan] : {std::pair{"left", &l.left}, std::pair{"right", &l.right}}) {
      auto p = load.find(name);
      if (p == load.end() || p->is_null()) continue;
      if (!p->is_array()) malformed("pans must be arrays of coin ids");
      for (const auto& c : *p) {
        if (!c.is_number_integer()) malformed("coin ids must be integers");
        pan->push_back(c.get<CoinId>());
      }
    }
    w.loads.push_back(std::move(l));
  }
  return w;
}

json hypothesis_json(Hypothesis h) {
  return {{"coin", h.coin}, {"label", std::string(to_string(h.sign))}};
}

json config_json(const PuzzleConfig& cfg) {
  json supply;
  if (cfg.supply.kind == Supply::Kind::kFinite)
    supply = cfg.supply.count;
  else
    supply = verify::supply_text(cfg.supply);
  return {{"coins", cfg.coins},
          {"scales", cfg.scales},
          {"minutes", cfg.minutes},
          {"problem", std::string(to_string(cfg.problem))},
          {"supply", supply}};
}

json knowledge_json(const game::Game& g) {
  const auto& s = g.state();
  json classes = json::array();
  for (CoinId c = 0; c < s.suspects(); ++c) classes.push_back(std::string(to_string(s.classify(c))));
  auto cs = solve::count_state(s);
  return {{"classification", classes},
          {"summary",
           {{"unknown", cs.a}, {"potentially-light", cs.b}, {"potentially-heavy", cs.c},
            {"real", cs.r}}},
          {"suspects_remaining", s.suspect_count()},
          {"hypotheses", s.size()},
          {"resolved", is_resolved(s, g.config().problem)}};
}

json verdict_json(const std::optional<game::Verdict>& v) {
  if (!v) return nullptr;
  json cx = nullptr;
  if (v->counterexample) cx = hypothesis_json(*v->counterexample);
  return {{"won", v->won}, {"counterexample", cx}};
}

json session_json(const std::string& id, const game::Game& g) {
  json history = json::array();
  for (const auto& m : g.history()) {
    json entry = weighing_json(m.weighing);
    entry["outcome"] = m.outcome.str();
    history.push_back(entry);
  }
  json optimal = nullptr;
  if (auto m = game::optimal_minutes(g.config())) optimal = *m;
  json j = {{"id", id},
            {"config", config_json(g.config())},
            {"adversary", std::string(game::to_string(g.adversary()))},
            {"status", std::string(game::to_string(g.status()))},
            {"minutes_used", g.minutes_used()},
            {"budget", g.budget()},
            {"optimal_minutes", optimal},
            {"reals", g.state().total_coins() - g.state().suspects()},
            {"history", history},
            {"verdict", verdict_json(g.verdict())}};
  j.update(knowledge_json(g));
  return j;
}

template <class F>
Response guarded(F&& f) {
  try {
    return f();
  } catch (const HttpError& e) {
    return error_reply(e.status, e.code, e.message);
  } catch (const PuzzleError& e) {
    return from_error(e);
  } catch (const std::exception& e) {
    return error_reply(500, "internal", e.what());
  }
}

std::optional<int> int_param(const std::map<std::string, std::string>& params, const char* name) {
  auto it = params.find(name);
  if (it == params.end()) return std::nullopt;
  int v = 0;
  const auto& s = it->second;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty())
    throw HttpError{400, "bad-request", std::string("\"") + name + "\" must be an integer"};
  return v;
}

}  // namespace

std::uint64_t query_capacity(int scales, int minutes, Problem problem, Supply supply,
                             bool known_potential) {
  if (scales < 1 || minutes < 0)
    throw PuzzleError(ErrorCode::kInvalidArgument, "scales must be >= 1, minutes >= 0");
  if (known_potential) return capacity::known_potential_capacity(scales, minutes);
  if (supply.kind == Supply::Kind::kFinite)
    return static_cast<std::uint64_t>(solve::max_coins(scales, minutes, problem, supply));
  return capacity::capacity({scales, problem, supply.kind}, minutes);
}

struct Api::Entry {
  std::mutex mutex;
  game::Game game;
  Clock::time_point last_used;

  Entry(game::Game g, Clock::time_point now) : game(std::move(g)), last_used(now) {}
};

Api::Api(Options options) : options_(std::move(options)), rng_(std::random_device{}()) {}
Api::~Api() = default;

void Api::expire_idle() {
  std::lock_guard lock(mutex_);
  auto now = options_.now();
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    bool idle;
    {
      std::unique_lock entry(it->second->mutex, std::try_to_lock);
      idle = entry.owns_lock() && now - it->second->last_used > options_.idle_expiry;
    }
    it = idle ? sessions_.erase(it) : std::next(it);
  }
}

std::size_t Api::session_count() {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

std::shared_ptr<Api::Entry> Api::find(const std::string& id) {
  expire_idle();
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  return it->second;
}

template <class F>
Response Api::with_session(const std::string& id, F&& f) {
  return guarded([&] {
    auto entry = find(id);
    if (!entry) return error_reply(404, "unknown-session", "no session \"" + id + "\"");
    std::lock_guard lock(entry->mutex);
    entry->last_used = options_.now();
    return f(entry->game);
  });
}

Response Api::create_session(const std::string& body) {
  return guarded([&] {
    json j = parse_body(body);
    PuzzleConfig cfg;
    cfg.coins = int_field(j, "coins");
    cfg.scales = int_field(j, "scales");
    cfg.problem = problem_text(string_field(j, "problem"));
    cfg.supply = supply_field(j);
    cfg.minutes = 0;
    validate_config(cfg);
    cfg.minutes = int_field(j, "budget", game::default_budget(cfg));
    if (cfg.minutes < 1) throw HttpError{422, "invalid-argument", "budget must be >= 1"};
    auto mode = game::default_adversary(cfg.scales, cfg.minutes);
    if (auto text = string_field(j, "adversary")) {
      auto m = game::parse_adversary(*text);
      if (!m) throw HttpError{422, "invalid-argument", "adversary must be exact or greedy"};
      mode = *m;
    }
    game::Game g(cfg, mode);
    expire_idle();
    std::string id;
    {
      std::lock_guard lock(mutex_);
      do {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng_()));
        id = buf;
      } while (sessions_.count(id));
      sessions_.emplace(id, std::make_shared<Entry>(g, options_.now()));
    }
    return reply(201, session_json(id, g));
  });
}

Response Api::get_session(const std::string& id) {
  return with_session(id, [&](game::Game& g) { return reply(200, session_json(id, g)); });
}

Response Api::weigh(const std::string& id, const std::string& body) {
  return with_session(id, [&](game::Game& g) {
    auto w = parse_weighing(parse_body(body));
    auto o = g.weigh(w);
    json j = {{"outcome", o.str()},
              {"status", std::string(game::to_string(g.status()))},
              {"minutes_used", g.minutes_used()},
              {"budget", g.budget()},
              {"verdict", verdict_json(g.verdict())}};
    j.update(knowledge_json(g));
    return reply(200, j);
  });
}

Response Api::answer(const std::string& id, const std::string& body) {
  return with_session(id, [&](game::Game& g) {
    json j = parse_body(body);
    CoinId coin = int_field(j, "coin");
    std::optional<Sign> label;
    if (auto text = string_field(j, "label")) {
      label = parse_sign(*text);
      if (!label) throw HttpError{422, "invalid-argument", "label must be light or heavy"};
    }
    auto v = g.answer(coin, label);
    json cx = nullptr;
    if (v.counterexample) cx = hypothesis_json(*v.counterexample);
    return reply(200, {{"verdict", v.won ? "won" : "lost"},
                       {"status", std::string(game::to_string(g.status()))},
                       {"counterexample", cx}});
  });
}

Response Api::forfeit(const std::string& id) {
  return with_session(id, [&](game::Game& g) {
    g.forfeit();
    return reply(200, session_json(id, g));
  });
}

Response Api::hint(const std::string& id) {
  return with_session(id, [&](game::Game& g) {
    auto h = g.hint();
    if (!h) return reply(200, {{"weighing", nullptr}, {"source", nullptr}});
    return reply(200, {{"weighing", weighing_json(h->weighing)},
                       {"source", std::string(game::to_string(h->source))}});
  });
}

Response Api::capacity(const std::map<std::string, std::string>& params) {
  return guarded([&] {
    auto scales = int_param(params, "scales");
    auto minutes = int_param(params, "minutes");
    if (!scales || !minutes) malformed("scales and minutes are required");
    std::optional<std::string> problem, potential;
    if (auto it = params.find("problem"); it != params.end()) problem = it->second;
    if (auto it = params.find("potential"); it != params.end()) potential = it->second;
    Supply supply = Supply::none();
    if (auto it = params.find("supply"); it != params.end()) {
      auto s = verify::parse_supply(it->second);
      if (!s) throw HttpError{422, "invalid-argument", "bad supply \"" + it->second + "\""};
      supply = *s;
    }
    if (potential && *potential != "known" && *potential != "unknown")
      throw HttpError{422, "invalid-argument", "potential must be known or unknown"};
    bool known = potential && *potential == "known";
    auto c = query_capacity(*scales, *minutes, problem_text(problem), supply, known);
    return reply(200, {{"capacity", c}});
  });
}

Response Api::dispatch(const std::string& method, const std::string& path,
                       const std::map<std::string, std::string>& params,
                       const std::string& body) {
  static const std::regex session_path(R"(^/sessions/([^/]+)(/(weigh|answer|forfeit|hint))?$)");
  auto wrong_method = [] { return error_reply(405, "method-not-allowed", "method not allowed"); };
  if (path == "/sessions") return method == "POST" ? create_session(body) : wrong_method();
  if (path == "/capacity") return method == "GET" ? capacity(params) : wrong_method();
  std::smatch m;
  if (std::regex_match(path, m, session_path)) {
    std::string id = m[1], action = m[3];
    if (action.empty()) return method == "GET" ? get_session(id) : wrong_method();
    if (action == "hint") return method == "GET" ? hint(id) : wrong_method();
    if (method != "POST") return wrong_method();
    if (action == "weigh") return weigh(id, body);
    if (action == "answer") return answer(id, body);
    return forfeit(id);
  }
  return error_reply(404, "not-found", "no route for " + path);
}

struct HttpServer::Impl {
  Api& api;
  httplib::Server server;

  explicit Impl(Api& a) : api(a) {
    auto handle = [this](const httplib::Request& req, httplib::Response& res) {
      std::map<std::string, std::string> params;
      for (const auto& [k, v] : req.params) params.emplace(k, v);
      auto r = api.dispatch(req.method, req.path, params, req.body);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    };
    for (const char* pattern : {"/sessions", "/capacity", R"(/sessions/.*)"}) {
      server.Get(pattern, handle);
      server.Post(pattern, handle);
    }
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return;
      json body = {{"code", res.status == 404 ? "not-found" : "http-error"},
                   {"message", "no route for " + req.path}};
      res.set_content(body.dump(), "application/json");
    });
  }
};

HttpServer::HttpServer(Api& api) : impl_(std::make_unique<Impl>(api)) {}
HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace parweigh::service
