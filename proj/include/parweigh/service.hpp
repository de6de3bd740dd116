#pragma once

// HTTP session API for adversarial play.
//
//   POST /sessions                 {"coins","scales","problem"?,"supply"?,"adversary"?,"budget"?}
//   GET  /sessions/{id}
//   POST /sessions/{id}/weigh      {"scales":[{"left":[..],"right":[..]},..]}
//   POST /sessions/{id}/answer     {"coin":id,"label":"light"|"heavy"|null}
//   POST /sessions/{id}/forfeit
//   GET  /sessions/{id}/hint
//   GET  /capacity?scales=&minutes=&problem=&supply=&potential=
//
// Errors are {"code","message"}: 400 malformed body, 404 unknown session,
// 409 session not active, 422 rejected request (illegal weighing etc.).

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>

#include "parweigh/core.hpp"
#include "parweigh/game.hpp"

namespace parweigh::service {

struct Response {
  int status = 200;
  std::string body;  // JSON
};

using Clock = std::chrono::steady_clock;

struct Options {
  std::chrono::seconds idle_expiry{3600};
  std::function<Clock::time_point()> now = [] { return Clock::now(); };
};

// Capacity lookup shared by `cli capacity` and GET /capacity. Finite supply
// goes through the exact solver (kInstanceTooLarge beyond its guard).
std::uint64_t query_capacity(int scales, int minutes, Problem problem, Supply supply,
                             bool known_potential);

class Api {
 public:
  explicit Api(Options options = {});
  ~Api();

  Response create_session(const std::string& body);
  Response get_session(const std::string& id);
  Response weigh(const std::string& id, const std::string& body);
  Response answer(const std::string& id, const std::string& body);
  Response forfeit(const std::string& id);
  Response hint(const std::string& id);
  Response capacity(const std::map<std::string, std::string>& params);

  // Routes a request; 404 for unknown paths, 405 for wrong methods.
  Response dispatch(const std::string& method, const std::string& path,
                    const std::map<std::string, std::string>& params, const std::string& body);

  std::size_t session_count();
  // Drops sessions idle longer than the expiry; also runs on every request.
  void expire_idle();

 private:
  struct Entry;
  std::shared_ptr<Entry> find(const std::string& id);
  template <class F>
  Response with_session(const std::string& id, F&& f);

  Options options_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mt19937_64 rng_;
};

// Serves an Api over HTTP on a thread pool.
class HttpServer {
 public:
  explicit HttpServer(Api& api);
  ~HttpServer();

  // Port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace parweigh::service
