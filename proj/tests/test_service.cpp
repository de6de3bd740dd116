#include <doctest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "parweigh/capacity.hpp"
#include "parweigh/service.hpp"

using namespace parweigh;
using namespace parweigh::service;
using nlohmann::json;

namespace {

json body(const Response& r) { return json::parse(r.body); }

std::string create(Api& api, const json& request) {
  auto r = api.create_session(request.dump());
  REQUIRE(r.status == 201);
  return body(r)["id"].get<std::string>();
}

json weighing(std::vector<std::pair<std::vector<int>, std::vector<int>>> scales) {
  json s = json::array();
  for (auto& [l, r] : scales) s.push_back({{"left", l}, {"right", r}});
  return {{"scales", s}};
}

void expect_error(const Response& r, int status, const std::string& code) {
  CHECK(r.status == status);
  auto j = body(r);
  CHECK(j["code"] == code);
  CHECK(j["message"].is_string());
}

// The answer the knowledge fields force once the hint runs out.
json forced_answer(const json& session) {
  const auto& cls = session["classification"];
  for (std::size_t c = 0; c < cls.size(); ++c) {
    if (cls[c] == "real") continue;
    json a = {{"coin", c}};
    if (cls[c] == "potentially-light") a["label"] = "light";
    if (cls[c] == "potentially-heavy") a["label"] = "heavy";
    return a;
  }
  return nullptr;
}

// Plays a session by its own hints; returns the final session view.
json play_by_hints(Api& api, const std::string& id) {
  for (int step = 0; step < 20; ++step) {
    auto h = body(api.hint(id));
    if (h["weighing"].is_null()) break;
    auto r = api.weigh(id, h["weighing"].dump());
    REQUIRE(r.status == 200);
  }
  auto view = body(api.get_session(id));
  auto a = api.answer(id, forced_answer(view).dump());
  REQUIRE(a.status == 200);
  return body(api.get_session(id));
}

}  // namespace

TEST_CASE("create and inspect a session") {
  Api api;
  auto r = api.create_session(R"({"coins":11,"scales":2})");
  CHECK(r.status == 201);
  auto s = body(r);
  CHECK(s["id"].get<std::string>().size() == 16);
  CHECK(s["config"] == json({{"coins", 11}, {"scales", 2}, {"minutes", 2},
                             {"problem", "just-find"}, {"supply", "none"}}));
  CHECK(s["status"] == "active");
  CHECK(s["budget"] == 2);
  CHECK(s["optimal_minutes"] == 2);
  CHECK(s["minutes_used"] == 0);
  CHECK(s["hypotheses"] == 22);
  CHECK(s["suspects_remaining"] == 11);
  CHECK(s["summary"] == json({{"unknown", 11}, {"potentially-light", 0}, {"potentially-heavy", 0},
                              {"real", 0}}));
  CHECK(s["classification"].size() == 11);
  CHECK(s["history"].empty());
  CHECK(s["verdict"].is_null());
  CHECK(s["adversary"] == "exact");
  CHECK(s["resolved"] == false);
  CHECK(body(api.get_session(s["id"])) == s);

  auto u = body(api.create_session(
      R"({"coins":8,"scales":2,"supply":"unlimited","problem":"find-and-label","adversary":"greedy","budget":4})"));
  CHECK(u["reals"] == 8);
  CHECK(u["budget"] == 4);
  CHECK(u["adversary"] == "greedy");
  CHECK(u["config"]["supply"] == "unlimited");
  CHECK(u["summary"]["real"] == 8);

  auto f = body(api.create_session(R"({"coins":5,"scales":2,"supply":2})"));
  CHECK(f["config"]["supply"] == 2);
  CHECK(f["reals"] == 2);

  // Over two coins there is no optimum; the budget falls back.
  auto two = body(api.create_session(R"({"coins":2,"scales":2})"));
  CHECK(two["optimal_minutes"].is_null());
  CHECK(two["budget"] == 1);
  CHECK(api.session_count() == 4);
}

TEST_CASE("create rejects bad requests") {
  Api api;
  expect_error(api.create_session("{"), 400, "bad-request");
  expect_error(api.create_session("[1]"), 400, "bad-request");
  expect_error(api.create_session(R"({"scales":2})"), 400, "bad-request");
  expect_error(api.create_session(R"({"coins":"11","scales":2})"), 400, "bad-request");
  expect_error(api.create_session(R"({"coins":0,"scales":2})"), 422, "invalid-argument");
  expect_error(api.create_session(R"({"coins":4,"scales":1,"problem":"guess"})"), 422,
               "invalid-argument");
  expect_error(api.create_session(R"({"coins":4,"scales":1,"supply":"lots"})"), 422,
               "invalid-argument");
  expect_error(api.create_session(R"({"coins":4,"scales":1,"adversary":"kind"})"), 422,
               "invalid-argument");
  expect_error(api.create_session(R"({"coins":4,"scales":1,"budget":0})"), 422, "invalid-argument");
  expect_error(api.create_session(R"({"coins":11,"scales":2,"budget":9,"adversary":"exact"})"), 422,
               "instance-too-large");
  CHECK(api.session_count() == 0);
}

TEST_CASE("weighing outcomes and rejections") {
  Api api;
  auto id = create(api, {{"coins", 11}, {"scales", 2}});
  expect_error(api.weigh(id, weighing({{{0, 1}, {2}}, {{}, {}}}).dump()), 422, "pan-size-mismatch");
  expect_error(api.weigh(id, weighing({{{0}, {1}}, {{0}, {2}}}).dump()), 422, "duplicate-coin");
  expect_error(api.weigh(id, weighing({{{0}, {11}}, {{}, {}}}).dump()), 422, "bad-coin-id");
  expect_error(api.weigh(id, weighing({{{0}, {1}}}).dump()), 422, "wrong-scale-count");
  expect_error(api.weigh(id, R"({"scales":[{"left":["a"],"right":[1]}]})"), 400, "bad-request");
  expect_error(api.weigh(id, "nope"), 400, "bad-request");
  expect_error(api.weigh("0123456789abcdef", weighing({{{0}, {1}}, {{2}, {3}}}).dump()), 404,
               "unknown-session");
  // Rejected weighings cost nothing.
  CHECK(body(api.get_session(id))["minutes_used"] == 0);

  auto r = api.weigh(id, weighing({{{0, 1}, {2, 3}}, {{4, 5}, {6, 7}}}).dump());
  REQUIRE(r.status == 200);
  auto w = body(r);
  CHECK(w["minutes_used"] == 1);
  CHECK(w["status"] == "active");
  auto o = w["outcome"].get<std::string>();
  CHECK(o.size() == 2);
  // Conservation: the reported hypotheses are exactly the outcome's cell.
  auto cells = partition_outcomes(KnowledgeState::fresh(11),
                                  ParallelWeighing{{{{0, 1}, {2, 3}}, {{4, 5}, {6, 7}}}});
  for (auto& [key, cell] : cells)
    if (key.str() == o) CHECK(w["hypotheses"] == cell.size());
  auto s = body(api.get_session(id));
  CHECK(s["history"].size() == 1);
  CHECK(s["history"][0]["outcome"] == o);
  CHECK(s["history"][0]["scales"][0]["left"] == json({0, 1}));
}

TEST_CASE("a wrong accusation discloses a surviving hypothesis") {
  Api api;
  auto id = create(api, {{"coins", 8}, {"scales", 2}, {"supply", "unlimited"}, {"budget", 3}});
  auto first = body(api.weigh(id, weighing({{{0, 1}, {8, 9}}, {{2, 3}, {10, 11}}}).dump()));
  CHECK(first["outcome"] == "==");
  auto second = body(api.weigh(id, weighing({{{5}, {8}}, {{6}, {9}}}).dump()));
  CHECK(second["outcome"] == "==");
  CHECK(second["suspects_remaining"] == 2);
  auto a = api.answer(id, R"({"coin":4})");
  REQUIRE(a.status == 200);
  auto v = body(a);
  CHECK(v["verdict"] == "lost");
  CHECK(v["status"] == "lost");
  CHECK(v["counterexample"] == json({{"coin", 7}, {"label", "light"}}));

  auto s = body(api.get_session(id));
  CHECK(s["verdict"]["won"] == false);
  expect_error(api.weigh(id, weighing({{{4}, {8}}, {{}, {}}}).dump()), 409, "not-active");
  expect_error(api.answer(id, R"({"coin":7})"), 409, "not-active");
  CHECK(body(api.hint(id))["weighing"].is_null());
}

TEST_CASE("labels and budgets") {
  Api api;
  auto id = create(api, {{"coins", 3}, {"scales", 1}, {"problem", "find-and-label"},
                         {"supply", "unlimited"}, {"budget", 2}});
  expect_error(api.answer(id, R"({"coin":0})"), 422, "missing-label");
  expect_error(api.answer(id, R"({"coin":0,"label":"odd"})"), 422, "invalid-argument");
  expect_error(api.answer(id, R"({"label":"light"})"), 400, "bad-request");

  // Running out of minutes before the answer is a loss.
  auto idle = weighing({{{}, {}}}).dump();
  CHECK(api.weigh(id, idle).status == 200);
  auto last = body(api.weigh(id, idle));
  CHECK(last["status"] == "lost");
  CHECK_FALSE(last["verdict"]["counterexample"].is_null());
  expect_error(api.weigh(id, idle), 409, "not-active");

  auto quit = create(api, {{"coins", 4}, {"scales", 1}});
  auto f = api.forfeit(quit);
  CHECK(f.status == 200);
  CHECK(body(f)["status"] == "forfeit");
  expect_error(api.forfeit(quit), 409, "not-active");
}

TEST_CASE("following hints wins in the optimal number of minutes") {
  Api api;
  struct Case {
    int coins, scales;
    const char* problem;
    const char* supply;
  };
  for (auto c : {Case{11, 2, "just-find", "none"}, Case{4, 1, "just-find", "none"},
                 Case{13, 1, "just-find", "none"}, Case{12, 1, "find-and-label", "none"},
                 Case{13, 2, "just-find", "unlimited"}, Case{12, 2, "find-and-label", "unlimited"},
                 Case{13, 2, "just-find", "2"}, Case{100, 2, "just-find", "none"},
                 Case{1561, 2, "just-find", "none"}, Case{169, 3, "just-find", "none"},
                 Case{1, 2, "just-find", "none"}, Case{1, 1, "find-and-label", "unlimited"}}) {
    CAPTURE(c.coins);
    CAPTURE(c.scales);
    CAPTURE(c.problem);
    CAPTURE(c.supply);
    json req = {{"coins", c.coins}, {"scales", c.scales}, {"problem", c.problem}};
    if (std::string(c.supply) == "2") req["supply"] = 2;
    else req["supply"] = c.supply;
    auto id = create(api, req);
    auto start = body(api.get_session(id));
    auto end = play_by_hints(api, id);
    CHECK(end["status"] == "won");
    CHECK(end["verdict"]["won"] == true);
    CHECK(end["minutes_used"] == start["optimal_minutes"]);
  }

  // The eleven-coin game against both adversaries.
  for (const char* mode : {"exact", "greedy"}) {
    auto id = create(api, {{"coins", 11}, {"scales", 2}, {"adversary", mode}});
    auto end = play_by_hints(api, id);
    CHECK(end["status"] == "won");
    CHECK(end["minutes_used"] == 2);
  }
}

TEST_CASE("sessions replay deterministically") {
  Api a, b;
  auto ia = create(a, {{"coins", 40}, {"scales", 2}});
  auto ib = create(b, {{"coins", 40}, {"scales", 2}});
  std::vector<json> moves{weighing({{{0, 1, 2}, {3, 4, 5}}, {{6, 7}, {8, 9}}}),
                          weighing({{{0, 6}, {10, 11}}, {{3}, {12}}}),
                          weighing({{{1}, {2}}, {{}, {}}})};
  for (const auto& m : moves) CHECK(a.weigh(ia, m.dump()).body == b.weigh(ib, m.dump()).body);
  auto sa = body(a.get_session(ia)), sb = body(b.get_session(ib));
  sa.erase("id");
  sb.erase("id");
  CHECK(sa == sb);
}

TEST_CASE("hints") {
  Api api;
  auto id = create(api, {{"coins", 100}, {"scales", 2}});
  auto h = body(api.hint(id));
  CHECK(h["source"] == "scheme");
  CHECK(h["weighing"]["scales"].size() == 2);
  CHECK(body(api.get_session(id))["minutes_used"] == 0);

  auto small = create(api, {{"coins", 5}, {"scales", 2}});
  CHECK(body(api.hint(small))["source"] == "solver");

  auto one = create(api, {{"coins", 1}, {"scales", 1}});
  auto none = body(api.hint(one));
  CHECK(none["weighing"].is_null());
  CHECK(none["source"].is_null());
  expect_error(api.hint("nope"), 404, "unknown-session");
}

TEST_CASE("capacity endpoint") {
  Api api;
  auto cap = [&](std::map<std::string, std::string> p) { return api.capacity(p); };
  CHECK(body(cap({{"scales", "2"}, {"minutes", "5"}}))["capacity"] == 1561);
  CHECK(body(cap({{"scales", "2"}, {"minutes", "2"}, {"potential", "known"}}))["capacity"] == 25);
  CHECK(body(cap({{"scales", "2"}, {"minutes", "2"}, {"supply", "unlimited"}}))["capacity"] == 13);
  CHECK(body(cap({{"scales", "2"}, {"minutes", "2"}, {"supply", "2"}}))["capacity"] == 13);
  CHECK(body(cap({{"scales", "1"}, {"minutes", "3"}, {"problem", "find-and-label"}}))["capacity"] == 12);
  expect_error(cap({{"scales", "2"}}), 400, "bad-request");
  expect_error(cap({{"scales", "x"}, {"minutes", "2"}}), 400, "bad-request");
  expect_error(cap({{"scales", "2"}, {"minutes", "2"}, {"supply", "x"}}), 422, "invalid-argument");
  expect_error(cap({{"scales", "2"}, {"minutes", "2"}, {"problem", "x"}}), 422, "invalid-argument");
  expect_error(cap({{"scales", "2"}, {"minutes", "2"}, {"potential", "x"}}), 422, "invalid-argument");
  expect_error(cap({{"scales", "0"}, {"minutes", "2"}}), 422, "invalid-argument");
  expect_error(cap({{"scales", "2"}, {"minutes", "5"}, {"supply", "3"}}), 422, "instance-too-large");
  expect_error(cap({{"scales", "100"}, {"minutes", "20"}}), 422, "range-exceeded");
}

TEST_CASE("routing") {
  Api api;
  auto r = api.dispatch("POST", "/sessions", {}, R"({"coins":4,"scales":1})");
  REQUIRE(r.status == 201);
  auto id = body(r)["id"].get<std::string>();
  CHECK(api.dispatch("GET", "/sessions/" + id, {}, "").status == 200);
  CHECK(api.dispatch("GET", "/sessions/" + id + "/hint", {}, "").status == 200);
  CHECK(api.dispatch("POST", "/sessions/" + id + "/weigh", {},
                     R"({"scales":[{"left":[0],"right":[1]}]})")
            .status == 200);
  CHECK(api.dispatch("GET", "/capacity", {{"scales", "1"}, {"minutes", "2"}}, "").status == 200);
  expect_error(api.dispatch("GET", "/sessions", {}, ""), 405, "method-not-allowed");
  expect_error(api.dispatch("POST", "/sessions/" + id, {}, ""), 405, "method-not-allowed");
  expect_error(api.dispatch("GET", "/sessions/" + id + "/weigh", {}, ""), 405, "method-not-allowed");
  expect_error(api.dispatch("GET", "/elsewhere", {}, ""), 404, "not-found");
  expect_error(api.dispatch("GET", "/sessions/" + id + "/peek", {}, ""), 404, "not-found");
  CHECK(api.dispatch("POST", "/sessions/" + id + "/forfeit", {}, "").status == 200);
}

TEST_CASE("idle sessions expire") {
  auto now = Clock::now();
  Options options;
  options.idle_expiry = std::chrono::seconds(60);
  options.now = [&] { return now; };
  Api api(options);
  auto stale = create(api, {{"coins", 4}, {"scales", 1}});
  now += std::chrono::seconds(40);
  auto fresh = create(api, {{"coins", 4}, {"scales", 1}});
  now += std::chrono::seconds(30);
  api.expire_idle();
  CHECK(api.session_count() == 1);
  expect_error(api.get_session(stale), 404, "unknown-session");
  // Use keeps a session alive.
  now += std::chrono::seconds(25);
  CHECK(api.get_session(fresh).status == 200);
  now += std::chrono::seconds(50);
  CHECK(api.get_session(fresh).status == 200);
  now += std::chrono::seconds(61);
  CHECK(api.get_session(fresh).status == 404);
  CHECK(api.session_count() == 0);
}

TEST_CASE("concurrent sessions") {
  Api api;
  std::atomic<int> won{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] {
      auto r = api.create_session(json({{"coins", 11 + t}, {"scales", 2}, {"budget", 3}}).dump());
      auto id = json::parse(r.body)["id"].get<std::string>();
      for (int step = 0; step < 10; ++step) {
        auto h = json::parse(api.hint(id).body);
        if (h["weighing"].is_null()) break;
        api.weigh(id, h["weighing"].dump());
      }
      auto view = json::parse(api.get_session(id).body);
      auto v = json::parse(api.answer(id, forced_answer(view).dump()).body);
      if (v["verdict"] == "won") ++won;
    });
  for (auto& th : threads) th.join();
  CHECK(won == 8);
  CHECK(api.session_count() == 8);
}

TEST_CASE("concurrent moves on one session") {
  Api api;
  auto id = create(api, {{"coins", 40}, {"scales", 2}, {"budget", 4}});
  std::atomic<int> accepted{0}, refused{0}, other{0};
  std::vector<std::thread> threads;
  for (int t = 0; t < 12; ++t)
    threads.emplace_back([&] {
      auto r = api.weigh(id, weighing({{{}, {}}, {{}, {}}}).dump());
      if (r.status == 200) ++accepted;
      else if (r.status == 409) ++refused;
      else ++other;
    });
  for (auto& th : threads) th.join();
  CHECK(accepted == 4);
  CHECK(refused == 8);
  CHECK(other == 0);
  auto s = body(api.get_session(id));
  CHECK(s["history"].size() == 4);
  CHECK(s["status"] == "lost");
}

TEST_CASE("http server") {
  Api api;
  HttpServer server(api);
  int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread loop([&] { server.run(); });

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(5);
  auto created = client.Post("/sessions", R"({"coins":11,"scales":2})", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Content-Type").find("application/json") == 0);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "*");
  auto id = json::parse(created->body)["id"].get<std::string>();

  for (int step = 0; step < 5; ++step) {
    auto h = client.Get("/sessions/" + id + "/hint");
    REQUIRE(h);
    auto hint = json::parse(h->body);
    if (hint["weighing"].is_null()) break;
    auto w = client.Post("/sessions/" + id + "/weigh", hint["weighing"].dump(), "application/json");
    REQUIRE(w);
    CHECK(w->status == 200);
  }
  auto view = json::parse(client.Get("/sessions/" + id)->body);
  CHECK(view["minutes_used"] == 2);
  auto a = client.Post("/sessions/" + id + "/answer", forced_answer(view).dump(), "application/json");
  REQUIRE(a);
  CHECK(json::parse(a->body)["verdict"] == "won");

  auto cap = client.Get("/capacity?scales=2&minutes=5");
  REQUIRE(cap);
  CHECK(json::parse(cap->body)["capacity"] == 1561);

  auto missing = client.Get("/sessions/ffffffffffffffff");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body)["code"] == "unknown-session");
  auto nowhere = client.Get("/nowhere");
  REQUIRE(nowhere);
  CHECK(nowhere->status == 404);
  auto bad = client.Post("/sessions", "{oops", "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  auto pre = client.Options("/sessions");
  REQUIRE(pre);
  CHECK(pre->status == 204);
  CHECK_FALSE(pre->get_header_value("Access-Control-Allow-Methods").empty());

  server.stop();
  loop.join();
}
