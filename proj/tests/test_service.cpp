#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <thread>

#include "mb/generate.hpp"
#include "mb/service.hpp"

using namespace mb;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::string kBoards = MB_BOARDS_DIR;

// A live server on an ephemeral port for the duration of a test.
class Live : public ::testing::Test {
protected:
    void SetUp() override {
        svc_.mount(server_);
        port_ = server_.bind_to_any_port("127.0.0.1");
        ASSERT_GT(port_, 0);
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
        client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    }
    void TearDown() override {
        server_.stop();
        thread_.join();
    }

    std::string load(const std::string& file) {
        auto r = client_->Post("/position", read_file(kBoards + "/" + file), "application/json");
        EXPECT_TRUE(r);
        EXPECT_EQ(r->status, 200) << r->body;
        return json::parse(r->body)["id"];
    }
    std::pair<int, json> get(const std::string& path) {
        auto r = client_->Get(path);
        return {r->status, json::parse(r->body)};
    }
    std::pair<int, json> post(const std::string& path, const std::string& body = "") {
        auto r = client_->Post(path, body, "application/json");
        return {r->status, json::parse(r->body)};
    }

    Service svc_;
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
    std::unique_ptr<httplib::Client> client_;
};

}  // namespace

TEST_F(Live, LoadAndInspect) {
    std::string id = load("nunchaku-4.json");
    auto [status, pos] = get("/position/" + id);
    EXPECT_EQ(status, 200);
    EXPECT_EQ(pos["id"], id);
    EXPECT_EQ(pos["to_move"], "maker");
    EXPECT_EQ(pos["board"]["label"], "nunchaku-4");
    EXPECT_EQ(pos["legal_moves"].size(), 7u);
    ASSERT_EQ(pos["threats"].size(), 1u);
    EXPECT_EQ(pos["threats"][0]["kind"], "nunchaku");

    auto [ds, d] = get("/position/" + id + "/decide");
    EXPECT_EQ(ds, 200);
    EXPECT_EQ(d["winner"], "maker");
    EXPECT_EQ(d["best_move"], "x2");
    auto [ts, t] = get("/position/" + id + "/tau");
    EXPECT_EQ(ts, 200);
    EXPECT_EQ(t["tau_exact"], 3);
    auto [hs, h] = get("/position/" + id + "/threats");
    EXPECT_EQ(hs, 200);
    EXPECT_EQ(h, pos["threats"]);
    auto [ls, l] = get("/position/" + id + "/legal-moves");
    EXPECT_EQ(ls, 200);
    EXPECT_EQ(l, pos["legal_moves"]);
}

TEST_F(Live, MovesAndEngine) {
    std::string id = load("nunchaku-4.json");
    auto [s1, after] = post("/position/" + id + "/move", R"({"vertex":"x2"})");
    ASSERT_EQ(s1, 200) << after;
    EXPECT_EQ(after["to_move"], "breaker");
    auto [s2, eng] = post("/position/" + id + "/engine-move");
    ASSERT_EQ(s2, 200) << eng;
    EXPECT_EQ(eng["player"], "breaker");
    EXPECT_TRUE(eng["rationale"].is_string());
    EXPECT_EQ(eng["position"]["to_move"], "maker");
    // The engine now plays Maker out to the end and wins.
    for (int i = 0; i < 10; ++i) {
        auto [s, m] = post("/position/" + id + "/engine-move");
        if (s == 409) break;
        ASSERT_EQ(s, 200) << m;
        if (!m["position"]["outcome"].is_null()) break;
    }
    auto [s3, fin] = get("/position/" + id);
    EXPECT_EQ(fin["outcome"], "maker");
    auto [s4, over] = post("/position/" + id + "/engine-move");
    EXPECT_EQ(s4, 409);
    EXPECT_EQ(over["error"]["code"], "illegal_move");
    auto [s5, reset] = post("/position/" + id + "/reset");
    EXPECT_EQ(s5, 200);
    EXPECT_TRUE(reset["history"].empty());
}

TEST_F(Live, ErrorCodes) {
    EXPECT_EQ(post("/position", "{not json").first, 400);
    EXPECT_EQ(post("/position", R"({"vertices":["a"],"edges":[["a","q"]]})").first, 400);
    auto [s422, e422] = post("/position", R"({"vertices":["a","b","c","d"],"edges":[["a","b","c","d"]]})");
    EXPECT_EQ(s422, 422);
    EXPECT_EQ(e422["error"]["code"], "unsupported_board");
    auto [s404, e404] = get("/position/nope");
    EXPECT_EQ(s404, 404);
    EXPECT_EQ(e404["error"]["code"], "unknown_session");
    EXPECT_EQ(get("/position/nope/decide").first, 404);

    std::string id = load("nunchaku-4.json");
    auto [s409, e409] = post("/position/" + id + "/move", R"({"vertex":"a"})");
    EXPECT_EQ(s409, 409);
    EXPECT_EQ(e409["error"]["field"], "vertex");
    EXPECT_EQ(post("/position/" + id + "/move", R"({"vertex":"zz"})").first, 409);
    EXPECT_EQ(post("/position/" + id + "/move", R"({})").first, 400);
    EXPECT_EQ(post("/position/" + id + "/move", R"({"vertex":[1]})").first, 400);
}

TEST_F(Live, RpcEchoesIds) {
    auto [s, loaded] = post("/rpc", R"({"op":"load","id":7,"text":"e a b c\ne c d f\nm a f\n"})");
    ASSERT_EQ(s, 200);
    EXPECT_EQ(loaded["id"], 7);
    ASSERT_TRUE(loaded["ok"]);
    std::string sid = loaded["result"]["session"];
    for (const char* op : {"legal_moves", "decide", "threats", "tau", "position", "engine_move", "reset"}) {
        json req{{"op", op}, {"id", std::string("r-") + op}, {"session", sid}};
        auto [st, r] = post("/rpc", req.dump());
        EXPECT_EQ(st, 200);
        EXPECT_EQ(r["id"], std::string("r-") + op);
        EXPECT_TRUE(r["ok"]) << r;
    }
    json apply{{"op", "apply"}, {"id", "x"}, {"session", sid}, {"vertex", "c"}};
    EXPECT_TRUE(post("/rpc", apply.dump()).second["ok"]);
    auto bad = post("/rpc", R"({"op":"fly","id":"q","session":"s"})").second;
    EXPECT_EQ(bad["id"], "q");
    EXPECT_FALSE(bad["ok"]);
    EXPECT_EQ(post("/rpc", R"({"op":"decide","id":3,"session":"none"})").second["error"]["code"], "unknown_session");
    EXPECT_EQ(post("/rpc", R"({"id":4})").second["id"], 4);
    EXPECT_EQ(post("/rpc", "[").first, 400);
}

TEST(Service, SessionsExpire) {
    ServiceConfig cfg;
    cfg.ttl = std::chrono::seconds(0);
    Service svc(cfg);
    std::string id = svc.load(json::parse(read_file(kBoards + "/necklace-3.json")));
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    EXPECT_EQ(svc.session_count(), 0u);
    EXPECT_THROW(svc.position(id), ServiceError);

    Service keep;
    keep.load(json::parse(read_file(kBoards + "/necklace-3.json")));
    keep.load(json{{"text", read_file(kBoards + "/fano.txt")}});
    EXPECT_EQ(keep.session_count(), 2u);
}

TEST(Service, ExactDurationAboveGuardIsSkipped) {
    ServiceConfig cfg;
    cfg.solver.oracle_guard = 3;
    Service svc(cfg);
    // Seven non-marked vertices and a cycle: no closed form, and too big for the oracle.
    std::string id = svc.load(board_to_json(document_of(necklace_board(4))));
    json r = svc.handle({{"op", "tau"}, {"id", 1}, {"session", id}});
    ASSERT_TRUE(r["ok"]) << r;
    EXPECT_TRUE(r["result"]["tau_exact"].is_null());
    EXPECT_TRUE(r["result"].contains("note"));
    EXPECT_EQ(r["result"]["tau_upper"], 4);
}

// The CLI's decide output and the service's decide body are the same bytes.
TEST(Service, CliAgreesWithService) {
    Service svc;
    for (const char* f : {"nunchaku-4.json", "necklace-3.json", "two-disjoint-edges.json", "fano.txt", "matching-graph.txt",
                          "path-graph.txt"}) {
        std::string path = kBoards + "/" + f;
        std::string text = read_file(path);
        std::string id = svc.load(json{{"text", text}});
        std::string want = svc.decide(id).dump() + "\n";
        std::string cmd = std::string(MBCTL_PATH) + " decide " + path;
        FILE* pipe = popen(cmd.c_str(), "r");
        ASSERT_TRUE(pipe);
        std::string got;
        std::array<char, 512> buf;
        while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) got.append(buf.data(), n);
        EXPECT_EQ(pclose(pipe), 0) << f;
        EXPECT_EQ(got, want) << f;
    }
}
