#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>

#include <httplib.h>

#include "engine.hpp"

namespace mb {

// Structured service failure. `status` is the HTTP status used by the routes.
struct ServiceError : std::runtime_error {
    int status;
    std::string code;
    std::string field;

    ServiceError(int status, std::string code, const std::string& message, std::string field = {})
        : std::runtime_error(message), status(status), code(std::move(code)), field(std::move(field)) {}

    json to_json() const {
        json j{{"code", code}, {"message", what()}};
        if (!field.empty()) j["field"] = field;
        return j;
    }
};

struct ServiceConfig {
    std::chrono::seconds ttl{1800};
    SolverOptions solver;
};

// In-memory sessions. Each session owns its own lock, so moves on one game are
// serialized while different games proceed in parallel.
class Service {
public:
    explicit Service(ServiceConfig cfg = {}) : cfg_(cfg) {}

    // Creates a session from a board document (JSON object, or {"board": ...},
    // or {"text": "..."} in the line format).
    std::string load(const json& body) {
        BoardDocument doc = translate([&] {
            if (body.is_object() && body.contains("text")) {
                if (!body["text"].is_string()) throw parse_error("text", "must be a string");
                return parse_board(body["text"].get<std::string>());
            }
            return board_from_json(body.is_object() && body.contains("board") ? body["board"] : body);
        });
        auto s = std::make_shared<Session>(translate([&] { return Game(doc, cfg_.solver); }));
        s->touched = Clock::now();
        std::lock_guard lock(mu_);
        purge_locked();
        std::string id = next_id();
        sessions_[id] = s;
        return id;
    }

    json position(const std::string& id) {
        return with(id, [](Game& g) { return g.position_json(); });
    }

    json legal_moves(const std::string& id) {
        return with(id, [](Game& g) { return names_json(g.document(), g.legal_moves()); });
    }

    json apply(const std::string& id, const json& body) {
        if (!body.is_object() || !body.contains("vertex")) throw ServiceError(400, "malformed", "missing vertex", "vertex");
        std::string name = translate([&] { return detail::name_of(body["vertex"], "vertex"); });
        return with(id, [&](Game& g) {
            try {
                g.apply(name);
            } catch (const domain_error& e) {
                throw ServiceError(409, "illegal_move", e.what(), "vertex");
            }
            return g.position_json();
        });
    }

    json engine_move(const std::string& id) {
        return with(id, [](Game& g) {
            auto m = g.engine_move();
            if (!m) throw ServiceError(409, "illegal_move", "the game is over");
            json j = g.engine_move_json(*m);
            j["position"] = g.position_json();
            return j;
        });
    }

    json decide(const std::string& id) {
        return with(id, [](Game& g) { return g.decide_json(); });
    }

    json threats(const std::string& id) {
        return with(id, [](Game& g) { return threats_to_json(g.threats(), g.document()); });
    }

    json tau(const std::string& id) {
        return with(id, [](Game& g) { return g.tau_json(); });
    }

    json reset(const std::string& id) {
        return with(id, [](Game& g) {
            g.reset();
            return g.position_json();
        });
    }

    // Message form: {"op": ..., "id": ..., "session": ..., ...}. Exactly one
    // response per request, carrying the request id.
    json handle(const json& msg) {
        json id = msg.is_object() && msg.contains("id") ? msg["id"] : json(nullptr);
        try {
            if (!msg.is_object() || !msg.contains("op") || !msg["op"].is_string())
                throw ServiceError(400, "malformed", "missing op", "op");
            std::string op = msg["op"];
            json result;
            if (op == "load") {
                if (!msg.contains("board") && !msg.contains("text")) throw ServiceError(400, "malformed", "missing board", "board");
                result = {{"session", load(msg)}};
            } else {
                std::string sid = session_of(msg);
                if (op == "legal_moves") result = legal_moves(sid);
                else if (op == "apply") result = apply(sid, msg);
                else if (op == "engine_move") result = engine_move(sid);
                else if (op == "decide") result = decide(sid);
                else if (op == "threats") result = threats(sid);
                else if (op == "tau") result = tau(sid);
                else if (op == "reset") result = reset(sid);
                else if (op == "position") result = position(sid);
                else throw ServiceError(400, "malformed", "unknown op \"" + op + "\"", "op");
            }
            return {{"id", id}, {"ok", true}, {"result", result}};
        } catch (const ServiceError& e) {
            return {{"id", id}, {"ok", false}, {"error", e.to_json()}};
        }
    }

    std::size_t session_count() {
        std::lock_guard lock(mu_);
        purge_locked();
        return sessions_.size();
    }

    // Registers the HTTP routes on `server`.
    void mount(httplib::Server& server) {
        auto reply = [](httplib::Response& res, int status, const json& body) {
            res.status = status;
            res.set_content(body.dump(), "application/json");
        };
        auto guarded = [this, reply](auto fn) {
            return [fn, reply](const httplib::Request& req, httplib::Response& res) {
                try {
                    reply(res, 200, fn(req));
                } catch (const ServiceError& e) {
                    reply(res, e.status, {{"error", e.to_json()}});
                } catch (const std::exception& e) {
                    reply(res, 500, {{"error", {{"code", "internal"}, {"message", e.what()}}}});
                }
            };
        };
        auto body_of = [](const httplib::Request& req) {
            if (req.body.empty()) return json::object();
            try {
                return json::parse(req.body);
            } catch (const json::parse_error&) {
                throw ServiceError(400, "malformed", "request body is not JSON");
            }
        };
        server.Post("/position", guarded([this, body_of](const httplib::Request& req) {
            std::string id = load(body_of(req));
            json j = position(id);
            j["id"] = id;
            return j;
        }));
        server.Get(R"(/position/([^/]+))", guarded([this](const httplib::Request& req) {
            json j = position(req.matches[1]);
            j["id"] = std::string(req.matches[1]);
            return j;
        }));
        server.Post(R"(/position/([^/]+)/move)", guarded([this, body_of](const httplib::Request& req) {
            return apply(req.matches[1], body_of(req));
        }));
        server.Post(R"(/position/([^/]+)/engine-move)", guarded([this](const httplib::Request& req) {
            return engine_move(req.matches[1]);
        }));
        server.Post(R"(/position/([^/]+)/reset)", guarded([this](const httplib::Request& req) {
            return reset(req.matches[1]);
        }));
        server.Get(R"(/position/([^/]+)/decide)", guarded([this](const httplib::Request& req) { return decide(req.matches[1]); }));
        server.Get(R"(/position/([^/]+)/tau)", guarded([this](const httplib::Request& req) { return tau(req.matches[1]); }));
        server.Get(R"(/position/([^/]+)/threats)", guarded([this](const httplib::Request& req) { return threats(req.matches[1]); }));
        server.Get(R"(/position/([^/]+)/legal-moves)", guarded([this](const httplib::Request& req) { return legal_moves(req.matches[1]); }));
        server.Post("/rpc", [this, reply, body_of](const httplib::Request& req, httplib::Response& res) {
            try {
                reply(res, 200, handle(body_of(req)));
            } catch (const ServiceError& e) {
                reply(res, e.status, {{"id", nullptr}, {"ok", false}, {"error", e.to_json()}});
            }
        });
    }

private:
    using Clock = std::chrono::steady_clock;

    struct Session {
        explicit Session(Game g) : game(std::move(g)) {}
        std::mutex mu;
        Game game;
        Clock::time_point touched;
    };

    template <class F>
    static auto translate(F&& f) -> decltype(f()) {
        try {
            return f();
        } catch (const parse_error& e) {
            throw ServiceError(e.unsupported() ? 422 : 400, e.unsupported() ? "unsupported_board" : "malformed", e.what(), e.where());
        } catch (const unsupported_board& e) {
            throw ServiceError(422, "unsupported_board", e.what());
        } catch (const domain_error& e) {
            throw ServiceError(422, "unsupported_board", e.what());
        }
    }

    template <class F>
    json with(const std::string& id, F&& f) {
        std::shared_ptr<Session> s;
        {
            std::lock_guard lock(mu_);
            purge_locked();
            auto it = sessions_.find(id);
            if (it == sessions_.end()) throw ServiceError(404, "unknown_session", "no session \"" + id + "\"", "session");
            s = it->second;
            s->touched = Clock::now();
        }
        std::lock_guard lock(s->mu);
        try {
            return f(s->game);
        } catch (const ServiceError&) {
            throw;
        } catch (const resource_error& e) {
            throw ServiceError(422, "resource", e.what());
        }
    }

    static std::string session_of(const json& msg) {
        if (!msg.contains("session") || !msg["session"].is_string())
            throw ServiceError(400, "malformed", "missing session", "session");
        return msg["session"];
    }

    void purge_locked() {
        auto now = Clock::now();
        for (auto it = sessions_.begin(); it != sessions_.end();) {
            if (now - it->second->touched > cfg_.ttl) it = sessions_.erase(it);
            else ++it;
        }
    }

    std::string next_id() {
        static const char* digits = "0123456789abcdef";
        std::string id;
        do {
            std::uint64_t r = rng_();
            id.clear();
            for (int i = 0; i < 12; ++i, r >>= 4) id += digits[r & 15];
        } while (sessions_.count(id));
        return id;
    }

    ServiceConfig cfg_;
    std::mutex mu_;
    std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
    std::mt19937_64 rng_{std::random_device{}()};
};

}  // namespace mb
