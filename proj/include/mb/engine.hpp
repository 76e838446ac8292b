#pragma once

#include <memory>
#include <optional>
#include <string>

#include "io.hpp"
#include "solver.hpp"

namespace mb {

// Padded copy of a document: engine queries run on three-uniform boards, and
// the padding vertices get names so witnesses can be reported.
inline BoardDocument engine_document(const BoardDocument& doc) {
    if (doc.board.is_uniform(3) || doc.board.edges().empty()) return doc;
    NormalizedBoard n = normalize_rank3(doc.board);
    BoardDocument out = doc;
    out.board = n.board;
    int k = 0;
    for (VertexId p : n.padding) {
        (void)p;
        std::string pad;
        do pad = "~" + std::to_string(k++);
        while (doc.id(pad));
        out.names.push_back(pad);
    }
    return out;
}

struct EngineMove {
    Player player;
    VertexId vertex;
    Rationale rationale;
};

// One game on one board: position, engine and naming. Every query is about
// the current position. Not thread-safe; callers serialize access.
class Game {
public:
    explicit Game(const BoardDocument& doc, SolverOptions opt = {})
        : doc_(engine_document(doc)), position_(doc_.board), solver_(std::make_unique<Solver>(doc_.board, opt)), opt_(opt) {}

    const BoardDocument& document() const { return doc_; }
    const Position& position() const { return position_; }
    Solver& solver() { return *solver_; }

    GameState state() const { return state_of(position_.board); }

    // Maker's pick still awaiting Breaker's reply.
    std::optional<VertexId> pending_pick() const {
        if (position_.to_move != Player::breaker || position_.history.empty()) return std::nullopt;
        return position_.history.back().vertex;
    }

    VertexSet legal_moves() const {
        if (position_.outcome()) return {};
        return position_.board.unmarked();
    }

    void apply(VertexId v) { position_ = play(position_, v); }

    void apply(const std::string& name) {
        auto v = doc_.id(name);
        if (!v) throw domain_error("unknown vertex \"" + name + "\"");
        apply(*v);
    }

    void reset() { position_ = Position(doc_.board); }

    std::optional<EngineMove> engine_choice() {
        if (position_.outcome()) return std::nullopt;
        std::optional<Solver::Choice> c;
        if (position_.to_move == Player::maker) {
            c = solver_->maker_move(state());
        } else {
            VertexId x1 = *pending_pick();
            GameState before = state();
            before.marked.erase(x1);
            c = solver_->breaker_move(before, x1);
        }
        if (!c) return std::nullopt;
        return EngineMove{position_.to_move, c->vertex, c->rationale};
    }

    std::optional<EngineMove> engine_move() {
        auto m = engine_choice();
        if (m) apply(m->vertex);
        return m;
    }

    // Verdict for the side to move. With Maker to move this is decide(); with
    // Breaker to move it reports whether some reply to the pending pick survives.
    Verdict verdict() {
        GameState s = state();
        if (position_.to_move == Player::maker || !pending_pick()) return solver_->decide(s);
        VertexId x1 = *pending_pick();
        GameState before = s;
        before.marked.erase(x1);
        Verdict v;
        if (!solver_->has_full_edge(s) && s.present.size() > 1) {
            if (auto y = solver_->breaker_best(before, x1)) {
                v.winner = Player::breaker;
                v.best_move = y;
                v.certificate = Rationale::survival;
                return v;
            }
        }
        v.winner = Player::maker;
        v.certificate = is_trivial_win(solver_->index(), s) ? Rationale::trivial : Rationale::threat_line;
        return v;
    }

    std::vector<ThreatWitness> threats() { return solver_->finder().threats(state()); }

    json position_json() {
        json j;
        j["board"] = board_to_json(with_board(doc_, position_.board));
        j["to_move"] = to_string(position_.to_move);
        j["history"] = moves_json(doc_, position_.history);
        j["legal_moves"] = names_json(doc_, legal_moves());
        auto o = position_.outcome();
        j["outcome"] = o ? json(to_string(*o)) : json(nullptr);
        j["threats"] = threats_to_json(threats(), doc_);
        return j;
    }

    json decide_json() { return verdict_to_json(verdict(), doc_); }

    json tau_json() {
        json j;
        GameState s = state();
        Verdict v = solver_->decide(s);
        j["winner"] = to_string(v.winner);
        j["tau_upper"] = v.tau_upper ? json(*v.tau_upper) : json(nullptr);
        j["tau_exact"] = v.tau_exact ? json(*v.tau_exact) : json(nullptr);
        if (!v.tau_exact && v.winner == Player::maker) {
            if (static_cast<int>(s.unmarked().size()) <= opt_.oracle_guard) j["tau_exact"] = *solver_->tau_exact(s);
            else j["note"] = "exact duration skipped: more non-marked vertices than the oracle guard";
        }
        return j;
    }

    json engine_move_json(const EngineMove& m) {
        return {{"player", to_string(m.player)}, {"vertex", doc_.name(m.vertex)}, {"rationale", to_string(m.rationale)}};
    }

private:
    BoardDocument doc_;
    Position position_;
    std::unique_ptr<Solver> solver_;
    SolverOptions opt_;
};

// Verdict of a board as JSON; the CLI and the service both print exactly this.
inline json decide_document(const BoardDocument& doc) { return Game(doc).decide_json(); }

}  // namespace mb
