#pragma once

#include <bit>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dangers.hpp"
#include "oracle.hpp"

namespace mb {

// Why the engine believes its verdict or chose its move.
enum class Rationale { trivial, threat_line, oracle, survival };

inline const char* to_string(Rationale r) {
    switch (r) {
        case Rationale::trivial: return "trivial";
        case Rationale::threat_line: return "threat-line";
        case Rationale::oracle: return "oracle";
        case Rationale::survival: return "survival";
    }
    return "?";
}

struct Verdict {
    Player winner = Player::breaker;
    std::optional<VertexId> best_move;  // Maker's winning pick; empty on a Breaker win
    std::optional<int> tau_upper;
    std::optional<int> tau_exact;
    Rationale certificate = Rationale::survival;
    // trivial: completing pick; threat-line: one forcing line, empty when the
    // board already holds a threat; oracle: principal line.
    std::vector<Move> line;
};

// ceil(log2(n)) for n >= 1.
inline int ceil_log2(std::uint64_t n) {
    if (n == 0) throw domain_error("ceil_log2: n must be positive");
    return n == 1 ? 0 : std::bit_width(n - 1);
}

struct SolverOptions {
    int oracle_guard = 14;  // largest non-marked count handed to the oracle for tau_exact
};

// Engine for the positions of one root board. The board must be 3-uniform;
// callers normalize first (see decide() below for the board-level entry).
class Solver {
public:
    explicit Solver(const MarkedHypergraph& h, SolverOptions opt = {})
        : root_(h), index_(h), dangers_(index_), opt_(opt) {
        if (!h.is_uniform(3) && !h.edges().empty()) throw domain_error("solver: board must be 3-uniform");
    }

    const IncidenceIndex& index() const { return index_; }
    GameState root() const { return state_of(root_); }
    DangerAnalyzer& dangers() { return dangers_; }
    StructureFinder& finder() { return dangers_.finder(); }

    // Winner only, memoized. Threat search above five non-marked vertices,
    // oracle below.
    Player winner(const GameState& s) {
        if (auto it = winner_memo_.find(s); it != winner_memo_.end()) return it->second;
        Player p;
        if (is_trivial_win(index_, s)) p = Player::maker;
        else if (s.unmarked().size() < 6) p = Oracle(board_of(index_, s)).maker_wins() ? Player::maker : Player::breaker;
        else p = dangers_.forces_threat(s, 3) ? Player::maker : Player::breaker;
        winner_memo_.emplace(s, p);
        return p;
    }

    Verdict decide(const GameState& s) {
        Verdict v;
        v.winner = winner(s);
        if (is_trivial_win(index_, s)) {
            v.certificate = Rationale::trivial;
            int f = min_free(s);
            v.tau_exact = f;
            v.tau_upper = f;
            if (auto x = maker_best(s)) {
                v.best_move = x;
                v.line.push_back({Player::maker, *x});
            }
            return v;
        }
        if (s.unmarked().size() < 6) {
            v.certificate = Rationale::oracle;
            OracleResult r = Oracle(board_of(index_, s)).solve();
            v.tau_exact = r.tau;
            v.tau_upper = r.tau;
            v.line = r.principal_line;
            if (v.winner == Player::maker) v.best_move = maker_best(s);
            return v;
        }
        if (v.winner == Player::breaker) {
            v.certificate = Rationale::survival;
            return v;
        }
        v.certificate = Rationale::threat_line;
        v.tau_upper = 3 + ceil_log2(s.unmarked().size() - 5);
        if (auto l = forest_nunchaku(s)) {
            int t = 1 + ceil_log2(*l);
            v.tau_exact = t;
            v.tau_upper = std::min(*v.tau_upper, t);
        }
        v.best_move = maker_best(s);
        v.line = dangers_.forcing_line(s, 3);
        return v;
    }

    // Maker's winning pick. Order: complete a trivial win; on a hyperforest,
    // the middle of a shortest nunchaku; the oracle's fastest pick on small
    // positions; otherwise the lowest-id pick from which the threat search wins.
    std::optional<VertexId> maker_best(const GameState& s) {
        if (winner(s) != Player::maker) throw domain_error("maker_best: position is a Breaker win");
        if (auto x = completing_vertex(s)) return x;
        if (has_full_edge(s)) return std::nullopt;
        if (auto x = forest_midpoint(s)) return x;
        if (s.unmarked().size() < 6) return Oracle(board_of(index_, s)).best_maker_move(s);
        return dangers_.forcing_first_move(s, 3);
    }

    // Breaker's surviving reply to Maker's pick x1 from s. Candidates that meet
    // every D0-danger at x1 are tried first.
    std::optional<VertexId> breaker_best(const GameState& s, VertexId x1) {
        if (!s.unmarked().contains(x1)) throw domain_error("breaker_best: x1 must be non-marked");
        GameState m = s.with_mark(x1);
        if (m.unmarked().empty()) return std::nullopt;
        DangerIntersection hit = dangers_.intersection(s, x1, DangerFamily::d0());
        for (VertexId y : hit.hitting_set)
            if (winner(m.without(y)) == Player::breaker) return y;
        for (VertexId y : m.unmarked() - hit.hitting_set)
            if (winner(m.without(y)) == Player::breaker) return y;
        if (winner(s) == Player::breaker) throw internal_error("breaker_best: no surviving reply on a Breaker win");
        return std::nullopt;
    }

    // True when no cycle survives among the alive edges.
    bool is_forest(const GameState& s) {
        for (VertexId v : s.present)
            if (finder().cycle_through(s, v, false)) return false;
        return true;
    }

    // L(H) on a hyperforest, nullopt when not a forest or no nunchaku.
    std::optional<std::size_t> forest_nunchaku(const GameState& s) {
        if (has_full_edge(s) || !is_forest(s)) return std::nullopt;
        auto n = finder().shortest_nunchaku(s);
        if (!n) return std::nullopt;
        return n->length();
    }

    // Inner vertex in the middle of a shortest nunchaku (lower id of the two
    // central ones for odd length). Only on hyperforests with L >= 2.
    std::optional<VertexId> forest_midpoint(const GameState& s) {
        if (has_full_edge(s) || !is_forest(s)) return std::nullopt;
        auto n = finder().shortest_nunchaku(s);
        if (!n || n->length() < 2) return std::nullopt;
        std::vector<VertexId> xs = n->spine();
        std::size_t L = n->length();
        if (L % 2 == 0) return xs[L / 2];
        return std::min(xs[L / 2], xs[L / 2 + 1]);
    }

    // Breaker's halving reply on a hyperforest: the outer vertex of the first
    // edge of a shortest nunchaku ending at x; the lowest vertex when none.
    std::optional<VertexId> forest_breaker_reply(const GameState& s, VertexId x) {
        GameState m = s.with_mark(x);
        if (m.unmarked().empty()) return std::nullopt;
        if (auto n = finder().nunchaku_from(m, x)) return n->first_outer();
        return m.unmarked().front();
    }

    // Exact duration by exhaustive search; resource_error above the guard.
    std::optional<int> tau_exact(const GameState& s) {
        return Oracle(board_of(index_, s), {opt_.oracle_guard, true}).tau();
    }

    // Engine's choice for the side to move, with its rationale. For Breaker,
    // `s` is the position after Maker's pick x1.
    struct Choice {
        VertexId vertex;
        Rationale rationale;
    };

    std::optional<Choice> maker_move(const GameState& s) {
        if (s.unmarked().empty() || has_full_edge(s)) return std::nullopt;
        if (winner(s) == Player::maker) {
            VertexId x = *maker_best(s);
            Rationale r = completing_vertex(s) ? Rationale::trivial
                          : s.unmarked().size() < 6 ? Rationale::oracle
                                                    : Rationale::threat_line;
            return Choice{x, r};
        }
        // Lost for Maker: take a vertex on the most alive edges.
        return Choice{busiest(s), Rationale::survival};
    }

    std::optional<Choice> breaker_move(const GameState& before_pick, VertexId x1) {
        GameState m = before_pick.with_mark(x1);
        if (m.unmarked().empty() || m.present.size() <= 1 || has_full_edge(m)) return std::nullopt;
        if (auto y = breaker_best(before_pick, x1)) return Choice{*y, Rationale::survival};
        // Lost for Breaker: block the completing vertex, else delay as much as possible.
        if (auto c = completing_vertex(m)) return Choice{*c, Rationale::trivial};
        if (is_forest(before_pick)) return Choice{*forest_breaker_reply(before_pick, x1), Rationale::survival};
        if (static_cast<int>(m.unmarked().size()) <= opt_.oracle_guard) {
            Oracle o(board_of(index_, m), {opt_.oracle_guard, true});
            if (auto y = o.best_breaker_move(m)) return Choice{*y, Rationale::oracle};
        }
        DangerIntersection hit = dangers_.intersection(before_pick, x1, DangerFamily::d0());
        VertexId y = hit.hitting_set.empty() ? m.unmarked().front() : hit.hitting_set.front();
        return Choice{y, Rationale::survival};
    }

    bool has_full_edge(const GameState& s) const {
        for (std::uint32_t i = 0; i < index_.edges().size(); ++i)
            if (index_.mask(i).subset_of(s.marked)) return true;
        return false;
    }

    // Lowest non-marked vertex completing an alive edge.
    std::optional<VertexId> completing_vertex(const GameState& s) const {
        std::optional<VertexId> best;
        for (std::uint32_t i = 0; i < index_.edges().size(); ++i) {
            const VertexSet& m = index_.mask(i);
            if (!m.subset_of(s.present)) continue;
            VertexSet rest = m - s.marked;
            if (rest.size() == 1 && (!best || rest.front() < *best)) best = rest.front();
        }
        return best;
    }

private:
    int min_free(const GameState& s) const {
        int best = -1;
        for (std::uint32_t i = 0; i < index_.edges().size(); ++i) {
            const VertexSet& m = index_.mask(i);
            if (!m.subset_of(s.present)) continue;
            int f = static_cast<int>((m - s.marked).size());
            if (best < 0 || f < best) best = f;
        }
        return best;
    }

    VertexId busiest(const GameState& s) const {
        VertexId best = s.unmarked().front();
        int best_deg = -1;
        for (VertexId x : s.unmarked()) {
            int d = 0;
            for (std::uint32_t ei : index_.incident(x))
                if (index_.mask(ei).subset_of(s.present)) ++d;
            if (d > best_deg) {
                best_deg = d;
                best = x;
            }
        }
        return best;
    }

    MarkedHypergraph root_;
    IncidenceIndex index_;
    DangerAnalyzer dangers_;
    SolverOptions opt_;
    std::unordered_map<GameState, Player, GameStateHash> winner_memo_;
};

// Board-level entry points. Boards of rank below three are padded first;
// moves and lines are reported on the padded board, whose original vertices
// keep their ids.

inline Verdict decide(const MarkedHypergraph& h) {
    NormalizedBoard n = normalize_rank3(h);
    Solver s(n.board);
    return s.decide(s.root());
}

inline std::optional<VertexId> maker_best(const MarkedHypergraph& h) {
    Solver s(normalize_rank3(h).board);
    return s.maker_best(s.root());
}

inline std::optional<VertexId> breaker_best(const MarkedHypergraph& h, VertexId x1) {
    Solver s(normalize_rank3(h).board);
    if (s.winner(s.root()) != Player::breaker) throw domain_error("breaker_best: position is a Maker win");
    return s.breaker_best(s.root(), x1);
}

inline Verdict decide_forest(const MarkedHypergraph& h) {
    if (!h.is_uniform(3)) throw domain_error("decide_forest: board must be 3-uniform");
    Solver s(h);
    GameState st = s.root();
    if (!s.is_forest(st)) throw domain_error("decide_forest: board has a cycle, use decide()");
    if (s.has_full_edge(st)) throw domain_error("decide_forest: board has a fully marked edge");
    Verdict v;
    auto n = s.finder().shortest_nunchaku(st);
    if (!n) {
        v.winner = Player::breaker;
        v.certificate = Rationale::survival;
        return v;
    }
    v.winner = Player::maker;
    v.tau_exact = 1 + ceil_log2(n->length());
    v.tau_upper = v.tau_exact;
    v.certificate = n->length() == 1 ? Rationale::trivial : Rationale::threat_line;
    v.best_move = n->length() == 1 ? s.completing_vertex(st) : s.forest_midpoint(st);
    return v;
}

// Reply of the halving strategy to Maker's pick x on a hyperforest.
inline std::optional<VertexId> forest_breaker_reply(const MarkedHypergraph& h, VertexId x) {
    if (!h.unmarked().contains(x)) throw domain_error("forest_breaker_reply: x must be non-marked");
    Solver s(h);
    if (!s.is_forest(s.root())) throw domain_error("forest_breaker_reply: board has a cycle");
    return s.forest_breaker_reply(s.root(), x);
}

inline std::optional<int> tau_exact(const MarkedHypergraph& h, int guard = 14) {
    return Oracle(normalize_rank3(h).board, {guard, true}).tau();
}

inline int tau_upper_bound(const MarkedHypergraph& h) {
    std::size_t n = h.unmarked().size();
    if (n < 6) throw domain_error("tau_upper_bound: needs at least six non-marked vertices");
    if (decide(h).winner != Player::maker) throw domain_error("tau_upper_bound: position is a Breaker win");
    return 3 + ceil_log2(n - 5);
}

// Maker marks the spine x_1..x_{L-1} in order; each pick leaves a length-1
// nunchaku ahead, so Breaker's reply y_i is forced. The last pick leaves two.
inline std::vector<Move> forcing_line(const PathWitness& n, const VertexSet& marked) {
    if (!n.valid() || n.length() < 2) throw domain_error("forcing_line: needs a valid nunchaku of length at least two");
    if ((n.vertex_set() & marked) != VertexSet{n.a, n.b}) throw domain_error("forcing_line: marked vertices of the path must be its endpoints");
    std::vector<VertexId> xs = n.spine();
    std::vector<VertexId> ys = n.middles();
    std::vector<Move> line;
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        line.push_back({Player::maker, xs[i]});
        if (i + 2 < xs.size()) line.push_back({Player::breaker, ys[i - 1]});
    }
    return line;
}

// A game in progress: the starting board, the moves so far, and the
// resulting board.
struct Position {
    MarkedHypergraph initial;
    MarkedHypergraph board;
    Player to_move = Player::maker;
    std::vector<Move> history;

    explicit Position(MarkedHypergraph start) : initial(start), board(std::move(start)) {}

    // Maker wins once an edge is fully marked; Breaker once neither a
    // non-marked vertex nor a completable edge is left.
    [[nodiscard]] std::optional<Player> outcome() const {
        bool alive = false;
        for (const Edge& e : board.edges()) {
            if (e.vertex_set().subset_of(board.marked())) return Player::maker;
            alive = true;
        }
        if (!alive || board.unmarked().empty()) return Player::breaker;
        if (to_move == Player::breaker && board.vertices().size() <= 1) return Player::breaker;
        return std::nullopt;
    }
};

inline Position play(const Position& p, VertexId v) {
    if (p.outcome()) throw domain_error("play: the game is over");
    if (!p.board.vertices().contains(v)) throw domain_error("play: vertex " + std::to_string(v) + " is not on the board");
    if (p.board.marked().contains(v)) throw domain_error("play: vertex " + std::to_string(v) + " is already marked");
    Position q = p;
    if (p.to_move == Player::maker) {
        q.board = mark(p.board, v);
    } else {
        if (p.board.vertices().size() == 1) throw domain_error("play: cannot remove the last vertex");
        q.board = remove(p.board, v);
    }
    q.history.push_back({p.to_move, v});
    q.to_move = opponent(p.to_move);
    return q;
}

inline Position replay(const MarkedHypergraph& start, const std::vector<Move>& moves) {
    Position p(start);
    for (const Move& m : moves) {
        if (m.player != p.to_move) throw domain_error("replay: move out of turn");
        p = play(p, m.vertex);
    }
    return p;
}

}  // namespace mb
