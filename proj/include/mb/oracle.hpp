#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "game.hpp"
#include "search.hpp"

namespace mb {

struct OracleResult {
    Player winner = Player::breaker;
    std::optional<int> tau;  // rounds Maker needs; nullopt when Breaker wins
    std::vector<Move> principal_line;
};

struct OracleOptions {
    // Largest number of non-marked vertices searched.
    int guard = 14;
    // Branch on a single dead vertex instead of all of them. Exact, since
    // dead vertices are interchangeable; off only to cross-check itself.
    bool symmetry_pruning = true;
};

// Exhaustive game-tree search straight from the recursive definitions of a
// Maker win and of the duration, memoized on exact positions.
class Oracle {
public:
    Oracle(const MarkedHypergraph& h, OracleOptions opt = {}) : index_(h), root_(state_of(h)), opt_(opt) {
        if (h.unmarked().size() > opt_.guard)
            throw resource_error("oracle: " + std::to_string(h.unmarked().size()) + " non-marked vertices exceed the guard of " +
                                 std::to_string(opt_.guard));
    }

    bool maker_wins() { return wins(root_); }
    bool maker_wins(const GameState& s) { return wins(s); }

    std::optional<int> tau() { return tau(root_); }
    std::optional<int> tau(const GameState& s) {
        if (!wins(s)) return std::nullopt;
        for (int t = 0;; ++t)
            if (within(s, t)) return t;
    }

    // Maker pick reaching the duration bound, lowest id first. Requires a
    // Maker win that is not already complete.
    std::optional<VertexId> best_maker_move(const GameState& s) {
        auto t = tau(s);
        if (!t || *t == 0) return std::nullopt;
        for (VertexId x : s.unmarked())
            if (maker_pick_within(s.with_mark(x), *t - 1)) return x;
        throw internal_error("oracle: no move realizes the duration");
    }

    // Breaker reply after Maker's pick: a survival reply if one exists,
    // otherwise the one that makes Maker wait longest. Lowest id on ties.
    std::optional<VertexId> best_breaker_move(const GameState& after_pick) {
        std::optional<VertexId> best;
        int best_tau = -1;
        for (VertexId y : after_pick.unmarked()) {
            GameState c = after_pick.without(y);
            auto t = tau(c);
            if (!t) return y;
            if (*t > best_tau) {
                best_tau = *t;
                best = y;
            }
        }
        return best;
    }

    OracleResult solve() {
        OracleResult r;
        r.winner = wins(root_) ? Player::maker : Player::breaker;
        r.tau = tau(root_);
        GameState s = root_;
        while (true) {
            if (has_full_edge(s) || s.unmarked().empty() || min_free(s) < 0) break;
            std::optional<VertexId> x;
            if (r.winner == Player::maker) x = best_maker_move(s);
            else x = s.unmarked().front();
            if (!x) break;
            r.principal_line.push_back({Player::maker, *x});
            s = s.with_mark(*x);
            if (has_full_edge(s) || s.unmarked().empty() || s.present.size() == 1 || min_free(s) < 0) break;
            auto y = best_breaker_move(s);
            if (!y) break;
            r.principal_line.push_back({Player::breaker, *y});
            s = s.without(*y);
        }
        return r;
    }

    const IncidenceIndex& index() const { return index_; }
    const GameState& root() const { return root_; }
    std::size_t positions() const { return win_memo_.size() + tau_memo_.size(); }

private:
    struct Bounds {
        std::int8_t false_upto = -1;  // within(t) is false for every t <= false_upto
        std::int8_t true_from = 127;  // within(t) is true for every t >= true_from
    };

    bool has_full_edge(const GameState& s) const {
        for (std::uint32_t i = 0; i < index_.edges().size(); ++i)
            if (index_.mask(i).subset_of(s.marked)) return true;
        return false;
    }

    // Fewest non-marked vertices on an alive edge, or -1 without alive edges.
    int min_free(const GameState& s) const {
        int best = -1;
        for (std::uint32_t i = 0; i < index_.edges().size(); ++i) {
            const VertexSet& m = index_.mask(i);
            if (!m.subset_of(s.present)) continue;
            int f = (m - s.marked).size();
            if (best < 0 || f < best) best = f;
        }
        return best;
    }

    VertexSet moves(const GameState& s) const {
        return opt_.symmetry_pruning ? branch_vertices(index_, s) : s.unmarked();
    }

    bool wins(const GameState& s) {
        int f = min_free(s);
        if (f >= 0 && f <= 1) return true;
        if (s.unmarked().size() <= 1) return false;
        if (auto it = win_memo_.find(s); it != win_memo_.end()) return it->second;
        bool result = false;
        for (VertexId x : moves(s)) {
            GameState m = s.with_mark(x);
            bool all = true;
            for (VertexId y : moves(m))
                if (!wins(m.without(y))) {
                    all = false;
                    break;
                }
            if (all) {
                result = true;
                break;
            }
        }
        win_memo_.emplace(s, result);
        return result;
    }

    // tau(s) <= t
    bool within(const GameState& s, int t) {
        int f = min_free(s);
        if (f >= 0 && f <= 1) return f <= t;
        if (s.unmarked().size() <= 1 || t <= 0) return false;
        Bounds& b0 = tau_memo_[s];
        if (t <= b0.false_upto) return false;
        if (t >= b0.true_from) return true;
        bool result = false;
        for (VertexId x : moves(s))
            if (maker_pick_within(s.with_mark(x), t - 1)) {
                result = true;
                break;
            }
        Bounds& b = tau_memo_[s];  // rehash may have moved the entry
        if (result) b.true_from = static_cast<std::int8_t>(std::min<int>(b.true_from, t));
        else b.false_upto = static_cast<std::int8_t>(std::max<int>(b.false_upto, t));
        return result;
    }

    bool maker_pick_within(const GameState& m, int t) {
        for (VertexId y : moves(m))
            if (!within(m.without(y), t)) return false;
        return true;
    }

    IncidenceIndex index_;
    GameState root_;
    OracleOptions opt_;
    std::unordered_map<GameState, bool, GameStateHash> win_memo_;
    std::unordered_map<GameState, Bounds, GameStateHash> tau_memo_;
};

inline OracleResult minimax(const MarkedHypergraph& h, OracleOptions opt = {}) { return Oracle(h, opt).solve(); }

}  // namespace mb
