#pragma once

#include <array>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "game.hpp"
#include "structures.hpp"

namespace mb {

enum class FamilyKind { trivial, snake, cycle, tadpole, d0, d1 };

// Which subhypergraphs count as dangers at a vertex x:
//   trivial(k)  one edge of size k containing x, all marked but x and one other
//   snake       x-snake with a single marked vertex
//   cycle       x-cycle without marked vertices
//   tadpole     x-tadpole without marked vertices
//   d0          snake or cycle
//   d1          snake or tadpole
struct DangerFamily {
    FamilyKind kind = FamilyKind::d0;
    int size = 3;  // only for trivial

    static constexpr DangerFamily trivial(int k) { return {FamilyKind::trivial, k}; }
    static constexpr DangerFamily snakes() { return {FamilyKind::snake, 0}; }
    static constexpr DangerFamily cycles() { return {FamilyKind::cycle, 0}; }
    static constexpr DangerFamily tadpoles() { return {FamilyKind::tadpole, 0}; }
    static constexpr DangerFamily d0() { return {FamilyKind::d0, 0}; }
    static constexpr DangerFamily d1() { return {FamilyKind::d1, 0}; }

    friend bool operator==(const DangerFamily&, const DangerFamily&) = default;
};

inline const char* to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::trivial: return "trivial";
        case FamilyKind::snake: return "snake";
        case FamilyKind::cycle: return "cycle";
        case FamilyKind::tadpole: return "tadpole";
        case FamilyKind::d0: return "d0";
        case FamilyKind::d1: return "d1";
    }
    return "?";
}

struct DangerWitness {
    FamilyKind kind;  // trivial, snake, cycle or tadpole
    std::variant<Edge, PathWitness, CycleWitness, TadpoleWitness> shape;

    [[nodiscard]] VertexSet vertex_set() const {
        return std::visit([](const auto& s) { return s.vertex_set(); }, shape);
    }
};

struct DangerIntersection {
    VertexId at = 0;
    DangerFamily family;
    VertexSet hitting_set;     // Breaker replies that meet every danger at `at`
    bool any_danger = false;   // false: no danger at all, every reply qualifies
    [[nodiscard]] bool empty() const { return hitting_set.empty(); }
};

// Danger queries, the J_1/J_r properties and the threat search, all over
// positions of one root board.
class DangerAnalyzer {
public:
    explicit DangerAnalyzer(const IncidenceIndex& index) : index_(index), finder_(index) {}

    const IncidenceIndex& index() const { return index_; }
    StructureFinder& finder() { return finder_; }

    // Some danger at x avoiding every vertex of `avoiding`.
    std::optional<DangerWitness> danger_at(const GameState& s, VertexId x, DangerFamily f,
                                           const VertexSet& avoiding = {}) {
        switch (f.kind) {
            case FamilyKind::trivial: {
                for (std::uint32_t ei : index_.incident(x)) {
                    const VertexSet& m = index_.mask(ei);
                    if (static_cast<int>(index_.edges()[ei].size()) != f.size) continue;
                    if (!m.subset_of(s.present) || m.intersects(avoiding)) continue;
                    if ((m - s.marked).size() == 2) return DangerWitness{FamilyKind::trivial, index_.edges()[ei]};
                }
                return std::nullopt;
            }
            case FamilyKind::snake:
                if (auto p = finder_.snake(s, x, avoiding)) return DangerWitness{FamilyKind::snake, *p};
                return std::nullopt;
            case FamilyKind::cycle:
                if (auto c = finder_.cycle_through(s, x, true, avoiding)) return DangerWitness{FamilyKind::cycle, *c};
                return std::nullopt;
            case FamilyKind::tadpole:
                if (auto t = finder_.tadpole(s, x, true, avoiding)) return DangerWitness{FamilyKind::tadpole, *t};
                return std::nullopt;
            case FamilyKind::d0:
                if (auto w = danger_at(s, x, DangerFamily::snakes(), avoiding)) return w;
                return danger_at(s, x, DangerFamily::cycles(), avoiding);
            case FamilyKind::d1:
                if (auto w = danger_at(s, x, DangerFamily::snakes(), avoiding)) return w;
                return danger_at(s, x, DangerFamily::tadpoles(), avoiding);
        }
        return std::nullopt;
    }

    // Replies y such that every danger at x contains y. Only vertices of one
    // found danger can qualify, so the other candidates are never tested.
    DangerIntersection intersection(const GameState& s, VertexId x, DangerFamily f) {
        DangerIntersection out{x, f, {}, false};
        VertexSet eligible = s.unmarked();
        eligible.erase(x);
        auto w = danger_at(s, x, f);
        if (!w) {
            out.hitting_set = eligible;
            return out;
        }
        out.any_danger = true;
        for (VertexId y : w->vertex_set() & eligible)
            if (!danger_at(s, x, f, VertexSet{y})) out.hitting_set.insert(y);
        return out;
    }

    // nullopt when J_1 holds, else the first x whose hitting set is empty.
    std::optional<VertexId> j1_failure(const GameState& s, DangerFamily f) {
        for (VertexId x : s.unmarked())
            if (intersection(s, x, f).empty()) return x;
        return std::nullopt;
    }

    bool jr(const GameState& s, int r, DangerFamily f) {
        if (r < 1) throw domain_error("jr: r must be positive");
        if (s.unmarked().size() < 2 * r) throw domain_error("jr: needs at least 2r non-marked vertices");
        family_for_memo(f);
        return jr_rec(s, r);
    }

    // Maker can make sure that after r rounds the position holds a fully
    // marked edge, a nunchaku or a necklace.
    bool forces_threat(const GameState& s, int r) {
        if (r < 1) throw domain_error("maker_forces_threat: r must be positive");
        if (s.unmarked().size() < 2 * r) throw domain_error("maker_forces_threat: needs at least 2r non-marked vertices");
        if (is_trivial_win(index_, s)) throw domain_error("maker_forces_threat: position is a trivial Maker win");
        return threat_rec(s, r);
    }

    // First Maker pick from which the threat search succeeds, lowest id first.
    std::optional<VertexId> forcing_first_move(const GameState& s, int r) {
        if (!forces_threat(s, r)) return std::nullopt;
        for (VertexId x : s.unmarked())
            if (threat_after_pick(s.with_mark(x), r)) return x;
        throw internal_error("forcing_first_move: search found no first move");
    }

    // One line of the threat strategy: Maker's successful picks against
    // Breaker's lowest-id replies, ending with the threat found.
    std::vector<Move> forcing_line(const GameState& start, int r) {
        std::vector<Move> line;
        GameState s = start;
        for (int round = r; round >= 1; --round) {
            if (finder_.has_threat(s)) break;
            std::optional<VertexId> pick;
            for (VertexId x : s.unmarked())
                if (threat_after_pick(s.with_mark(x), round)) {
                    pick = x;
                    break;
                }
            if (!pick) break;
            line.push_back({Player::maker, *pick});
            GameState m = s.with_mark(*pick);
            if (m.unmarked().empty() || finder_.fully_marked_edge(m)) break;
            VertexId y = m.unmarked().front();
            line.push_back({Player::breaker, y});
            s = m.without(y);
        }
        return line;
    }

    std::size_t memo_size() const {
        std::size_t n = 0;
        for (const auto& m : threat_memo_) n += m.size();
        return n;
    }

private:
    bool jr_rec(const GameState& s, int r) {
        if (r == 1) return !j1_failure(s, family_).has_value();
        auto& memo = slot(jr_memo_, r);
        if (auto it = memo.find(s); it != memo.end()) return it->second;
        bool holds = true;
        for (VertexId x : branch_vertices(index_, s)) {
            GameState m = s.with_mark(x);
            if (!exists_surviving_reply(s, m, x, r)) {
                holds = false;
                break;
            }
        }
        memo.emplace(s, holds);
        return holds;
    }

    bool exists_surviving_reply(const GameState& s, const GameState& m, VertexId x, int r) {
        auto w = danger_at(s, x, family_);
        VertexSet candidates = branch_vertices(index_, m);
        if (w) candidates &= w->vertex_set();
        for (VertexId y : candidates) {
            if (w && danger_at(s, x, family_, VertexSet{y})) continue;
            if (jr_rec(m.without(y), r - 1)) return true;
        }
        return false;
    }

    void family_for_memo(DangerFamily f) {
        if (!(f == family_)) {
            for (auto& m : jr_memo_) m.clear();
            family_ = f;
        }
    }

    bool threat_rec(const GameState& s, int r) {
        auto& memo = slot(threat_memo_, r);
        if (auto it = memo.find(s); it != memo.end()) return it->second;
        // A threat already present survives every later round: Maker completes
        // a one-edge nunchaku, halves a longer one, or splits a necklace at an
        // inner vertex into two nunchakus sharing only marked vertices.
        bool wins = finder_.has_threat(s);
        for (VertexId x : wins ? std::vector<VertexId>{} : ordered_picks(s)) {
            if (threat_after_pick(s.with_mark(x), r)) {
                wins = true;
                break;
            }
        }
        memo.emplace(s, wins);
        return wins;
    }

    // Position after Maker's pick in the round with `r` rounds left, counting this one.
    bool threat_after_pick(const GameState& m, int r) {
        for (VertexId y : branch_vertices(index_, m)) {
            GameState c = m.without(y);
            bool ok = r == 1 ? finder_.has_threat(c) : threat_rec(c, r - 1);
            if (!ok) return false;
        }
        return true;
    }

    // Vertices on many alive edges first; the order only affects speed.
    std::vector<VertexId> ordered_picks(const GameState& s) {
        std::vector<std::pair<int, VertexId>> scored;
        for (VertexId x : branch_vertices(index_, s)) {
            int score = 0;
            for (std::uint32_t ei : index_.incident(x))
                if (index_.mask(ei).subset_of(s.present)) score += 1 + 2 * (index_.mask(ei) & s.marked).size();
            scored.emplace_back(-score, x);
        }
        std::sort(scored.begin(), scored.end());
        std::vector<VertexId> out;
        for (auto& [_, x] : scored) out.push_back(x);
        return out;
    }

    const IncidenceIndex& index_;
    StructureFinder finder_;
    DangerFamily family_ = DangerFamily::d0();
    using Memo = std::unordered_map<GameState, bool, GameStateHash>;
    static Memo& slot(std::vector<Memo>& memos, int r) {
        if (memos.size() <= static_cast<std::size_t>(r)) memos.resize(static_cast<std::size_t>(r) + 1);
        return memos[static_cast<std::size_t>(r)];
    }
    std::vector<Memo> jr_memo_;
    std::vector<Memo> threat_memo_;
};

// Board-level wrappers.

inline bool is_trivial_maker_win(const MarkedHypergraph& h) {
    for (const Edge& e : h.edges())
        if ((e.vertex_set() - h.marked()).size() <= 1) return true;
    return false;
}

inline std::optional<DangerWitness> danger_exists_at(const MarkedHypergraph& h, VertexId x, DangerFamily f,
                                                     const VertexSet& avoiding = {}) {
    if (!h.unmarked().contains(x) || avoiding.contains(x)) throw domain_error("danger_exists_at: x must be non-marked and not avoided");
    IncidenceIndex index(h);
    return DangerAnalyzer(index).danger_at(state_of(h), x, f, avoiding);
}

inline DangerIntersection danger_intersection(const MarkedHypergraph& h, VertexId x, DangerFamily f) {
    if (!h.unmarked().contains(x)) throw domain_error("danger_intersection: x must be non-marked");
    IncidenceIndex index(h);
    return DangerAnalyzer(index).intersection(state_of(h), x, f);
}

// nullopt when J_1 holds; otherwise a vertex x whose dangers do not intersect.
inline std::optional<VertexId> j1(const MarkedHypergraph& h, DangerFamily f) {
    if (h.unmarked().size() < 2) throw domain_error("j1: needs at least two non-marked vertices");
    IncidenceIndex index(h);
    return DangerAnalyzer(index).j1_failure(state_of(h), f);
}

inline bool jr(const MarkedHypergraph& h, int r, DangerFamily f = DangerFamily::d0()) {
    IncidenceIndex index(h);
    return DangerAnalyzer(index).jr(state_of(h), r, f);
}

inline bool maker_forces_threat(const MarkedHypergraph& h, int r) {
    if (!h.is_uniform(3)) throw domain_error("maker_forces_threat: board must be 3-uniform");
    IncidenceIndex index(h);
    return DangerAnalyzer(index).forces_threat(state_of(h), r);
}

}  // namespace mb
