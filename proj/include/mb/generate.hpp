#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "canonical.hpp"
#include "hypergraph.hpp"
#include "sequence.hpp"

namespace mb {

// Builders for the named shapes. Vertex 0 is the first endpoint / anchor.

// Nunchaku of length L: spine 0, 2, 4, ..., 2L with middle vertices in
// between; both ends marked.
inline MarkedHypergraph nunchaku_board(int L) {
    if (L < 1) throw domain_error("nunchaku_board: length must be positive");
    std::vector<Edge> edges;
    for (int i = 0; i < L; ++i) {
        VertexId a = 2 * i;
        edges.emplace_back(std::vector<VertexId>{a, a + 1, a + 2});
    }
    return MarkedHypergraph::on(static_cast<VertexId>(2 * L + 1), std::move(edges), VertexSet{0, static_cast<VertexId>(2 * L)});
}

// Necklace of length L >= 2 anchored at the marked vertex 0. For L = 2 the
// two edges share their two inner vertices.
inline MarkedHypergraph necklace_board(int L) {
    if (L < 2) throw domain_error("necklace_board: length must be at least two");
    std::vector<Edge> edges;
    if (L == 2) {
        edges.emplace_back(std::vector<VertexId>{0, 1, 2});
        edges.emplace_back(std::vector<VertexId>{0, 2, 3});
        // inner vertices 0 and 2, hence |e1 ∩ e2| = 2
        return MarkedHypergraph::on(4, std::move(edges), VertexSet{0});
    }
    for (int i = 0; i < L; ++i) {
        VertexId a = 2 * i;
        VertexId b = i + 1 == L ? 0 : a + 2;
        edges.emplace_back(std::vector<VertexId>{a, a + 1, b});
    }
    return MarkedHypergraph::on(static_cast<VertexId>(2 * L), std::move(edges), VertexSet{0});
}

// Two vertex-disjoint edges, nothing marked.
inline MarkedHypergraph disjoint_edges_board() {
    return MarkedHypergraph::on(6, {Edge(std::vector<VertexId>{0, 1, 2}), Edge(std::vector<VertexId>{3, 4, 5})});
}

// Graph with padding: every pair {u, v} becomes {u, v, p} with p fresh and marked.
inline MarkedHypergraph padded_graph(VertexId n, const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    std::vector<Edge> edges;
    for (auto [u, v] : pairs) edges.emplace_back(std::vector<VertexId>{u, v});
    return normalize_rank3(MarkedHypergraph::on(n, std::move(edges))).board;
}

// Parameters of instance streams.
struct CorpusSpec {
    int max_edges = 5;
    int max_vertices = 9;
    bool spare_vertices = true;  // also emit copies with isolated non-marked vertices added
};

// Every 3-uniform marked board with at most `max_edges` edges and at most
// `max_vertices` vertices, once per isomorphism class. Marked vertices always
// lie on an edge (an isolated marked vertex never matters). Emitted in a
// fixed order; `visit` returns false to stop.
inline std::size_t for_each_corpus_board(const CorpusSpec& spec, const std::function<bool(const MarkedHypergraph&)>& visit) {
    // Unmarked edge multisets without isolated vertices, grown one edge at a time.
    std::vector<MarkedHypergraph> level{};
    std::vector<MarkedHypergraph> all;
    {
        std::set<std::vector<std::uint32_t>> seen;
        auto h = MarkedHypergraph::on(3, {Edge(std::vector<VertexId>{0, 1, 2})});
        seen.insert(canonical_form(h).code);
        level.push_back(h);
    }
    for (int k = 1; k <= spec.max_edges; ++k) {
        for (const auto& h : level) all.push_back(h);
        if (k == spec.max_edges) break;
        std::set<std::vector<std::uint32_t>> seen;
        std::vector<MarkedHypergraph> next;
        for (const auto& h : level) {
            VertexId n = h.vertices().back() + 1;
            // New edge: `fresh` new vertices plus 3 - fresh old ones.
            for (int fresh = 0; fresh <= 2; ++fresh) {
                if (static_cast<int>(n) + fresh > spec.max_vertices) break;
                int old = 3 - fresh;
                std::vector<VertexId> pick(old);
                std::function<void(int, VertexId)> choose = [&](int i, VertexId from) {
                    if (i == old) {
                        std::vector<VertexId> ids = pick;
                        for (int f = 0; f < fresh; ++f) ids.push_back(n + f);
                        Edge e{std::span<const VertexId>(ids)};
                        if (h.has_edge(e)) return;
                        std::vector<Edge> edges = h.edges();
                        edges.push_back(e);
                        auto g = MarkedHypergraph::on(n + fresh, std::move(edges));
                        if (seen.insert(canonical_form(g).code).second) next.push_back(canonical_board(g));
                        return;
                    }
                    for (VertexId v = from; v < n; ++v) {
                        pick[i] = v;
                        choose(i + 1, v + 1);
                    }
                };
                choose(0, 0);
            }
            // Disjoint new edge.
            if (static_cast<int>(n) + 3 <= spec.max_vertices) {
                std::vector<Edge> edges = h.edges();
                edges.emplace_back(std::vector<VertexId>{n, n + 1, n + 2});
                auto g = MarkedHypergraph::on(n + 3, std::move(edges));
                if (seen.insert(canonical_form(g).code).second) next.push_back(canonical_board(g));
            }
        }
        level = std::move(next);
    }

    std::size_t emitted = 0;
    for (const auto& h : all) {
        VertexId n = h.vertices().back() + 1;
        std::set<std::vector<std::uint32_t>> marks_seen;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            VertexSet marked;
            for (VertexId v = 0; v < n; ++v)
                if (mask >> v & 1u) marked.insert(v);
            MarkedHypergraph g(h.vertices(), h.edges(), marked);
            if (!marks_seen.insert(canonical_form(g).code).second) continue;
            int spare_max = spec.spare_vertices ? spec.max_vertices - static_cast<int>(n) : 0;
            for (int spare = 0; spare <= spare_max; ++spare) {
                MarkedHypergraph b = spare == 0 ? g : MarkedHypergraph(VertexSet::range(n + spare), g.edges(), marked);
                ++emitted;
                if (!visit(b)) return emitted;
            }
        }
    }
    return emitted;
}

inline std::vector<MarkedHypergraph> corpus(const CorpusSpec& spec) {
    std::vector<MarkedHypergraph> out;
    for_each_corpus_board(spec, [&](const MarkedHypergraph& h) {
        out.push_back(h);
        return true;
    });
    return out;
}

struct RandomSpec {
    int min_vertices = 10;
    int max_vertices = 12;
    double edge_factor_min = 0.5;  // edges drawn uniformly in [min, max] times the vertex count
    double edge_factor_max = 1.5;
    double mark_probability = 0.12;
    bool allow_trivial = false;  // keep boards that are already trivial Maker wins
};

// Seeded random 3-uniform board; same seed, same board.
inline MarkedHypergraph random_board(std::mt19937_64& rng, const RandomSpec& spec = {}) {
    std::uniform_int_distribution<int> nd(spec.min_vertices, spec.max_vertices);
    while (true) {
        VertexId n = static_cast<VertexId>(nd(rng));
        std::uniform_real_distribution<double> fd(spec.edge_factor_min, spec.edge_factor_max);
        int m = std::max(1, static_cast<int>(fd(rng) * n));
        std::uniform_int_distribution<VertexId> vd(0, n - 1);
        std::vector<Edge> edges;
        for (int i = 0; i < m; ++i) {
            VertexId a = vd(rng), b = vd(rng), c = vd(rng);
            if (a == b || b == c || a == c) continue;
            edges.emplace_back(std::vector<VertexId>{a, b, c});
        }
        if (edges.empty()) continue;
        std::bernoulli_distribution md(spec.mark_probability);
        VertexSet marked;
        for (VertexId v = 0; v < n; ++v)
            if (md(rng)) marked.insert(v);
        MarkedHypergraph h = MarkedHypergraph::on(n, std::move(edges), marked);
        if (h.unmarked().empty()) continue;
        if (!spec.allow_trivial) {
            bool trivial = false;
            for (const Edge& e : h.edges())
                if ((e.vertex_set() - h.marked()).size() <= 1) trivial = true;
            if (trivial) continue;
        }
        return h;
    }
}

struct ForestSpec {
    int min_edges = 1;
    int max_edges = 7;
    int max_vertices = 18;
    double mark_probability = 0.2;
    // Chance that a new edge starts a new component instead of attaching.
    double new_component = 0.15;
};

// Random 3-uniform hyperforest: each new edge meets the existing vertices in
// at most one vertex, so no cycle can arise. No edge gets two marks, hence no
// trivial win.
inline MarkedHypergraph random_forest(std::mt19937_64& rng, const ForestSpec& spec = {}) {
    std::uniform_int_distribution<int> md(spec.min_edges, spec.max_edges);
    std::bernoulli_distribution fresh(spec.new_component);
    std::bernoulli_distribution mark(spec.mark_probability);
    int m = md(rng);
    std::vector<Edge> edges;
    VertexId n = 0;
    for (int i = 0; i < m && static_cast<int>(n) + 3 <= spec.max_vertices; ++i) {
        if (n == 0 || fresh(rng)) {
            edges.emplace_back(std::vector<VertexId>{n, n + 1, n + 2});
            n += 3;
        } else {
            VertexId at = std::uniform_int_distribution<VertexId>(0, n - 1)(rng);
            edges.emplace_back(std::vector<VertexId>{at, n, n + 1});
            n += 2;
        }
    }
    VertexSet marked;
    std::vector<VertexId> order(n);
    for (VertexId v = 0; v < n; ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng);
    for (VertexId v : order) {
        if (!mark(rng)) continue;
        bool ok = true;
        for (const Edge& e : edges)
            if (e.contains(v) && (e.vertex_set() & marked).size() >= 1) ok = false;
        if (ok) marked.insert(v);
    }
    return MarkedHypergraph::on(n, std::move(edges), marked);
}

// Random relabeling of the vertex ids 0..n-1.
inline MarkedHypergraph relabel(const MarkedHypergraph& h, const std::vector<VertexId>& perm) {
    std::vector<Edge> edges;
    for (const Edge& e : h.edges()) {
        std::vector<VertexId> ids;
        for (VertexId v : e) ids.push_back(perm[v]);
        edges.emplace_back(std::span<const VertexId>(ids));
    }
    VertexSet vs, ms;
    for (VertexId v : h.vertices()) vs.insert(perm[v]);
    for (VertexId v : h.marked()) ms.insert(perm[v]);
    return MarkedHypergraph(vs, std::move(edges), ms);
}

}  // namespace mb
