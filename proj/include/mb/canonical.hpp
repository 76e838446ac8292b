#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "hypergraph.hpp"

namespace mb {

// Canonical form of a board under renaming of its vertices: the
// lexicographically smallest encoding over all relabelings reachable by
// colour refinement plus individualization. Intended for small boards.
struct CanonicalForm {
    std::vector<std::uint32_t> code;
    std::vector<VertexId> order;  // order[i] = original vertex given label i

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) { return a.code == b.code; }
    friend bool operator<(const CanonicalForm& a, const CanonicalForm& b) { return a.code < b.code; }
};

namespace detail {

class Canonizer {
public:
    explicit Canonizer(const MarkedHypergraph& h) {
        ids_ = h.vertices().to_vector();
        n_ = ids_.size();
        std::map<VertexId, std::uint32_t> local;
        for (std::uint32_t i = 0; i < n_; ++i) local[ids_[i]] = i;
        for (const Edge& e : h.edges()) {
            std::vector<std::uint32_t> le;
            for (VertexId v : e) le.push_back(local[v]);
            edges_.push_back(le);
        }
        incident_.assign(n_, {});
        for (std::uint32_t i = 0; i < edges_.size(); ++i)
            for (std::uint32_t v : edges_[i]) incident_[v].push_back(i);
        marked_.assign(n_, false);
        for (VertexId m : h.marked()) marked_[local[m]] = true;
    }

    CanonicalForm run() {
        std::vector<std::uint32_t> colour(n_);
        for (std::uint32_t v = 0; v < n_; ++v) colour[v] = marked_[v] ? 1 : 0;
        refine(colour);
        search(colour);
        CanonicalForm out;
        out.code = best_;
        for (std::uint32_t v : best_order_) out.order.push_back(ids_[v]);
        return out;
    }

private:
    // Splits colour classes until every vertex in a class sees the same
    // multiset of neighbouring colour patterns. Colours are ranks of
    // label-independent signatures, so the result is canonical.
    void refine(std::vector<std::uint32_t>& colour) const {
        std::size_t classes = count(colour);
        while (true) {
            std::vector<std::vector<std::uint32_t>> sig(n_);
            for (std::uint32_t v = 0; v < n_; ++v) {
                std::vector<std::uint32_t> patterns;
                for (std::uint32_t ei : incident_[v]) {
                    std::vector<std::uint32_t> others;
                    for (std::uint32_t w : edges_[ei])
                        if (w != v) others.push_back(colour[w]);
                    std::sort(others.begin(), others.end());
                    std::uint32_t p = static_cast<std::uint32_t>(others.size());
                    for (std::uint32_t c : others) p = p * 1000003u + c + 1;
                    patterns.push_back(p);
                }
                std::sort(patterns.begin(), patterns.end());
                sig[v].push_back(colour[v]);
                sig[v].insert(sig[v].end(), patterns.begin(), patterns.end());
            }
            std::vector<std::vector<std::uint32_t>> distinct = sig;
            std::sort(distinct.begin(), distinct.end());
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            for (std::uint32_t v = 0; v < n_; ++v)
                colour[v] = static_cast<std::uint32_t>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
            std::size_t now = distinct.size();
            if (now == classes) return;
            classes = now;
        }
    }

    static std::size_t count(const std::vector<std::uint32_t>& colour) {
        std::vector<std::uint32_t> c = colour;
        std::sort(c.begin(), c.end());
        return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
    }

    void search(const std::vector<std::uint32_t>& colour) {
        // First non-singleton class of smallest colour.
        std::vector<std::uint32_t> size(n_, 0);
        for (std::uint32_t c : colour) ++size[c];
        std::uint32_t target = static_cast<std::uint32_t>(n_);
        for (std::uint32_t c = 0; c < n_; ++c)
            if (size[c] > 1) {
                target = c;
                break;
            }
        if (target == n_) {
            leaf(colour);
            return;
        }
        // Isolated vertices of one class are interchangeable: one branch suffices.
        bool isolated = true;
        for (std::uint32_t v = 0; v < n_; ++v)
            if (colour[v] == target && !incident_[v].empty()) isolated = false;
        for (std::uint32_t v = 0; v < n_; ++v) {
            if (colour[v] != target) continue;
            std::vector<std::uint32_t> next(n_);
            for (std::uint32_t w = 0; w < n_; ++w) next[w] = colour[w] * 2 + (colour[w] > target ? 1 : 0);
            next[v] = target * 2;
            for (std::uint32_t w = 0; w < n_; ++w)
                if (w != v && colour[w] == target) next[w] = target * 2 + 1;
            refine(next);
            search(next);
            if (isolated) break;
        }
    }

    void leaf(const std::vector<std::uint32_t>& colour) {
        // colour is a bijection onto 0..n-1
        std::vector<std::uint32_t> code;
        code.push_back(static_cast<std::uint32_t>(n_));
        std::vector<std::uint32_t> marks;
        for (std::uint32_t v = 0; v < n_; ++v)
            if (marked_[v]) marks.push_back(colour[v]);
        std::sort(marks.begin(), marks.end());
        code.push_back(static_cast<std::uint32_t>(marks.size()));
        code.insert(code.end(), marks.begin(), marks.end());
        std::vector<std::vector<std::uint32_t>> es;
        for (const auto& e : edges_) {
            std::vector<std::uint32_t> le;
            for (std::uint32_t v : e) le.push_back(colour[v]);
            std::sort(le.begin(), le.end());
            es.push_back(le);
        }
        std::sort(es.begin(), es.end());
        code.push_back(static_cast<std::uint32_t>(es.size()));
        for (const auto& e : es) {
            code.push_back(static_cast<std::uint32_t>(e.size()));
            code.insert(code.end(), e.begin(), e.end());
        }
        if (best_.empty() || code < best_) {
            best_ = code;
            best_order_.assign(n_, 0);
            for (std::uint32_t v = 0; v < n_; ++v) best_order_[colour[v]] = v;
        }
    }

    std::vector<VertexId> ids_;
    std::size_t n_ = 0;
    std::vector<std::vector<std::uint32_t>> edges_;
    std::vector<std::vector<std::uint32_t>> incident_;
    std::vector<bool> marked_;
    std::vector<std::uint32_t> best_;
    std::vector<std::uint32_t> best_order_;
};

}  // namespace detail

inline CanonicalForm canonical_form(const MarkedHypergraph& h) { return detail::Canonizer(h).run(); }

// The board relabelled onto 0..n-1 in canonical order.
inline MarkedHypergraph canonical_board(const MarkedHypergraph& h) {
    CanonicalForm f = canonical_form(h);
    std::vector<VertexId> label(h.vertices().back() + 1, 0);
    for (std::uint32_t i = 0; i < f.order.size(); ++i) label[f.order[i]] = i;
    std::vector<Edge> edges;
    for (const Edge& e : h.edges()) {
        std::vector<VertexId> ids;
        for (VertexId v : e) ids.push_back(label[v]);
        edges.emplace_back(std::span<const VertexId>(ids));
    }
    VertexSet marked;
    for (VertexId m : h.marked()) marked.insert(label[m]);
    return MarkedHypergraph::on(static_cast<VertexId>(f.order.size()), std::move(edges), marked);
}

}  // namespace mb
