#include <gtest/gtest.h>

#include <random>
#include <set>

#include "mb/canonical.hpp"
#include "mb/generate.hpp"
#include "mb/hypergraph.hpp"
#include "mb/sequence.hpp"
#include "oracles.hpp"

using namespace mb;

TEST(VertexSet, BasicOperations) {
    VertexSet s{1, 5, 200};
    EXPECT_EQ(s.size(), 3);
    EXPECT_TRUE(s.contains(200));
    EXPECT_FALSE(s.contains(2));
    EXPECT_EQ(s.front(), 1u);
    EXPECT_EQ(s.back(), 200u);
    s.erase(5);
    EXPECT_EQ(s.to_vector(), (std::vector<VertexId>{1, 200}));
    EXPECT_TRUE(VertexSet{}.empty());
    EXPECT_EQ((VertexSet{1, 2} | VertexSet{2, 3}), (VertexSet{1, 2, 3}));
    EXPECT_EQ((VertexSet{1, 2} & VertexSet{2, 3}), VertexSet{2});
    EXPECT_EQ((VertexSet{1, 2} - VertexSet{2, 3}), VertexSet{1});
    EXPECT_TRUE((VertexSet{1}).subset_of(VertexSet{1, 2}));
    EXPECT_EQ(VertexSet::range(70).size(), 70);
}

TEST(VertexSet, IterationCrossesWords) {
    VertexSet s{3, 63, 64, 127, 128, 255};
    std::vector<VertexId> seen(s.begin(), s.end());
    EXPECT_EQ(seen, (std::vector<VertexId>{3, 63, 64, 127, 128, 255}));
}

TEST(Edge, SortsAndDeduplicates) {
    Edge e{5, 1, 3};
    EXPECT_EQ(e.size(), 3u);
    EXPECT_EQ(e[0], 1u);
    EXPECT_EQ(e[2], 5u);
    EXPECT_EQ((Edge{2, 2, 1}).size(), 2u);
    EXPECT_THROW((Edge{1, 2, 3, 4}), unsupported_board);
    EXPECT_THROW(Edge(std::vector<VertexId>{}), domain_error);
    EXPECT_THROW((Edge{kMaxVertices}), unsupported_board);
}

TEST(Board, Invariants) {
    EXPECT_THROW(MarkedHypergraph({}, {}), domain_error);
    EXPECT_THROW(MarkedHypergraph(VertexSet{0, 1}, {Edge{0, 1, 2}}), domain_error);
    EXPECT_THROW(MarkedHypergraph(VertexSet{0, 1}, {}, VertexSet{4}), domain_error);
    MarkedHypergraph h(VertexSet{0, 1, 2}, {Edge{0, 1, 2}, Edge{2, 1, 0}});
    EXPECT_EQ(h.edges().size(), 1u);
    EXPECT_THROW(MarkedHypergraph::on(kMaxVertices + 1, {}), unsupported_board);
    EXPECT_EQ(MarkedHypergraph::on(kMaxVertices, {}).vertices().size(), static_cast<int>(kMaxVertices));
}

TEST(Board, MarkAndRemove) {
    MarkedHypergraph h = MarkedHypergraph::on(5, {Edge{0, 1, 2}, Edge{2, 3, 4}});
    MarkedHypergraph m = mark(h, 2);
    EXPECT_EQ(m.marked(), VertexSet{2});
    EXPECT_EQ(m.edges(), h.edges());
    MarkedHypergraph r = remove(m, 3);
    EXPECT_EQ(r.vertices(), (VertexSet{0, 1, 2, 4}));
    EXPECT_EQ(r.edges(), (std::vector<Edge>{Edge{0, 1, 2}}));
    MarkedHypergraph r2 = remove(m, 2);
    EXPECT_TRUE(r2.marked().empty());
    EXPECT_TRUE(r2.edges().empty());
    EXPECT_THROW(mark(h, 9), domain_error);
    EXPECT_THROW(remove(MarkedHypergraph::on(1, {}), 0), domain_error);
}

TEST(Board, NormalizePadsWithFreshMarkedVertices) {
    MarkedHypergraph g = MarkedHypergraph::on(3, {Edge{0, 1}, Edge{2}, Edge{0, 1, 2}});
    NormalizedBoard n = normalize_rank3(g);
    EXPECT_TRUE(n.board.is_uniform(3));
    EXPECT_EQ(n.padding.size(), 3);
    EXPECT_TRUE(n.padding.subset_of(n.board.marked()));
    EXPECT_EQ(n.board.vertices().size(), 6);
    for (VertexId p : n.padding) EXPECT_EQ(n.board.degree(p), 1);
    EXPECT_EQ(n.provenance.size(), 3u);
    MarkedHypergraph u = MarkedHypergraph::on(4, {Edge{0, 1, 2}}, VertexSet{3});
    EXPECT_EQ(normalize_rank3(u).board, u);
}

TEST(Board, StripMarked) {
    MarkedHypergraph h = MarkedHypergraph::on(4, {Edge{0, 1, 2}, Edge{1, 2, 3}}, VertexSet{0});
    MarkedHypergraph s = strip_marked(h);
    EXPECT_EQ(s.vertices(), (VertexSet{1, 2, 3}));
    EXPECT_EQ(s.edges(), (std::vector<Edge>{Edge{1, 2}, Edge{1, 2, 3}}));
    EXPECT_THROW(strip_marked(MarkedHypergraph::on(3, {Edge{0, 1, 2}}, VertexSet{0, 1, 2})), domain_error);
}

TEST(Subhypergraph, UnionIntersectionRemovable) {
    MarkedHypergraph h = MarkedHypergraph::on(6, {Edge{0, 1, 2}, Edge{2, 3, 4}, Edge{0, 4, 5}}, VertexSet{0});
    std::vector<SubhypergraphRef> refs = {SubhypergraphRef::of_edges({Edge{0, 1, 2}}), SubhypergraphRef::of_edges({Edge{2, 3, 4}})};
    EXPECT_TRUE(refs[0].is_sub_of(h));
    EXPECT_FALSE(SubhypergraphRef::of_edges({Edge{1, 3, 5}}).is_sub_of(h));
    EXPECT_EQ(union_of(refs).edges.size(), 2u);
    EXPECT_EQ(intersection(refs, h), VertexSet{2});
    EXPECT_EQ(intersection({}, h), h.unmarked());
    EXPECT_EQ(refs[0].marked_in(h), VertexSet{0});
    // only 2 is in both, so dropping the ref through y (y != 2) leaves a common vertex
    std::vector<SubhypergraphRef> none;
    EXPECT_THROW(union_of(none), domain_error);
    VertexSet rem = removable_vertices(refs, h);
    std::vector<VertexSet> sets = {refs[0].vertices, refs[1].vertices};
    EXPECT_EQ(rem, oracle::removable_by_obstructions(sets, h));
}

TEST(Sequence, PathAndCyclePredicatesMatchDefinitions) {
    // Every short sequence over a small edge pool, against the brute-force predicates.
    MarkedHypergraph h = MarkedHypergraph::on(7, {Edge{0, 1, 2}, Edge{2, 3, 4}, Edge{4, 5, 0}, Edge{1, 3, 5}, Edge{0, 2, 6}, Edge{2, 4, 6}});
    long checked = 0;
    oracle::each_sequence(h.edges(), 4, [&](const oracle::Seq& s) {
        for (VertexId a : h.vertices()) {
            EXPECT_EQ(is_cycle_sequence(a, s), oracle::is_cycle(a, s));
            for (VertexId b : h.vertices()) EXPECT_EQ(is_path_sequence(a, s, b), oracle::is_path(a, s, b));
            ++checked;
        }
        return true;
    });
    EXPECT_GT(checked, 1000);
    EXPECT_TRUE(is_path_sequence(3, {}, 3));
    EXPECT_FALSE(is_path_sequence(3, {}, 4));
}

TEST(Sequence, WitnessAccessors) {
    PathWitness p{0, 4, {Edge{0, 1, 2}, Edge{2, 3, 4}}};
    ASSERT_TRUE(p.valid());
    EXPECT_EQ(p.spine(), (std::vector<VertexId>{0, 2, 4}));
    EXPECT_EQ(p.middles(), (std::vector<VertexId>{1, 3}));
    EXPECT_EQ(p.first_outer(), 1u);
    EXPECT_TRUE(p.reversed().valid());
    EXPECT_EQ(p.reversed().a, 4u);
    CycleWitness c{0, {Edge{0, 1, 2}, Edge{2, 3, 4}, Edge{4, 5, 0}}};
    EXPECT_TRUE(c.valid());
    EXPECT_EQ(c.inner(), (VertexSet{0, 2, 4}));
    EXPECT_EQ(c.outer(), (VertexSet{1, 3, 5}));
    TadpoleWitness t{PathWitness{6, 0, {Edge{6, 7, 0}}}, c};
    EXPECT_TRUE(t.valid());
    EXPECT_TRUE(oracle::is_tadpole(6, t.edges()));
}

TEST(Sequence, RecognizersRoundTrip) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        VertexId next = 1;
        auto p = oracle::random_path(rng, 0, 1 + i % 5, {}, next, 0.0);
        ASSERT_TRUE(p);
        VertexId b = oracle::path_end(0, *p);
        std::vector<Edge> shuffled = *p;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto r = recognize_path(shuffled, 0, b);
        ASSERT_TRUE(r);
        EXPECT_EQ(r->edges, *p);
    }
    CycleWitness c{0, {Edge{0, 1, 2}, Edge{2, 3, 4}, Edge{4, 5, 0}}};
    auto rc = recognize_cycle({Edge{4, 5, 0}, Edge{0, 1, 2}, Edge{2, 3, 4}}, 0);
    ASSERT_TRUE(rc);
    EXPECT_TRUE(rc->valid());
    auto rt = recognize_tadpole({Edge{4, 5, 0}, Edge{6, 7, 0}, Edge{0, 1, 2}, Edge{2, 3, 4}}, 6);
    ASSERT_TRUE(rt);
    EXPECT_TRUE(oracle::is_tadpole(6, rt->edges()));
    EXPECT_FALSE(recognize_path({Edge{0, 1, 2}, Edge{1, 2, 3}}, 0, 3));
}

TEST(Canonical, InvariantUnderRelabeling) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        RandomSpec spec;
        spec.min_vertices = 6;
        spec.max_vertices = 10;
        spec.allow_trivial = true;
        MarkedHypergraph h = random_board(rng, spec);
        std::vector<VertexId> perm(h.vertices().size());
        for (VertexId v = 0; v < perm.size(); ++v) perm[v] = v;
        std::shuffle(perm.begin(), perm.end(), rng);
        MarkedHypergraph g = relabel(h, perm);
        EXPECT_EQ(canonical_form(h), canonical_form(g));
        EXPECT_EQ(canonical_board(h), canonical_board(g));
    }
}

TEST(Canonical, SeparatesNonIsomorphicBoards) {
    MarkedHypergraph a = MarkedHypergraph::on(5, {Edge{0, 1, 2}, Edge{2, 3, 4}}, VertexSet{0});
    MarkedHypergraph b = MarkedHypergraph::on(5, {Edge{0, 1, 2}, Edge{2, 3, 4}}, VertexSet{2});
    MarkedHypergraph c = MarkedHypergraph::on(5, {Edge{0, 1, 2}, Edge{1, 2, 3}}, VertexSet{0});
    EXPECT_FALSE(canonical_form(a) == canonical_form(b));
    EXPECT_FALSE(canonical_form(a) == canonical_form(c));
    EXPECT_EQ(canonical_form(a), canonical_form(MarkedHypergraph::on(5, {Edge{4, 3, 2}, Edge{2, 1, 0}}, VertexSet{4})));
}

TEST(Corpus, CountsAndShape) {
    // Mark classes per edge shape, counted by hand over the shape's symmetries:
    // one edge 4; two edges sharing two vertices 9, sharing one 12, disjoint 10.
    auto count = [](CorpusSpec spec) {
        std::size_t n = 0;
        for_each_corpus_board(spec, [&](const MarkedHypergraph& h) {
            EXPECT_TRUE(h.is_uniform(3));
            EXPECT_LE(h.vertices().size(), spec.max_vertices);
            for (VertexId m : h.marked()) EXPECT_GT(h.degree(m), 0);
            ++n;
            return true;
        });
        return n;
    };
    EXPECT_EQ(count({1, 9, false}), 4u);
    EXPECT_EQ(count({2, 9, false}), 4u + 9 + 12 + 10);
    // spare isolated vertices up to nine: 4*7 + 9*6 + 12*5 + 10*4
    EXPECT_EQ(count({2, 9, true}), 182u);
}

TEST(Corpus, NoTwoBoardsIsomorphic) {
    std::set<std::vector<std::uint32_t>> codes;
    std::size_t n = 0;
    for_each_corpus_board({3, 7, false}, [&](const MarkedHypergraph& h) {
        codes.insert(canonical_form(h).code);
        ++n;
        return true;
    });
    EXPECT_EQ(codes.size(), n);
}
