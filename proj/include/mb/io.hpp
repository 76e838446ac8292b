#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "solver.hpp"
#include "structures.hpp"

namespace mb {

using json = nlohmann::json;

// A board together with the user's vertex names. Vertex i is names[i].
struct BoardDocument {
    MarkedHypergraph board = MarkedHypergraph::on(1, {});
    std::vector<std::string> names;
    std::optional<std::string> label;
    std::optional<std::uint64_t> seed;

    [[nodiscard]] const std::string& name(VertexId v) const {
        if (v >= names.size()) throw domain_error("unknown vertex id " + std::to_string(v));
        return names[v];
    }
    [[nodiscard]] std::optional<VertexId> id(const std::string& n) const {
        for (VertexId v = 0; v < names.size(); ++v)
            if (names[v] == n) return v;
        return std::nullopt;
    }
};

struct ParseOptions {
    bool uniform = false;  // pad edges below size three with fresh marked vertices
};

namespace detail {

inline std::string name_of(const json& j, const std::string& where) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer() && j.get<long long>() >= 0) return std::to_string(j.get<long long>());
    throw parse_error(where, "vertex names must be strings or non-negative integers");
}

struct Builder {
    std::vector<std::string> names;
    std::map<std::string, VertexId> ids;
    std::vector<std::vector<VertexId>> edges;
    VertexSet marked;

    void vertex(const std::string& n, const std::string& where) {
        if (ids.count(n)) throw parse_error(where, "duplicate vertex \"" + n + "\"");
        if (names.size() >= kMaxVertices) throw parse_error(where, "more than " + std::to_string(kMaxVertices) + " vertices", true);
        ids[n] = static_cast<VertexId>(names.size());
        names.push_back(n);
    }
    VertexId lookup(const std::string& n, const std::string& where) const {
        auto it = ids.find(n);
        if (it == ids.end()) throw parse_error(where, "unknown vertex \"" + n + "\"");
        return it->second;
    }
    void edge(std::vector<VertexId> e, const std::string& where) {
        if (e.empty()) throw parse_error(where, "empty edge");
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        if (e.size() > 3) throw parse_error(where, "rank exceeds 3", true);
        edges.push_back(std::move(e));
    }

    BoardDocument finish(const ParseOptions& opt) {
        if (names.empty()) throw parse_error("vertices", "board has no vertices");
        std::vector<Edge> es;
        for (const auto& e : edges) es.emplace_back(std::span<const VertexId>(e));
        BoardDocument doc;
        doc.board = MarkedHypergraph::on(static_cast<VertexId>(names.size()), std::move(es), marked);
        doc.names = names;
        if (opt.uniform) {
            NormalizedBoard n = [&] {
                try {
                    return normalize_rank3(doc.board);
                } catch (const unsupported_board& e) {
                    throw parse_error("edges", e.what(), true);
                }
            }();
            int k = 0;
            for (VertexId p : n.padding) {
                (void)p;
                std::string pad;
                do pad = "~" + std::to_string(k++);
                while (ids.count(pad));
                doc.names.push_back(pad);
            }
            doc.board = n.board;
        }
        return doc;
    }
};

}  // namespace detail

inline BoardDocument board_from_json(const json& j, ParseOptions opt = {}) {
    if (!j.is_object()) throw parse_error("$", "board document must be a JSON object");
    for (const char* key : {"vertices", "edges"})
        if (!j.contains(key)) throw parse_error(key, "missing field");
    detail::Builder b;
    if (!j["vertices"].is_array()) throw parse_error("vertices", "must be an array");
    for (std::size_t i = 0; i < j["vertices"].size(); ++i) {
        std::string where = "vertices[" + std::to_string(i) + "]";
        b.vertex(detail::name_of(j["vertices"][i], where), where);
    }
    if (!j["edges"].is_array()) throw parse_error("edges", "must be an array");
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
        std::string where = "edges[" + std::to_string(i) + "]";
        const json& e = j["edges"][i];
        if (!e.is_array()) throw parse_error(where, "an edge must be an array of vertex names");
        std::vector<VertexId> ids;
        for (std::size_t k = 0; k < e.size(); ++k) ids.push_back(b.lookup(detail::name_of(e[k], where), where));
        b.edge(std::move(ids), where);
    }
    if (j.contains("marked")) {
        if (!j["marked"].is_array()) throw parse_error("marked", "must be an array");
        for (std::size_t i = 0; i < j["marked"].size(); ++i) {
            std::string where = "marked[" + std::to_string(i) + "]";
            b.marked.insert(b.lookup(detail::name_of(j["marked"][i], where), where));
        }
    }
    BoardDocument doc = b.finish(opt);
    if (j.contains("label")) {
        if (!j["label"].is_string()) throw parse_error("label", "must be a string");
        doc.label = j["label"].get<std::string>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
            throw parse_error("seed", "must be a non-negative integer");
        doc.seed = j["seed"].get<std::uint64_t>();
    }
    return doc;
}

// Line format, one declaration per line:
//   v a b c     declare vertices
//   e a b c     an edge (1 to 3 names)
//   m a         mark vertices
// '#' starts a comment. Vertices named in e/m lines are declared implicitly.
inline BoardDocument board_from_lines(const std::string& text, ParseOptions opt = {}) {
    detail::Builder b;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        std::string where = "line " + std::to_string(no);
        std::vector<std::string> args;
        for (std::string w; ls >> w;) args.push_back(w);
        auto ensure = [&](const std::string& n) {
            if (!b.ids.count(n)) b.vertex(n, where);
            return b.ids[n];
        };
        if (tag == "v") {
            for (const auto& n : args) ensure(n);
        } else if (tag == "e") {
            std::vector<VertexId> ids;
            for (const auto& n : args) ids.push_back(ensure(n));
            b.edge(std::move(ids), where);
        } else if (tag == "m") {
            for (const auto& n : args) b.marked.insert(ensure(n));
        } else {
            throw parse_error(where, "unknown declaration \"" + tag + "\"");
        }
    }
    return b.finish(opt);
}

// JSON when the text starts with '{', line format otherwise.
inline BoardDocument parse_board(const std::string& text, ParseOptions opt = {}) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw parse_error("byte " + std::to_string(e.byte), "malformed JSON");
        }
        return board_from_json(j, opt);
    }
    return board_from_lines(text, opt);
}

// Names listed in id order, edges in sorted order; stable under re-parsing.
inline json board_to_json(const BoardDocument& doc) {
    json j;
    j["vertices"] = json::array();
    for (VertexId v : doc.board.vertices()) j["vertices"].push_back(doc.name(v));
    j["edges"] = json::array();
    for (const Edge& e : doc.board.edges()) {
        json je = json::array();
        for (VertexId v : e) je.push_back(doc.name(v));
        j["edges"].push_back(je);
    }
    j["marked"] = json::array();
    for (VertexId v : doc.board.marked()) j["marked"].push_back(doc.name(v));
    if (doc.label) j["label"] = *doc.label;
    if (doc.seed) j["seed"] = *doc.seed;
    return j;
}

inline std::string serialize(const BoardDocument& doc) { return board_to_json(doc).dump(); }

// Document for a board with integer names.
inline BoardDocument document_of(const MarkedHypergraph& h) {
    BoardDocument doc;
    doc.board = h;
    for (VertexId v = 0; v <= h.vertices().back(); ++v) doc.names.push_back(std::to_string(v));
    return doc;
}

// Same names, different board (a later position of the same game).
inline BoardDocument with_board(const BoardDocument& doc, MarkedHypergraph h) {
    BoardDocument out = doc;
    out.board = std::move(h);
    return out;
}

inline json names_json(const BoardDocument& doc, const VertexSet& s) {
    json a = json::array();
    for (VertexId v : s) a.push_back(doc.name(v));
    return a;
}

inline json moves_json(const BoardDocument& doc, const std::vector<Move>& moves) {
    json a = json::array();
    for (const Move& m : moves) a.push_back({{"player", to_string(m.player)}, {"vertex", doc.name(m.vertex)}});
    return a;
}

inline json verdict_to_json(const Verdict& v, const BoardDocument& doc) {
    json j;
    j["winner"] = to_string(v.winner);
    j["best_move"] = v.best_move ? json(doc.name(*v.best_move)) : json(nullptr);
    j["tau_upper"] = v.tau_upper ? json(*v.tau_upper) : json(nullptr);
    j["tau_exact"] = v.tau_exact ? json(*v.tau_exact) : json(nullptr);
    j["certificate"] = to_string(v.certificate);
    j["line"] = moves_json(doc, v.line);
    return j;
}

// Stable id: kind plus the names of the witness vertices in id order.
inline std::string threat_id(const ThreatWitness& t, const BoardDocument& doc) {
    std::string id = to_string(t.kind);
    for (VertexId v : t.vertex_set()) id += ":" + doc.name(v);
    return id;
}

inline json threat_to_json(const ThreatWitness& t, const BoardDocument& doc) {
    json j;
    j["id"] = threat_id(t, doc);
    j["kind"] = to_string(t.kind);
    j["vertices"] = names_json(doc, t.vertex_set());
    j["edges"] = json::array();
    for (const Edge& e : t.edges()) {
        json je = json::array();
        for (VertexId v : e) je.push_back(doc.name(v));
        j["edges"].push_back(je);
    }
    return j;
}

inline json threats_to_json(const std::vector<ThreatWitness>& ts, const BoardDocument& doc) {
    json a = json::array();
    for (const auto& t : ts) a.push_back(threat_to_json(t, doc));
    return a;
}

inline json oracle_to_json(const OracleResult& r, const BoardDocument& doc) {
    json j;
    j["winner"] = to_string(r.winner);
    j["tau"] = r.tau ? json(*r.tau) : json(nullptr);
    j["principal_line"] = moves_json(doc, r.principal_line);
    return j;
}

}  // namespace mb
