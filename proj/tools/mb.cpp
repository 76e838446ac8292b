// Command-line front end: decide, move, tau, threats, play, serve, gen, oracle.
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "mb/engine.hpp"
#include "mb/generate.hpp"
#include "mb/service.hpp"

namespace {

using namespace mb;

struct Common {
    std::string file;
    std::string format = "json";
    bool uniform = false;
    int guard = 14;
};

std::string slurp(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path);
    if (!in) throw domain_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

BoardDocument load(const Common& c) { return parse_board(slurp(c.file), {c.uniform}); }

std::string moves_text(const BoardDocument& doc, const std::vector<Move>& line) {
    std::string s;
    for (const Move& m : line) {
        if (!s.empty()) s += ' ';
        s += (m.player == Player::maker ? "+" : "-") + doc.name(m.vertex);
    }
    return s.empty() ? "-" : s;
}

void print_verdict(const json& v, const std::string& format) {
    if (format == "json") {
        std::cout << v.dump() << "\n";
        return;
    }
    std::cout << "winner: " << v["winner"].get<std::string>() << "\n";
    if (!v["best_move"].is_null()) std::cout << "best move: " << v["best_move"].get<std::string>() << "\n";
    if (!v["tau_exact"].is_null()) std::cout << "tau: " << v["tau_exact"] << "\n";
    if (!v["tau_upper"].is_null()) std::cout << "tau upper bound: " << v["tau_upper"] << "\n";
    std::cout << "certificate: " << v["certificate"].get<std::string>() << "\n";
    if (!v["line"].empty()) {
        std::cout << "line:";
        for (const auto& m : v["line"]) std::cout << ' ' << (m["player"] == "maker" ? "+" : "-") << m["vertex"].get<std::string>();
        std::cout << "\n";
    }
}

void print_threats(const json& ts, const std::string& format, std::ostream& out = std::cout) {
    if (format == "json") {
        out << ts.dump() << "\n";
        return;
    }
    if (ts.empty()) out << "no threats\n";
    for (const auto& t : ts) {
        out << t["kind"].get<std::string>() << ":";
        for (const auto& e : t["edges"]) {
            out << " {";
            for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << e[i].get<std::string>();
            out << "}";
        }
        out << "\n";
    }
}

std::vector<std::string> split_moves(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',' || ch == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int play_loop(const BoardDocument& doc, const std::string& human_side) {
    Game g(doc);
    Player human = human_side == "breaker" ? Player::breaker : Player::maker;
    std::cout << "you play " << to_string(human) << "; enter a vertex name, 'threats', or 'quit'\n";
    while (!g.position().outcome()) {
        print_threats(threats_to_json(g.threats(), g.document()), "text");
        if (g.position().to_move == human) {
            std::cout << to_string(human) << "> " << std::flush;
            std::string in;
            if (!(std::cin >> in) || in == "quit") return 0;
            if (in == "threats") continue;
            try {
                g.apply(in);
            } catch (const domain_error& e) {
                std::cout << "illegal: " << e.what() << "\n";
            }
        } else {
            auto m = g.engine_move();
            if (!m) break;
            std::cout << "engine " << to_string(m->player) << " plays " << g.document().name(m->vertex) << " ("
                      << to_string(m->rationale) << ")\n";
        }
    }
    auto o = g.position().outcome();
    std::cout << "game over: " << (o ? to_string(*o) : "none") << " wins\n";
    std::cout << "transcript: " << moves_text(g.document(), g.position().history) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maker-Breaker engine for marked hypergraphs of rank 3"};
    app.require_subcommand(1);

    Common c;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", c.file, "board file (JSON or line format), - for stdin")->required();
        sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_flag("--uniform", c.uniform, "pad edges of size below three with fresh marked vertices");
    };

    auto* decide_cmd = app.add_subcommand("decide", "winner, best move and certificate");
    add_common(decide_cmd);

    std::string moves;
    auto* move_cmd = app.add_subcommand("move", "play the given moves, then print the engine's move");
    add_common(move_cmd);
    move_cmd->add_option("--moves", moves, "comma-separated vertex names, Maker first");

    auto* tau_cmd = app.add_subcommand("tau", "duration of the game");
    add_common(tau_cmd);
    tau_cmd->add_option("--guard", c.guard, "largest non-marked count for exact search");

    auto* threats_cmd = app.add_subcommand("threats", "fully marked edges, nunchakus and necklaces");
    add_common(threats_cmd);

    std::string side = "maker";
    auto* play_cmd = app.add_subcommand("play", "interactive game against the engine");
    add_common(play_cmd);
    play_cmd->add_option("--side", side, "the side you play")->check(CLI::IsMember({"maker", "breaker"}));

    int port = 8080;
    std::string host = "127.0.0.1";
    int ttl = 1800;
    auto* serve_cmd = app.add_subcommand("serve", "HTTP/JSON service");
    serve_cmd->add_option("--port", port, "listening port");
    serve_cmd->add_option("--host", host, "listening address");
    serve_cmd->add_option("--ttl", ttl, "session lifetime in seconds");
    serve_cmd->add_option("--guard", c.guard, "largest non-marked count for exact search");

    bool exhaustive = false, count_only = false;
    int max_edges = 5, max_vertices = 9, random_count = 0, forest_count = 0;
    std::uint64_t seed = 1;
    auto* gen_cmd = app.add_subcommand("gen", "stream generated boards, one JSON document per line");
    gen_cmd->add_flag("--exhaustive", exhaustive, "every board up to isomorphism");
    gen_cmd->add_option("--max-edges", max_edges, "exhaustive: edge bound");
    gen_cmd->add_option("--max-vertices", max_vertices, "exhaustive: vertex bound");
    gen_cmd->add_option("--random", random_count, "number of random 10-12 vertex boards");
    gen_cmd->add_option("--forest", forest_count, "number of random hyperforests");
    gen_cmd->add_option("--seed", seed, "random seed");
    gen_cmd->add_flag("--count", count_only, "print only the number of boards");

    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive minimax");
    add_common(oracle_cmd);
    oracle_cmd->add_option("--guard", c.guard, "largest non-marked count searched");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (decide_cmd->parsed()) {
            print_verdict(decide_document(load(c)), c.format);
        } else if (move_cmd->parsed()) {
            Game g(load(c));
            for (const auto& m : split_moves(moves)) g.apply(m);
            auto m = g.engine_move();
            json out = m ? g.engine_move_json(*m) : json{{"player", nullptr}, {"vertex", nullptr}, {"rationale", nullptr}};
            out["position"] = g.position_json();
            if (c.format == "json") std::cout << out.dump() << "\n";
            else if (m) std::cout << out["player"].get<std::string>() << " plays " << out["vertex"].get<std::string>() << " (" << out["rationale"].get<std::string>() << ")\n";
            else std::cout << "game over\n";
        } else if (tau_cmd->parsed()) {
            SolverOptions opt;
            opt.oracle_guard = c.guard;
            Game g(load(c), opt);
            json t = g.tau_json();
            if (c.format == "json") std::cout << t.dump() << "\n";
            else std::cout << "tau: " << (t["tau_exact"].is_null() ? "unknown" : t["tau_exact"].dump()) << " (upper bound "
                           << (t["tau_upper"].is_null() ? "none" : t["tau_upper"].dump()) << ")\n";
        } else if (threats_cmd->parsed()) {
            Game g(load(c));
            print_threats(threats_to_json(g.threats(), g.document()), c.format);
        } else if (play_cmd->parsed()) {
            return play_loop(load(c), side);
        } else if (serve_cmd->parsed()) {
            ServiceConfig cfg;
            cfg.ttl = std::chrono::seconds(ttl);
            cfg.solver.oracle_guard = c.guard;
            Service svc(cfg);
            httplib::Server server;
            svc.mount(server);
            std::cerr << "listening on " << host << ":" << port << "\n";
            if (!server.listen(host, port)) throw domain_error("cannot listen on " + host + ":" + std::to_string(port));
        } else if (gen_cmd->parsed()) {
            std::size_t n = 0;
            auto emit = [&](const MarkedHypergraph& h) {
                ++n;
                if (!count_only) std::cout << serialize(document_of(h)) << "\n";
                return true;
            };
            if (exhaustive) for_each_corpus_board({max_edges, max_vertices, true}, emit);
            std::mt19937_64 rng(seed);
            for (int i = 0; i < random_count; ++i) emit(random_board(rng));
            for (int i = 0; i < forest_count; ++i) emit(random_forest(rng));
            if (count_only) std::cout << n << "\n";
        } else if (oracle_cmd->parsed()) {
            BoardDocument doc = engine_document(load(c));
            OracleResult r = minimax(doc.board, {c.guard, true});
            json j = oracle_to_json(r, doc);
            if (c.format == "json") std::cout << j.dump() << "\n";
            else std::cout << "winner: " << j["winner"].get<std::string>() << "\ntau: " << (r.tau ? std::to_string(*r.tau) : "infinite")
                           << "\nline: " << moves_text(doc, r.principal_line) << "\n";
        }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
