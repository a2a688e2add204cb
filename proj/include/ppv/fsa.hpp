#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ppv/errors.hpp"
#include "ppv/ops.hpp"
#include "ppv/protocol.hpp"
#include "ppv/tape.hpp"

namespace ppv {

struct FsaEdge {
    std::string from;
    Op op;
    std::string to;

    bool operator==(const FsaEdge&) const = default;
};

// Operator-labeled directed graph; the security question is whether some
// source-to-target path spells a word that reduces to nothing.
struct Fsa {
    std::vector<std::string> nodes; // insertion order, duplicate-free
    std::vector<FsaEdge> edges;
    std::string source = "0";
    std::string target = "1";

    bool has_node(const std::string& id) const {
        return std::find(nodes.begin(), nodes.end(), id) != nodes.end();
    }

    void add_node(const std::string& id) {
        if (!has_node(id)) nodes.push_back(id);
    }

    void add_edge(const std::string& from, Op op, const std::string& to) {
        add_node(from);
        add_node(to);
        FsaEdge e{from, op, to};
        if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(std::move(e));
    }

    bool operator==(const Fsa&) const = default;
};

// Builds the graph of every operator sequence that can reach the text, with X
// initiating to Y. Source-to-target path: the initiator's word. On the
// target: self-loops for everything the saboteur can inject, plus, for each
// honest recipient B, a trie of the responses B would make to a message it
// believes came from A, for every possible perceived sender A. Each response
// leads back to the target. Shared response prefixes share trie nodes.
inline Fsa build_fsa(const Protocol& p) {
    Fsa f;
    f.add_node(f.source);
    f.add_node(f.target);
    int next_id = 2;
    auto fresh = [&] { return std::to_string(next_id++); };

    Word w1 = instantiate(p.alpha1, User::X, User::Y);
    std::string cur = f.source;
    for (size_t i = 0; i < w1.size(); ++i) {
        std::string nxt = i + 1 == w1.size() ? f.target : fresh();
        f.add_edge(cur, w1[i], nxt);
        cur = nxt;
    }

    for (Op o : saboteur_ops()) f.add_edge(f.target, o, f.target);

    for (User b : {User::X, User::Y}) {
        // trie children per node, kept apart from the self-loops above
        std::map<std::pair<std::string, Op>, std::string> child;
        for (User a : all_users()) {
            if (a == b) continue;
            Word w2 = instantiate(p.alpha2, a, b);
            std::string at = f.target;
            for (size_t i = 0; i + 1 < w2.size(); ++i) {
                auto key = std::pair{at, w2[i]};
                auto it = child.find(key);
                if (it == child.end()) {
                    it = child.emplace(key, fresh()).first;
                    f.add_edge(at, w2[i], it->second);
                }
                at = it->second;
            }
            f.add_edge(at, w2.back(), f.target);
        }
    }
    return f;
}

namespace detail {

inline bool valid_node_symbol(const std::string& id) {
    return !id.empty() && !is_reserved_symbol(id) && !op_from_token(id);
}

} // namespace detail

// Lays the edge list out as "> u1 o1 v1 ... un on vn <". The source node is
// written as "0" and the target as "1" so the checker program can refer to
// them; any other node spelled "0"/"1" would collide, as would node ids that
// look like operators or endmarkers.
inline Tape encode_tape(const Fsa& f) {
    auto render = [&](const std::string& id) -> std::string {
        if (id == f.source) return "0";
        if (id == f.target) return "1";
        if (id == "0" || id == "1" || !detail::valid_node_symbol(id)) throw TooManyNodes(id);
        return id;
    };
    Tape t;
    t.cells.push_back(left_endmarker);
    for (const FsaEdge& e : f.edges) {
        t.cells.push_back(render(e.from));
        t.cells.push_back(op_token(e.op));
        t.cells.push_back(render(e.to));
    }
    t.cells.push_back(right_endmarker);
    return t;
}

inline Fsa decode_tape(const Tape& t) {
    if (t.size() < 2 || t.cells.front() != left_endmarker || t.cells.back() != right_endmarker)
        throw MissingEndmarker("tape must start with > and end with <");
    if ((t.size() - 2) % 3 != 0)
        throw MalformedEdge("tape does not hold a whole number of 3-symbol edges");
    Fsa f;
    f.add_node(f.source);
    f.add_node(f.target);
    for (size_t i = 1; i + 3 < t.cells.size(); i += 3) {
        const std::string& u = t.cells[i];
        const std::string& o = t.cells[i + 1];
        const std::string& v = t.cells[i + 2];
        auto op = op_from_token(o);
        if (!op) throw UnknownOperator(o);
        if (!detail::valid_node_symbol(u)) throw MalformedEdge("bad node id '" + u + "'");
        if (!detail::valid_node_symbol(v)) throw MalformedEdge("bad node id '" + v + "'");
        f.add_edge(u, *op, v);
    }
    return f;
}

// Edge-list file: optional "source:" / "target:" headers (defaults 0 and 1),
// then one "u OP v" edge per line. '#' starts a comment line.
inline Fsa parse_fsa(std::string_view text) {
    Fsa f;
    std::vector<std::array<std::string, 3>> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string a, b, c, extra;
        if (!(ls >> a) || a[0] == '#') continue;
        if (a == "source:" || a == "target:") {
            if (!(ls >> b) || (ls >> extra))
                throw MalformedEdge("header '" + a + "' needs exactly one node id");
            (a == "source:" ? f.source : f.target) = b;
            continue;
        }
        if (!(ls >> b) || !(ls >> c) || (ls >> extra))
            throw MalformedEdge("edge line must read 'u OP v': " + line);
        lines.push_back({a, b, c});
    }
    f.add_node(f.source);
    f.add_node(f.target);
    for (auto& [u, o, v] : lines) {
        auto op = op_from_token(o);
        if (!op) throw UnknownOperator(o);
        if (!detail::valid_node_symbol(u)) throw MalformedEdge("bad node id '" + u + "'");
        if (!detail::valid_node_symbol(v)) throw MalformedEdge("bad node id '" + v + "'");
        f.add_edge(u, *op, v);
    }
    return f;
}

inline std::string format_fsa(const Fsa& f) {
    std::string out;
    if (f.source != "0") out += "source: " + f.source + "\n";
    if (f.target != "1") out += "target: " + f.target + "\n";
    for (const FsaEdge& e : f.edges)
        out += e.from + " " + op_token(e.op) + " " + e.to + "\n";
    return out;
}

} // namespace ppv
