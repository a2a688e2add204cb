#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ppv/fsa.hpp"
#include "ppv/ops.hpp"

namespace ppv {

// Node pairs (u, v) such that some u-to-v path spells a word erasable to
// nothing by the cancellation pairs.
struct CancelRelation {
    std::vector<std::string> nodes;
    std::vector<std::vector<bool>> rel; // rel[i][j], indexed like nodes

    int index_of(const std::string& id) const {
        for (size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i] == id) return (int)i;
        return -1;
    }

    bool contains(const std::string& u, const std::string& v) const {
        int i = index_of(u), j = index_of(v);
        if (i < 0 || j < 0) return u == v; // unknown node: only the empty path
        return rel[(size_t)i][(size_t)j];
    }

    std::vector<std::pair<std::string, std::string>> pairs() const {
        std::vector<std::pair<std::string, std::string>> out;
        for (size_t i = 0; i < nodes.size(); ++i)
            for (size_t j = 0; j < nodes.size(); ++j)
                if (rel[i][j]) out.emplace_back(nodes[i], nodes[j]);
        return out;
    }
};

// Least relation R with
//   (v, v) in R,
//   (u, w) in R whenever (u, v), (v, w) in R,
//   (u, v) in R whenever edges u -a-> u', v' -b-> v exist
//                with (u', v') in R and (a, b) a cancellation pair.
// Worklist fixpoint; every pair is enqueued at most once, and the transitive
// joins touch each (pair, node) combination O(1) times amortized.
inline CancelRelation dyck_closure(const Fsa& f, const CancelTable& ct) {
    CancelRelation r;
    r.nodes = f.nodes;
    auto ensure = [&](const std::string& id) {
        for (const std::string& n : r.nodes)
            if (n == id) return;
        r.nodes.push_back(id);
    };
    ensure(f.source);
    ensure(f.target);

    const size_t n = r.nodes.size();
    std::unordered_map<std::string, int> idx;
    for (size_t i = 0; i < n; ++i) idx.emplace(r.nodes[i], (int)i);

    std::vector<std::vector<std::pair<int, Op>>> in_edges(n);  // i <- (from, label)
    std::vector<std::vector<std::pair<Op, int>>> out_edges(n); // i -> (label, to)
    for (const FsaEdge& e : f.edges) {
        int u = idx.at(e.from), v = idx.at(e.to);
        in_edges[(size_t)v].emplace_back(u, e.op);
        out_edges[(size_t)u].emplace_back(e.op, v);
    }

    r.rel.assign(n, std::vector<bool>(n, false));
    std::vector<std::vector<int>> fwd(n), bwd(n); // fwd[i] = {j : rel[i][j]}
    std::deque<std::pair<int, int>> work;
    auto add = [&](int i, int j) {
        if (r.rel[(size_t)i][(size_t)j]) return;
        r.rel[(size_t)i][(size_t)j] = true;
        fwd[(size_t)i].push_back(j);
        bwd[(size_t)j].push_back(i);
        work.emplace_back(i, j);
    };

    for (size_t i = 0; i < n; ++i) add((int)i, (int)i);
    while (!work.empty()) {
        auto [x, y] = work.front();
        work.pop_front();
        for (auto [u, a] : in_edges[(size_t)x])
            for (auto [b, v] : out_edges[(size_t)y])
                if (ct.cancels(a, b)) add(u, v);
        // index loops: the lists may grow while we join against them
        auto& right = fwd[(size_t)y];
        for (size_t k = 0; k < right.size(); ++k) add(x, right[k]);
        auto& left = bwd[(size_t)x];
        for (size_t k = 0; k < left.size(); ++k) add(left[k], y);
    }
    return r;
}

inline bool is_insecure(const Fsa& f, const CancelTable& ct) {
    return dyck_closure(f, ct).contains(f.source, f.target);
}

// Shortest source-to-target path of length <= max_len whose word is erasable,
// or nothing if no such path exists within the bound. Runs a length-indexed
// variant of the closure rules, so it stays polynomial even on graphs whose
// plain path count explodes; erasable words always have even length, and any
// erasable word is either two shorter erasable words side by side or one
// wrapped in a canceling pair, which is exactly the table the DP fills.
inline std::optional<std::vector<FsaEdge>> bounded_path_search(const Fsa& f,
                                                               const CancelTable& ct,
                                                               int max_len) {
    std::vector<std::string> nodes = f.nodes;
    auto ensure = [&](const std::string& id) {
        for (const std::string& n : nodes)
            if (n == id) return;
        nodes.push_back(id);
    };
    ensure(f.source);
    ensure(f.target);
    const int n = (int)nodes.size();
    std::unordered_map<std::string, int> idx;
    for (int i = 0; i < n; ++i) idx.emplace(nodes[i], i);
    const int src = idx.at(f.source), dst = idx.at(f.target);
    if (src == dst) return std::vector<FsaEdge>{};

    std::vector<std::vector<std::pair<int, int>>> in_edges((size_t)n);  // v <- (edge, u)
    std::vector<std::vector<std::pair<int, int>>> out_edges((size_t)n); // u -> (edge, v)
    for (size_t e = 0; e < f.edges.size(); ++e) {
        int u = idx.at(f.edges[e].from), v = idx.at(f.edges[e].to);
        in_edges[(size_t)v].emplace_back((int)e, u);
        out_edges[(size_t)u].emplace_back((int)e, v);
    }

    struct How {
        enum class Kind { Base, Surround, Concat } kind = Kind::Base;
        int a = -1; // Surround: entering edge; Concat: left length
        int b = -1; // Surround: leaving edge; Concat: middle node
    };
    // runs[l/2] maps packed pair i*n+j to its first derivation
    std::vector<std::unordered_map<int64_t, How>> runs;
    std::vector<std::vector<std::vector<int>>> by_from; // [l/2][i] = {j}
    auto pack = [n](int i, int j) { return (int64_t)i * n + j; };

    runs.emplace_back();
    by_from.emplace_back((size_t)n);
    for (int i = 0; i < n; ++i) {
        runs[0].emplace(pack(i, i), How{});
        by_from[0][(size_t)i].push_back(i);
    }

    for (int half = 1; 2 * half <= max_len; ++half) {
        runs.emplace_back();
        by_from.emplace_back((size_t)n);
        auto& cur = runs[(size_t)half];
        auto add = [&](int i, int j, How h) {
            if (cur.emplace(pack(i, j), h).second) by_from[(size_t)half][(size_t)i].push_back(j);
        };
        for (const auto& [key, how] : runs[(size_t)half - 1]) {
            int i2 = (int)(key / n), j2 = (int)(key % n);
            for (auto [e_in, u] : in_edges[(size_t)i2])
                for (auto [e_out, v] : out_edges[(size_t)j2])
                    if (ct.cancels(f.edges[(size_t)e_in].op, f.edges[(size_t)e_out].op))
                        add(u, v, How{How::Kind::Surround, e_in, e_out});
        }
        for (int lh = 1; lh < half; ++lh) {
            for (const auto& [key, how] : runs[(size_t)lh]) {
                int i = (int)(key / n), k = (int)(key % n);
                for (int j : by_from[(size_t)(half - lh)][(size_t)k])
                    add(i, j, How{How::Kind::Concat, 2 * lh, k});
            }
        }
        if (cur.count(pack(src, dst))) {
            std::vector<FsaEdge> path;
            // recursive unfold of the recorded derivations
            auto unfold = [&](auto&& self, int h, int i, int j) -> void {
                const How& how = runs[(size_t)h].at(pack(i, j));
                switch (how.kind) {
                case How::Kind::Base: return;
                case How::Kind::Surround: {
                    const FsaEdge& ein = f.edges[(size_t)how.a];
                    const FsaEdge& eout = f.edges[(size_t)how.b];
                    path.push_back(ein);
                    self(self, h - 1, idx.at(ein.to), idx.at(eout.from));
                    path.push_back(eout);
                    return;
                }
                case How::Kind::Concat:
                    self(self, how.a / 2, i, how.b);
                    self(self, h - how.a / 2, how.b, j);
                    return;
                }
            };
            unfold(unfold, half, src, dst);
            return path;
        }
    }
    return std::nullopt;
}

inline Word path_word(const std::vector<FsaEdge>& path) {
    Word w;
    w.reserve(path.size());
    for (const FsaEdge& e : path) w.push_back(e.op);
    return w;
}

} // namespace ppv
