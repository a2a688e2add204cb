#pragma once

// Shared scaffolding for the test binaries: fixture access, reference
// implementations used as oracles, random instance generators, and a
// label-preserving graph isomorphism check.

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ppv/expand.hpp"
#include "ppv/flatten.hpp"
#include "ppv/fsa.hpp"
#include "ppv/ops.hpp"
#include "ppv/protocol.hpp"
#include "ppv/smallstep.hpp"
#include "ppv/tape.hpp"

namespace ppvtest {

inline std::string data_path(const std::string& name) {
    return std::string(PPV_DATA_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline ppv::Tape tape_of(std::vector<ppv::Symbol> middle) {
    std::vector<ppv::Symbol> cells;
    cells.push_back(ppv::left_endmarker);
    for (auto& s : middle) cells.push_back(std::move(s));
    cells.push_back(ppv::right_endmarker);
    return ppv::make_tape(std::move(cells));
}

inline ppv::Tape char_tape(const std::string& s) {
    std::vector<ppv::Symbol> mid;
    for (char c : s) mid.emplace_back(1, c);
    return tape_of(std::move(mid));
}

// Reference erasability check: delete adjacent canceling pairs in every
// possible order. Exponential, so callers keep words short.
inline bool brute_erasable(const ppv::Word& w, const ppv::CancelTable& ct,
                           std::map<std::string, bool>& memo) {
    if (w.empty()) return true;
    if (w.size() % 2 != 0) return false;
    std::string key;
    key.reserve(w.size());
    for (ppv::Op o : w) key.push_back((char)('A' + (int)o));
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ok = false;
    for (size_t i = 0; i + 1 < w.size() && !ok; ++i) {
        if (!ct.cancels(w[i], w[i + 1])) continue;
        ppv::Word rest(w.begin(), w.begin() + (long)i);
        rest.insert(rest.end(), w.begin() + (long)i + 2, w.end());
        ok = brute_erasable(rest, ct, memo);
    }
    memo.emplace(std::move(key), ok);
    return ok;
}

inline bool brute_erasable(const ppv::Word& w, const ppv::CancelTable& ct) {
    std::map<std::string, bool> memo;
    return brute_erasable(w, ct, memo);
}

inline bool bfs_reachable(int n, const std::vector<std::pair<int, int>>& edges, int from, int to) {
    std::vector<std::vector<int>> adj((size_t)n);
    for (auto [u, v] : edges) adj[(size_t)u].push_back(v);
    std::vector<char> seen((size_t)n, 0);
    std::deque<int> q{from};
    seen[(size_t)from] = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        if (u == to) return true;
        for (int v : adj[(size_t)u])
            if (!seen[(size_t)v]) {
                seen[(size_t)v] = 1;
                q.push_back(v);
            }
    }
    return false;
}

inline ppv::Tape digraph_tape(const std::vector<std::pair<int, int>>& edges) {
    std::vector<ppv::Symbol> mid;
    for (auto [u, v] : edges) {
        mid.push_back(std::to_string(u));
        mid.push_back(std::to_string(v));
    }
    return tape_of(std::move(mid));
}

// Exhaustive breadth-first run over whole configurations (control point, head
// positions, stack contents). Returns nothing when the budget runs out before
// the frontier is exhausted; only meaningful for programs whose reachable
// stack heights stay small.
inline std::optional<bool> full_search(const ppv::Program& p, const ppv::Tape& t,
                                       long long budget = 200000) {
    using namespace ppv;
    FlatProgram fp = flatten(expand_macros(p));
    struct State {
        int pp;
        std::vector<int> heads;
        std::vector<Symbol> stack;
    };
    auto key = [](const State& s) {
        std::string k = std::to_string(s.pp);
        for (int h : s.heads) {
            k.push_back('|');
            k += std::to_string(h);
        }
        for (const Symbol& sym : s.stack) {
            k.push_back('#');
            k += sym;
        }
        return k;
    };
    const int last = (int)t.size() - 1;
    std::set<std::string> seen;
    std::deque<State> q;
    State init{fp.entry, std::vector<int>((size_t)fp.head_count, 0), {}};
    seen.insert(key(init));
    q.push_back(std::move(init));
    auto enqueue = [&](State s) {
        if (seen.insert(key(s)).second) q.push_back(std::move(s));
    };
    long long used = 0;
    while (!q.empty()) {
        if (++used > budget) return std::nullopt;
        State s = std::move(q.front());
        q.pop_front();
        const Instr& ins = fp.code[(size_t)s.pp];
        switch (ins.op) {
        case Instr::Op::Accept: return true;
        case Instr::Op::Reject: break;
        case Instr::Op::Nop:
            s.pp = ins.next;
            enqueue(std::move(s));
            break;
        case Instr::Op::MoveLeft:
            if (s.heads[(size_t)ins.head] > 0) {
                s.heads[(size_t)ins.head]--;
                s.pp = ins.next;
                enqueue(std::move(s));
            }
            break;
        case Instr::Op::MoveRight:
            if (s.heads[(size_t)ins.head] < last) {
                s.heads[(size_t)ins.head]++;
                s.pp = ins.next;
                enqueue(std::move(s));
            }
            break;
        case Instr::Op::Branch:
            s.pp = detail::eval_bool_direct(ins.cond, s.stack, t, s.heads) ? ins.next : ins.alt;
            enqueue(std::move(s));
            break;
        case Instr::Op::Choice: {
            State other = s;
            s.pp = ins.next;
            other.pp = ins.alt;
            enqueue(std::move(s));
            enqueue(std::move(other));
            break;
        }
        case Instr::Op::Pop:
            if (!s.stack.empty()) {
                s.stack.pop_back();
                s.pp = ins.next;
                enqueue(std::move(s));
            }
            break;
        case Instr::Op::Push: {
            Symbol sym = detail::eval_sym_direct(ins.value, s.stack, t, s.heads);
            if (!is_reserved_symbol(sym)) {
                s.stack.push_back(std::move(sym));
                s.pp = ins.next;
                enqueue(std::move(s));
            }
            break;
        }
        }
    }
    return false;
}

inline ppv::Fsa random_fsa(std::mt19937& rng, int max_nodes = 8, int max_edges = 24) {
    int n = std::uniform_int_distribution<int>(2, max_nodes)(rng);
    ppv::Fsa f;
    for (int i = 0; i < n; ++i) f.add_node(std::to_string(i));
    int e = std::uniform_int_distribution<int>(0, max_edges)(rng);
    std::uniform_int_distribution<int> vd(0, n - 1);
    std::uniform_int_distribution<int> od(0, (int)ppv::all_ops().size() - 1);
    for (int i = 0; i < e; ++i)
        f.add_edge(std::to_string(vd(rng)), ppv::all_ops()[(size_t)od(rng)],
                   std::to_string(vd(rng)));
    return f;
}

inline std::pair<int, std::vector<std::pair<int, int>>> random_digraph(std::mt19937& rng,
                                                                       int max_nodes = 8,
                                                                       int max_edges = 16) {
    int n = std::uniform_int_distribution<int>(2, max_nodes)(rng);
    int e = std::uniform_int_distribution<int>(0, max_edges)(rng);
    std::uniform_int_distribution<int> vd(0, n - 1);
    std::set<std::pair<int, int>> es;
    for (int i = 0; i < e; ++i) es.insert({vd(rng), vd(rng)});
    return {n, {es.begin(), es.end()}};
}

inline ppv::Word random_word(std::mt19937& rng, int len, const std::vector<ppv::Op>& alphabet) {
    std::uniform_int_distribution<int> od(0, (int)alphabet.size() - 1);
    ppv::Word w;
    for (int i = 0; i < len; ++i) w.push_back(alphabet[(size_t)od(rng)]);
    return w;
}

// Label-preserving digraph isomorphism with both distinguished nodes pinned.
// Backtracking over nodes grouped by degree signature; fine at suite sizes.
inline bool iso_fixed_endpoints(const ppv::Fsa& a, const ppv::Fsa& b) {
    if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return false;
    using Sig = std::vector<std::tuple<int, int, bool>>;
    auto sig_of = [](const ppv::Fsa& g, const std::string& v) {
        Sig s;
        for (const auto& e : g.edges) {
            bool self = e.from == e.to;
            if (e.from == v) s.emplace_back((int)e.op, 0, self);
            if (e.to == v) s.emplace_back((int)e.op, 1, self);
        }
        std::sort(s.begin(), s.end());
        return s;
    };
    std::map<std::string, Sig> asig, bsig;
    for (const auto& v : a.nodes) asig[v] = sig_of(a, v);
    for (const auto& v : b.nodes) bsig[v] = sig_of(b, v);
    std::set<std::tuple<std::string, int, std::string>> bedges;
    for (const auto& e : b.edges) bedges.insert({e.from, (int)e.op, e.to});

    std::map<std::string, std::string> m{{a.source, b.source}, {a.target, b.target}};
    std::set<std::string> used{b.source, b.target};
    if (asig[a.source] != bsig[b.source] || asig[a.target] != bsig[b.target]) return false;
    std::vector<std::string> rest;
    for (const auto& v : a.nodes)
        if (v != a.source && v != a.target) rest.push_back(v);

    auto consistent = [&]() {
        for (const auto& e : a.edges) {
            auto fi = m.find(e.from), ti = m.find(e.to);
            if (fi == m.end() || ti == m.end()) continue;
            if (!bedges.count({fi->second, (int)e.op, ti->second})) return false;
        }
        return true;
    };
    std::function<bool(size_t)> place = [&](size_t i) -> bool {
        if (i == rest.size()) return consistent();
        for (const auto& cand : b.nodes) {
            if (used.count(cand) || bsig[cand] != asig[rest[i]]) continue;
            m[rest[i]] = cand;
            used.insert(cand);
            if (consistent() && place(i + 1)) return true;
            m.erase(rest[i]);
            used.erase(cand);
        }
        return false;
    };
    return consistent() && place(0);
}

// First fixture graph extended with a chain of m fresh nodes hanging off the
// target, each carrying the full set of injectable self-loops. Grows the tape
// by 36 cells per link without changing the verdict.
inline ppv::Fsa scaled_family(int m) {
    ppv::Fsa f = ppv::build_fsa(ppv::protocol1());
    std::string prev = "1";
    for (int i = 0; i < m; ++i) {
        std::string id = "c" + std::to_string(i);
        f.add_edge(prev, ppv::Op::EY, id);
        for (ppv::Op o : ppv::saboteur_ops()) f.add_edge(id, o, id);
        prev = id;
    }
    return f;
}

inline double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    double n = (double)pts.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace ppvtest
