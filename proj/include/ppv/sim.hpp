#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ppv/ast.hpp"
#include "ppv/errors.hpp"
#include "ppv/expand.hpp"
#include "ppv/flatten.hpp"
#include "ppv/tape.hpp"

namespace ppv {

struct SimStats {
    long long configs = 0;   // distinct (point, heads, top) triples materialized
    long long steps = 0;     // worklist pop events
    long long summaries = 0; // (push context, pop result) summary edges

    bool operator==(const SimStats&) const = default;
};

struct WitnessStep {
    enum class Action { None, Push, Pop };

    int pp = 0;
    std::vector<int> heads;
    Action action = Action::None;
    Symbol pushed; // Push only

    bool operator==(const WitnessStep&) const = default;
};

struct Witness {
    std::vector<WitnessStep> steps;  // one entry per executed command, ending at accept
    std::vector<int> choice_script;  // branch picked at each choice, in execution order
};

struct Verdict {
    bool accepted = false;
    SimStats stats;
    std::optional<Witness> witness;
};

inline SimStats collect_stats(const Verdict& v) { return v.stats; }

namespace detail {

// Exhaustive exploration of a two-way nondeterministic pushdown program over
// a fixed tape, in time polynomial in the tape length.
//
// Runs are decomposed at stack operations. A segment starts right after a
// push, with the pushed symbol as the visible top of the stack; everything
// below is frozen until a pop removes that symbol and returns control to the
// pushing segment. Per segment the engine closes a set of reachable
// (point, heads) pairs under the within-level moves; pops are memoized as
// summary edges and replayed to every caller registered for the segment, so
// each (caller, summary) combination is propagated exactly once.
class Tabulator {
  public:
    Tabulator(const FlatProgram& fp, const Tape& tape, bool want_witness)
        : fp_(fp), n_((long long)tape.size()), want_witness_(want_witness) {
        intern(bottom_marker);
        intern(left_endmarker);
        intern(right_endmarker);
        tape_ids_.reserve(tape.cells.size());
        for (const Symbol& s : tape.cells) tape_ids_.push_back(intern(s));
        for (const Instr& ins : fp_.code) {
            intern_sym_expr(ins.value);
            intern_bool_expr(ins.cond);
        }
        long long span = (long long)fp_.code.size();
        for (int h = 0; h < fp_.head_count; ++h) {
            if (span > (1LL << 61) / n_) throw Error("state space too large to enumerate");
            span *= n_;
        }
        local_span_ = span;
        if (local_span_ > (1LL << 61) / (long long)(symbols_.size() + 1))
            throw Error("state space too large to enumerate");
    }

    Verdict run() {
        std::vector<int> zeros((size_t)fp_.head_count, 0);
        uint64_t start = encode(fp_.entry, zeros);
        int s0 = segment_for(start, kBottom);
        add_fact(s0, start, Deriv::init());
        while (!worklist_.empty()) {
            auto [seg, local] = worklist_.front();
            worklist_.pop_front();
            stats_.steps++;
            step(seg, local);
        }
        stats_.configs = (long long)configs_seen_.size();
        Verdict v;
        v.accepted = accepted_;
        v.stats = stats_;
        if (accepted_ && want_witness_) v.witness = reconstruct();
        return v;
    }

  private:
    static constexpr int kBottom = 0;
    static constexpr int kLeftEnd = 1;
    static constexpr int kRightEnd = 2;

    struct Caller {
        int seg;
        uint64_t push_local;
    };

    struct PopEntry {
        uint64_t after;    // (point, heads) right after the matching pop
        uint64_t pop_local; // the fact that performed the pop
    };

    struct Deriv {
        enum class Kind { Init, Step, PushEnter, Resume };
        Kind kind = Kind::Init;
        int parent_seg = -1;
        uint64_t parent_local = 0;
        int choice = -1;    // Step via a choice instruction
        int inner_seg = -1; // Resume: segment whose pop produced this fact
        uint64_t inner_pop = 0;

        static Deriv init() { return {}; }
        static Deriv step(int seg, uint64_t local, int choice = -1) {
            Deriv d;
            d.kind = Kind::Step;
            d.parent_seg = seg;
            d.parent_local = local;
            d.choice = choice;
            return d;
        }
        static Deriv push_enter(int seg, uint64_t local) {
            Deriv d;
            d.kind = Kind::PushEnter;
            d.parent_seg = seg;
            d.parent_local = local;
            return d;
        }
        static Deriv resume(int seg, uint64_t push_local, int inner_seg, uint64_t inner_pop) {
            Deriv d;
            d.kind = Kind::Resume;
            d.parent_seg = seg;
            d.parent_local = push_local;
            d.inner_seg = inner_seg;
            d.inner_pop = inner_pop;
            return d;
        }
    };

    struct Segment {
        uint64_t start_local;
        int top;
        std::unordered_set<uint64_t> reach;
        std::vector<PopEntry> pops;
        std::unordered_set<uint64_t> pop_seen;
        std::vector<Caller> callers;
        std::unordered_set<int> caller_seen;
        std::unordered_map<uint64_t, Deriv> deriv; // witness mode only
    };

    const FlatProgram& fp_;
    long long n_;
    bool want_witness_;

    std::unordered_map<Symbol, int> sym_ids_;
    std::vector<Symbol> symbols_;
    std::vector<int> tape_ids_;
    long long local_span_ = 0;

    std::vector<Segment> segments_;
    std::unordered_map<uint64_t, int> segment_ids_;
    std::deque<std::pair<int, uint64_t>> worklist_;
    std::unordered_set<uint64_t> configs_seen_;
    SimStats stats_;
    bool accepted_ = false;
    int accept_seg_ = -1;
    uint64_t accept_local_ = 0;

    int intern(const Symbol& s) {
        auto [it, fresh] = sym_ids_.emplace(s, (int)symbols_.size());
        if (fresh) symbols_.push_back(s);
        return it->second;
    }
    void intern_sym_expr(const SymExpr& e) {
        if (e.kind == SymExpr::Kind::Const) intern(e.sym);
    }
    void intern_bool_expr(const BoolExpr& b) {
        if (b.kind == BoolExpr::Kind::Eq) {
            intern_sym_expr(b.lhs);
            intern_sym_expr(b.rhs);
        }
        for (const BoolExpr& a : b.args) intern_bool_expr(a);
    }

    uint64_t encode(int pp, const std::vector<int>& heads) const {
        uint64_t code = 0;
        for (int h = fp_.head_count - 1; h >= 0; --h)
            code = code * (uint64_t)n_ + (uint64_t)heads[(size_t)h];
        return code * (uint64_t)fp_.code.size() + (uint64_t)pp;
    }
    int decode_pp(uint64_t local) const { return (int)(local % (uint64_t)fp_.code.size()); }
    std::vector<int> decode_heads(uint64_t local) const {
        std::vector<int> heads((size_t)fp_.head_count);
        local /= (uint64_t)fp_.code.size();
        for (int h = 0; h < fp_.head_count; ++h) {
            heads[(size_t)h] = (int)(local % (uint64_t)n_);
            local /= (uint64_t)n_;
        }
        return heads;
    }

    int segment_for(uint64_t start_local, int top) {
        uint64_t key = start_local * (uint64_t)(symbols_.size() + 1) + (uint64_t)(top + 1);
        auto it = segment_ids_.find(key);
        if (it != segment_ids_.end()) return it->second;
        int id = (int)segments_.size();
        segment_ids_.emplace(key, id);
        Segment s;
        s.start_local = start_local;
        s.top = top;
        segments_.push_back(std::move(s));
        return id;
    }

    void add_fact(int seg, uint64_t local, Deriv d) {
        Segment& s = segments_[(size_t)seg];
        if (!s.reach.insert(local).second) return;
        configs_seen_.insert(local * (uint64_t)(symbols_.size() + 1) + (uint64_t)(s.top + 1));
        if (want_witness_) s.deriv.emplace(local, d);
        worklist_.emplace_back(seg, local);
    }

    int eval_sym(const SymExpr& e, int top, const std::vector<int>& heads) const {
        switch (e.kind) {
        case SymExpr::Kind::Const: return sym_ids_.at(e.sym);
        case SymExpr::Kind::Top: return top;
        case SymExpr::Kind::Hd: return tape_ids_[(size_t)heads[(size_t)(e.head - 1)]];
        }
        return kBottom;
    }

    bool eval_bool(const BoolExpr& b, int top, const std::vector<int>& heads) const {
        switch (b.kind) {
        case BoolExpr::Kind::Bottom: return top == kBottom;
        case BoolExpr::Kind::LeftEnd: return heads[(size_t)(b.head - 1)] == 0;
        case BoolExpr::Kind::RightEnd: return heads[(size_t)(b.head - 1)] == (int)n_ - 1;
        case BoolExpr::Kind::Eq: return eval_sym(b.lhs, top, heads) == eval_sym(b.rhs, top, heads);
        case BoolExpr::Kind::And: return eval_bool(b.args[0], top, heads) && eval_bool(b.args[1], top, heads);
        case BoolExpr::Kind::Or: return eval_bool(b.args[0], top, heads) || eval_bool(b.args[1], top, heads);
        }
        return false;
    }

    void step(int seg, uint64_t local) {
        int pp = decode_pp(local);
        const Instr& ins = fp_.code[(size_t)pp];
        int top = segments_[(size_t)seg].top;
        switch (ins.op) {
        case Instr::Op::Nop:
            add_fact(seg, retarget(local, ins.next), Deriv::step(seg, local));
            break;
        case Instr::Op::MoveLeft:
        case Instr::Op::MoveRight: {
            std::vector<int> heads = decode_heads(local);
            int& pos = heads[(size_t)ins.head];
            if (ins.op == Instr::Op::MoveLeft ? pos == 0 : pos == (int)n_ - 1) return;
            pos += ins.op == Instr::Op::MoveLeft ? -1 : 1;
            add_fact(seg, encode(ins.next, heads), Deriv::step(seg, local));
            break;
        }
        case Instr::Op::Branch: {
            std::vector<int> heads = decode_heads(local);
            int target = eval_bool(ins.cond, top, heads) ? ins.next : ins.alt;
            add_fact(seg, retarget(local, target), Deriv::step(seg, local));
            break;
        }
        case Instr::Op::Choice:
            add_fact(seg, retarget(local, ins.next), Deriv::step(seg, local, 0));
            add_fact(seg, retarget(local, ins.alt), Deriv::step(seg, local, 1));
            break;
        case Instr::Op::Accept:
            if (!accepted_) {
                accepted_ = true;
                accept_seg_ = seg;
                accept_local_ = local;
            }
            break;
        case Instr::Op::Reject: break;
        case Instr::Op::Pop: {
            if (top == kBottom) return;
            Segment& s = segments_[(size_t)seg];
            uint64_t after = retarget(local, ins.next);
            if (!s.pop_seen.insert(after).second) break;
            s.pops.push_back(PopEntry{after, local});
            stats_.summaries++;
            // snapshot: callers registered later replay the full pop list
            for (size_t i = 0; i < s.callers.size(); ++i) {
                Caller c = s.callers[i];
                add_fact(c.seg, after, Deriv::resume(c.seg, c.push_local, seg, local));
            }
            break;
        }
        case Instr::Op::Push: {
            std::vector<int> heads = decode_heads(local);
            int sym = eval_sym(ins.value, top, heads);
            if (sym == kBottom || sym == kLeftEnd || sym == kRightEnd) return;
            uint64_t child_start = retarget(local, ins.next);
            int child = segment_for(child_start, sym);
            Segment& cs = segments_[(size_t)child];
            if (cs.reach.empty()) add_fact(child, child_start, Deriv::push_enter(seg, local));
            if (cs.caller_seen.insert(seg).second) {
                segments_[(size_t)child].callers.push_back(Caller{seg, local});
                for (size_t i = 0; i < segments_[(size_t)child].pops.size(); ++i) {
                    PopEntry e = segments_[(size_t)child].pops[i];
                    add_fact(seg, e.after, Deriv::resume(seg, local, child, e.pop_local));
                }
            }
            break;
        }
        }
    }

    uint64_t retarget(uint64_t local, int pp) const {
        return local - (uint64_t)decode_pp(local) + (uint64_t)pp;
    }

    // Unfolds the derivation graph backward from the accepting fact into one
    // concrete run. Walking out of a segment start splices in the caller the
    // enclosing resume step recorded, so the assembled run is connected.
    Witness reconstruct() {
        struct Rev {
            int seg;
            uint64_t local;
            WitnessStep::Action action;
            int choice;
        };
        std::vector<Rev> rev;
        std::vector<std::pair<int, uint64_t>> splice; // pending callers, innermost last
        int seg = accept_seg_;
        uint64_t local = accept_local_;
        rev.push_back(Rev{seg, local, WitnessStep::Action::None, -1});
        for (;;) {
            const Deriv& d = segments_[(size_t)seg].deriv.at(local);
            if (d.kind == Deriv::Kind::Init) break;
            if (d.kind == Deriv::Kind::Step) {
                rev.push_back(Rev{d.parent_seg, d.parent_local, WitnessStep::Action::None, d.choice});
                seg = d.parent_seg;
                local = d.parent_local;
            } else if (d.kind == Deriv::Kind::PushEnter) {
                int parent_seg = d.parent_seg;
                uint64_t parent_local = d.parent_local;
                if (!splice.empty()) {
                    parent_seg = splice.back().first;
                    parent_local = splice.back().second;
                    splice.pop_back();
                }
                rev.push_back(Rev{parent_seg, parent_local, WitnessStep::Action::Push, -1});
                seg = parent_seg;
                local = parent_local;
            } else { // Resume
                splice.emplace_back(d.parent_seg, d.parent_local);
                rev.push_back(Rev{d.inner_seg, d.inner_pop, WitnessStep::Action::Pop, -1});
                seg = d.inner_seg;
                local = d.inner_pop;
            }
        }
        Witness w;
        w.steps.reserve(rev.size());
        for (size_t i = rev.size(); i-- > 0;) {
            const Rev& r = rev[i];
            WitnessStep ws;
            ws.pp = decode_pp(r.local);
            ws.heads = decode_heads(r.local);
            ws.action = r.action;
            if (r.action == WitnessStep::Action::Push) {
                const Instr& ins = fp_.code[(size_t)ws.pp];
                int top = segments_[(size_t)r.seg].top;
                ws.pushed = symbols_[(size_t)eval_sym(ins.value, top, ws.heads)];
            }
            w.steps.push_back(std::move(ws));
            if (r.choice >= 0) w.choice_script.push_back(r.choice);
        }
        return w;
    }
};

} // namespace detail

// Decides whether any computation of `p` on `t` accepts, exploring the full
// nondeterministic space with memoized stack summaries. Always terminates.
inline Verdict simulate(const Program& p, const Tape& t, bool want_witness = false) {
    FlatProgram fp = flatten(expand_macros(p));
    return detail::Tabulator(fp, t, want_witness).run();
}

} // namespace ppv
