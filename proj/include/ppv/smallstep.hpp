#pragma once

#include <string>
#include <vector>

#include "ppv/ast.hpp"
#include "ppv/expand.hpp"
#include "ppv/flatten.hpp"
#include "ppv/sim.hpp"
#include "ppv/tape.hpp"

namespace ppv {

enum class RunStatus { Accepted, Rejected, Stuck, OutOfFuel };

struct RunResult {
    RunStatus status = RunStatus::OutOfFuel;
    long long steps = 0;
    std::vector<WitnessStep> trace; // filled when want_trace
};

namespace detail {

inline Symbol eval_sym_direct(const SymExpr& e, const std::vector<Symbol>& stack,
                              const Tape& t, const std::vector<int>& heads) {
    switch (e.kind) {
    case SymExpr::Kind::Const: return e.sym;
    case SymExpr::Kind::Top: return stack.empty() ? bottom_marker : stack.back();
    case SymExpr::Kind::Hd: return t.cells[(size_t)heads[(size_t)(e.head - 1)]];
    }
    return bottom_marker;
}

inline bool eval_bool_direct(const BoolExpr& b, const std::vector<Symbol>& stack,
                             const Tape& t, const std::vector<int>& heads) {
    switch (b.kind) {
    case BoolExpr::Kind::Bottom: return stack.empty();
    case BoolExpr::Kind::LeftEnd: return heads[(size_t)(b.head - 1)] == 0;
    case BoolExpr::Kind::RightEnd: return heads[(size_t)(b.head - 1)] == (int)t.size() - 1;
    case BoolExpr::Kind::Eq:
        return eval_sym_direct(b.lhs, stack, t, heads) == eval_sym_direct(b.rhs, stack, t, heads);
    case BoolExpr::Kind::And:
        return eval_bool_direct(b.args[0], stack, t, heads) &&
               eval_bool_direct(b.args[1], stack, t, heads);
    case BoolExpr::Kind::Or:
        return eval_bool_direct(b.args[0], stack, t, heads) ||
               eval_bool_direct(b.args[1], stack, t, heads);
    }
    return false;
}

} // namespace detail

// Replays one concrete computation of `p` on `t`, resolving each choice from
// `script` (0 = first branch, 1 = second). The run dies Stuck when a move or
// stack operation is illegal or the script runs dry at a choice point.
inline RunResult run_deterministic(const Program& p, const Tape& t,
                                   const std::vector<int>& script,
                                   long long fuel = 1'000'000,
                                   bool want_trace = false) {
    FlatProgram fp = flatten(expand_macros(p));
    RunResult r;
    int pp = fp.entry;
    std::vector<int> heads((size_t)fp.head_count, 0);
    std::vector<Symbol> stack;
    size_t si = 0;
    const int last = (int)t.size() - 1;
    while (r.steps < fuel) {
        const Instr& ins = fp.code[(size_t)pp];
        if (want_trace) {
            WitnessStep ws;
            ws.pp = pp;
            ws.heads = heads;
            r.trace.push_back(std::move(ws));
        }
        r.steps++;
        switch (ins.op) {
        case Instr::Op::Nop:
            pp = ins.next;
            break;
        case Instr::Op::MoveLeft:
            if (heads[(size_t)ins.head] == 0) { r.status = RunStatus::Stuck; return r; }
            heads[(size_t)ins.head]--;
            pp = ins.next;
            break;
        case Instr::Op::MoveRight:
            if (heads[(size_t)ins.head] == last) { r.status = RunStatus::Stuck; return r; }
            heads[(size_t)ins.head]++;
            pp = ins.next;
            break;
        case Instr::Op::Branch:
            pp = detail::eval_bool_direct(ins.cond, stack, t, heads) ? ins.next : ins.alt;
            break;
        case Instr::Op::Choice:
            if (si >= script.size()) { r.status = RunStatus::Stuck; return r; }
            pp = script[si++] == 0 ? ins.next : ins.alt;
            break;
        case Instr::Op::Accept:
            r.status = RunStatus::Accepted;
            return r;
        case Instr::Op::Reject:
            r.status = RunStatus::Rejected;
            return r;
        case Instr::Op::Pop:
            if (stack.empty()) { r.status = RunStatus::Stuck; return r; }
            if (want_trace) r.trace.back().action = WitnessStep::Action::Pop;
            stack.pop_back();
            pp = ins.next;
            break;
        case Instr::Op::Push: {
            Symbol sym = detail::eval_sym_direct(ins.value, stack, t, heads);
            if (is_reserved_symbol(sym)) { r.status = RunStatus::Stuck; return r; }
            if (want_trace) {
                r.trace.back().action = WitnessStep::Action::Push;
                r.trace.back().pushed = sym;
            }
            stack.push_back(std::move(sym));
            pp = ins.next;
            break;
        }
        }
    }
    r.status = RunStatus::OutOfFuel;
    return r;
}

} // namespace ppv
