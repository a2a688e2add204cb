#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ppv/ast.hpp"
#include "ppv/errors.hpp"
#include "ppv/expand.hpp"

namespace ppv {

// One node of the command graph. `next` is the unique successor for linear
// instructions, the then-target for Branch and the first alternative for
// Choice; `alt` is the else-target / second alternative.
struct Instr {
    enum class Op { Nop, Pop, Push, MoveLeft, MoveRight, Branch, Choice, Accept, Reject };

    Op op = Op::Nop;
    int next = -1;
    int alt = -1;
    int head = 0; // 0-based
    SymExpr value{};
    BoolExpr cond{};
};

struct FlatProgram {
    std::vector<Instr> code;
    int entry = 0;
    int head_count = 1;
};

namespace detail {

// Linearizes an expanded program. Block fall-through becomes an explicit edge
// to the next block's entry; running off the last block rejects.
class Flattener {
  public:
    FlatProgram run(const Program& p) {
        if (program_has_sugar(p))
            throw Error("internal: flatten requires an expanded program");
        flat_.head_count = p.head_count;

        std::vector<std::pair<int, bool>> fall; // dangling exits of the previous block
        std::vector<int> block_entry;
        for (const Block& b : p.blocks) {
            auto [entry, exits] = lower_seq(b.cmds);
            block_entry.push_back(entry);
            label_entry_[b.label] = entry;
            patch(fall, entry);
            fall = std::move(exits);
        }
        if (!fall.empty()) {
            int sink = emit(Instr::Op::Reject);
            patch(fall, sink);
        }
        for (auto& [idx, label] : goto_fixups_) {
            auto it = label_entry_.find(label);
            if (it == label_entry_.end()) throw UndefinedLabel(label);
            flat_.code[(size_t)idx].next = it->second;
        }
        flat_.entry = block_entry.empty() ? 0 : block_entry.front();
        return std::move(flat_);
    }

  private:
    FlatProgram flat_;
    std::unordered_map<std::string, int> label_entry_;
    std::vector<std::pair<int, std::string>> goto_fixups_;

    using Exits = std::vector<std::pair<int, bool>>; // (instr, patch alt slot?)

    int emit(Instr::Op op) {
        Instr ins;
        ins.op = op;
        flat_.code.push_back(std::move(ins));
        return (int)flat_.code.size() - 1;
    }

    void patch(const Exits& exits, int target) {
        for (auto [idx, is_alt] : exits) {
            if (is_alt)
                flat_.code[(size_t)idx].alt = target;
            else
                flat_.code[(size_t)idx].next = target;
        }
    }

    std::pair<int, Exits> lower_seq(const CommandSeq& cmds) {
        if (cmds.empty()) {
            int i = emit(Instr::Op::Nop);
            return {i, {{i, false}}};
        }
        int entry = -1;
        Exits open;
        for (const Command& c : cmds) {
            auto [e, exits] = lower_cmd(c);
            if (entry < 0) entry = e;
            patch(open, e);
            open = std::move(exits);
        }
        return {entry, std::move(open)};
    }

    std::pair<int, Exits> lower_cmd(const Command& c) {
        switch (c.kind) {
        case Command::Kind::Pop: {
            int i = emit(Instr::Op::Pop);
            return {i, {{i, false}}};
        }
        case Command::Kind::Push: {
            int i = emit(Instr::Op::Push);
            flat_.code[(size_t)i].value = c.value;
            return {i, {{i, false}}};
        }
        case Command::Kind::Left:
        case Command::Kind::Right: {
            int i = emit(c.kind == Command::Kind::Left ? Instr::Op::MoveLeft
                                                       : Instr::Op::MoveRight);
            flat_.code[(size_t)i].head = c.head - 1;
            return {i, {{i, false}}};
        }
        case Command::Kind::Skip: {
            int i = emit(Instr::Op::Nop);
            return {i, {{i, false}}};
        }
        case Command::Kind::Goto: {
            int i = emit(Instr::Op::Nop);
            goto_fixups_.emplace_back(i, c.label);
            return {i, {}};
        }
        case Command::Kind::Accept: return {emit(Instr::Op::Accept), {}};
        case Command::Kind::Reject: return {emit(Instr::Op::Reject), {}};
        case Command::Kind::If: {
            int i = emit(Instr::Op::Branch);
            flat_.code[(size_t)i].cond = c.cond;
            auto [te, tx] = lower_seq(c.seq_a);
            auto [ee, ex] = lower_seq(c.seq_b);
            flat_.code[(size_t)i].next = te;
            flat_.code[(size_t)i].alt = ee;
            Exits exits = std::move(tx);
            exits.insert(exits.end(), ex.begin(), ex.end());
            return {i, std::move(exits)};
        }
        case Command::Kind::Choice: {
            int i = emit(Instr::Op::Choice);
            auto [fe, fx] = lower_seq(c.seq_a);
            auto [se, sx] = lower_seq(c.seq_b);
            flat_.code[(size_t)i].next = fe;
            flat_.code[(size_t)i].alt = se;
            Exits exits = std::move(fx);
            exits.insert(exits.end(), sx.begin(), sx.end());
            return {i, std::move(exits)};
        }
        default: throw Error("internal: sugar node reached the flattener");
        }
    }
};

} // namespace detail

inline FlatProgram flatten(const Program& expanded) { return detail::Flattener().run(expanded); }

} // namespace ppv
