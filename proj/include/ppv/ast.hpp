#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ppv {

// Tape and stack symbols are plain tokens. Three symbols are reserved: the two
// tape endmarkers and the bottom marker returned when the top of an empty
// stack is read. None of them may ever be pushed onto the stack, and the
// endmarkers may appear only at the two ends of a tape.
using Symbol = std::string;

inline const Symbol left_endmarker = ">";
inline const Symbol right_endmarker = "<";
inline const Symbol bottom_marker = "\xe2\x8a\xa5"; // U+22A5

inline bool is_reserved_symbol(const Symbol& s) {
    return s == left_endmarker || s == right_endmarker || s == bottom_marker;
}

// Symbol-valued expressions: a quoted constant, the top of the stack, or the
// cell under a head ("hd" is head 1, "hd2" head 2, ...).
struct SymExpr {
    enum class Kind { Const, Top, Hd };

    Kind kind = Kind::Top;
    Symbol sym{};
    int head = 1;

    static SymExpr constant(Symbol s) {
        SymExpr e;
        e.kind = Kind::Const;
        e.sym = std::move(s);
        return e;
    }
    static SymExpr top() { return SymExpr{}; }
    static SymExpr hd(int h = 1) {
        SymExpr e;
        e.kind = Kind::Hd;
        e.head = h;
        return e;
    }

    bool operator==(const SymExpr&) const = default;
};

// Predicates over the visible state: emptiness of the stack, endmarker tests
// per head, symbol equality, and the two connectives.
struct BoolExpr {
    enum class Kind { Bottom, LeftEnd, RightEnd, Eq, And, Or };

    Kind kind = Kind::Bottom;
    int head = 1;                // LeftEnd / RightEnd
    SymExpr lhs{}, rhs{};        // Eq
    std::vector<BoolExpr> args;  // And / Or: exactly two children

    static BoolExpr bottom() { return BoolExpr{}; }
    static BoolExpr leftend(int h = 1) {
        BoolExpr b;
        b.kind = Kind::LeftEnd;
        b.head = h;
        return b;
    }
    static BoolExpr rightend(int h = 1) {
        BoolExpr b;
        b.kind = Kind::RightEnd;
        b.head = h;
        return b;
    }
    static BoolExpr eq(SymExpr l, SymExpr r) {
        BoolExpr b;
        b.kind = Kind::Eq;
        b.lhs = std::move(l);
        b.rhs = std::move(r);
        return b;
    }
    static BoolExpr conj(BoolExpr l, BoolExpr r) {
        BoolExpr b;
        b.kind = Kind::And;
        b.args.push_back(std::move(l));
        b.args.push_back(std::move(r));
        return b;
    }
    static BoolExpr disj(BoolExpr l, BoolExpr r) {
        BoolExpr b;
        b.kind = Kind::Or;
        b.args.push_back(std::move(l));
        b.args.push_back(std::move(r));
        return b;
    }

    bool operator==(const BoolExpr&) const = default;
};

// One flowchart command. "MultiMove" is the "k-right"/"k-left" shorthand and
// "MoveToLeftEnd" the head-rewind shorthand; both survive parsing as sugar
// nodes until expand_macros removes them.
struct Command {
    enum class Kind {
        Pop,
        Push,
        Left,
        Right,
        Choice,
        If,
        Goto,
        Skip,
        Accept,
        Reject,
        MultiMove,
        MoveToLeftEnd,
    };

    Kind kind = Kind::Skip;
    SymExpr value{};             // Push
    int head = 1;                // Left / Right / MultiMove
    int count = 0;               // MultiMove
    bool rightward = true;       // MultiMove
    BoolExpr cond{};             // If
    std::vector<Command> seq_a;  // If: then-branch; Choice: first branch
    std::vector<Command> seq_b;  // If: else-branch; Choice: second branch
    std::string label;           // Goto

    static Command pop() { return with_kind(Kind::Pop); }
    static Command push(SymExpr v) {
        Command c = with_kind(Kind::Push);
        c.value = std::move(v);
        return c;
    }
    static Command left(int h = 1) {
        Command c = with_kind(Kind::Left);
        c.head = h;
        return c;
    }
    static Command right(int h = 1) {
        Command c = with_kind(Kind::Right);
        c.head = h;
        return c;
    }
    static Command choice(std::vector<Command> first, std::vector<Command> second) {
        Command c = with_kind(Kind::Choice);
        c.seq_a = std::move(first);
        c.seq_b = std::move(second);
        return c;
    }
    static Command if_else(BoolExpr b, std::vector<Command> then_cmds, std::vector<Command> else_cmds) {
        Command c = with_kind(Kind::If);
        c.cond = std::move(b);
        c.seq_a = std::move(then_cmds);
        c.seq_b = std::move(else_cmds);
        return c;
    }
    // "if b then c end" carries an implicit skip in the else branch.
    static Command if_then(BoolExpr b, std::vector<Command> then_cmds) {
        return if_else(std::move(b), std::move(then_cmds), {Command::skip()});
    }
    static Command goto_(std::string l) {
        Command c = with_kind(Kind::Goto);
        c.label = std::move(l);
        return c;
    }
    static Command skip() { return with_kind(Kind::Skip); }
    static Command accept() { return with_kind(Kind::Accept); }
    static Command reject() { return with_kind(Kind::Reject); }
    static Command multi_move(int k, bool rightward, int h = 1) {
        Command c = with_kind(Kind::MultiMove);
        c.count = k;
        c.rightward = rightward;
        c.head = h;
        return c;
    }
    static Command move_to_leftend() { return with_kind(Kind::MoveToLeftEnd); }

    bool operator==(const Command&) const = default;

  private:
    static Command with_kind(Kind k) {
        Command c;
        c.kind = k;
        return c;
    }
};

using CommandSeq = std::vector<Command>;

struct Block {
    std::string label;
    CommandSeq cmds;

    bool operator==(const Block&) const = default;
};

// A program is an ordered list of labeled blocks; execution starts at the
// first command of the first block, and a block that finishes without a
// control transfer falls through to the block after it.
struct Program {
    int head_count = 1;
    std::vector<Block> blocks;

    bool operator==(const Program&) const = default;
};

} // namespace ppv
