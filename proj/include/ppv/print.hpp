#pragma once

#include <string>

#include "ppv/ast.hpp"

namespace ppv {

namespace detail {

inline void print_sym(const SymExpr& e, std::string& out) {
    switch (e.kind) {
    case SymExpr::Kind::Const: out += '\''; out += e.sym; out += '\''; break;
    case SymExpr::Kind::Top: out += "top"; break;
    case SymExpr::Kind::Hd:
        out += "hd";
        if (e.head != 1) out += std::to_string(e.head);
        break;
    }
}

// Minimal parenthesization: '&&' binds tighter than '||'; both associate to
// the left, so a right-nested child of the same kind needs parentheses to
// reparse into an identical tree.
inline void print_bool(const BoolExpr& b, std::string& out) {
    auto child = [&](const BoolExpr& c, bool needs_paren) {
        if (needs_paren) out += '(';
        print_bool(c, out);
        if (needs_paren) out += ')';
    };
    switch (b.kind) {
    case BoolExpr::Kind::Bottom: out += "bottom"; break;
    case BoolExpr::Kind::LeftEnd:
        out += "leftend";
        if (b.head != 1) out += std::to_string(b.head);
        break;
    case BoolExpr::Kind::RightEnd:
        out += "rightend";
        if (b.head != 1) out += std::to_string(b.head);
        break;
    case BoolExpr::Kind::Eq:
        print_sym(b.lhs, out);
        out += " = ";
        print_sym(b.rhs, out);
        break;
    case BoolExpr::Kind::And:
        child(b.args[0], b.args[0].kind == BoolExpr::Kind::Or);
        out += " && ";
        child(b.args[1], b.args[1].kind == BoolExpr::Kind::Or ||
                             b.args[1].kind == BoolExpr::Kind::And);
        break;
    case BoolExpr::Kind::Or:
        print_bool(b.args[0], out);
        out += " || ";
        child(b.args[1], b.args[1].kind == BoolExpr::Kind::Or);
        break;
    }
}

inline void print_seq(const CommandSeq& cmds, std::string& out);

inline void print_cmd(const Command& c, std::string& out) {
    switch (c.kind) {
    case Command::Kind::Pop: out += "pop"; break;
    case Command::Kind::Push:
        out += "push ";
        print_sym(c.value, out);
        break;
    case Command::Kind::Left:
        out += "left";
        if (c.head != 1) out += std::to_string(c.head);
        break;
    case Command::Kind::Right:
        out += "right";
        if (c.head != 1) out += std::to_string(c.head);
        break;
    case Command::Kind::Choice:
        out += "choice ";
        print_seq(c.seq_a, out);
        out += " or ";
        print_seq(c.seq_b, out);
        out += " end";
        break;
    case Command::Kind::If:
        out += "if ";
        print_bool(c.cond, out);
        out += " then ";
        print_seq(c.seq_a, out);
        if (!(c.seq_b.size() == 1 && c.seq_b[0] == Command::skip())) {
            out += " else ";
            print_seq(c.seq_b, out);
        }
        out += " end";
        break;
    case Command::Kind::Goto:
        out += "goto ";
        out += c.label;
        break;
    case Command::Kind::Skip: out += "skip"; break;
    case Command::Kind::Accept: out += "accept"; break;
    case Command::Kind::Reject: out += "reject"; break;
    case Command::Kind::MultiMove:
        out += std::to_string(c.count);
        out += c.rightward ? "-right" : "-left";
        if (c.head != 1) out += std::to_string(c.head);
        break;
    case Command::Kind::MoveToLeftEnd: out += "move-to-leftend"; break;
    }
}

inline void print_seq(const CommandSeq& cmds, std::string& out) {
    for (size_t i = 0; i < cmds.size(); ++i) {
        if (i) out += "; ";
        print_cmd(cmds[i], out);
    }
}

} // namespace detail

// Text form that parse_program maps back onto the same tree. An "else skip"
// branch is elided, matching the if-then shorthand.
inline std::string pretty_print(const Program& p) {
    std::string out;
    if (p.head_count != 1) {
        out += "heads: ";
        out += std::to_string(p.head_count);
        out += '\n';
    }
    for (const Block& b : p.blocks) {
        out += b.label;
        out += ": ";
        detail::print_seq(b.cmds, out);
        out += '\n';
    }
    return out;
}

} // namespace ppv
