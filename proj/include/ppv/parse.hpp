#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ppv/ast.hpp"
#include "ppv/errors.hpp"
#include "ppv/lexer.hpp"

namespace ppv {

namespace detail {

// Splits "left"/"right"/"leftend"/"rightend"/"hd" with an optional numeric
// head suffix ("left2", "hd3"). Suffix 0 or 1 is rejected: head 1 is spelled
// without a suffix.
struct HeadWord {
    std::string base;
    int head = 1;
};

inline std::optional<HeadWord> split_head_word(const std::string& word, const Token& at) {
    static const char* bases[] = {"leftend", "rightend", "left", "right", "hd"};
    for (const char* b : bases) {
        std::string base(b);
        if (word.rfind(base, 0) != 0) continue;
        std::string suffix = word.substr(base.size());
        if (suffix.empty()) return HeadWord{base, 1};
        for (char c : suffix)
            if (!digit(c)) return std::nullopt; // e.g. "lefty" is not a head word
        int h = std::stoi(suffix);
        if (h < 2) throw SyntaxError(at.line, at.col, "head suffix must be 2 or larger");
        return HeadWord{base, h};
    }
    return std::nullopt;
}

class Parser {
  public:
    explicit Parser(std::string_view src) : toks_(lex_program(src)) {}

    Program run() {
        Program p;
        p.head_count = parse_header();
        while (!at(Token::Kind::Eof)) {
            Block b;
            Token lt = expect(Token::Kind::Ident, "block label");
            b.label = lt.text;
            expect(Token::Kind::Colon, "':' after block label");
            b.cmds = parse_seq();
            if (b.cmds.empty())
                throw SyntaxError(lt.line, lt.col, "block '" + b.label + "' has no commands");
            p.blocks.push_back(std::move(b));
        }
        if (p.blocks.empty()) {
            const Token& t = toks_.back();
            throw SyntaxError(t.line, t.col, "program has no blocks");
        }
        validate(p);
        return p;
    }

  private:
    std::vector<Token> toks_;
    size_t pos_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(size_t k) const {
        return toks_[pos_ + k < toks_.size() ? pos_ + k : toks_.size() - 1];
    }
    bool at(Token::Kind k) const { return cur().kind == k; }
    bool at_ident(const char* s) const { return at(Token::Kind::Ident) && cur().text == s; }
    Token take() { return toks_[pos_++]; }
    Token expect(Token::Kind k, const char* what) {
        if (!at(k)) fail(std::string("expected ") + what);
        return take();
    }
    void expect_ident(const char* s) {
        if (!at_ident(s)) fail(std::string("expected '") + s + "'");
        take();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError(cur().line, cur().col, msg);
    }

    int parse_header() {
        // "heads: H" before the first block; the word "heads" is reserved.
        if (at_ident("heads") && ahead(1).kind == Token::Kind::Colon &&
            ahead(2).kind == Token::Kind::Number && ahead(3).kind != Token::Kind::Minus) {
            take();
            take();
            Token n = take();
            if (n.number < 1) throw SyntaxError(n.line, n.col, "head count must be at least 1");
            return (int)n.number;
        }
        return 1;
    }

    bool starts_command() const {
        if (at(Token::Kind::Number)) return true;
        if (!at(Token::Kind::Ident)) return false;
        const std::string& w = cur().text;
        if (w == "pop" || w == "push" || w == "choice" || w == "if" || w == "goto" ||
            w == "skip" || w == "accept" || w == "reject" || w == "move-to-leftend")
            return true;
        if (w.rfind("left", 0) == 0 || w.rfind("right", 0) == 0) {
            auto hw = split_head_word(w, cur());
            return hw && (hw->base == "left" || hw->base == "right");
        }
        return false;
    }

    CommandSeq parse_seq() {
        CommandSeq cmds;
        if (!starts_command()) fail("expected a command");
        for (;;) {
            cmds.push_back(parse_cmd());
            if (!at(Token::Kind::Semi)) break;
            take();
            // The listings use ';' both as a separator and as a terminator,
            // so a trailing ';' before a structural keyword is allowed.
            if (!starts_command()) break;
        }
        return cmds;
    }

    Command parse_cmd() {
        if (at(Token::Kind::Number)) {
            Token k = take();
            if (k.number < 1) throw SyntaxError(k.line, k.col, "repeat count must be at least 1");
            expect(Token::Kind::Minus, "'-' in k-right / k-left");
            Token w = expect(Token::Kind::Ident, "'right' or 'left'");
            auto hw = split_head_word(w.text, w);
            if (!hw || (hw->base != "right" && hw->base != "left"))
                throw SyntaxError(w.line, w.col, "expected 'right' or 'left' after '-'");
            return Command::multi_move((int)k.number, hw->base == "right", hw->head);
        }
        Token t = expect(Token::Kind::Ident, "a command");
        const std::string& w = t.text;
        if (w == "pop") return Command::pop();
        if (w == "skip") return Command::skip();
        if (w == "accept") return Command::accept();
        if (w == "reject") return Command::reject();
        if (w == "move-to-leftend") return Command::move_to_leftend();
        if (w == "push") return Command::push(parse_sym());
        if (w == "goto") {
            Token l = expect(Token::Kind::Ident, "label after goto");
            return Command::goto_(l.text);
        }
        if (w == "choice") {
            CommandSeq first = parse_seq();
            expect_ident("or");
            CommandSeq second = parse_seq();
            expect_ident("end");
            return Command::choice(std::move(first), std::move(second));
        }
        if (w == "if") {
            BoolExpr b = parse_bool();
            expect_ident("then");
            CommandSeq then_cmds = parse_seq();
            if (at_ident("else")) {
                take();
                CommandSeq else_cmds = parse_seq();
                expect_ident("end");
                return Command::if_else(std::move(b), std::move(then_cmds), std::move(else_cmds));
            }
            expect_ident("end");
            return Command::if_then(std::move(b), std::move(then_cmds));
        }
        auto hw = split_head_word(w, t);
        if (hw && hw->base == "left") return Command::left(hw->head);
        if (hw && hw->base == "right") return Command::right(hw->head);
        throw SyntaxError(t.line, t.col, "unknown command '" + w + "'");
    }

    SymExpr parse_sym() {
        if (at(Token::Kind::Quoted)) return SymExpr::constant(take().text);
        Token t = expect(Token::Kind::Ident, "symbol expression");
        if (t.text == "top") return SymExpr::top();
        auto hw = split_head_word(t.text, t);
        if (hw && hw->base == "hd") return SymExpr::hd(hw->head);
        throw SyntaxError(t.line, t.col, "expected a constant, 'top', or 'hd'");
    }

    BoolExpr parse_bool() { return parse_or(); }

    BoolExpr parse_or() {
        BoolExpr b = parse_and();
        while (at(Token::Kind::OrOr)) {
            take();
            b = BoolExpr::disj(std::move(b), parse_and());
        }
        return b;
    }

    BoolExpr parse_and() {
        BoolExpr b = parse_bool_atom();
        while (at(Token::Kind::AndAnd)) {
            take();
            b = BoolExpr::conj(std::move(b), parse_bool_atom());
        }
        return b;
    }

    BoolExpr parse_bool_atom() {
        if (at(Token::Kind::LParen)) {
            take();
            BoolExpr b = parse_or();
            expect(Token::Kind::RParen, "')'");
            return b;
        }
        if (at(Token::Kind::Ident)) {
            const std::string& w = cur().text;
            if (w == "bottom") {
                take();
                return BoolExpr::bottom();
            }
            auto hw = split_head_word(w, cur());
            if (hw && hw->base == "leftend") {
                take();
                return BoolExpr::leftend(hw->head);
            }
            if (hw && hw->base == "rightend") {
                take();
                return BoolExpr::rightend(hw->head);
            }
        }
        SymExpr l = parse_sym();
        expect(Token::Kind::Equal, "'=' between symbol expressions");
        SymExpr r = parse_sym();
        return BoolExpr::eq(std::move(l), std::move(r));
    }

    // Post-parse checks: unique labels, resolvable gotos, head indices within
    // the declared head count.
    void validate(const Program& p) const {
        std::unordered_set<std::string> labels;
        for (const Block& b : p.blocks)
            if (!labels.insert(b.label).second) throw DuplicateLabel(b.label);
        for (const Block& b : p.blocks) {
            check_seq(b.cmds, labels, p.head_count);
        }
    }

    static void check_head(int h, int head_count) {
        if (h > head_count) throw BadHeadIndex(h, head_count);
    }

    static void check_sym(const SymExpr& e, int head_count) {
        if (e.kind == SymExpr::Kind::Hd) check_head(e.head, head_count);
    }

    static void check_bool(const BoolExpr& b, int head_count) {
        switch (b.kind) {
        case BoolExpr::Kind::LeftEnd:
        case BoolExpr::Kind::RightEnd: check_head(b.head, head_count); break;
        case BoolExpr::Kind::Eq:
            check_sym(b.lhs, head_count);
            check_sym(b.rhs, head_count);
            break;
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or:
            for (const BoolExpr& a : b.args) check_bool(a, head_count);
            break;
        default: break;
        }
    }

    static void check_seq(const CommandSeq& cmds, const std::unordered_set<std::string>& labels,
                          int head_count) {
        for (const Command& c : cmds) {
            switch (c.kind) {
            case Command::Kind::Push: check_sym(c.value, head_count); break;
            case Command::Kind::Left:
            case Command::Kind::Right:
            case Command::Kind::MultiMove: check_head(c.head, head_count); break;
            case Command::Kind::Goto:
                if (!labels.count(c.label)) throw UndefinedLabel(c.label);
                break;
            case Command::Kind::If:
                check_bool(c.cond, head_count);
                check_seq(c.seq_a, labels, head_count);
                check_seq(c.seq_b, labels, head_count);
                break;
            case Command::Kind::Choice:
                check_seq(c.seq_a, labels, head_count);
                check_seq(c.seq_b, labels, head_count);
                break;
            default: break;
            }
        }
    }
};

} // namespace detail

inline Program parse_program(std::string_view src) { return detail::Parser(src).run(); }

} // namespace ppv
