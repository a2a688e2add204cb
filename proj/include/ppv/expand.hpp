#pragma once

#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ppv/ast.hpp"
#include "ppv/errors.hpp"

namespace ppv {

namespace detail {

inline bool cmd_has_rewind(const Command& c) {
    if (c.kind == Command::Kind::MoveToLeftEnd) return true;
    if (c.kind == Command::Kind::If || c.kind == Command::Kind::Choice) {
        for (const Command& x : c.seq_a)
            if (cmd_has_rewind(x)) return true;
        for (const Command& x : c.seq_b)
            if (cmd_has_rewind(x)) return true;
    }
    return false;
}

inline bool seq_has_rewind(const CommandSeq& cmds) {
    for (const Command& c : cmds)
        if (cmd_has_rewind(c)) return true;
    return false;
}

inline bool cmd_has_sugar(const Command& c) {
    if (c.kind == Command::Kind::MoveToLeftEnd || c.kind == Command::Kind::MultiMove) return true;
    if (c.kind == Command::Kind::If || c.kind == Command::Kind::Choice) {
        for (const Command& x : c.seq_a)
            if (cmd_has_sugar(x)) return true;
        for (const Command& x : c.seq_b)
            if (cmd_has_sugar(x)) return true;
    }
    return false;
}

inline bool program_has_sugar(const Program& p) {
    for (const Block& b : p.blocks)
        for (const Command& c : b.cmds)
            if (cmd_has_sugar(c)) return true;
    return false;
}

// "k-right" / "k-left" splice into k single moves wherever they occur; this
// never needs new blocks.
inline CommandSeq splice_moves(const CommandSeq& cmds) {
    CommandSeq out;
    for (const Command& c : cmds) {
        if (c.kind == Command::Kind::MultiMove) {
            for (int i = 0; i < c.count; ++i)
                out.push_back(c.rightward ? Command::right(c.head) : Command::left(c.head));
        } else if (c.kind == Command::Kind::If || c.kind == Command::Kind::Choice) {
            Command d = c;
            d.seq_a = splice_moves(c.seq_a);
            d.seq_b = splice_moves(c.seq_b);
            out.push_back(std::move(d));
        } else {
            out.push_back(c);
        }
    }
    return out;
}

// Whether control can flow out of the end of a command / sequence. Used to
// decide if an explicit transfer must be appended when a branch is rewired to
// a join label; over-approximating "true" only appends dead code.
inline bool cmd_can_complete(const Command& c) {
    switch (c.kind) {
    case Command::Kind::Goto:
    case Command::Kind::Accept:
    case Command::Kind::Reject: return false;
    case Command::Kind::If:
    case Command::Kind::Choice:
        return (c.seq_a.empty() || cmd_can_complete(c.seq_a.back())) ||
               (c.seq_b.empty() || cmd_can_complete(c.seq_b.back()));
    default: return true;
    }
}

inline bool seq_can_complete(const CommandSeq& cmds) {
    return cmds.empty() || cmd_can_complete(cmds.back());
}

// Lowers move-to-leftend occurrences into the rewind loop
//     L: left; if leftend then right else goto L end
// splitting the surrounding block. Emitted blocks rely on fall-through only
// within one contiguous chain; outlined branches always leave through an
// explicit transfer.
class Expander {
  public:
    explicit Expander(const Program& p) : src_(p) {
        for (const Block& b : p.blocks) used_.insert(b.label);
    }

    Program run() {
        Program out;
        out.head_count = src_.head_count;
        for (size_t i = 0; i < src_.blocks.size(); ++i) {
            const Block& b = src_.blocks[i];
            if (!seq_has_rewind(b.cmds)) {
                emit(b.label, splice_moves(b.cmds));
                continue;
            }
            Cont cont;
            cont.kind = Cont::Kind::Natural;
            if (i + 1 < src_.blocks.size()) cont.label = src_.blocks[i + 1].label;
            chain(b.label, b.cmds, cont);
        }
        out.blocks = std::move(out_);
        return out;
    }

  private:
    // Where a chain (or a branch spliced out of one) continues when it runs
    // off its end. Natural means the physically following block, which is the
    // next block of the original program (empty label: end of program).
    struct Cont {
        enum class Kind { Natural, Jump, Halt };
        Kind kind = Kind::Natural;
        std::string label;
    };

    const Program& src_;
    std::unordered_set<std::string> used_;
    int counter_ = 0;
    std::vector<Block> out_;

    std::string fresh() {
        for (;;) {
            std::string l = "L" + std::to_string(counter_++);
            if (used_.insert(l).second) return l;
        }
    }

    void emit(std::string label, CommandSeq cmds) {
        out_.push_back(Block{std::move(label), std::move(cmds)});
    }

    static Command transfer_for(const Cont& c) {
        return c.kind == Cont::Kind::Jump ? Command::goto_(c.label) : Command::reject();
    }

    // Cont a branch must use to reach `cont` from an outlined position.
    static Cont as_explicit(const Cont& cont) {
        Cont e = cont;
        if (cont.kind == Cont::Kind::Natural)
            e.kind = cont.label.empty() ? Cont::Kind::Halt : Cont::Kind::Jump;
        return e;
    }

    void chain(const std::string& label, const CommandSeq& cmds, const Cont& cont) {
        CommandSeq cur;
        for (size_t i = 0; i < cmds.size(); ++i) {
            const Command& c = cmds[i];
            if (!cmd_has_rewind(c)) {
                CommandSeq one = splice_moves({c});
                cur.insert(cur.end(), one.begin(), one.end());
                continue;
            }
            CommandSeq rest(cmds.begin() + (long)i + 1, cmds.end());
            if (c.kind == Command::Kind::MoveToLeftEnd) {
                std::string lr = fresh();
                cur.push_back(Command::goto_(lr));
                emit(label, std::move(cur));
                CommandSeq loop;
                loop.push_back(Command::left());
                loop.push_back(Command::if_else(BoolExpr::leftend(), {Command::right()},
                                                {Command::goto_(lr)}));
                if (rest.empty()) {
                    if (cont.kind != Cont::Kind::Natural) loop.push_back(transfer_for(cont));
                    emit(lr, std::move(loop));
                } else {
                    emit(lr, std::move(loop)); // falls through into the rest chain
                    chain(fresh(), rest, cont);
                }
                return;
            }
            // If / Choice with a rewind somewhere in a branch: give the rest
            // of the block a join label and rewire every branch to reach it.
            Cont join = rest.empty() ? as_explicit(cont) : Cont{Cont::Kind::Jump, fresh()};
            std::vector<std::pair<std::string, CommandSeq>> outlined;
            auto rewire = [&](const CommandSeq& s) -> CommandSeq {
                if (seq_has_rewind(s)) {
                    std::string lb = fresh();
                    outlined.emplace_back(lb, s);
                    return {Command::goto_(lb)};
                }
                CommandSeq s2 = splice_moves(s);
                if (seq_can_complete(s2)) s2.push_back(transfer_for(join));
                return s2;
            };
            Command head = c;
            head.seq_a = rewire(c.seq_a);
            head.seq_b = rewire(c.seq_b);
            cur.push_back(std::move(head));
            emit(label, std::move(cur));
            for (auto& [lb, s] : outlined) chain(lb, s, join);
            if (!rest.empty()) chain(join.label, rest, cont);
            return;
        }
        // No rewind in this sequence (a rest chain can be macro-free).
        if (cont.kind != Cont::Kind::Natural && seq_can_complete(cur))
            cur.push_back(transfer_for(cont));
        emit(label, std::move(cur));
    }
};

} // namespace detail

// Removes all sugar nodes. A program without sugar comes back unchanged, so
// the expansion is idempotent.
inline Program expand_macros(const Program& p) {
    if (!detail::program_has_sugar(p)) return p;
    return detail::Expander(p).run();
}

struct Classification {
    bool one_way = true;
    bool deterministic = true;
    int head_count = 1;

    bool operator==(const Classification&) const = default;
};

namespace detail {

inline void classify_seq(const CommandSeq& cmds, Classification& r) {
    for (const Command& c : cmds) {
        switch (c.kind) {
        case Command::Kind::Left: r.one_way = false; break;
        case Command::Kind::Choice:
            r.deterministic = false;
            classify_seq(c.seq_a, r);
            classify_seq(c.seq_b, r);
            break;
        case Command::Kind::If:
            classify_seq(c.seq_a, r);
            classify_seq(c.seq_b, r);
            break;
        default: break;
        }
    }
}

} // namespace detail

inline Classification classify(const Program& p) {
    Program q = expand_macros(p);
    Classification r;
    r.head_count = q.head_count;
    for (const Block& b : q.blocks) detail::classify_seq(b.cmds, r);
    return r;
}

} // namespace ppv
