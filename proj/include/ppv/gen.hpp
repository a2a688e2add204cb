#pragma once

#include <string>
#include <vector>

#include "ppv/ast.hpp"
#include "ppv/ops.hpp"

namespace ppv {

// Nondeterministic source-to-target pathfinder over a tape of 2-symbol edges
// "> u1 v1 ... un vn <". The current node is kept on top of the stack; the
// main loop cycles over the edges, guessing for each edge that leaves the
// current node whether to traverse or skip it.
inline Program gen_pathfinder() {
    using C = Command;
    Program p;
    p.blocks.push_back(Block{"init", {C::push(SymExpr::constant("0")), C::right()}});

    CommandSeq traverse = {
        C::pop(),
        C::right(),
        C::if_then(BoolExpr::eq(SymExpr::hd(), SymExpr::constant("1")), {C::accept()}),
        C::push(SymExpr::hd()),
        C::right(),
    };
    CommandSeq skip_edge = {C::multi_move(2, true)};

    p.blocks.push_back(Block{
        "loop",
        {
            C::if_else(BoolExpr::eq(SymExpr::top(), SymExpr::hd()),
                       {C::choice(std::move(traverse), std::move(skip_edge))},
                       {C::multi_move(2, true)}),
            C::if_then(BoolExpr::rightend(), {C::move_to_leftend()}),
            C::goto_("loop"),
        },
    });
    return p;
}

// The pathfinder adapted to 3-symbol operator-labeled edges: when an edge is
// traversed, its operator either cancels against the most recent unreduced
// operator (kept below the current node on the stack) or is recorded on the
// stack itself. Acceptance needs the target node with nothing left on the
// stack, i.e. a fully reducible source-to-target word.
inline Program gen_verifier(const CancelTable& ct = CancelTable::standard()) {
    using C = Command;
    Program p;
    p.blocks.push_back(Block{"init", {C::push(SymExpr::constant("0")), C::right()}});

    // one disjunct per identity: the edge operator under the head closes the
    // pair that the operator on the stack opened
    Command reduce = C::push(SymExpr::hd());
    if (!ct.pairs.empty()) {
        BoolExpr test;
        bool first = true;
        for (auto [earlier, later] : ct.pairs) {
            BoolExpr d = BoolExpr::conj(
                BoolExpr::eq(SymExpr::hd(), SymExpr::constant(op_token(later))),
                BoolExpr::eq(SymExpr::top(), SymExpr::constant(op_token(earlier))));
            test = first ? std::move(d) : BoolExpr::disj(std::move(test), std::move(d));
            first = false;
        }
        reduce = C::if_else(std::move(test), {C::pop()}, {C::push(SymExpr::hd())});
    }

    CommandSeq traverse = {
        C::pop(),
        C::right(),
        std::move(reduce),
        C::right(),
        C::if_then(BoolExpr::conj(BoolExpr::eq(SymExpr::hd(), SymExpr::constant("1")),
                                  BoolExpr::bottom()),
                   {C::accept()}),
        C::push(SymExpr::hd()),
        C::right(),
    };
    CommandSeq skip_edge = {C::multi_move(3, true)};

    p.blocks.push_back(Block{
        "loop",
        {
            C::if_else(BoolExpr::eq(SymExpr::top(), SymExpr::hd()),
                       {C::choice(std::move(traverse), std::move(skip_edge))},
                       {C::multi_move(3, true)}),
            C::if_then(BoolExpr::rightend(), {C::move_to_leftend()}),
            C::goto_("loop"),
        },
    });
    return p;
}

} // namespace ppv
