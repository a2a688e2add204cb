#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "helpers.hpp"
#include "ppv/gen.hpp"
#include "ppv/parse.hpp"
#include "ppv/sim.hpp"
#include "ppv/smallstep.hpp"

using namespace ppv;
using ppvtest::char_tape;
using ppvtest::data_path;
using ppvtest::digraph_tape;
using ppvtest::slurp;
using ppvtest::tape_of;

namespace {

bool brackets_balanced(const std::string& s) {
    int depth = 0;
    for (char c : s) {
        if (c == '(') depth++;
        else if (--depth < 0) return false;
    }
    return depth == 0;
}

// Replays the witness actions and checks that at every moment the stack holds
// at most one non-operator symbol, sitting on top. That is the shape the
// traversal loop relies on: the node being visited above, pending operators
// below.
bool node_stays_on_top(const Witness& w) {
    std::set<std::string> op_tokens;
    for (Op o : all_ops()) op_tokens.insert(op_token(o));
    std::vector<Symbol> stack;
    auto ok = [&]() {
        for (size_t i = 0; i < stack.size(); ++i)
            if (!op_tokens.count(stack[i]) && i + 1 != stack.size()) return false;
        return true;
    };
    for (const WitnessStep& s : w.steps) {
        if (s.action == WitnessStep::Action::Push) stack.push_back(s.pushed);
        if (s.action == WitnessStep::Action::Pop) {
            if (stack.empty()) return false;
            stack.pop_back();
        }
        if (!ok()) return false;
    }
    return true;
}

} // namespace

TEST_CASE("bracket matcher agrees with a counter") {
    Program p = parse_program(slurp(data_path("balanced.pda")));
    for (const std::string& s : {"", "()", "(())()", "((()))", "(()", "())", ")(", "((("}) {
        CAPTURE(s);
        CHECK(simulate(p, char_tape(s)).accepted == brackets_balanced(s));
    }
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> len(0, 12), ch(0, 1);
    for (int i = 0; i < 300; ++i) {
        std::string s;
        int n = len(rng);
        for (int k = 0; k < n; ++k) s.push_back(ch(rng) ? '(' : ')');
        CAPTURE(s);
        CHECK(simulate(p, char_tape(s)).accepted == brackets_balanced(s));
    }
}

TEST_CASE("path finding on hand-picked graphs") {
    Program p = gen_pathfinder();
    CHECK(simulate(p, parse_tape("> 0 1 <")).accepted);
    CHECK(simulate(p, parse_tape("> 0 2 2 3 3 1 <")).accepted);
    CHECK(simulate(p, parse_tape("> 3 1 0 2 2 3 <")).accepted); // 0-2-3-1, scattered
    CHECK_FALSE(simulate(p, parse_tape("> 1 0 <")).accepted);
    CHECK_FALSE(simulate(p, parse_tape("> <")).accepted);
    CHECK_FALSE(simulate(p, parse_tape("> 0 0 2 2 2 3 <")).accepted);
    CHECK(simulate(p, parse_tape("> 0 2 2 0 0 1 <")).accepted); // cycle on the way
}

TEST_CASE("path finding agrees with breadth-first search") {
    Program p = gen_pathfinder();
    std::mt19937 rng(5150);
    for (int i = 0; i < 150; ++i) {
        auto [n, edges] = ppvtest::random_digraph(rng);
        CAPTURE(i, n, edges.size());
        CHECK(simulate(p, digraph_tape(edges)).accepted == ppvtest::bfs_reachable(n, edges, 0, 1));
    }
}

TEST_CASE("summary engine agrees with whole-configuration enumeration") {
    Program p = gen_pathfinder();
    std::mt19937 rng(99);
    int undecided = 0;
    for (int i = 0; i < 60; ++i) {
        auto [n, edges] = ppvtest::random_digraph(rng, 5, 8);
        Tape t = digraph_tape(edges);
        auto brute = ppvtest::full_search(p, t);
        if (!brute) {
            undecided++;
            continue;
        }
        CAPTURE(i, edges.size());
        CHECK(simulate(p, t).accepted == *brute);
    }
    CHECK(undecided == 0);
}

TEST_CASE("verifier verdicts on the shipped tapes") {
    Program v = gen_verifier();
    CHECK(simulate(v, parse_tape(slurp(data_path("protocol1.tape")))).accepted);
    CHECK_FALSE(simulate(v, parse_tape(slurp(data_path("protocol2.tape")))).accepted);
    CHECK(simulate(v, parse_tape(slurp(data_path("protocol3.tape")))).accepted);
}

TEST_CASE("statistics are deterministic") {
    Program v = gen_verifier();
    Tape t = parse_tape(slurp(data_path("protocol2.tape")));
    Verdict a = simulate(v, t);
    Verdict b = simulate(v, t);
    CHECK(a.stats == b.stats);
    CHECK(a.stats.configs > 0);
    CHECK(a.stats.steps >= a.stats.configs);
}

TEST_CASE("witness replays as a real run") {
    Program v = gen_verifier();
    for (const char* name : {"protocol1.tape", "protocol3.tape"}) {
        Tape t = parse_tape(slurp(data_path(name)));
        Verdict vd = simulate(v, t, true);
        REQUIRE(vd.accepted);
        REQUIRE(vd.witness.has_value());
        const Witness& w = *vd.witness;
        RunResult rr = run_deterministic(v, t, w.choice_script, 1'000'000, true);
        CHECK(rr.status == RunStatus::Accepted);
        CHECK(rr.trace == w.steps);
        CHECK(node_stays_on_top(w));
    }
}

TEST_CASE("no witness on rejection") {
    Program v = gen_verifier();
    Verdict vd = simulate(v, parse_tape(slurp(data_path("protocol2.tape"))), true);
    CHECK_FALSE(vd.accepted);
    CHECK_FALSE(vd.witness.has_value());
}

TEST_CASE("unbounded pushers still terminate") {
    Program p = parse_program("init: push '0'; goto init");
    for (const Tape& t : {tape_of({}), tape_of({"a", "b", "c", "d"})}) {
        Verdict vd = simulate(p, t);
        CHECK_FALSE(vd.accepted);
        long long s = vd.stats.configs;
        CHECK(vd.stats.steps <= 2 * s * s + 16);
    }
    Program q = parse_program("init: push hd; right; goto init");
    CHECK_FALSE(simulate(q, tape_of({"a", "b"})).accepted);
}

TEST_CASE("choice explores both branches") {
    CHECK(simulate(parse_program("i: choice accept or reject end"), tape_of({})).accepted);
    CHECK(simulate(parse_program("i: choice reject or accept end"), tape_of({})).accepted);
    CHECK_FALSE(simulate(parse_program("i: choice reject or reject end"), tape_of({})).accepted);

    Program p = parse_program("i: choice accept or reject end");
    CHECK(run_deterministic(p, tape_of({}), {0}).status == RunStatus::Accepted);
    CHECK(run_deterministic(p, tape_of({}), {1}).status == RunStatus::Rejected);
    CHECK(run_deterministic(p, tape_of({}), {}).status == RunStatus::Stuck);
}

TEST_CASE("illegal moves kill the path instead of the machine") {
    CHECK_FALSE(simulate(parse_program("i: left; accept"), tape_of({"a"})).accepted);
    CHECK_FALSE(simulate(parse_program("i: pop; accept"), tape_of({"a"})).accepted);
    CHECK_FALSE(simulate(parse_program("i: push '>'; accept"), tape_of({"a"})).accepted);
    CHECK_FALSE(simulate(parse_program("i: push '<'; accept"), tape_of({"a"})).accepted);
    CHECK_FALSE(
        simulate(parse_program("i: push '\xe2\x8a\xa5'; accept"), tape_of({"a"})).accepted);
    CHECK_FALSE(simulate(parse_program("i: right; right; accept"), tape_of({})).accepted);
}

TEST_CASE("termination without accept rejects") {
    CHECK_FALSE(simulate(parse_program("i: skip"), tape_of({})).accepted);
    CHECK_FALSE(simulate(parse_program("i: right"), tape_of({})).accepted);
    CHECK(simulate(parse_program("i: push '0'; accept"), tape_of({})).accepted);
}

TEST_CASE("acceptance does not require an empty stack or a parked head") {
    Program p = parse_program("i: push 'x'; push 'y'; right; accept");
    CHECK(simulate(p, tape_of({"a"})).accepted);
}

TEST_CASE("two-head programs run under the summary engine") {
    Program pal = parse_program(R"(heads: 2
init:   right;
        goto park
park:   if rightend2 then skip else right2; goto park end
main:   left2;
        if rightend then accept end;
        if hd = hd2 then skip else reject end;
        right;
        goto main
)");
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> len(0, 6), ch(0, 1);
    for (int i = 0; i < 50; ++i) {
        std::string s;
        int n = len(rng);
        for (int k = 0; k < n; ++k) s.push_back(ch(rng) ? 'a' : 'b');
        Tape t = char_tape(s);
        CAPTURE(s);
        CHECK(simulate(pal, t).accepted ==
              (run_deterministic(pal, t, {}).status == RunStatus::Accepted));
    }
}
