#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ppv/errors.hpp"
#include "ppv/ops.hpp"

namespace ppv {

// Operators over the role placeholders A (initiator) and B (recipient),
// resolved to concrete users when a protocol step is instantiated.
enum class RoleOp { EA, EB, DA, DB, PA, PB, MA, MB, M };

inline constexpr std::array<RoleOp, 9> all_role_ops() {
    return {RoleOp::EA, RoleOp::EB, RoleOp::DA, RoleOp::DB, RoleOp::PA,
            RoleOp::PB, RoleOp::MA, RoleOp::MB, RoleOp::M};
}

inline std::string role_op_token(RoleOp r) {
    switch (r) {
    case RoleOp::EA: return "EA";
    case RoleOp::EB: return "EB";
    case RoleOp::DA: return "DA";
    case RoleOp::DB: return "DB";
    case RoleOp::PA: return "PA";
    case RoleOp::PB: return "PB";
    case RoleOp::MA: return "MA";
    case RoleOp::MB: return "MB";
    case RoleOp::M: return "M";
    }
    return "?";
}

inline std::optional<RoleOp> role_op_from_token(std::string_view s) {
    for (RoleOp r : all_role_ops())
        if (role_op_token(r) == s) return r;
    return std::nullopt;
}

// Application order, like Word: ops[0] is applied to the text first.
using RoleWord = std::vector<RoleOp>;

// A two-step ping-pong protocol: the initiator applies alpha1 and sends; the
// recipient applies alpha2 to whatever it received and sends back.
struct Protocol {
    RoleWord alpha1;
    RoleWord alpha2;

    bool operator==(const Protocol&) const = default;
};

inline Word instantiate(const RoleWord& w, User a, User b) {
    if (a == b) throw RoleClash();
    Word out;
    out.reserve(w.size());
    for (RoleOp r : w) {
        switch (r) {
        case RoleOp::EA: out.push_back(op_E(a)); break;
        case RoleOp::EB: out.push_back(op_E(b)); break;
        case RoleOp::DA: out.push_back(op_D(a)); break;
        case RoleOp::DB: out.push_back(op_D(b)); break;
        case RoleOp::PA: out.push_back(op_P(a)); break;
        case RoleOp::PB: out.push_back(op_P(b)); break;
        case RoleOp::MA: out.push_back(op_M(a)); break;
        case RoleOp::MB: out.push_back(op_M(b)); break;
        case RoleOp::M: out.push_back(Op::M); break;
        }
    }
    return out;
}

// File format: two lines, "alpha1: <tokens>" and "alpha2: <tokens>", tokens
// written right-to-left (composition order, as the words are convention-
// ally displayed); they are reversed into application order on the way in.
inline Protocol parse_protocol(std::string_view text) {
    std::optional<RoleWord> a1, a2;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key[0] == '#') continue;
        if (key != "alpha1:" && key != "alpha2:")
            throw SyntaxError(lineno, 1, "expected 'alpha1:' or 'alpha2:'");
        RoleWord w;
        std::string tok;
        while (ls >> tok) {
            auto r = role_op_from_token(tok);
            if (!r) throw UnknownOperator(tok);
            w.push_back(*r);
        }
        if (w.empty()) throw SyntaxError(lineno, 1, key + " must name at least one operator");
        std::reverse(w.begin(), w.end());
        (key == "alpha1:" ? a1 : a2) = std::move(w);
    }
    if (!a1 || !a2) throw Error("protocol file must define both alpha1 and alpha2");
    return Protocol{std::move(*a1), std::move(*a2)};
}

inline std::string format_protocol(const Protocol& p) {
    auto render = [](const char* key, const RoleWord& w) {
        std::string out = key;
        for (size_t i = w.size(); i-- > 0;) {
            out += ' ';
            out += role_op_token(w[i]);
        }
        out += '\n';
        return out;
    };
    return render("alpha1:", p.alpha1) + render("alpha2:", p.alpha2);
}

// The three shipped example protocols. In composition order they read:
//   1:  alpha1 = EB,        alpha2 = EA DB        (insecure)
//   2:  alpha1 = EB PA,     alpha2 = EA MA DB     (secure)
//   3:  alpha1 = EB PA EB,  alpha2 = EA DB MA DB  (insecure)
inline Protocol protocol1() {
    return Protocol{{RoleOp::EB}, {RoleOp::DB, RoleOp::EA}};
}
inline Protocol protocol2() {
    return Protocol{{RoleOp::PA, RoleOp::EB}, {RoleOp::DB, RoleOp::MA, RoleOp::EA}};
}
inline Protocol protocol3() {
    return Protocol{{RoleOp::EB, RoleOp::PA, RoleOp::EB},
                    {RoleOp::DB, RoleOp::MA, RoleOp::DB, RoleOp::EA}};
}

} // namespace ppv
