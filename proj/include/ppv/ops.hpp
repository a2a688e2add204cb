#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppv/errors.hpp"

namespace ppv {

enum class User { X, Y, Z };

inline constexpr std::array<User, 3> all_users() { return {User::X, User::Y, User::Z}; }

inline char user_letter(User u) {
    switch (u) {
    case User::X: return 'X';
    case User::Y: return 'Y';
    case User::Z: return 'Z';
    }
    return '?';
}

// The 13 message operators: public-key encryption E_U, private-key decryption
// D_U, prepending a user's name P_U, matching and deleting a specific name
// M_U, and deleting any prepended name M.
enum class Op : int { EX, EY, EZ, DX, DY, DZ, PX, PY, PZ, MX, MY, MZ, M };

inline constexpr std::array<Op, 13> all_ops() {
    return {Op::EX, Op::EY, Op::EZ, Op::DX, Op::DY, Op::DZ, Op::PX,
            Op::PY, Op::PZ, Op::MX, Op::MY, Op::MZ, Op::M};
}

inline std::string op_token(Op o) {
    switch (o) {
    case Op::EX: return "EX";
    case Op::EY: return "EY";
    case Op::EZ: return "EZ";
    case Op::DX: return "DX";
    case Op::DY: return "DY";
    case Op::DZ: return "DZ";
    case Op::PX: return "PX";
    case Op::PY: return "PY";
    case Op::PZ: return "PZ";
    case Op::MX: return "MX";
    case Op::MY: return "MY";
    case Op::MZ: return "MZ";
    case Op::M: return "M";
    }
    return "?";
}

inline std::optional<Op> op_from_token(std::string_view s) {
    for (Op o : all_ops())
        if (op_token(o) == s) return o;
    return std::nullopt;
}

inline Op op_E(User u) { return u == User::X ? Op::EX : u == User::Y ? Op::EY : Op::EZ; }
inline Op op_D(User u) { return u == User::X ? Op::DX : u == User::Y ? Op::DY : Op::DZ; }
inline Op op_P(User u) { return u == User::X ? Op::PX : u == User::Y ? Op::PY : Op::PZ; }
inline Op op_M(User u) { return u == User::X ? Op::MX : u == User::Y ? Op::MY : Op::MZ; }

// The common operator set: everything except the three private decryptions.
// Order matches the self-loop block of the shipped tape listings.
inline const std::vector<Op>& common_ops() {
    static const std::vector<Op> v = {Op::EX, Op::PX, Op::MX, Op::EY, Op::PY,
                                      Op::MY, Op::EZ, Op::PZ, Op::MZ, Op::M};
    return v;
}

// What user U can apply: the common set plus U's own private decryption.
inline std::vector<Op> user_ops(User u) {
    std::vector<Op> v = common_ops();
    v.push_back(op_D(u));
    return v;
}

// Z is the saboteur; these label the self-loops on the target node.
inline const std::vector<Op>& saboteur_ops() {
    static const std::vector<Op> v = user_ops(User::Z);
    return v;
}

// A word of operators in application order: w[0] is applied to the text
// first. Printed displays use the reverse (composition) order.
using Word = std::vector<Op>;

inline std::string format_word(const Word& w, bool composition_order = false) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += op_token(composition_order ? w[w.size() - 1 - i] : w[i]);
    }
    return out;
}

// Ordered pairs (earlier, later): applying `later` directly after `earlier`
// erases both from the word.
struct CancelTable {
    std::vector<std::pair<Op, Op>> pairs;

    bool cancels(Op earlier, Op later) const {
        return std::find(pairs.begin(), pairs.end(), std::pair{earlier, later}) != pairs.end();
    }

    void add(Op earlier, Op later) {
        if (!cancels(earlier, later)) pairs.emplace_back(earlier, later);
    }

    // D_U E_U = E_U D_U = M_U P_U = M P_U = empty, for each user U. Note the
    // deliberate asymmetry: M_U P_U erases but P_U M_U does not.
    static CancelTable standard() {
        CancelTable t;
        for (User u : all_users()) {
            t.add(op_E(u), op_D(u));
            t.add(op_D(u), op_E(u));
        }
        for (User u : all_users()) {
            t.add(op_P(u), op_M(u));
            t.add(op_P(u), Op::M);
        }
        return t;
    }

    bool operator==(const CancelTable&) const = default;
};

// One pass, left to right: keep the still-unreduced prefix result on a stack
// and cancel each incoming operator against the most recent survivor. The
// word is fully erasable exactly when the result is empty.
inline Word reduce_word(const Word& w, const CancelTable& ct) {
    Word out;
    for (Op o : w) {
        if (!out.empty() && ct.cancels(out.back(), o)) out.pop_back();
        else out.push_back(o);
    }
    return out;
}

inline bool reduces_to_epsilon(const Word& w, const CancelTable& ct) {
    return reduce_word(w, ct).empty();
}

// One cancellation at a time for display purposes: each step deletes the
// leftmost adjacent (earlier, later) pair of the current word.
struct ReductionStep {
    Word before;  // application order
    size_t pos;   // before[pos], before[pos+1] is the canceled pair
};

inline std::vector<ReductionStep> reduction_trace(Word w, const CancelTable& ct) {
    std::vector<ReductionStep> steps;
    for (bool again = true; again;) {
        again = false;
        for (size_t i = 0; i + 1 < w.size(); ++i) {
            if (!ct.cancels(w[i], w[i + 1])) continue;
            steps.push_back(ReductionStep{w, i});
            w.erase(w.begin() + (long)i, w.begin() + (long)i + 2);
            again = true;
            break;
        }
    }
    return steps;
}

// Identity file: one "EARLIER LATER" token pair per line; blank lines and
// lines starting with '#' are skipped.
inline CancelTable parse_cancel_table(std::string_view text) {
    CancelTable t;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a) || a[0] == '#') continue;
        if (!(ls >> b) || (ls >> extra))
            throw Error("identity line must hold exactly two operator tokens: " + line);
        auto ea = op_from_token(a), lb = op_from_token(b);
        if (!ea) throw UnknownOperator(a);
        if (!lb) throw UnknownOperator(b);
        t.add(*ea, *lb);
    }
    return t;
}

inline std::string format_cancel_table(const CancelTable& ct) {
    std::string out;
    for (auto [e, l] : ct.pairs) {
        out += op_token(e);
        out += ' ';
        out += op_token(l);
        out += '\n';
    }
    return out;
}

} // namespace ppv
