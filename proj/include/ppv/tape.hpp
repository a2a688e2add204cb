#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ppv/ast.hpp"
#include "ppv/errors.hpp"

namespace ppv {

// A tape is a token vector enclosed in the two endmarkers. Heads start on the
// left endmarker and can never be moved off either end.
struct Tape {
    std::vector<Symbol> cells;

    size_t size() const { return cells.size(); }
    bool operator==(const Tape&) const = default;
};

inline Tape make_tape(std::vector<Symbol> cells) {
    if (cells.size() < 2 || cells.front() != left_endmarker)
        throw MissingEndmarker("tape must start with '" + left_endmarker + "'");
    if (cells.back() != right_endmarker)
        throw MissingEndmarker("tape must end with '" + right_endmarker + "'");
    for (size_t i = 1; i + 1 < cells.size(); ++i) {
        if (cells[i] == left_endmarker || cells[i] == right_endmarker)
            throw MalformedEdge("endmarker in tape interior at cell " + std::to_string(i));
        if (cells[i] == bottom_marker)
            throw MalformedEdge("bottom marker cannot appear on a tape");
        if (cells[i].empty()) throw MalformedEdge("empty tape token");
    }
    Tape t;
    t.cells = std::move(cells);
    return t;
}

inline Tape parse_tape(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Symbol> cells;
    std::string tok;
    while (in >> tok) cells.push_back(tok);
    return make_tape(std::move(cells));
}

inline std::string format_tape(const Tape& t) {
    std::string out;
    for (size_t i = 0; i < t.cells.size(); ++i) {
        if (i) out += ' ';
        out += t.cells[i];
    }
    out += '\n';
    return out;
}

} // namespace ppv
