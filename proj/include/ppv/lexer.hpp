#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ppv/errors.hpp"

namespace ppv {

struct Token {
    enum class Kind {
        Ident,
        Number,
        Quoted, // 'EX', '0', ...
        Colon,
        Semi,
        Minus,
        Equal,
        AndAnd, // && or U+2227
        OrOr,   // || or U+2228
        LParen,
        RParen,
        Eof,
    };

    Kind kind = Kind::Eof;
    std::string text; // identifier body or quoted payload
    long number = 0;
    int line = 1;
    int col = 1;
};

namespace detail {

inline bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool ident_char(char c) {
    return ident_start(c) || (c >= '0' && c <= '9');
}
inline bool digit(char c) { return c >= '0' && c <= '9'; }

} // namespace detail

// Whitespace separates tokens; comments are "(* ... *)" and may nest. A '('
// not followed by '*' is a grouping parenthesis. Identifiers may contain
// interior hyphens ("move-to-leftend"), but a hyphen after a number is the
// "k-right"/"k-left" shorthand and is produced as a separate Minus token.
inline std::vector<Token> lex_program(std::string_view src) {
    std::vector<Token> out;
    size_t i = 0;
    int line = 1, col = 1;

    auto advance = [&](size_t k) {
        for (size_t j = 0; j < k; ++j) {
            if (i < src.size() && src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    auto make = [&](Token::Kind k, int l, int c) {
        Token t;
        t.kind = k;
        t.line = l;
        t.col = c;
        return t;
    };

    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
            advance(1);
            continue;
        }
        if (c == '(' && i + 1 < src.size() && src[i + 1] == '*') {
            int l = line, cl = col;
            advance(2);
            int depth = 1;
            while (i < src.size() && depth > 0) {
                if (src[i] == '(' && i + 1 < src.size() && src[i + 1] == '*') {
                    depth++;
                    advance(2);
                } else if (src[i] == '*' && i + 1 < src.size() && src[i + 1] == ')') {
                    depth--;
                    advance(2);
                } else {
                    advance(1);
                }
            }
            if (depth > 0) throw SyntaxError(l, cl, "unterminated comment");
            continue;
        }
        int l = line, cl = col;
        switch (c) {
        case ':': out.push_back(make(Token::Kind::Colon, l, cl)); advance(1); continue;
        case ';': out.push_back(make(Token::Kind::Semi, l, cl)); advance(1); continue;
        case '-': out.push_back(make(Token::Kind::Minus, l, cl)); advance(1); continue;
        case '=': out.push_back(make(Token::Kind::Equal, l, cl)); advance(1); continue;
        case '(': out.push_back(make(Token::Kind::LParen, l, cl)); advance(1); continue;
        case ')': out.push_back(make(Token::Kind::RParen, l, cl)); advance(1); continue;
        default: break;
        }
        if (c == '&' && i + 1 < src.size() && src[i + 1] == '&') {
            out.push_back(make(Token::Kind::AndAnd, l, cl));
            advance(2);
            continue;
        }
        if (c == '|' && i + 1 < src.size() && src[i + 1] == '|') {
            out.push_back(make(Token::Kind::OrOr, l, cl));
            advance(2);
            continue;
        }
        // UTF-8 for the connective aliases: U+2227 = e2 88 a7, U+2228 = e2 88 a8
        if ((unsigned char)c == 0xe2 && i + 2 < src.size() &&
            (unsigned char)src[i + 1] == 0x88) {
            unsigned char b3 = (unsigned char)src[i + 2];
            if (b3 == 0xa7) {
                out.push_back(make(Token::Kind::AndAnd, l, cl));
                advance(3);
                continue;
            }
            if (b3 == 0xa8) {
                out.push_back(make(Token::Kind::OrOr, l, cl));
                advance(3);
                continue;
            }
        }
        if (c == '\'') {
            advance(1);
            size_t start = i;
            while (i < src.size() && src[i] != '\'' && src[i] != '\n') advance(1);
            if (i >= src.size() || src[i] != '\'')
                throw SyntaxError(l, cl, "unterminated symbol constant");
            Token t = make(Token::Kind::Quoted, l, cl);
            t.text.assign(src.substr(start, i - start));
            advance(1);
            if (t.text.empty()) throw SyntaxError(l, cl, "empty symbol constant");
            out.push_back(std::move(t));
            continue;
        }
        if (detail::digit(c)) {
            size_t start = i;
            while (i < src.size() && detail::digit(src[i])) advance(1);
            Token t = make(Token::Kind::Number, l, cl);
            t.text.assign(src.substr(start, i - start));
            t.number = std::stol(t.text);
            out.push_back(std::move(t));
            continue;
        }
        if (detail::ident_start(c)) {
            size_t start = i;
            while (i < src.size()) {
                if (detail::ident_char(src[i])) {
                    advance(1);
                } else if (src[i] == '-' && i + 1 < src.size() && detail::ident_char(src[i + 1])) {
                    advance(1); // hyphen inside an identifier
                } else {
                    break;
                }
            }
            Token t = make(Token::Kind::Ident, l, cl);
            t.text.assign(src.substr(start, i - start));
            out.push_back(std::move(t));
            continue;
        }
        throw SyntaxError(l, cl, std::string("unexpected character '") + c + "'");
    }
    out.push_back(make(Token::Kind::Eof, line, col));
    return out;
}

} // namespace ppv
