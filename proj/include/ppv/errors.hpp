#pragma once

#include <stdexcept>
#include <string>

namespace ppv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- program text errors ---

struct SyntaxError : Error {
    int line = 0;
    int col = 0;
    SyntaxError(int l, int c, const std::string& what_arg)
        : Error("syntax error at " + std::to_string(l) + ":" + std::to_string(c) + ": " + what_arg),
          line(l), col(c) {}
};

struct DuplicateLabel : Error {
    explicit DuplicateLabel(const std::string& label)
        : Error("duplicate label '" + label + "'") {}
};

struct UndefinedLabel : Error {
    explicit UndefinedLabel(const std::string& label)
        : Error("goto names no block: '" + label + "'") {}
};

struct BadHeadIndex : Error {
    BadHeadIndex(int index, int head_count)
        : Error("head index " + std::to_string(index) + " exceeds declared head count " +
                std::to_string(head_count)) {}
};

// --- protocol / tape errors ---

struct RoleClash : Error {
    RoleClash() : Error("role instantiation requires two distinct users") {}
};

struct TooManyNodes : Error {
    explicit TooManyNodes(const std::string& node)
        : Error("node id '" + node + "' is not encodable as a tape symbol") {}
};

struct MalformedEdge : Error {
    using Error::Error;
};

struct UnknownOperator : Error {
    explicit UnknownOperator(const std::string& tok)
        : Error("unknown operator token '" + tok + "'") {}
};

struct MissingEndmarker : Error {
    using Error::Error;
};

} // namespace ppv
