#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polylab {

/// Invalid mathematical input (wrong order shape, bad parameter, ...).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element index outside the geometry it was used with.
struct IndexError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct EmptyGeometryError : std::runtime_error {
    EmptyGeometryError() : std::runtime_error("empty geometry") {}
};

/// A precondition that callers must establish was violated.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// A constructor's self-check gate failed; the construction recipe is wrong.
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DescriptorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Something the underlying theory rules out happened anyway; indicates a bug.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct ExhaustedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A search hit its node budget or result limit. Never silent.
struct TruncatedError : std::runtime_error {
    std::uint64_t nodes;
    explicit TruncatedError(const std::string& what, std::uint64_t nodes_seen = 0)
        : std::runtime_error(what), nodes(nodes_seen) {}
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line_no, int col, const std::string& reason)
        : std::runtime_error("parse error at " + std::to_string(line_no) + ":" +
                             std::to_string(col) + ": " + reason),
          line(line_no),
          column(col) {}
};

}  // namespace polylab
