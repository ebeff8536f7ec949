#pragma once

#include <stdexcept>
#include <string>

namespace solnscope {

// Base of every typed failure raised by the engine.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual const char* kind() const noexcept { return "Error"; }
};

#define SOLNSCOPE_ERROR(Name)                                              \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& what) : Error(what) {}            \
        const char* kind() const noexcept override { return #Name; }       \
    };

SOLNSCOPE_ERROR(EmptySet)
SOLNSCOPE_ERROR(UnsupportedIntersection)
SOLNSCOPE_ERROR(UnsupportedProjection)
SOLNSCOPE_ERROR(UnsupportedSet)
SOLNSCOPE_ERROR(DomainViolation)
SOLNSCOPE_ERROR(UnsupportedProblem)
SOLNSCOPE_ERROR(Undecidable)
SOLNSCOPE_ERROR(PreconditionFail)
SOLNSCOPE_ERROR(UnionNotFinite)
SOLNSCOPE_ERROR(SizeLimit)
SOLNSCOPE_ERROR(AllInfinite)
SOLNSCOPE_ERROR(NoProx)
SOLNSCOPE_ERROR(DimensionError)
SOLNSCOPE_ERROR(UnknownAtom)

#undef SOLNSCOPE_ERROR

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    const char* kind() const noexcept override { return "ParseError"; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace solnscope
