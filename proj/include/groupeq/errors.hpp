#pragma once

#include <stdexcept>
#include <string>

namespace groupeq {

// Base class for every error raised by the library.  Callers that want to
// distinguish "your input is wrong" from "the computation hit its budget"
// catch ParseError / BudgetError; everything else is a plain Error.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " at line " + std::to_string(line) + ", column " + std::to_string(col)),
          line_(line),
          col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

}  // namespace groupeq
