#pragma once

#include <stdexcept>
#include <string>

namespace coxgrow {

// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text (.cox syntax, bad numbers). Carries line/column when known.
struct parse_error : error {
    int line = 0;
    int column = 0;
    parse_error(const std::string& msg, int ln = 0, int col = 0)
        : error(ln > 0 ? msg + " (line " + std::to_string(ln) +
                             (col > 0 ? ", column " + std::to_string(col) : "") + ")"
                       : msg),
          line(ln), column(col) {}
};

// Structurally invalid value (asymmetric matrix, bad diagonal, invalid subset, ...).
struct validation_error : error {
    using error::error;
};

// A configured resource cap (closure size, BFS element count) was exceeded.
struct resource_error : error {
    using error::error;
};

// A mathematical precondition does not hold (division by zero polynomial,
// root on the boundary circle, non-spherical type where spherical required).
struct domain_error : error {
    using error::error;
};

// A verification pipeline found a mismatch against expected data.
struct verify_error : error {
    using error::error;
};

}  // namespace coxgrow
