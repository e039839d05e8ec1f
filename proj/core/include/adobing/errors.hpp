#pragma once

#include <stdexcept>
#include <string>

namespace adobing {

// File/stream level failures (missing file, bad magic, truncated data).
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text content; carries the 1-based line number when known.
struct parse_error : io_error {
    parse_error(const std::string& what, int line_no = 0)
        : io_error(line_no > 0 ? what + " (line " + std::to_string(line_no) + ")" : what),
          line(line_no) {}
    int line;
};

// A computation could not proceed (degenerate inputs, empty sample sets, ...).
struct algorithm_error : std::runtime_error {
    explicit algorithm_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace adobing
