#pragma once

#include <stdexcept>
#include <string>

namespace aspstruct {

struct ParseError : std::runtime_error {
	int line;
	int col;
	ParseError(const std::string& msg, int line_, int col_)
	    : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
	      line(line_), col(col_) {}
};

struct PreconditionError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

// Budget overruns are reported as errors, never folded into a boolean result.
struct ResourceError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct VerificationError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

} // namespace aspstruct
