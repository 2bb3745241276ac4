#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "fxsv/statespace.hpp"

namespace fxsv {

// Raw input file. `%` starts a comment that runs to end of line.
struct SpecFile {
  std::string text;
  std::string source_name = "<input>";
};

// Parse/validation failure with a source position.
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& source, int line, int col, const std::string& msg)
      : std::runtime_error(source + ":" + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

// A fully validated spec: the system plus the implementation format and the
// verification defaults that live in the file.
struct ParsedSpec {
  StateSpaceSystem system;
  uint32_t int_bits = 2;
  uint32_t frac_bits = 0;
  uint32_t bound = 10;
  std::optional<Rational> error_bound;

  bool operator==(const ParsedSpec& o) const;
};

// Grammar (a small subset of MATLAB assignment syntax):
//   file      := statement*
//   statement := ident ('.' ident)* '=' (number | matrix) ';'
//   matrix    := '[' row (';' row)* ']'
//   row       := number ((','|whitespace) number)*
//   number    := optionally signed decimal literal
// Recognized keys: A, B, C, D, K, implementation.int_bits,
// implementation.frac_bits, inputs.min, inputs.max, states.initial,
// error.bound, bound. Unknown and duplicate keys are hard errors.
// Every literal is stored as an exact rational.
ParsedSpec parse_spec(const SpecFile& file);

// Canonical rendering; parse_spec(pretty_print(s)) == s.
std::string pretty_print(const ParsedSpec& spec);

}  // namespace fxsv
