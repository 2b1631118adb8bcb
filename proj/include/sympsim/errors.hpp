#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace sympsim {

// Stable failure taxonomy. Every library error carries one of these codes so
// callers (tests, the CLI exit-code mapping) can dispatch without parsing
// message strings.
enum class errc {
  not_hermitian,
  not_unitary,
  not_symplectic,
  not_embedding_image,
  not_in_intersection,
  not_square,
  odd_dimension,
  dim_mismatch,
  non_finite,
  inner_solve_diverged,
  invalid_interval,
  target_out_of_range,
  duplicate_target,
  mode_out_of_range,
  duplicate_mode,
  kind_mismatch,
  syntax_error,
  unknown_gate,
  arity_mismatch,
  missing_header,
  symplectic_gate_on_complex_backend,
  zero_norm_state,
  zero_shots,
  io_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(errc code, const std::string& message, double deviation)
      : std::runtime_error(message), code_(code), deviation_(deviation) {}

  errc code() const noexcept { return code_; }
  // Numeric distance from the violated condition, when meaningful.
  double deviation() const noexcept { return deviation_; }

 private:
  errc code_;
  double deviation_ = std::numeric_limits<double>::quiet_NaN();
};

// Circuit-text diagnostics always point at the offending line (1-based).
class ParseError : public Error {
 public:
  ParseError(errc code, int line, int column, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ", col " +
                        std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace sympsim
