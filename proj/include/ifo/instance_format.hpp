#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ifo/instance.hpp"

namespace ifo {

/// Diagnostic for a rejected instance file. line and column are 1-based;
/// column is 0 when the problem concerns the whole line or file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string reason_;
};

/// Line-oriented text format:
///
///   states N
///   events
///   <name> obs|unobs
///   transitions
///   <src> <event> <dst>
///   secret
///   <src> <dst>
///   nonsecret
///   <src> <dst>
///
/// States are 1..N in the file. `#` starts a comment. `states` comes first,
/// `events` precedes `transitions`, each section appears at most once, and
/// missing pair sections mean the empty set.
IfoInstance parse_instance(std::string_view text);

/// Canonical form: sections in the order above, entries sorted, single
/// spaces, `\n` line endings.
std::string write_instance(const IfoInstance& inst);

/// Reads and parses a file; I/O failures are reported as ParseError at line 0.
IfoInstance load_instance(const std::string& path);
void save_instance(const IfoInstance& inst, const std::string& path);

}  // namespace ifo
