#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "lpdec/tanner_code.hpp"

namespace lpdec {

// Parse failure with the 1-based line it was detected on.
class AlistError : public std::runtime_error {
 public:
  AlistError(int line, const std::string& what)
      : std::runtime_error("alist line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// MacKay alist format. Layout: "n m", "max_var_deg max_chk_deg", n variable
// degrees, m check degrees, then n per-variable check lists and m per-check
// variable lists, 1-based, optionally 0-padded up to the max degree.
// Zero entries are padding and are ignored; duplicate indices within a row
// are rejected. The per-variable and per-check lists must describe the same
// adjacency.
TannerCode parse_alist(std::istream& in);
TannerCode parse_alist(const std::string& text);
TannerCode parse_alist_file(const std::string& path);

// Canonical form: rows ascending, space-separated, no padding zeros, one
// trailing newline. write_alist(parse_alist(t)) == t for canonical t.
std::string write_alist(const TannerCode& code);

}  // namespace lpdec
