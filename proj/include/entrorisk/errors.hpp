#pragma once

#include <stdexcept>
#include <string>

namespace entrorisk {

// Degenerate data or parameters that make an estimate undefined
// (constant sample, too few observations, non-positive bandwidth, ...).
// The command line tool maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File access and format problems (missing file, malformed CSV, bad header).
// The command line tool maps these to exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace entrorisk
