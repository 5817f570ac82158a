// Copyright 2026 the dpmsr authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dpmsr {

// Raised when an exact (exhaustive) computation is refused because the
// input exceeds the enumeration cap.
class GraphTooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File system / parse failures; the message names the offending path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dpmsr
