#pragma once

#include <stdexcept>
#include <string>

namespace eulerlab {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument / malformed value (bad exponent list, q < 2, ...).
class domain_error : public error {
public:
  explicit domain_error(const std::string& what) : error(what) {}
};

/// Mixing elements of different weights in one identity or combination.
class weight_mismatch_error : public error {
public:
  explicit weight_mismatch_error(const std::string& what) : error(what) {}
};

/// Identity collapsed to 0 = 0 after merging and cancellation.
class degenerate_identity_error : public error {
public:
  explicit degenerate_identity_error(const std::string& what) : error(what) {}
};

/// Text input that does not match a grammar; `position` is a 0-based offset.
class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

/// Catalog entry failed a consistency check at load time.
class integrity_error : public error {
public:
  explicit integrity_error(const std::string& what) : error(what) {}
};

/// Requested accuracy cannot be met with the given parameters.
class precision_error : public error {
public:
  explicit precision_error(const std::string& what) : error(what) {}
};

/// Enumeration would exceed the configured budget.
class budget_error : public error {
public:
  explicit budget_error(const std::string& what) : error(what) {}
};

class not_found_error : public error {
public:
  explicit not_found_error(const std::string& what) : error(what) {}
};

}  // namespace eulerlab
