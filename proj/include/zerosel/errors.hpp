#ifndef ZEROSEL_ERRORS_HPP
#define ZEROSEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zerosel {

// Contract violations (bad dimensions, out-of-range parameters) throw
// std::invalid_argument. The classes below separate the remaining failure
// modes so the C API can map them to distinct status codes.

class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace zerosel

#endif
