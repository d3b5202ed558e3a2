#pragma once

#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace roomkit {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ROOMKIT_ERROR_TYPE(Name)                                \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& msg) : Error(msg) {}       \
  };

ROOMKIT_ERROR_TYPE(DegenerateCloud)
ROOMKIT_ERROR_TYPE(EmptyCloud)
ROOMKIT_ERROR_TYPE(EmptyVolume)
ROOMKIT_ERROR_TYPE(ParseError)
ROOMKIT_ERROR_TYPE(IoError)
ROOMKIT_ERROR_TYPE(MissingFile)
ROOMKIT_ERROR_TYPE(IndexOutOfRange)
ROOMKIT_ERROR_TYPE(DimensionMismatch)
ROOMKIT_ERROR_TYPE(NoValidPixels)
ROOMKIT_ERROR_TYPE(TooSmall)
ROOMKIT_ERROR_TYPE(NonFinite)
ROOMKIT_ERROR_TYPE(MissingCategory)
ROOMKIT_ERROR_TYPE(UnknownCategory)
ROOMKIT_ERROR_TYPE(UnknownInstance)
ROOMKIT_ERROR_TYPE(InvalidArgument)
ROOMKIT_ERROR_TYPE(InvalidSpec)
ROOMKIT_ERROR_TYPE(CameraOutsideRoom)

#undef ROOMKIT_ERROR_TYPE

/// Non-fatal conditions (skipped directives, normalized quaternions, ...)
/// are reported through a process-wide handler. Default prints to stderr.
using WarningHandler = std::function<void(const std::string&)>;

inline WarningHandler& warning_handler() {
  static WarningHandler handler = [](const std::string& msg) {
    std::cerr << "[roomkit] warning: " << msg << "\n";
  };
  return handler;
}

inline void set_warning_handler(WarningHandler h) {
  warning_handler() = std::move(h);
}

inline void warn(const std::string& msg) {
  if (warning_handler()) warning_handler()(msg);
}

}  // namespace roomkit
