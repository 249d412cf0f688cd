#ifndef COARSETILER_ERRORS_HPP_
#define COARSETILER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace coarsetiler {

  // Every failure raised by the library carries one of these codes; the C API
  // maps them one-to-one onto ct_status values.
  enum class ErrorCode {
    invalid_argument,
    parse,
    validation,
    resource,
    unsolvable,
    unsupported,
    internal
  };

  char const* error_code_name(ErrorCode code) noexcept;

  class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, std::string const& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept {
      return code_;
    }

   private:
    ErrorCode code_;
  };

  // Thrown when a cap (vertices, group elements, tree leaves) is exceeded.
  // lower_bound() is the number of objects produced before giving up.
  class ResourceError : public Error {
   public:
    ResourceError(std::string const& what, unsigned long long lower_bound = 0)
        : Error(ErrorCode::resource, what), lower_bound_(lower_bound) {}

    unsigned long long lower_bound() const noexcept {
      return lower_bound_;
    }

   private:
    unsigned long long lower_bound_;
  };

}  // namespace coarsetiler

#endif  // COARSETILER_ERRORS_HPP_
