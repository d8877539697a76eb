#pragma once

#include <stdexcept>
#include <string>

namespace pstqec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedInput : public Error { using Error::Error; };
class CapacityError : public Error { using Error::Error; };
class IntegrityError : public Error { using Error::Error; };
class EncodingError : public Error { using Error::Error; };
class FrameError : public Error { using Error::Error; };
class NumericalError : public Error { using Error::Error; };
class PreconditionError : public Error { using Error::Error; };

}  // namespace pstqec
