#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tmsr {

/// Base of every error raised by the library. The message is prefixed with
/// the module that raised it, e.g. "calibration: rank-deficient design".
class Error : public std::runtime_error {
   public:
    Error(std::string_view module, const std::string &what);

    const std::string &module() const noexcept { return module_; }

   private:
    std::string module_;
};

/// An input lies outside the domain of the operation (negative noise, G < 1, ...).
class DomainError : public Error {
   public:
    using Error::Error;
};

/// A computation could not be completed (factorization failure, non-convergence).
class NumericalError : public Error {
   public:
    using Error::Error;
};

/// A least-squares fit failed. Subclasses may carry the best estimate found.
class FitError : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

}  // namespace tmsr
