#ifndef QFH_ERRORS_HPP
#define QFH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qfh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutOfValidityRange : Error {
  using Error::Error;
};
struct InvalidGeometry : Error {
  using Error::Error;
};
struct NonpositivePumpFrequency : Error {
  using Error::Error;
};
struct DegenerateDenominator : Error {
  using Error::Error;
};
struct NoBracket : Error {
  using Error::Error;
};
struct UnsupportedShape : Error {
  using Error::Error;
};
struct GridTooCoarse : Error {
  using Error::Error;
};
struct GridMismatch : Error {
  using Error::Error;
};
struct NumericalFailure : Error {
  using Error::Error;
};
struct WindowTooSmall : Error {
  using Error::Error;
};
struct ZeroInput : Error {
  using Error::Error;
};
struct ZeroField : Error {
  using Error::Error;
};
struct NotBracketed : Error {
  using Error::Error;
};
struct ConfigInvalid : Error {
  using Error::Error;
};
struct ComputeFailed : Error {
  using Error::Error;
};

}  // namespace qfh

#endif
