#ifndef HERIT_ERRORS_HPP
#define HERIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace herit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct InvalidConfig : Error {
  using Error::Error;
};

struct AllColumnsConstant : Error {
  AllColumnsConstant() : Error("no non-constant genotype column survives standardization") {}
};

struct DegenerateDesign : Error {
  using Error::Error;
};

struct DegenerateLikelihood : Error {
  using Error::Error;
};

struct EmptySelection : Error {
  using Error::Error;
};

struct EmptyTrueSupport : Error {
  EmptyTrueSupport() : Error("true effect vector has no non-zero component") {}
};

// CSV / config parse failure, carries a 1-based location.
struct ParseError : Error {
  long line = 0;
  long column = 0;
  ParseError(const std::string& msg, long line_, long column_ = 0)
      : Error(msg), line(line_), column(column_) {}
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace herit

#endif
