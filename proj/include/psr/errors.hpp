#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace psr {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct SingularTransform : Error {
  using Error::Error;
};

struct NotStandardForm : Error {
  NotStandardForm(const std::string& what, double worst) : Error(what), worst_offender(worst) {}
  double worst_offender;
};

struct NotHyperbolic : Error {
  using Error::Error;
};

struct NoClosedHorizon : Error {
  using Error::Error;
};

struct ExtrapolationUnstable : Error {
  ExtrapolationUnstable(const std::string& what, std::vector<double> per_coeff)
      : Error(what), per_coefficient_estimates(std::move(per_coeff)) {}
  std::vector<double> per_coefficient_estimates;
};

struct NoCatalogMatch : Error {
  using Error::Error;
};

struct OutsideDomain : Error {
  using Error::Error;
};

struct NotConverged : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct SchemaError : Error {
  using Error::Error;
};

}  // namespace psr
