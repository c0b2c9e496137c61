#ifndef VCIA_ERRORS_HPP
#define VCIA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vcia {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Malformed presence-condition text or model file.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t position,
              std::string expected = {}, const std::string& context = {})
      : Error(message + " at position " + std::to_string(position) +
              (expected.empty() ? "" : " (expected " + expected + ")") +
              (context.empty() ? "" : " in " + context)),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

/// A presence condition or configuration names an undeclared feature.
class UnknownFeatureError : public Error {
 public:
  static constexpr std::size_t kNoPosition = static_cast<std::size_t>(-1);

  explicit UnknownFeatureError(std::string feature,
                               std::size_t position = kNoPosition,
                               const std::string& context = {})
      : Error("unknown feature '" + feature + "'" +
              (position == kNoPosition
                   ? ""
                   : " at position " + std::to_string(position)) +
              (context.empty() ? "" : " in " + context)),
        feature_(std::move(feature)),
        position_(position) {}

  const std::string& feature() const { return feature_; }
  std::size_t position() const { return position_; }

 private:
  std::string feature_;
  std::size_t position_;
};

/// The feature space is too large for configuration enumeration.
class TooManyFeaturesError : public Error {
 public:
  TooManyFeaturesError(std::size_t count, std::size_t cap)
      : Error("feature space has " + std::to_string(count) +
              " features, exceeding the enumeration cap of " +
              std::to_string(cap)) {}
};

/// A configuration does not satisfy the feature model.
class InvalidConfigError : public Error {
 public:
  explicit InvalidConfigError(const std::string& message) : Error(message) {}
};

/// File could not be read or written.
class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(message) {}
};

/// An edge, link, or delta entry names an element that is not mapped.
class DanglingReferenceError : public Error {
 public:
  explicit DanglingReferenceError(const std::string& message)
      : Error(message) {}
};

/// A slicing criterion element is not part of the sliced model.
class CriterionNotInModelError : public Error {
 public:
  explicit CriterionNotInModelError(const std::string& element)
      : Error("slicing criterion element '" + element +
              "' is not in the model") {}
};

/// An annotation request names an element outside the GSN model.
class UnknownElementError : public Error {
 public:
  explicit UnknownElementError(const std::string& element)
      : Error("element '" + element + "' is not in the GSN model") {}
};

struct Diagnostic;

/// Analysis was requested on inputs that fail validation.
class ValidationFailedError : public Error {
 public:
  ValidationFailedError(const std::string& message,
                        std::vector<std::string> details)
      : Error(message), details_(std::move(details)) {}

  /// Rendered diagnostics, one per offending finding.
  const std::vector<std::string>& details() const { return details_; }

 private:
  std::vector<std::string> details_;
};

}  // namespace vcia

#endif  // VCIA_ERRORS_HPP
