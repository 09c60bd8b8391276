#pragma once

#include <stdexcept>
#include <string>

namespace rydhet {

/// Invalid physical input (non-positive rate, NaN field, ...).
class DomainError : public std::domain_error {
public:
  DomainError(std::string field, const std::string& what)
      : std::domain_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

/// A closed form was called outside the assumption set it was derived under.
class ContractError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Linear solve or objective evaluation failed.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what, double detail = 0.0)
      : std::runtime_error(what), detail_(detail) {}
  /// Condition estimate, offending abscissa, or similar context value.
  double detail() const noexcept { return detail_; }

private:
  double detail_;
};

/// Exponent or other intermediate outside the representable range.
class RangeError : public std::range_error {
public:
  using std::range_error::range_error;
};

class IntegrationError : public std::runtime_error {
public:
  IntegrationError(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}
  double last_good_time() const noexcept { return last_good_time_; }

private:
  double last_good_time_;
};

class TimeoutError : public std::runtime_error {
public:
  TimeoutError(const std::string& what, double horizon)
      : std::runtime_error(what), horizon_(horizon) {}
  double horizon() const noexcept { return horizon_; }

private:
  double horizon_;
};

/// Closed form and numerical cross-check disagree.
class ConsistencyError : public std::runtime_error {
public:
  ConsistencyError(const std::string& what, double closed_form, double numerical)
      : std::runtime_error(what), closed_form_(closed_form), numerical_(numerical) {}
  double closed_form() const noexcept { return closed_form_; }
  double numerical() const noexcept { return numerical_; }

private:
  double closed_form_;
  double numerical_;
};

/// Bad configuration document; field() names the JSON path.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace rydhet
