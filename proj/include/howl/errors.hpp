#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace howl {

/// Base class for all structured numerical/configuration errors.
/// `kind()` is a stable machine-readable tag ("resonance", "pole", ...),
/// `offending()` identifies the parameter or object that triggered it.
class Error : public std::runtime_error {
public:
  Error(std::string kind, std::string detail, std::string offending = {})
      : std::runtime_error(detail.empty() ? kind : kind + ": " + detail),
        kind_(std::move(kind)), detail_(std::move(detail)),
        offending_(std::move(offending)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::string& offending() const noexcept { return offending_; }

private:
  std::string kind_, detail_, offending_;
};

/// Unsupported root-system family/rank or malformed configuration.
class ConfigError : public Error {
public:
  ConfigError(std::string detail, std::string offending = {})
      : Error("config", std::move(detail), std::move(offending)) {}
};

/// Argument outside the mathematical domain (zero root, x <= 0, point not
/// in the required chamber, ...).
class DomainError : public Error {
public:
  DomainError(std::string detail, std::string offending = {})
      : Error("domain", std::move(detail), std::move(offending)) {}
};

/// Gamma-function pole hit by a prefactor; carries the integer that was hit
/// and which factor produced it.
class PoleError : public Error {
public:
  PoleError(std::string detail, long long integer_hit, std::string offending = {})
      : Error("pole", std::move(detail), std::move(offending)),
        integer_hit_(integer_hit) {}

  long long integer_hit() const noexcept { return integer_hit_; }

private:
  long long integer_hit_;
};

/// Series recurrence denominator too close to zero; names the lattice point.
class ResonanceError : public Error {
public:
  ResonanceError(std::string detail, std::vector<int> mu, double denom_abs)
      : Error("resonance", std::move(detail), format_mu(mu)),
        mu_(std::move(mu)), denom_abs_(denom_abs) {}

  const std::vector<int>& mu() const noexcept { return mu_; }
  double denom_abs() const noexcept { return denom_abs_; }

private:
  static std::string format_mu(const std::vector<int>& mu) {
    std::string s = "mu=(";
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(mu[i]);
    }
    return s + ")";
  }
  std::vector<int> mu_;
  double denom_abs_;
};

/// Requested accuracy not reached; carries the achieved estimate.
class AccuracyError : public Error {
public:
  AccuracyError(std::string detail, double achieved, std::string offending = {})
      : Error("accuracy", std::move(detail), std::move(offending)),
        achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

private:
  double achieved_;
};

} // namespace howl
