#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fcbell {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class invalid_scenario : public error {
 public:
  using error::error;
};

class dimension_mismatch : public error {
 public:
  using error::error;
};

class index_error : public error {
 public:
  using error::error;
};

/// Thrown when a requested enumeration or expansion exceeds its cost guard.
/// Partial results are never produced; the estimate is carried for reporting.
class guard_exceeded : public error {
 public:
  guard_exceeded(const std::string& what, double estimate, double limit)
      : error(what), estimate_(estimate), limit_(limit) {}
  double estimate() const { return estimate_; }
  double limit() const { return limit_; }

 private:
  double estimate_;
  double limit_;
};

class schema_error : public error {
 public:
  using error::error;
};

class validation_error : public error {
 public:
  using error::error;
};

class precondition_error : public error {
 public:
  using error::error;
};

namespace detail {

/// Mathematical modulus: result always in [0, d).
inline int imod(long long value, int d) {
  long long r = value % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

/// Floor division, correct for negative numerators.
inline long long floordiv(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::uint64_t upow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Overflow-safe cost estimate of base^exp as a double.
inline double pow_estimate(double base, double exp) {
  return std::pow(base, exp);
}

}  // namespace detail

/// A Bell scenario: n parties, each with m settings of k outcomes.
/// Settings are labelled 0..m-1 and outcomes 0..k-1.
struct Scenario {
  int parties = 0;
  int settings = 0;
  int outcomes = 0;

  Scenario() = default;
  Scenario(int parties_, int settings_, int outcomes_)
      : parties(parties_), settings(settings_), outcomes(outcomes_) {
    if (parties < 2 || settings < 2 || outcomes < 2) {
      throw invalid_scenario("scenario requires parties, settings and outcomes all >= 2, got (" +
                             std::to_string(parties) + "," + std::to_string(settings) + "," +
                             std::to_string(outcomes) + ")");
    }
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;

  /// Number of joint settings vectors, m^n.
  std::uint64_t settings_vector_count() const {
    return detail::upow(static_cast<std::uint64_t>(settings), parties);
  }

  /// Number of joint outcome tuples, k^n.
  std::uint64_t outcome_tuple_count() const {
    return detail::upow(static_cast<std::uint64_t>(outcomes), parties);
  }
};

namespace detail {

/// Row-major flat index of a settings vector (party 1 most significant).
inline std::uint64_t settings_index(const Scenario& sc, std::span<const int> settings) {
  std::uint64_t idx = 0;
  for (int s : settings) idx = idx * sc.settings + static_cast<std::uint64_t>(s);
  return idx;
}

inline void index_to_settings(const Scenario& sc, std::uint64_t index, std::vector<int>& out) {
  out.resize(static_cast<std::size_t>(sc.parties));
  for (int i = sc.parties - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(index % sc.settings);
    index /= sc.settings;
  }
}

/// Advances a base-`base` odometer (last digit fastest). Returns false on wrap.
inline bool next_tuple(std::vector<int>& digits, int base) {
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (++*it < base) return true;
    *it = 0;
  }
  return false;
}

inline std::string settings_key(std::span<const int> settings) {
  std::string key;
  for (std::size_t i = 0; i < settings.size(); ++i) {
    if (i) key += ',';
    key += std::to_string(settings[i]);
  }
  return key;
}

}  // namespace detail

}  // namespace fcbell
