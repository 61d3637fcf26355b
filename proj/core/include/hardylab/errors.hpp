#pragma once

#include <stdexcept>
#include <string>

namespace hardylab {

// A setup whose relative angle on one side is a multiple of pi. The two
// directions on that side then share eigenvectors and no contradiction can be
// built on them.
class DegenerateSetup : public std::runtime_error {
 public:
  enum class Side { A, B };

  DegenerateSetup(Side side, double theta_deg)
      : std::runtime_error(
            std::string("degenerate setup: relative angle theta_") +
            (side == Side::A ? "1 (side a)" : "2 (side b)") + " = " +
            std::to_string(theta_deg) +
            " deg is a multiple of 180 deg"),
        side_(side) {}

  Side side() const { return side_; }

 private:
  Side side_;
};

// Raised when an inference chain is requested for a report whose conditions
// do not hold.
class NotAHardyState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when empirical frequencies are requested from statistics that lack
// trials for at least one setting pair.
class InsufficientSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an optimum fails the golden-mean characterization checks.
class NotGolden : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hardylab
