#pragma once

#include <stdexcept>
#include <string>

namespace polysplit {

// A coefficient set failed its structural invariants (palindromy, lengths, sums).
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scheme file could not be parsed, or failed validation on load.
struct load_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested step sizes produced errors outside the asymptotic window
// (below the roundoff floor or above the regime where the slope is meaningful).
struct window_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A trajectory left the representable range.  Carries the time of blow-up and
// the work done up to that point so cost accounting stays meaningful.
class divergence_error : public std::runtime_error {
 public:
  divergence_error(double t, long long steps, long long force_evals)
      : std::runtime_error("trajectory diverged at t = " + std::to_string(t)),
        blow_up_time_(t),
        steps_(steps),
        force_evals_(force_evals) {}

  double blow_up_time() const noexcept { return blow_up_time_; }
  long long steps_completed() const noexcept { return steps_; }
  long long force_evals() const noexcept { return force_evals_; }

 private:
  double blow_up_time_;
  long long steps_;
  long long force_evals_;
};

}  // namespace polysplit
