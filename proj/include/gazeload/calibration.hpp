#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gazeload/frames.hpp"

namespace gazeload {

// Per-user pupil range established by the light-reflex phase: constricted
// diameter under bright light, dilated diameter after the dim switch.
struct CalibrationProfile {
  double d_min = 0.0;            // mm, 5th percentile of the bright phase
  double d_max = 0.0;            // mm, 95th percentile of the dim phase
  std::int64_t created_ts = 0;   // microseconds, device clock
  int bright_count = 0;
  int dim_count = 0;

  bool operator==(const CalibrationProfile&) const = default;
};

enum class CalibrationError : std::uint8_t {
  insufficient_data,  // fewer than kMinPhaseFrames valid frames in a phase
  range_too_small,    // d_max - d_min below kMinRangeMm: no usable reflex
};

std::string_view to_string(CalibrationError e);

using CalibrationOutcome = std::variant<CalibrationProfile, CalibrationError>;

inline constexpr int kMinPhaseFrames = 20;
inline constexpr double kMinRangeMm = 0.3;
inline constexpr double kSettleSeconds = 1.0;

// Percentile by linear interpolation between order statistics
// (h = (n-1)*p/100). Values are copied and sorted internally, so the
// result is order-insensitive. Requires a non-empty input.
double percentile_linear(std::vector<double> values, double pct);

// Derives the profile from the two phase sample sets. Fails with
// insufficient_data below kMinPhaseFrames per phase and range_too_small
// when the reflex spans less than kMinRangeMm.
CalibrationOutcome compute_profile(const std::vector<double>& bright,
                                   const std::vector<double>& dim,
                                   std::int64_t created_ts);

// Splits a live frame stream into the bright and dim collection windows.
// Phase boundaries are relative to the first frame fed; the first
// kSettleSeconds of each phase are discarded to let the reflex settle.
class CalibrationCollector {
 public:
  CalibrationCollector(double bright_duration_s = 5.0,
                       double dim_duration_s = 5.0,
                       double settle_s = kSettleSeconds);

  // Feeds one valid merged frame; returns false once collection is complete
  // (the frame at or past the end of the dim phase is not consumed).
  bool feed(const FrameSample& f);

  bool done() const { return done_; }
  const std::vector<double>& bright() const { return bright_; }
  const std::vector<double>& dim() const { return dim_; }
  std::int64_t last_ts() const { return last_ts_; }

 private:
  std::int64_t bright_end_us_;
  std::int64_t dim_end_us_;
  std::int64_t settle_us_;
  std::int64_t origin_ts_ = -1;
  std::int64_t last_ts_ = 0;
  bool done_ = false;
  std::vector<double> bright_;
  std::vector<double> dim_;
};

// Profile persistence as a JSON document with exactly the profile fields.
void save_profile(const CalibrationProfile& p, const std::string& path);
CalibrationProfile load_profile(const std::string& path);

}  // namespace gazeload
