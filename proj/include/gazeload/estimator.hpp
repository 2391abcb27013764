#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gazeload/calibration.hpp"
#include "gazeload/frames.hpp"

namespace gazeload {

// One emitted feedback frame.
struct LoadEstimate {
  std::int64_t ts = 0;
  double running_avg = 0.0;   // mean of all frames since tracking start
  double windowed_avg = 0.0;  // mean of the last <= kWindowFrames frames
  double running_max = 0.0;   // max windowed average seen, seeded by d_max
  bool high_load = false;     // windowed_avg > threshold * running_max
  std::int64_t frames_seen = 0;

  bool operator==(const LoadEstimate&) const = default;
};

// Streaming cognitive-load estimator. Single writer: exactly one caller
// ingests; estimate() reads a consistent snapshot of the same thread.
//
// The high-load rule compares the windowed average against
// threshold_fraction times the running maximum of the windowed average,
// where the maximum starts at the calibration d_max.
class LoadEstimator {
 public:
  static constexpr std::size_t kWindowFrames = 15;
  static constexpr double kDefaultThreshold = 0.70;

  explicit LoadEstimator(const CalibrationProfile& profile,
                         double threshold_fraction = kDefaultThreshold);

  // O(1): updates count, running sum, the 15-frame window, and the running
  // maximum of the windowed average.
  void ingest(const FrameSample& f);

  // Requires at least one ingested frame.
  LoadEstimate estimate(std::int64_t ts) const;

  bool has_frames() const { return frame_count_ > 0; }
  std::int64_t frames_seen() const { return frame_count_; }
  double running_avg() const;
  double windowed_avg() const;
  double running_max() const { return running_max_; }
  double threshold_fraction() const { return threshold_; }
  const CalibrationProfile& profile() const { return profile_; }

 private:
  CalibrationProfile profile_;
  double threshold_;
  std::int64_t frame_count_ = 0;
  double running_sum_ = 0.0;
  double running_max_;
  double window_avg_ = 0.0;

  std::array<double, kWindowFrames> window_{};
  std::size_t window_size_ = 0;
  std::size_t window_next_ = 0;  // slot the next frame overwrites
};

// Fixed-interval emission schedule on the device timebase. Boundaries sit
// at anchor + round(k * 1e6 / rate_hz) microseconds, k = 1, 2, ...
class EmitSchedule {
 public:
  explicit EmitSchedule(double rate_hz);

  void anchor(std::int64_t start_ts);
  bool anchored() const { return anchored_; }

  // Boundary timestamps not yet taken, strictly below / exactly at ts.
  // Firing order across both calls is monotone in ts.
  std::vector<std::int64_t> take_before(std::int64_t ts);
  std::vector<std::int64_t> take_at(std::int64_t ts);

  double period_us() const { return period_us_; }

 private:
  std::int64_t boundary(std::int64_t k) const;

  double period_us_;
  bool anchored_ = false;
  std::int64_t start_ts_ = 0;
  std::int64_t next_k_ = 1;
};

}  // namespace gazeload
