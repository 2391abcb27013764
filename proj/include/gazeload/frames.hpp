#pragma once

#include <cstdint>
#include <optional>

#include "gazeload/protocol.hpp"

namespace gazeload {

// One eye-merged pupil reading, the unit the estimator and session log
// operate on.
struct FrameSample {
  std::int64_t ts = 0;    // microseconds, device clock
  double diameter = 0.0;  // millimeters

  bool operator==(const FrameSample&) const = default;
};

inline constexpr double kMinDiameterMm = 1.0;
inline constexpr double kMaxDiameterMm = 10.0;

// Combines a left/right pair into one frame. Both valid: mean of the two
// diameters and timestamps. Exactly one valid: that eye alone. Neither
// valid (blink): nullopt.
std::optional<FrameSample> merge_eye_pair(const std::optional<PupilSample>& left,
                                          const std::optional<PupilSample>& right);

// Artifact gate ahead of the estimator. Rejects diameters outside
// [1.0, 10.0] mm and jumps of more than 1.0 mm within 20 ms of the
// previously accepted frame.
std::optional<FrameSample> filter_sample(const FrameSample& s,
                                         const std::optional<FrameSample>& prev);

// Pairs per-eye samples by timestamp proximity before merging. A sample is
// held until its partner (other eye, within the pairing window) arrives;
// anything unpairable is resolved alone.
class EyePairer {
 public:
  explicit EyePairer(std::int64_t pairing_window_us = 10'000)
      : window_us_(pairing_window_us) {}

  // Feeds one raw sample; returns a merged frame when one resolves.
  // Both-invalid pairs resolve to nothing and count as blink drops.
  std::optional<FrameSample> feed(const PupilSample& s);

  // Resolves any still-pending sample at end of stream.
  std::optional<FrameSample> flush();

  std::uint64_t blink_drops() const { return blink_drops_; }

 private:
  std::optional<FrameSample> resolve(const std::optional<PupilSample>& l,
                                     const std::optional<PupilSample>& r);

  std::int64_t window_us_;
  std::optional<PupilSample> pending_;
  std::uint64_t blink_drops_ = 0;
};

// Stateful wrapper around filter_sample; keeps the last accepted frame.
class SampleFilter {
 public:
  std::optional<FrameSample> apply(const FrameSample& s) {
    auto out = filter_sample(s, prev_);
    if (out) prev_ = *out;
    return out;
  }

  std::uint64_t rejected() const { return rejected_count_; }

  std::optional<FrameSample> apply_counted(const FrameSample& s) {
    auto out = apply(s);
    if (!out) ++rejected_count_;
    return out;
  }

 private:
  std::optional<FrameSample> prev_;
  std::uint64_t rejected_count_ = 0;
};

}  // namespace gazeload
