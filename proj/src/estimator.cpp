#include "gazeload/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace gazeload {

LoadEstimator::LoadEstimator(const CalibrationProfile& profile,
                             double threshold_fraction)
    : profile_(profile),
      threshold_(threshold_fraction),
      running_max_(profile.d_max) {
  if (!(threshold_ > 0.0 && threshold_ < 1.0))
    throw std::invalid_argument("threshold_fraction must be in (0, 1)");
}

void LoadEstimator::ingest(const FrameSample& f) {
  ++frame_count_;
  running_sum_ += f.diameter;

  window_[window_next_] = f.diameter;
  window_next_ = (window_next_ + 1) % kWindowFrames;
  if (window_size_ < kWindowFrames) ++window_size_;

  // Chronological (oldest-first) summation keeps the windowed mean
  // bit-identical to a from-scratch pass over the trace.
  double sum = 0.0;
  std::size_t idx = (window_next_ + kWindowFrames - window_size_) % kWindowFrames;
  for (std::size_t i = 0; i < window_size_; ++i) {
    sum += window_[idx];
    idx = (idx + 1) % kWindowFrames;
  }
  window_avg_ = sum / static_cast<double>(window_size_);

  if (window_avg_ > running_max_) running_max_ = window_avg_;
}

double LoadEstimator::running_avg() const {
  return running_sum_ / static_cast<double>(frame_count_);
}

double LoadEstimator::windowed_avg() const { return window_avg_; }

LoadEstimate LoadEstimator::estimate(std::int64_t ts) const {
  if (frame_count_ == 0)
    throw std::logic_error("estimate requested before any frame was ingested");

  LoadEstimate e;
  e.ts = ts;
  e.running_avg = running_avg();
  e.windowed_avg = window_avg_;
  e.running_max = running_max_;
  e.high_load = window_avg_ > threshold_ * running_max_;
  e.frames_seen = frame_count_;
  return e;
}

EmitSchedule::EmitSchedule(double rate_hz) : period_us_(1e6 / rate_hz) {
  if (!(rate_hz > 0.0))
    throw std::invalid_argument("emit rate must be positive");
}

void EmitSchedule::anchor(std::int64_t start_ts) {
  start_ts_ = start_ts;
  anchored_ = true;
  next_k_ = 1;
}

std::int64_t EmitSchedule::boundary(std::int64_t k) const {
  return start_ts_ + static_cast<std::int64_t>(std::llround(static_cast<double>(k) * period_us_));
}

std::vector<std::int64_t> EmitSchedule::take_before(std::int64_t ts) {
  std::vector<std::int64_t> out;
  if (!anchored_) return out;
  while (boundary(next_k_) < ts) {
    out.push_back(boundary(next_k_));
    ++next_k_;
  }
  return out;
}

std::vector<std::int64_t> EmitSchedule::take_at(std::int64_t ts) {
  std::vector<std::int64_t> out;
  if (!anchored_) return out;
  while (boundary(next_k_) <= ts) {
    out.push_back(boundary(next_k_));
    ++next_k_;
  }
  return out;
}

}  // namespace gazeload
