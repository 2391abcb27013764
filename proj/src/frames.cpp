#include "gazeload/frames.hpp"

#include <cmath>
#include <cstdlib>

namespace gazeload {

std::optional<FrameSample> merge_eye_pair(const std::optional<PupilSample>& left,
                                          const std::optional<PupilSample>& right) {
  const bool l_ok = left && left->valid();
  const bool r_ok = right && right->valid();

  if (l_ok && r_ok) {
    return FrameSample{(left->ts + right->ts) / 2,
                       0.5 * (left->diameter + right->diameter)};
  }
  if (l_ok) return FrameSample{left->ts, left->diameter};
  if (r_ok) return FrameSample{right->ts, right->diameter};
  return std::nullopt;
}

std::optional<FrameSample> filter_sample(const FrameSample& s,
                                         const std::optional<FrameSample>& prev) {
  if (s.diameter < kMinDiameterMm || s.diameter > kMaxDiameterMm)
    return std::nullopt;
  if (prev) {
    const std::int64_t dt = s.ts - prev->ts;
    if (dt <= 20'000 && std::abs(s.diameter - prev->diameter) > 1.0)
      return std::nullopt;
  }
  return s;
}

std::optional<FrameSample> EyePairer::feed(const PupilSample& s) {
  if (!pending_) {
    pending_ = s;
    return std::nullopt;
  }

  const bool pairs = pending_->eye != s.eye &&
                     std::llabs(s.ts - pending_->ts) <= window_us_;
  if (pairs) {
    auto l = pending_->eye == Eye::left ? pending_ : std::optional<PupilSample>{s};
    auto r = pending_->eye == Eye::left ? std::optional<PupilSample>{s} : pending_;
    pending_.reset();
    return resolve(l, r);
  }

  // Partner never arrived; resolve the held sample alone and hold the new one.
  auto out = resolve(pending_->eye == Eye::left ? pending_ : std::nullopt,
                     pending_->eye == Eye::right ? pending_ : std::nullopt);
  pending_ = s;
  return out;
}

std::optional<FrameSample> EyePairer::flush() {
  if (!pending_) return std::nullopt;
  auto out = resolve(pending_->eye == Eye::left ? pending_ : std::nullopt,
                     pending_->eye == Eye::right ? pending_ : std::nullopt);
  pending_.reset();
  return out;
}

std::optional<FrameSample> EyePairer::resolve(const std::optional<PupilSample>& l,
                                              const std::optional<PupilSample>& r) {
  auto merged = merge_eye_pair(l, r);
  if (!merged) ++blink_drops_;
  return merged;
}

}  // namespace gazeload
