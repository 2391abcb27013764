#include "gazeload/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace gazeload {

std::string_view to_string(CalibrationError e) {
  switch (e) {
    case CalibrationError::insufficient_data: return "insufficient_data";
    case CalibrationError::range_too_small:   return "range_too_small";
  }
  return "unknown";
}

double percentile_linear(std::vector<double> values, double pct) {
  if (values.empty())
    throw std::invalid_argument("percentile_linear: empty input");
  std::sort(values.begin(), values.end());
  if (values.size() == 1) return values.front();

  const double h = (static_cast<double>(values.size()) - 1.0) * pct / 100.0;
  const double lo = std::floor(h);
  const auto i = static_cast<std::size_t>(std::clamp(lo, 0.0, static_cast<double>(values.size() - 1)));
  if (i + 1 >= values.size()) return values.back();
  return values[i] + (h - lo) * (values[i + 1] - values[i]);
}

CalibrationOutcome compute_profile(const std::vector<double>& bright,
                                   const std::vector<double>& dim,
                                   std::int64_t created_ts) {
  if (bright.size() < static_cast<std::size_t>(kMinPhaseFrames) ||
      dim.size() < static_cast<std::size_t>(kMinPhaseFrames))
    return CalibrationError::insufficient_data;

  CalibrationProfile p;
  p.d_min = percentile_linear(bright, 5.0);
  p.d_max = percentile_linear(dim, 95.0);
  p.created_ts = created_ts;
  p.bright_count = static_cast<int>(bright.size());
  p.dim_count = static_cast<int>(dim.size());

  if (p.d_max - p.d_min < kMinRangeMm)
    return CalibrationError::range_too_small;
  return p;
}

CalibrationCollector::CalibrationCollector(double bright_duration_s,
                                           double dim_duration_s,
                                           double settle_s)
    : bright_end_us_(static_cast<std::int64_t>(bright_duration_s * 1e6)),
      dim_end_us_(static_cast<std::int64_t>((bright_duration_s + dim_duration_s) * 1e6)),
      settle_us_(static_cast<std::int64_t>(settle_s * 1e6)) {}

bool CalibrationCollector::feed(const FrameSample& f) {
  if (done_) return false;
  if (origin_ts_ < 0) origin_ts_ = f.ts;

  const std::int64_t rel = f.ts - origin_ts_;
  if (rel >= dim_end_us_) {
    done_ = true;
    return false;
  }
  last_ts_ = f.ts;
  if (rel < bright_end_us_) {
    if (rel >= settle_us_) bright_.push_back(f.diameter);
  } else {
    if (rel >= bright_end_us_ + settle_us_) dim_.push_back(f.diameter);
  }
  return true;
}

void save_profile(const CalibrationProfile& p, const std::string& path) {
  nlohmann::ordered_json j;
  j["d_min"] = p.d_min;
  j["d_max"] = p.d_max;
  j["created_ts"] = p.created_ts;
  j["sample_counts"] = {{"bright", p.bright_count}, {"dim", p.dim_count}};

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write profile: " + path);
  out << j.dump(2) << '\n';
}

CalibrationProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read profile: " + path);
  nlohmann::json j;
  in >> j;

  CalibrationProfile p;
  p.d_min = j.at("d_min").get<double>();
  p.d_max = j.at("d_max").get<double>();
  p.created_ts = j.at("created_ts").get<std::int64_t>();
  p.bright_count = j.at("sample_counts").at("bright").get<int>();
  p.dim_count = j.at("sample_counts").at("dim").get<int>();
  return p;
}

}  // namespace gazeload
