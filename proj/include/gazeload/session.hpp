#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gazeload/calibration.hpp"
#include "gazeload/estimator.hpp"
#include "gazeload/frames.hpp"

namespace gazeload {

struct SessionHeader {
  std::string session_id;
  std::int64_t start_ts = 0;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::optional<CalibrationProfile> profile;
};

struct SessionEvent {
  std::string label;
  std::int64_t ts = 0;
  bool operator==(const SessionEvent&) const = default;
};

struct SessionFooter {
  std::int64_t end_ts = 0;
  std::int64_t frame_total = 0;
  std::int64_t estimate_total = 0;
  bool operator==(const SessionFooter&) const = default;
};

using SessionRecord =
    std::variant<SessionHeader, FrameSample, LoadEstimate, SessionEvent, SessionFooter>;

// Raised on framing or ordering violations, both when appending and when
// loading. line is 1-based for load errors, 0 for append-side violations.
struct SessionFormatError : std::runtime_error {
  SessionFormatError(int line_, std::string reason_)
      : std::runtime_error("session format error at line " +
                           std::to_string(line_) + ": " + reason_),
        line(line_),
        reason(std::move(reason_)) {}
  int line;
  std::string reason;
};

nlohmann::ordered_json record_to_json(const SessionRecord& r);
SessionRecord record_from_json(const nlohmann::json& j);

// Append-only JSONL session writer: one record per line, flushed per
// record. Enforces one header first, one footer last, and non-decreasing
// timestamps within each record kind.
class SessionWriter {
 public:
  explicit SessionWriter(const std::string& path);
  ~SessionWriter();

  void append(const SessionRecord& r);
  void close();
  bool closed() const { return !out_.is_open(); }

 private:
  std::ofstream out_;
  bool header_written_ = false;
  bool footer_written_ = false;
  std::optional<std::int64_t> last_sample_ts_;
  std::optional<std::int64_t> last_estimate_ts_;
  std::optional<std::int64_t> last_event_ts_;
};

// Loads and validates a complete session file. Throws SessionFormatError
// carrying the first offending line.
std::vector<SessionRecord> load_session(const std::string& path);

enum class TraceSource : std::uint8_t { samples, estimates };

struct TracePoint {
  int event_index = 0;  // which matching event this row belongs to
  double t_rel_s = 0.0; // seconds relative to the event timestamp
  double value = 0.0;   // sample diameter or estimate windowed average
};

// Event-aligned extraction: for every event with the given label, all
// samples (or estimates) within +-window_s, re-zeroed at the event time.
// t_rel is the exact difference of stored timestamps; no resampling.
std::vector<TracePoint> extract_event_trace(const std::vector<SessionRecord>& session,
                                            std::string_view label,
                                            double window_s,
                                            TraceSource which);

void write_trace_csv(const std::vector<TracePoint>& trace, const std::string& path);

// Estimate export with header
// ts_us,running_avg_mm,windowed_avg_mm,running_max_mm,high_load
void write_estimates_csv(const std::vector<SessionRecord>& session,
                         const std::string& path);

}  // namespace gazeload
