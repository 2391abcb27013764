#include "gazeload/session.hpp"

#include <utility>

namespace gazeload {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json profile_to_json(const CalibrationProfile& p) {
  ordered_json j;
  j["d_min"] = p.d_min;
  j["d_max"] = p.d_max;
  j["created_ts"] = p.created_ts;
  j["sample_counts"] = {{"bright", p.bright_count}, {"dim", p.dim_count}};
  return j;
}

CalibrationProfile profile_from_json(const json& j) {
  CalibrationProfile p;
  p.d_min = j.at("d_min").get<double>();
  p.d_max = j.at("d_max").get<double>();
  p.created_ts = j.at("created_ts").get<std::int64_t>();
  p.bright_count = j.at("sample_counts").at("bright").get<int>();
  p.dim_count = j.at("sample_counts").at("dim").get<int>();
  return p;
}

// Number formatting for CSV, matching the JSON shortest-round-trip form.
std::string fmt_double(double v) { return json(v).dump(); }

}  // namespace

ordered_json record_to_json(const SessionRecord& r) {
  ordered_json j;
  if (const auto* h = std::get_if<SessionHeader>(&r)) {
    j["record"] = "header";
    j["session_id"] = h->session_id;
    j["start_ts"] = h->start_ts;
    j["config"] = h->config;
    j["profile"] = h->profile ? profile_to_json(*h->profile) : ordered_json(nullptr);
  } else if (const auto* s = std::get_if<FrameSample>(&r)) {
    j["record"] = "sample";
    j["ts"] = s->ts;
    j["diameter"] = s->diameter;
  } else if (const auto* e = std::get_if<LoadEstimate>(&r)) {
    j["record"] = "estimate";
    j["ts"] = e->ts;
    j["running_avg"] = e->running_avg;
    j["windowed_avg"] = e->windowed_avg;
    j["running_max"] = e->running_max;
    j["high_load"] = e->high_load;
    j["frames_seen"] = e->frames_seen;
  } else if (const auto* ev = std::get_if<SessionEvent>(&r)) {
    j["record"] = "event";
    j["label"] = ev->label;
    j["ts"] = ev->ts;
  } else {
    const auto& f = std::get<SessionFooter>(r);
    j["record"] = "footer";
    j["end_ts"] = f.end_ts;
    j["frame_total"] = f.frame_total;
    j["estimate_total"] = f.estimate_total;
  }
  return j;
}

SessionRecord record_from_json(const json& j) {
  const auto kind = j.at("record").get<std::string>();
  if (kind == "header") {
    SessionHeader h;
    h.session_id = j.at("session_id").get<std::string>();
    h.start_ts = j.at("start_ts").get<std::int64_t>();
    h.config = j.at("config");
    if (!j.at("profile").is_null()) h.profile = profile_from_json(j.at("profile"));
    return h;
  }
  if (kind == "sample") {
    return FrameSample{j.at("ts").get<std::int64_t>(),
                       j.at("diameter").get<double>()};
  }
  if (kind == "estimate") {
    LoadEstimate e;
    e.ts = j.at("ts").get<std::int64_t>();
    e.running_avg = j.at("running_avg").get<double>();
    e.windowed_avg = j.at("windowed_avg").get<double>();
    e.running_max = j.at("running_max").get<double>();
    e.high_load = j.at("high_load").get<bool>();
    e.frames_seen = j.at("frames_seen").get<std::int64_t>();
    return e;
  }
  if (kind == "event") {
    return SessionEvent{j.at("label").get<std::string>(),
                        j.at("ts").get<std::int64_t>()};
  }
  if (kind == "footer") {
    SessionFooter f;
    f.end_ts = j.at("end_ts").get<std::int64_t>();
    f.frame_total = j.at("frame_total").get<std::int64_t>();
    f.estimate_total = j.at("estimate_total").get<std::int64_t>();
    return f;
  }
  throw SessionFormatError(0, "unknown record kind: " + kind);
}

SessionWriter::SessionWriter(const std::string& path) : out_(path, std::ios::trunc) {
  if (!out_) throw std::runtime_error("cannot open session file: " + path);
}

SessionWriter::~SessionWriter() {
  if (out_.is_open()) out_.close();
}

void SessionWriter::append(const SessionRecord& r) {
  if (!out_.is_open())
    throw std::runtime_error("session writer already closed");
  if (footer_written_)
    throw SessionFormatError(0, "record appended after footer");

  if (std::holds_alternative<SessionHeader>(r)) {
    if (header_written_) throw SessionFormatError(0, "duplicate header");
    header_written_ = true;
  } else {
    if (!header_written_)
      throw SessionFormatError(0, "record appended before header");
    if (const auto* s = std::get_if<FrameSample>(&r)) {
      if (last_sample_ts_ && s->ts < *last_sample_ts_)
        throw SessionFormatError(0, "nonmonotonic_ts");
      last_sample_ts_ = s->ts;
    } else if (const auto* e = std::get_if<LoadEstimate>(&r)) {
      if (last_estimate_ts_ && e->ts < *last_estimate_ts_)
        throw SessionFormatError(0, "nonmonotonic_ts");
      last_estimate_ts_ = e->ts;
    } else if (const auto* ev = std::get_if<SessionEvent>(&r)) {
      if (ev->label.empty()) throw SessionFormatError(0, "empty event label");
      if (last_event_ts_ && ev->ts < *last_event_ts_)
        throw SessionFormatError(0, "nonmonotonic_ts");
      last_event_ts_ = ev->ts;
    } else if (std::holds_alternative<SessionFooter>(r)) {
      footer_written_ = true;
    }
  }

  out_ << record_to_json(r).dump() << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("session write failed");
}

void SessionWriter::close() {
  if (out_.is_open()) out_.close();
}

std::vector<SessionRecord> load_session(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open session file: " + path);

  std::vector<SessionRecord> records;
  std::optional<std::int64_t> last_sample_ts, last_estimate_ts, last_event_ts;
  bool saw_footer = false;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;

    const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object())
      throw SessionFormatError(line_no, "malformed record");

    SessionRecord r = [&] {
      try {
        return record_from_json(j);
      } catch (const json::exception& e) {
        throw SessionFormatError(line_no, e.what());
      }
    }();

    if (records.empty()) {
      if (!std::holds_alternative<SessionHeader>(r))
        throw SessionFormatError(line_no, "missing_header");
    } else {
      if (std::holds_alternative<SessionHeader>(r))
        throw SessionFormatError(line_no, "duplicate header");
      if (saw_footer)
        throw SessionFormatError(line_no, "record after footer");
    }

    if (const auto* s = std::get_if<FrameSample>(&r)) {
      if (last_sample_ts && s->ts < *last_sample_ts)
        throw SessionFormatError(line_no, "nonmonotonic_ts");
      last_sample_ts = s->ts;
    } else if (const auto* e = std::get_if<LoadEstimate>(&r)) {
      if (last_estimate_ts && e->ts < *last_estimate_ts)
        throw SessionFormatError(line_no, "nonmonotonic_ts");
      last_estimate_ts = e->ts;
    } else if (const auto* ev = std::get_if<SessionEvent>(&r)) {
      if (last_event_ts && ev->ts < *last_event_ts)
        throw SessionFormatError(line_no, "nonmonotonic_ts");
      last_event_ts = ev->ts;
    } else if (std::holds_alternative<SessionFooter>(r)) {
      saw_footer = true;
    }

    records.push_back(std::move(r));
  }

  if (records.empty()) throw SessionFormatError(line_no, "missing_header");
  if (!saw_footer) throw SessionFormatError(line_no, "missing_footer");
  return records;
}

std::vector<TracePoint> extract_event_trace(const std::vector<SessionRecord>& session,
                                            std::string_view label,
                                            double window_s,
                                            TraceSource which) {
  std::vector<std::int64_t> event_ts;
  for (const auto& r : session) {
    if (const auto* ev = std::get_if<SessionEvent>(&r)) {
      if (ev->label == label) event_ts.push_back(ev->ts);
    }
  }

  const auto window_us = static_cast<std::int64_t>(window_s * 1e6);
  std::vector<TracePoint> out;
  for (std::size_t i = 0; i < event_ts.size(); ++i) {
    const std::int64_t t0 = event_ts[i];
    for (const auto& r : session) {
      std::int64_t ts = 0;
      double value = 0.0;
      if (which == TraceSource::samples) {
        const auto* s = std::get_if<FrameSample>(&r);
        if (!s) continue;
        ts = s->ts;
        value = s->diameter;
      } else {
        const auto* e = std::get_if<LoadEstimate>(&r);
        if (!e) continue;
        ts = e->ts;
        value = e->windowed_avg;
      }
      if (ts < t0 - window_us || ts > t0 + window_us) continue;
      out.push_back({static_cast<int>(i),
                     static_cast<double>(ts - t0) / 1e6, value});
    }
  }
  return out;
}

void write_trace_csv(const std::vector<TracePoint>& trace, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write trace csv: " + path);
  out << "event_index,t_rel_s,value\n";
  for (const auto& p : trace) {
    out << p.event_index << ',' << fmt_double(p.t_rel_s) << ','
        << fmt_double(p.value) << '\n';
  }
  if (!out) throw std::runtime_error("trace csv write failed");
}

void write_estimates_csv(const std::vector<SessionRecord>& session,
                         const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write estimates csv: " + path);
  out << "ts_us,running_avg_mm,windowed_avg_mm,running_max_mm,high_load\n";
  for (const auto& r : session) {
    if (const auto* e = std::get_if<LoadEstimate>(&r)) {
      out << e->ts << ',' << fmt_double(e->running_avg) << ','
          << fmt_double(e->windowed_avg) << ',' << fmt_double(e->running_max)
          << ',' << (e->high_load ? 1 : 0) << '\n';
    }
  }
  if (!out) throw std::runtime_error("estimates csv write failed");
}

}  // namespace gazeload
