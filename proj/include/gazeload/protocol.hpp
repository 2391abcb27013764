#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace gazeload {

enum class Eye : std::uint8_t { left, right };

std::string_view to_string(Eye e);

// One per-eye pupil diameter reading as carried on the wire.
struct PupilSample {
  std::int64_t ts = 0;    // device monotonic clock, microseconds
  Eye eye = Eye::left;
  double diameter = 0.0;  // millimeters; may be 0 while status != 0
  int status = 0;         // 0 = valid, nonzero = invalid (blink / lost pupil)
  std::uint32_t seq = 0;  // per-datagram sequence number, wraps at 2^32

  bool valid() const { return status == 0; }
  bool operator==(const PupilSample&) const = default;
};

enum class KeepaliveOp : std::uint8_t { start, stop };

// Unicast subscription control, resent every keepalive interval by the client.
struct Keepalive {
  std::string key;
  KeepaliveOp op = KeepaliveOp::start;
  bool operator==(const Keepalive&) const = default;
};

// Device self-description, sent once per subscription by the device.
struct Announce {
  std::string device_id;
  double sample_rate_hz = 0.0;
  bool operator==(const Announce&) const = default;
};

using Datagram = std::variant<PupilSample, Keepalive, Announce>;

enum class ProtocolError : std::uint8_t {
  malformed_json,   // not parseable as a JSON object
  unknown_type,     // "type" value names no known datagram
  missing_field,    // schema field absent
  bad_value,        // field present with the wrong type or domain
};

std::string_view to_string(ProtocolError e);

using ParseResult = std::variant<Datagram, ProtocolError>;

// Total over arbitrary byte input; never throws, never aborts.
//
// Wire schemas (single-object UTF-8 JSON, one datagram per UDP packet):
//   sample:    {"ts":<int>,"eye":"left"|"right","pd":<number>,"s":<int>,"seq":<int>}
//   keepalive: {"type":"live.data","key":<string>,"op":"start"|"stop"}
//   announce:  {"type":"announce","id":<string>,"rate":<number>}
// Objects without a "type" key are parsed as samples. Unrecognized extra
// keys are ignored.
ParseResult parse_datagram(std::string_view bytes);

// Serializes in schema field order; output is a single line of at most
// kMaxDatagramBytes bytes and re-parses to an equal Datagram.
std::string serialize_datagram(const Datagram& d);

inline constexpr std::size_t kMaxDatagramBytes = 512;

struct DeviceEndpoint {
  std::string address = "127.0.0.1";
  std::uint16_t port = 0;
  double keepalive_interval_s = 1.0;
};

}  // namespace gazeload
