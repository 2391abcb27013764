#include "gazeload/protocol.hpp"

#include <nlohmann/json.hpp>

namespace gazeload {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr std::uint32_t kSeqMax = 0xffffffffu;

// Field lookup that distinguishes "absent" from "present but wrong".
const json* find_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

bool get_int64(const json& v, std::int64_t& out) {
  if (v.is_number_integer()) {
    out = v.get<std::int64_t>();
    return true;
  }
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) return false;
    out = static_cast<std::int64_t>(u);
    return true;
  }
  return false;
}

ParseResult parse_sample(const json& obj) {
  PupilSample s;

  const json* ts = find_field(obj, "ts");
  const json* eye = find_field(obj, "eye");
  const json* pd = find_field(obj, "pd");
  const json* status = find_field(obj, "s");
  const json* seq = find_field(obj, "seq");
  if (!ts || !eye || !pd || !status || !seq)
    return ProtocolError::missing_field;

  if (!get_int64(*ts, s.ts)) return ProtocolError::bad_value;

  if (!eye->is_string()) return ProtocolError::bad_value;
  const auto& eye_name = eye->get_ref<const std::string&>();
  if (eye_name == "left") {
    s.eye = Eye::left;
  } else if (eye_name == "right") {
    s.eye = Eye::right;
  } else {
    return ProtocolError::bad_value;
  }

  if (!pd->is_number()) return ProtocolError::bad_value;
  s.diameter = pd->get<double>();

  std::int64_t status_v = 0;
  if (!get_int64(*status, status_v)) return ProtocolError::bad_value;
  if (status_v < INT32_MIN || status_v > INT32_MAX)
    return ProtocolError::bad_value;
  s.status = static_cast<int>(status_v);

  std::int64_t seq_v = 0;
  if (!get_int64(*seq, seq_v)) return ProtocolError::bad_value;
  if (seq_v < 0 || seq_v > static_cast<std::int64_t>(kSeqMax))
    return ProtocolError::bad_value;
  s.seq = static_cast<std::uint32_t>(seq_v);

  return Datagram{s};
}

ParseResult parse_keepalive(const json& obj) {
  const json* key = find_field(obj, "key");
  const json* op = find_field(obj, "op");
  if (!key || !op) return ProtocolError::missing_field;
  if (!key->is_string() || !op->is_string()) return ProtocolError::bad_value;

  Keepalive k;
  k.key = key->get<std::string>();
  const auto& op_name = op->get_ref<const std::string&>();
  if (op_name == "start") {
    k.op = KeepaliveOp::start;
  } else if (op_name == "stop") {
    k.op = KeepaliveOp::stop;
  } else {
    return ProtocolError::bad_value;
  }
  return Datagram{k};
}

ParseResult parse_announce(const json& obj) {
  const json* id = find_field(obj, "id");
  const json* rate = find_field(obj, "rate");
  if (!id || !rate) return ProtocolError::missing_field;
  if (!id->is_string()) return ProtocolError::bad_value;
  if (!rate->is_number()) return ProtocolError::bad_value;

  Announce a;
  a.device_id = id->get<std::string>();
  a.sample_rate_hz = rate->get<double>();
  return Datagram{a};
}

}  // namespace

std::string_view to_string(Eye e) {
  return e == Eye::left ? "left" : "right";
}

std::string_view to_string(ProtocolError e) {
  switch (e) {
    case ProtocolError::malformed_json: return "malformed_json";
    case ProtocolError::unknown_type:   return "unknown_type";
    case ProtocolError::missing_field:  return "missing_field";
    case ProtocolError::bad_value:      return "bad_value";
  }
  return "unknown";
}

ParseResult parse_datagram(std::string_view bytes) {
  const json obj = json::parse(bytes, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded() || !obj.is_object())
    return ProtocolError::malformed_json;

  if (const json* type = find_field(obj, "type")) {
    if (!type->is_string()) return ProtocolError::bad_value;
    const auto& name = type->get_ref<const std::string&>();
    if (name == "live.data") return parse_keepalive(obj);
    if (name == "announce") return parse_announce(obj);
    return ProtocolError::unknown_type;
  }
  return parse_sample(obj);
}

std::string serialize_datagram(const Datagram& d) {
  ordered_json obj;
  if (const auto* s = std::get_if<PupilSample>(&d)) {
    obj["ts"] = s->ts;
    obj["eye"] = to_string(s->eye);
    obj["pd"] = s->diameter;
    obj["s"] = s->status;
    obj["seq"] = s->seq;
  } else if (const auto* k = std::get_if<Keepalive>(&d)) {
    obj["type"] = "live.data";
    obj["key"] = k->key;
    obj["op"] = k->op == KeepaliveOp::start ? "start" : "stop";
  } else {
    const auto& a = std::get<Announce>(d);
    obj["type"] = "announce";
    obj["id"] = a.device_id;
    obj["rate"] = a.sample_rate_hz;
  }
  return obj.dump();
}

}  // namespace gazeload
