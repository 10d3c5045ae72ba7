#include "bioperf/harness/run_record.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bioperf/error.hpp"

namespace bioperf::harness {
namespace {

using nlohmann::json;

json factors_json(const FlowFactors& f) {
  return {{"run_label", f.run_label},
          {"clients_online", f.clients_online},
          {"servers", f.servers},
          {"packets_sent", f.packets_sent},
          {"packets_sent_length", f.packets_sent_length},
          {"packets_received", f.packets_received},
          {"packets_received_length", f.packets_received_length},
          {"total_arrival_time", f.total_arrival_time},
          {"total_departure_time", f.total_departure_time},
          {"total_service_time", f.total_service_time},
          {"total_time", f.total_time}};
}

FlowFactors factors_from(const json& j) {
  FlowFactors f;
  j.at("run_label").get_to(f.run_label);
  j.at("clients_online").get_to(f.clients_online);
  j.at("servers").get_to(f.servers);
  j.at("packets_sent").get_to(f.packets_sent);
  j.at("packets_sent_length").get_to(f.packets_sent_length);
  j.at("packets_received").get_to(f.packets_received);
  j.at("packets_received_length").get_to(f.packets_received_length);
  j.at("total_arrival_time").get_to(f.total_arrival_time);
  j.at("total_departure_time").get_to(f.total_departure_time);
  j.at("total_service_time").get_to(f.total_service_time);
  j.at("total_time").get_to(f.total_time);
  return f;
}

json session_json(const SessionRecord& s) {
  return {{"session_id", s.session_id},
          {"client_id", s.client_id},
          {"mode", std::string(to_string(s.mode))},
          {"connected_at", s.connected_at},
          {"client_start", s.client_start},
          {"client_departure", s.client_departure},
          {"departure_wall_ms", s.departure_wall_ms},
          {"packets_sent", s.packets_sent},
          {"bytes_sent", s.bytes_sent},
          {"packets_received", s.packets_received},
          {"bytes_received", s.bytes_received},
          {"complete", s.complete},
          {"error", s.error}};
}

SessionRecord session_from(const json& j) {
  SessionRecord s;
  j.at("session_id").get_to(s.session_id);
  j.at("client_id").get_to(s.client_id);
  s.mode = parse_mode(j.at("mode").get<std::string>());
  j.at("connected_at").get_to(s.connected_at);
  j.at("client_start").get_to(s.client_start);
  j.at("client_departure").get_to(s.client_departure);
  j.at("departure_wall_ms").get_to(s.departure_wall_ms);
  j.at("packets_sent").get_to(s.packets_sent);
  j.at("bytes_sent").get_to(s.bytes_sent);
  j.at("packets_received").get_to(s.packets_received);
  j.at("bytes_received").get_to(s.bytes_received);
  j.at("complete").get_to(s.complete);
  s.error = j.value("error", "");
  return s;
}

}  // namespace

std::string to_json(const RunRecord& run) {
  json j;
  j["run_label"] = run.run_label;
  j["modes"] = json::array();
  if (has_chat(run.modes)) j["modes"].push_back("chat");
  if (has_file(run.modes)) j["modes"].push_back("file_transfer");
  j["server_start"] = run.server_start;
  j["run_end"] = run.run_end;
  j["complete"] = run.complete;
  j["sessions"] = json::array();
  for (const auto& s : run.sessions) j["sessions"].push_back(session_json(s));
  j["factors"] = factors_json(run.factors);
  return j.dump(2) + "\n";
}

RunRecord run_record_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunRecord run;
    j.at("run_label").get_to(run.run_label);
    bool chat = false;
    bool file = false;
    for (const auto& m : j.at("modes")) {
      const Mode mode = parse_mode(m.get<std::string>());
      chat = chat || has_chat(mode);
      file = file || has_file(mode);
    }
    if (!chat && !file) throw ValidationError("run record: empty mode set");
    run.modes = chat && file ? Mode::both : (chat ? Mode::chat : Mode::file_transfer);
    j.at("server_start").get_to(run.server_start);
    j.at("run_end").get_to(run.run_end);
    j.at("complete").get_to(run.complete);
    for (const auto& s : j.at("sessions")) run.sessions.push_back(session_from(s));
    run.factors = factors_from(j.at("factors"));
    return run;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("run record: ") + e.what());
  }
}

void write_run_record(const std::string& path, const RunRecord& run) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw NetworkError("cannot write '" + path + "'");
  out << to_json(run);
  if (!out) throw NetworkError("write failed for '" + path + "'");
}

RunRecord read_run_record(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return run_record_from_json(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace bioperf::harness
