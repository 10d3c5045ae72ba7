#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bioperf/flow_metrics.hpp"
#include "bioperf/harness/server.hpp"
#include "bioperf/harness/wire.hpp"

namespace bioperf::harness {

/// Scripted workload knobs. Counts are per client and per protocol.
struct Workload {
  std::uint32_t client_count = 2;
  std::uint32_t messages = 100;
  std::size_t message_size = 64;  // chat text bytes per MSG
  std::uint64_t file_size = 64 * 1024;
  std::size_t chunk_size = wire::ft::kDefaultChunk;  // DATA payload bytes
  std::uint64_t seed = 1;
};

/// One client connection. Times are monotonic milliseconds except
/// `departure_wall_ms`. Sent counters are counted by the client; received
/// counters are the server's, reported back in BYE / the final ACK. Only
/// payload frames count as packets (MSG for chat, DATA for file transfer).
struct SessionRecord {
  std::uint64_t session_id = 0;
  std::uint32_t client_id = 0;
  Mode mode = Mode::chat;  // chat or file_transfer
  double connected_at = 0.0;
  double client_start = 0.0;
  double client_departure = 0.0;
  double departure_wall_ms = 0.0;
  std::uint64_t packets_sent = 0;
  std::uint64_t bytes_sent = 0;
  std::uint64_t packets_received = 0;
  std::uint64_t bytes_received = 0;
  bool complete = false;
  std::string error;  // set when the session ended early

  bool operator==(const SessionRecord&) const = default;
};

struct RunRecord {
  std::string run_label;
  Mode modes = Mode::chat;
  double server_start = 0.0;
  double run_end = 0.0;
  std::vector<SessionRecord> sessions;
  FlowFactors factors;
  bool complete = true;

  bool operator==(const RunRecord&) const = default;
};

struct ServerAddress {
  std::string host = "127.0.0.1";
  std::uint16_t chat_port = kDefaultChatPort;
  std::uint16_t file_port = kDefaultFilePort;
};

/// "IRCD", "FTP" or "IRCD&FTP".
std::string run_label_for(Mode m);

/// Folds sessions into run-level factors:
///   total_time         = run_end - server_start
///   total_service_time = sum of (client_departure - client_start)
///   total_arrival_time = sum of (connected_at - server_start)
///   total_departure_time = sum of departure wall-clock times
/// Throws ValidationError for an empty list or a departure before its start.
FlowFactors aggregate(const std::vector<SessionRecord>& sessions, double server_start,
                      double run_end, std::string run_label = {});

/// Connects `client_count` clients (one connection per protocol each) and
/// keeps them all online for the run. Clients then take turns: one session
/// at a time sends its scripted traffic and departs, so service windows never
/// overlap while relayed chat still reaches every online peer.
///
/// `server_start` defaults to the moment the run begins. Throws NetworkError
/// when the server cannot be reached; later failures mark the affected
/// session and the record incomplete instead.
RunRecord run_client(Mode mode, const ServerAddress& server, const Workload& workload,
                     std::optional<double> server_start = std::nullopt);

}  // namespace bioperf::harness
