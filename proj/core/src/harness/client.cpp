#include "bioperf/harness/client.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <memory>
#include <random>
#include <thread>

#include "bioperf/error.hpp"
#include "bioperf/harness/socket.hpp"

namespace bioperf::harness {
namespace {

constexpr auto kReplyTimeout = std::chrono::seconds(30);

std::string client_name(std::uint32_t client_id) { return "c" + std::to_string(client_id); }

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t client_id, Mode mode) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    client_id, static_cast<std::uint32_t>(mode)};
  return std::mt19937_64(seq);
}

// Chat connection with a background reader that drains relayed messages
// and hands the BYE line to the driver.
class ChatConnection {
 public:
  ChatConnection(const ServerAddress& server, std::string name)
      : socket_(net::connect_tcp(server.host, server.chat_port)), name_(std::move(name)) {
    // No receive timeout: an idle client may wait through other clients' turns.
    socket_.write_all(wire::chat::join(name_));
    bye_ = bye_promise_.get_future();
    reader_ = std::thread([this] { read_loop(); });
  }

  ChatConnection(const ChatConnection&) = delete;
  ChatConnection& operator=(const ChatConnection&) = delete;

  ~ChatConnection() {
    socket_.shutdown();
    if (reader_.joinable()) reader_.join();
  }

  void send(std::string_view line) { socket_.write_all(line); }
  const std::string& name() const { return name_; }

  wire::chat::Line await_bye() {
    if (bye_.wait_for(kReplyTimeout) != std::future_status::ready) {
      throw NetworkError("chat: timed out waiting for BYE");
    }
    return bye_.get();
  }

 private:
  void read_loop() {
    try {
      net::LineReader reader(socket_, wire::chat::kMaxLine);
      while (auto raw = reader.next()) {
        const auto line = wire::chat::parse(*raw);
        if (line.kind == wire::chat::Kind::bye) {
          bye_promise_.set_value(line);
          return;
        }
        if (line.kind == wire::chat::Kind::err) {
          throw NetworkError("chat: server error: " + line.text);
        }
      }
      throw NetworkError("chat: connection closed before BYE");
    } catch (...) {
      bye_promise_.set_exception(std::current_exception());
    }
  }

  net::Socket socket_;
  std::string name_;
  std::promise<wire::chat::Line> bye_promise_;
  std::future<wire::chat::Line> bye_;
  std::thread reader_;
};

struct PendingSession {
  SessionRecord record;
  std::unique_ptr<ChatConnection> chat;
  net::Socket file;
};

std::string random_text(std::mt19937_64& rng, std::size_t size) {
  static constexpr std::string_view kAlphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::uniform_int_distribution<std::size_t> pick(0, kAlphabet.size() - 1);
  std::string out(size, ' ');
  for (auto& c : out) c = kAlphabet[pick(rng)];
  return out;
}

void drive_chat(PendingSession& s, const Workload& w) {
  auto rng = make_rng(w.seed, s.record.client_id, Mode::chat);
  for (std::uint32_t i = 0; i < w.messages; ++i) {
    const std::string text = random_text(rng, w.message_size);
    s.chat->send(wire::chat::msg(s.chat->name(), text));
    ++s.record.packets_sent;
    s.record.bytes_sent += text.size();
  }
  s.chat->send(wire::chat::quit());
  const auto bye = s.chat->await_bye();
  s.record.packets_received = bye.frames;
  s.record.bytes_received = bye.bytes;
}

std::vector<std::uint8_t> read_frame(net::Socket& sock, wire::ft::Opcode expected) {
  std::array<std::uint8_t, wire::ft::kHeaderSize> raw{};
  if (!sock.read_exact(raw)) throw NetworkError("ft: connection closed awaiting reply");
  const auto header = wire::ft::decode_header(raw);
  std::vector<std::uint8_t> payload(header.length);
  if (header.length != 0 && !sock.read_exact(payload)) {
    throw NetworkError("ft: connection closed mid-frame");
  }
  if (header.op != expected) throw NetworkError("ft: unexpected reply opcode");
  return payload;
}

void drive_file(PendingSession& s, const Workload& w) {
  using wire::ft::Opcode;
  auto rng = make_rng(w.seed, s.record.client_id, Mode::file_transfer);
  const std::string name = client_name(s.record.client_id) + ".bin";
  s.file.write_all(wire::ft::encode(Opcode::put, wire::ft::put_payload({w.file_size, name})));
  (void)read_frame(s.file, Opcode::ack);

  std::vector<std::uint8_t> chunk;
  std::uint64_t remaining = w.file_size;
  while (remaining > 0) {
    const auto n = static_cast<std::size_t>(std::min<std::uint64_t>(remaining, w.chunk_size));
    chunk.resize(n);
    for (auto& b : chunk) b = static_cast<std::uint8_t>(rng());
    s.file.write_all(wire::ft::encode(Opcode::data, chunk));
    ++s.record.packets_sent;
    s.record.bytes_sent += n;
    remaining -= n;
  }
  s.file.write_all(wire::ft::encode(Opcode::done, {}));
  const auto stats = wire::ft::parse_ack_stats(read_frame(s.file, Opcode::ack));
  s.record.packets_received = stats.frames;
  s.record.bytes_received = stats.bytes;
}

}  // namespace

std::string run_label_for(Mode m) {
  switch (m) {
    case Mode::chat:
      return "IRCD";
    case Mode::file_transfer:
      return "FTP";
    case Mode::both:
      return "IRCD&FTP";
  }
  return "?";
}

FlowFactors aggregate(const std::vector<SessionRecord>& sessions, double server_start,
                      double run_end, std::string run_label) {
  if (sessions.empty()) throw ValidationError("aggregate: no sessions");
  if (run_end < server_start) throw ValidationError("aggregate: run ends before server start");
  FlowFactors f;
  f.run_label = std::move(run_label);
  f.servers = 1;
  std::vector<std::uint32_t> clients;
  for (const auto& s : sessions) {
    if (s.client_departure < s.client_start) {
      throw ValidationError("aggregate: session " + std::to_string(s.session_id) +
                            " departs before it starts");
    }
    if (std::find(clients.begin(), clients.end(), s.client_id) == clients.end()) {
      clients.push_back(s.client_id);
    }
    f.packets_sent += s.packets_sent;
    f.packets_sent_length += s.bytes_sent;
    f.packets_received += s.packets_received;
    f.packets_received_length += s.bytes_received;
    f.total_arrival_time += std::max(0.0, s.connected_at - server_start);
    f.total_departure_time += s.departure_wall_ms;
    f.total_service_time += s.client_departure - s.client_start;
  }
  f.clients_online = clients.size();
  f.total_time = run_end - server_start;
  return f;
}

RunRecord run_client(Mode mode, const ServerAddress& server, const Workload& workload,
                     std::optional<double> server_start) {
  if (workload.client_count < 1) throw ValidationError("run_client: client_count must be >= 1");
  if (workload.chunk_size == 0 || workload.chunk_size > wire::ft::kMaxPayload) {
    throw ValidationError("run_client: chunk size out of range");
  }
  if (workload.message_size > wire::chat::kMaxLine / 2) {
    throw ValidationError("run_client: message size exceeds the line limit");
  }

  RunRecord run;
  run.run_label = run_label_for(mode);
  run.modes = mode;
  run.server_start = server_start.value_or(monotonic_ms());

  // Everyone comes online first.
  std::vector<PendingSession> pending;
  std::uint64_t next_id = 0;
  for (std::uint32_t c = 0; c < workload.client_count; ++c) {
    if (has_chat(mode)) {
      PendingSession s;
      s.record.session_id = next_id++;
      s.record.client_id = c;
      s.record.mode = Mode::chat;
      s.record.connected_at = monotonic_ms();
      s.chat = std::make_unique<ChatConnection>(server, client_name(c));
      pending.push_back(std::move(s));
    }
    if (has_file(mode)) {
      PendingSession s;
      s.record.session_id = next_id++;
      s.record.client_id = c;
      s.record.mode = Mode::file_transfer;
      s.record.connected_at = monotonic_ms();
      s.file = net::connect_tcp(server.host, server.file_port);
      s.file.set_receive_timeout(kReplyTimeout);
      pending.push_back(std::move(s));
    }
  }

  // Then each session takes its turn and departs.
  for (auto& s : pending) {
    s.record.client_start = monotonic_ms();
    try {
      if (s.record.mode == Mode::chat) {
        drive_chat(s, workload);
      } else {
        drive_file(s, workload);
      }
      s.record.complete = true;
    } catch (const std::exception& e) {
      s.record.error = e.what();
      run.complete = false;
    }
    s.chat.reset();
    s.file.close();
    s.record.client_departure = monotonic_ms();
    s.record.departure_wall_ms = wall_ms();
    run.sessions.push_back(s.record);
  }

  run.run_end = monotonic_ms();
  run.factors = aggregate(run.sessions, run.server_start, run.run_end, run.run_label);
  return run;
}

}  // namespace bioperf::harness
