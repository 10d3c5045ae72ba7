#include "bioperf/harness/server.hpp"

#include <chrono>
#include <list>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include "bioperf/error.hpp"
#include "bioperf/harness/socket.hpp"
#include "bioperf/harness/wire.hpp"

namespace bioperf::harness {

Mode parse_mode(std::string_view s) {
  if (s == "chat") return Mode::chat;
  if (s == "file_transfer" || s == "file") return Mode::file_transfer;
  if (s == "both") return Mode::both;
  throw ValidationError("unknown mode '" + std::string(s) + "' (expected chat, file_transfer, both)");
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::chat:
      return "chat";
    case Mode::file_transfer:
      return "file_transfer";
    case Mode::both:
      return "both";
  }
  return "?";
}

double monotonic_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

double wall_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(system_clock::now().time_since_epoch()).count();
}

namespace {

constexpr auto kAcceptPoll = std::chrono::milliseconds(50);

// One connected chat client as seen by the relay room.
struct ChatPeer {
  std::shared_ptr<net::Socket> socket;
  std::mutex write_mu;
  std::string name;

  void send(std::string_view line) {
    std::lock_guard lock(write_mu);
    socket->write_all(line);
  }
};

class ChatRoom {
 public:
  void add(std::uint64_t id, std::shared_ptr<ChatPeer> peer) {
    std::lock_guard lock(mu_);
    peers_[id] = std::move(peer);
  }
  void remove(std::uint64_t id) {
    std::lock_guard lock(mu_);
    peers_.erase(id);
  }
  void relay(std::uint64_t from, std::string_view line) {
    std::vector<std::shared_ptr<ChatPeer>> targets;
    {
      std::lock_guard lock(mu_);
      for (const auto& [id, peer] : peers_) {
        if (id != from) targets.push_back(peer);
      }
    }
    for (const auto& peer : targets) {
      try {
        peer->send(line);
      } catch (const NetworkError&) {
        // The peer is going away; its own session thread cleans up.
      }
    }
  }

 private:
  std::mutex mu_;
  std::map<std::uint64_t, std::shared_ptr<ChatPeer>> peers_;
};

struct Session {
  // Shared with the chat room so relays never outlive the descriptor.
  std::shared_ptr<net::Socket> socket;
  std::thread thread;
  std::atomic<bool> done{false};
};

}  // namespace

struct TrafficServer::Impl {
  ServerConfig config;
  std::optional<net::Listener> chat_listener;
  std::optional<net::Listener> file_listener;
  double started_at = 0.0;

  std::atomic<bool> stopping{false};
  std::vector<std::thread> acceptors;

  std::mutex sessions_mu;
  std::list<Session> sessions;
  std::uint64_t next_session_id = 0;

  ChatRoom room;
  std::atomic<std::uint64_t> chat_frames{0}, chat_bytes{0}, file_frames{0}, file_bytes{0};
  std::atomic<std::uint64_t> opened{0}, closed{0};

  void accept_loop(const net::Listener& listener, bool chat) {
    while (!stopping.load()) {
      net::Socket s = net::accept_for(listener, kAcceptPoll);
      reap();
      if (!s.valid()) continue;
      std::lock_guard lock(sessions_mu);
      if (stopping.load()) break;
      auto& session = sessions.emplace_back();
      session.socket = std::make_shared<net::Socket>(std::move(s));
      const std::uint64_t id = next_session_id++;
      opened.fetch_add(1);
      session.thread = std::thread([this, &session, id, chat] {
        try {
          if (chat) {
            serve_chat(session.socket, id);
          } else {
            serve_file(*session.socket);
          }
        } catch (const std::exception&) {
          // Protocol or socket failure ends only this session.
        }
        room.remove(id);
        session.socket->shutdown();
        closed.fetch_add(1);
        session.done.store(true);
      });
    }
  }

  // Joins finished session threads so long-running servers do not grow.
  void reap() {
    std::lock_guard lock(sessions_mu);
    for (auto it = sessions.begin(); it != sessions.end();) {
      if (it->done.load()) {
        if (it->thread.joinable()) it->thread.join();
        it = sessions.erase(it);
      } else {
        ++it;
      }
    }
  }

  void serve_chat(const std::shared_ptr<net::Socket>& socket, std::uint64_t id) {
    auto peer = std::make_shared<ChatPeer>();
    peer->socket = socket;
    net::LineReader reader(*socket, wire::chat::kMaxLine);
    std::uint64_t frames = 0;
    std::uint64_t bytes = 0;
    bool joined = false;

    while (auto raw = reader.next()) {
      wire::chat::Line line;
      try {
        line = wire::chat::parse(*raw);
      } catch (const ValidationError& e) {
        peer->send(wire::chat::err(e.what()));
        continue;
      }
      switch (line.kind) {
        case wire::chat::Kind::join:
          if (joined) {
            peer->send(wire::chat::err("already joined"));
            break;
          }
          joined = true;
          peer->name = line.name;
          room.add(id, peer);
          break;
        case wire::chat::Kind::msg:
          if (!joined || line.name != peer->name) {
            peer->send(wire::chat::err("MSG before JOIN or with a foreign name"));
            break;
          }
          ++frames;
          bytes += line.text.size();
          chat_frames.fetch_add(1);
          chat_bytes.fetch_add(line.text.size());
          room.relay(id, wire::chat::msg(line.name, line.text));
          break;
        case wire::chat::Kind::quit:
          room.remove(id);
          peer->send(wire::chat::bye(frames, bytes));
          return;
        case wire::chat::Kind::bye:
        case wire::chat::Kind::err:
          peer->send(wire::chat::err("unexpected server verb"));
          break;
      }
    }
  }

  void serve_file(net::Socket& socket) {
    using wire::ft::Opcode;
    std::uint64_t frames = 0;
    std::uint64_t bytes = 0;
    bool in_transfer = false;
    std::vector<std::uint8_t> payload;

    while (true) {
      std::array<std::uint8_t, wire::ft::kHeaderSize> raw{};
      if (!socket.read_exact(raw)) return;
      const auto header = wire::ft::decode_header(raw);
      payload.resize(header.length);
      if (header.length != 0 && !socket.read_exact(payload)) return;

      switch (header.op) {
        case Opcode::put:
          if (in_transfer) throw ValidationError("ft: PUT during a transfer");
          (void)wire::ft::parse_put(payload);
          in_transfer = true;
          socket.write_all(wire::ft::encode(Opcode::ack, {}));
          break;
        case Opcode::data:
          if (!in_transfer) throw ValidationError("ft: DATA before PUT");
          ++frames;
          bytes += payload.size();
          file_frames.fetch_add(1);
          file_bytes.fetch_add(payload.size());
          break;
        case Opcode::done:
          if (!in_transfer) throw ValidationError("ft: DONE before PUT");
          in_transfer = false;
          socket.write_all(
              wire::ft::encode(Opcode::ack, wire::ft::ack_stats_payload({frames, bytes})));
          break;
        case Opcode::ack:
          throw ValidationError("ft: client sent ACK");
      }
    }
  }

  void stop() {
    if (stopping.exchange(true)) return;
    for (auto& t : acceptors) {
      if (t.joinable()) t.join();
    }
    std::lock_guard lock(sessions_mu);
    for (auto& s : sessions) s.socket->shutdown();
    for (auto& s : sessions) {
      if (s.thread.joinable()) s.thread.join();
    }
    sessions.clear();
    chat_listener.reset();
    file_listener.reset();
  }
};

TrafficServer::TrafficServer(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}

TrafficServer::~TrafficServer() { stop(); }

std::unique_ptr<TrafficServer> TrafficServer::start(const ServerConfig& config) {
  auto impl = std::make_unique<Impl>();
  impl->config = config;
  if (has_chat(config.mode)) impl->chat_listener = net::listen_tcp(config.host, config.chat_port);
  if (has_file(config.mode)) impl->file_listener = net::listen_tcp(config.host, config.file_port);
  impl->started_at = monotonic_ms();

  Impl* raw = impl.get();
  if (raw->chat_listener) {
    raw->acceptors.emplace_back([raw] { raw->accept_loop(*raw->chat_listener, true); });
  }
  if (raw->file_listener) {
    raw->acceptors.emplace_back([raw] { raw->accept_loop(*raw->file_listener, false); });
  }
  return std::unique_ptr<TrafficServer>(new TrafficServer(std::move(impl)));
}

Mode TrafficServer::mode() const { return impl_->config.mode; }

std::optional<std::uint16_t> TrafficServer::chat_port() const {
  if (!impl_->chat_listener) return std::nullopt;
  return impl_->chat_listener->port;
}

std::optional<std::uint16_t> TrafficServer::file_port() const {
  if (!impl_->file_listener) return std::nullopt;
  return impl_->file_listener->port;
}

double TrafficServer::start_time_ms() const { return impl_->started_at; }

ServerStats TrafficServer::stats() const {
  return ServerStats{impl_->chat_frames.load(), impl_->chat_bytes.load(),
                     impl_->file_frames.load(), impl_->file_bytes.load(),
                     impl_->opened.load(),      impl_->closed.load()};
}

void TrafficServer::stop() {
  if (impl_) impl_->stop();
}

std::unique_ptr<TrafficServer> serve(Mode mode, std::uint16_t port) {
  ServerConfig config;
  config.mode = mode;
  if (mode == Mode::file_transfer) {
    config.file_port = port;
  } else {
    config.chat_port = port;
  }
  return TrafficServer::start(config);
}

}  // namespace bioperf::harness
