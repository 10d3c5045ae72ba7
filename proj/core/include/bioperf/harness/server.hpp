#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace bioperf::harness {

enum class Mode { chat, file_transfer, both };

/// Accepts "chat", "file_transfer" (or "file") and "both". Throws ValidationError.
Mode parse_mode(std::string_view s);
std::string_view to_string(Mode m);
inline bool has_chat(Mode m) { return m != Mode::file_transfer; }
inline bool has_file(Mode m) { return m != Mode::chat; }

inline constexpr std::uint16_t kDefaultChatPort = 6667;
inline constexpr std::uint16_t kDefaultFilePort = 2121;

struct ServerConfig {
  Mode mode = Mode::chat;
  std::string host = "127.0.0.1";
  std::uint16_t chat_port = kDefaultChatPort;  // 0 picks an ephemeral port
  std::uint16_t file_port = kDefaultFilePort;
};

/// Server-side receive counters, summed over every session so far.
struct ServerStats {
  std::uint64_t chat_frames = 0;
  std::uint64_t chat_bytes = 0;
  std::uint64_t file_frames = 0;
  std::uint64_t file_bytes = 0;
  std::uint64_t sessions_opened = 0;
  std::uint64_t sessions_closed = 0;
};

/// Chat relay and/or file transfer listener. Each accepted connection is
/// served on its own thread; stop() (or destruction) disconnects all
/// sessions and joins every thread.
class TrafficServer {
 public:
  /// Binds every listener the mode needs before any thread starts, so a bind
  /// failure leaves nothing running. Throws NetworkError.
  static std::unique_ptr<TrafficServer> start(const ServerConfig& config);

  ~TrafficServer();
  TrafficServer(const TrafficServer&) = delete;
  TrafficServer& operator=(const TrafficServer&) = delete;

  Mode mode() const;
  std::optional<std::uint16_t> chat_port() const;
  std::optional<std::uint16_t> file_port() const;
  /// Monotonic milliseconds (see monotonic_ms()) at which listening began.
  double start_time_ms() const;
  ServerStats stats() const;
  void stop();

 private:
  struct Impl;
  explicit TrafficServer(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

/// Single-mode convenience: the port applies to whichever protocol `mode`
/// selects; `both` uses `port` for chat and the default file port.
std::unique_ptr<TrafficServer> serve(Mode mode, std::uint16_t port);

/// Milliseconds on the process-wide steady clock.
double monotonic_ms();
/// Milliseconds since the Unix epoch.
double wall_ms();

}  // namespace bioperf::harness
