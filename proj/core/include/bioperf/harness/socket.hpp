#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace bioperf::net {

/// Owning TCP socket descriptor. Move-only; closes on destruction.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket() { close(); }

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  void close();
  /// Wakes any thread blocked on this socket; the descriptor stays open.
  void shutdown();

  /// Writes everything or throws NetworkError.
  void write_all(std::span<const std::uint8_t> data);
  void write_all(std::string_view data);

  /// Fills `out` completely. Returns false on clean EOF before the first
  /// byte; throws NetworkError on errors or EOF mid-buffer.
  bool read_exact(std::span<std::uint8_t> out);

  /// Returns bytes read, 0 on EOF. Throws NetworkError on errors/timeouts.
  std::size_t read_some(std::span<std::uint8_t> out);

  void set_receive_timeout(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
};

/// Buffered '\n'-delimited reader over a socket it does not own.
class LineReader {
 public:
  explicit LineReader(Socket& s, std::size_t max_line) : sock_(&s), max_line_(max_line) {}

  /// Next line without the terminator, or nullopt on EOF. Throws
  /// NetworkError for an over-long line or a socket failure.
  std::optional<std::string> next();

 private:
  Socket* sock_;
  std::size_t max_line_;
  std::string buf_;
};

struct Listener {
  Socket socket;
  std::uint16_t port = 0;  // actual bound port (resolves 0)
};

/// Binds and listens; port 0 picks an ephemeral port. Throws NetworkError.
Listener listen_tcp(const std::string& host, std::uint16_t port);

/// Waits up to `timeout` for a pending connection. Returns an invalid socket
/// on timeout.
Socket accept_for(const Listener& l, std::chrono::milliseconds timeout);

/// Throws NetworkError when the peer cannot be reached.
Socket connect_tcp(const std::string& host, std::uint16_t port);

}  // namespace bioperf::net
