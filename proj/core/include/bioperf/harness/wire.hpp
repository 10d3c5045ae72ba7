#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bioperf::wire {

// Chat relay protocol: UTF-8 lines terminated by '\n'.
//   client -> server   JOIN <name> | MSG <name> <text> | QUIT
//   server -> client   MSG <name> <text> (relayed) | BYE <frames> <bytes> | ERR <reason>
// BYE carries the server's receive counters for the session: MSG frames and
// the byte length of their <text> payloads.
namespace chat {

inline constexpr std::size_t kMaxLine = 64 * 1024;

enum class Kind { join, msg, quit, bye, err };

struct Line {
  Kind kind = Kind::quit;
  std::string name;
  std::string text;  // MSG payload or ERR reason
  std::uint64_t frames = 0;
  std::uint64_t bytes = 0;
};

/// Parses one line without its terminator. Throws ValidationError.
Line parse(std::string_view line);

/// Each formatter returns the line including its trailing '\n'.
std::string join(std::string_view name);
std::string msg(std::string_view name, std::string_view text);
std::string quit();
std::string bye(std::uint64_t frames, std::uint64_t bytes);
std::string err(std::string_view reason);

/// Names are non-empty and contain no whitespace.
bool valid_name(std::string_view name);

}  // namespace chat

// File transfer protocol: binary frames
//   [opcode: 1 byte][length: 4 bytes big-endian][payload: length bytes]
//   PUT  payload = [file size: 8 bytes big-endian][file name bytes]
//   DATA payload = file content chunk
//   DONE payload = empty
//   ACK  payload = empty after PUT; after DONE [frames: 8 BE][bytes: 8 BE],
//        the server's DATA receive counters for the session.
namespace ft {

enum class Opcode : std::uint8_t { put = 1, data = 2, done = 3, ack = 4 };

inline constexpr std::size_t kHeaderSize = 5;
inline constexpr std::uint32_t kMaxPayload = 16u * 1024u * 1024u;
inline constexpr std::size_t kDefaultChunk = 1024;

struct Header {
  Opcode op = Opcode::ack;
  std::uint32_t length = 0;
};

/// Throws ValidationError for unknown opcodes or oversized lengths.
Header decode_header(std::span<const std::uint8_t, kHeaderSize> bytes);
std::array<std::uint8_t, kHeaderSize> encode_header(Header h);

std::vector<std::uint8_t> encode(Opcode op, std::span<const std::uint8_t> payload);

struct PutRequest {
  std::uint64_t size = 0;
  std::string name;
};
std::vector<std::uint8_t> put_payload(const PutRequest& p);
PutRequest parse_put(std::span<const std::uint8_t> payload);

struct AckStats {
  std::uint64_t frames = 0;
  std::uint64_t bytes = 0;
};
std::vector<std::uint8_t> ack_stats_payload(AckStats s);
AckStats parse_ack_stats(std::span<const std::uint8_t> payload);

/// Number of DATA frames needed for a file: ceil(size / chunk).
std::uint64_t data_frame_count(std::uint64_t size, std::size_t chunk);

}  // namespace ft

}  // namespace bioperf::wire
