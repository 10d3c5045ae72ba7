#include "bioperf/harness/wire.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "bioperf/error.hpp"

namespace bioperf::wire {
namespace chat {
namespace {

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
    throw ValidationError("chat: bad counter '" + std::string(s) + "'");
  }
  return v;
}

// Splits off the first space-delimited word.
std::string_view next_word(std::string_view& rest) {
  const auto sp = rest.find(' ');
  std::string_view word = rest.substr(0, sp);
  rest = sp == std::string_view::npos ? std::string_view{} : rest.substr(sp + 1);
  return word;
}

}  // namespace

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') return false;
  }
  return true;
}

Line parse(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::string_view rest = line;
  const std::string_view verb = next_word(rest);
  Line out;
  if (verb == "JOIN") {
    out.kind = Kind::join;
    if (!valid_name(rest)) throw ValidationError("chat: JOIN needs a single name");
    out.name = rest;
  } else if (verb == "MSG") {
    out.kind = Kind::msg;
    const std::string_view name = next_word(rest);
    if (!valid_name(name)) throw ValidationError("chat: MSG needs a name");
    out.name = name;
    out.text = rest;
  } else if (verb == "QUIT") {
    if (!rest.empty()) throw ValidationError("chat: QUIT takes no arguments");
    out.kind = Kind::quit;
  } else if (verb == "BYE") {
    out.kind = Kind::bye;
    out.frames = parse_u64(next_word(rest));
    out.bytes = parse_u64(rest);
  } else if (verb == "ERR") {
    out.kind = Kind::err;
    out.text = rest;
  } else {
    throw ValidationError("chat: unknown command '" + std::string(verb) + "'");
  }
  return out;
}

std::string join(std::string_view name) { return "JOIN " + std::string(name) + "\n"; }

std::string msg(std::string_view name, std::string_view text) {
  return "MSG " + std::string(name) + " " + std::string(text) + "\n";
}

std::string quit() { return "QUIT\n"; }

std::string bye(std::uint64_t frames, std::uint64_t bytes) {
  return "BYE " + std::to_string(frames) + " " + std::to_string(bytes) + "\n";
}

std::string err(std::string_view reason) { return "ERR " + std::string(reason) + "\n"; }

}  // namespace chat

namespace ft {
namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint64_t get_u64(std::span<const std::uint8_t> in) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v = (v << 8) | in[i];
  return v;
}

}  // namespace

Header decode_header(std::span<const std::uint8_t, kHeaderSize> bytes) {
  const auto op = bytes[0];
  if (op < static_cast<std::uint8_t>(Opcode::put) || op > static_cast<std::uint8_t>(Opcode::ack)) {
    throw ValidationError("ft: unknown opcode " + std::to_string(op));
  }
  const std::uint32_t length = (std::uint32_t{bytes[1]} << 24) | (std::uint32_t{bytes[2]} << 16) |
                               (std::uint32_t{bytes[3]} << 8) | std::uint32_t{bytes[4]};
  if (length > kMaxPayload) {
    throw ValidationError("ft: frame length " + std::to_string(length) + " exceeds limit");
  }
  return Header{static_cast<Opcode>(op), length};
}

std::array<std::uint8_t, kHeaderSize> encode_header(Header h) {
  return {static_cast<std::uint8_t>(h.op), static_cast<std::uint8_t>(h.length >> 24),
          static_cast<std::uint8_t>(h.length >> 16), static_cast<std::uint8_t>(h.length >> 8),
          static_cast<std::uint8_t>(h.length)};
}

std::vector<std::uint8_t> encode(Opcode op, std::span<const std::uint8_t> payload) {
  if (payload.size() > kMaxPayload) throw ValidationError("ft: payload too large");
  const auto header = encode_header(Header{op, static_cast<std::uint32_t>(payload.size())});
  std::vector<std::uint8_t> out(kHeaderSize + payload.size());
  std::copy(header.begin(), header.end(), out.begin());
  std::copy(payload.begin(), payload.end(), out.begin() + kHeaderSize);
  return out;
}

std::vector<std::uint8_t> put_payload(const PutRequest& p) {
  std::vector<std::uint8_t> out;
  put_u64(out, p.size);
  out.insert(out.end(), p.name.begin(), p.name.end());
  return out;
}

PutRequest parse_put(std::span<const std::uint8_t> payload) {
  if (payload.size() < 8) throw ValidationError("ft: PUT payload shorter than 8 bytes");
  return PutRequest{get_u64(payload), std::string(payload.begin() + 8, payload.end())};
}

std::vector<std::uint8_t> ack_stats_payload(AckStats s) {
  std::vector<std::uint8_t> out;
  put_u64(out, s.frames);
  put_u64(out, s.bytes);
  return out;
}

AckStats parse_ack_stats(std::span<const std::uint8_t> payload) {
  if (payload.size() != 16) throw ValidationError("ft: ACK stats payload must be 16 bytes");
  return AckStats{get_u64(payload.first(8)), get_u64(payload.subspan(8))};
}

std::uint64_t data_frame_count(std::uint64_t size, std::size_t chunk) {
  if (chunk == 0) throw ValidationError("ft: chunk size must be positive");
  return (size + chunk - 1) / chunk;
}

}  // namespace ft
}  // namespace bioperf::wire
