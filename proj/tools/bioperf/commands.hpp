#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bioperf/harness/client.hpp"
#include "bioperf/harness/server.hpp"
#include "bioperf/report.hpp"

namespace bioperf::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeFailure = 1;
inline constexpr int kInputError = 2;

enum class RateSource { derived, recorded };

struct Config {
  harness::Mode mode = harness::Mode::chat;
  std::string host = "127.0.0.1";
  std::optional<std::uint16_t> port;       // defaults per mode
  std::optional<std::uint16_t> file_port;  // file listener when mode is both
  harness::Workload workload;
  std::string out_dir = ".";
  bool local_server = false;  // run: host an in-process server on ephemeral ports

  std::vector<std::string> inputs;  // analyze: factor CSVs and/or RunRecord JSON
  Method method = Method::both;
  Format format = Format::text;
  RateSource rates = RateSource::derived;

  std::string distance_csv;  // tree
  std::string paths;         // tree: "A:C,B:D"; empty means every leaf pair
  bool midpoint = false;
};

/// BIOPERF_OUT_DIR, when set and non-empty, replaces config.out_dir.
void apply_environment(Config& config);

/// Ports actually used for each protocol, after defaults are applied.
std::uint16_t chat_port(const Config& c);
std::uint16_t file_port(const Config& c);

/// Serves until `wait_for_shutdown` returns.
int cmd_serve(const Config& config, const std::function<void()>& wait_for_shutdown,
              std::ostream& out, std::ostream& err);

/// Writes <out>/run_<label>.json and appends a row to <out>/factors.csv.
int cmd_run(const Config& config, std::ostream& out, std::ostream& err);

/// Prints the report; also writes <out>/report.<format> when out_dir is not ".".
int cmd_analyze(const Config& config, std::ostream& out, std::ostream& err);

/// Writes <out>/tree.nwk, <out>/incidence.csv and <out>/incidence_t.csv.
int cmd_tree(const Config& config, std::ostream& out, std::ostream& err);

/// Loads inputs the way cmd_analyze does.
std::vector<RunInput> load_inputs(const std::vector<std::string>& paths, RateSource rates);

/// Parses "A:C,B:D". Throws ValidationError.
std::vector<std::pair<std::string, std::string>> parse_paths(const std::string& spec);

}  // namespace bioperf::cli
