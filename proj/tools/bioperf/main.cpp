// bioperf: generate chat/file-transfer TCP traffic, derive flow factors and
// compare the NJ-based utilization estimate against an M/M/1 baseline.

#include <csignal>
#include <iostream>

#include <CLI11.hpp>

#include "bioperf/commands.hpp"
#include "bioperf/error.hpp"

namespace {

using bioperf::cli::Config;

void add_mode(CLI::App& cmd, std::string& mode) {
  cmd.add_option("--mode", mode, "chat, file_transfer or both")
      ->check(CLI::IsMember({"chat", "file_transfer", "file", "both"}));
}

void add_endpoint(CLI::App& cmd, Config& c) {
  cmd.add_option("--host", c.host, "server address");
  cmd.add_option("--port", c.port, "port (chat: 6667, file_transfer: 2121)");
  cmd.add_option("--file-port", c.file_port, "file-transfer port when --mode both");
}

void wait_for_signal() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  int sig = 0;
  sigwait(&set, &sig);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TCP performance measurement: traffic harness, NJ trees, utilization reports"};
  app.require_subcommand(1);

  Config c;
  std::string mode = "chat";
  std::string method = "both";
  std::string format = "text";
  std::string rates = "derived";
  std::optional<std::size_t> payload;

  auto* serve = app.add_subcommand("serve", "run the chat relay and/or file-transfer server");
  add_mode(*serve, mode);
  add_endpoint(*serve, c);

  auto* run = app.add_subcommand("run", "drive a scripted workload and record flow factors");
  add_mode(*run, mode);
  add_endpoint(*run, c);
  run->add_option("--clients", c.workload.client_count, "clients kept online for the run")
      ->check(CLI::PositiveNumber);
  run->add_option("--messages", c.workload.messages, "chat messages per client");
  run->add_option("--file-size", c.workload.file_size, "bytes uploaded per client");
  run->add_option("--payload", payload, "chat message size and file chunk size in bytes")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", c.workload.seed, "seed for generated payload content");
  run->add_option("--out", c.out_dir, "output directory");
  run->add_flag("--local", c.local_server, "host an in-process server on ephemeral ports");

  auto* analyze = app.add_subcommand("analyze", "compare bio-computing and Little's law estimates");
  analyze->add_option("inputs", c.inputs, "factor CSV files and/or run_*.json records")
      ->required();
  analyze->add_option("--method", method)->check(CLI::IsMember({"bio", "littles", "both"}));
  analyze->add_option("--format", format)->check(CLI::IsMember({"text", "csv", "json"}));
  analyze->add_option("--rates", rates, "derived from counters, or recorded rate columns")
      ->check(CLI::IsMember({"derived", "recorded"}));
  analyze->add_option("--out", c.out_dir, "also write report.<format> here");

  auto* tree = app.add_subcommand("tree", "build the NJ tree and path/link incidence matrices");
  tree->add_option("distance_csv", c.distance_csv, "labeled square distance matrix")->required();
  tree->add_option("--paths", c.paths, "leaf pairs FROM:TO,... (default: every pair)");
  tree->add_flag("--midpoint", c.midpoint, "root the Newick output at the midpoint");
  tree->add_option("--out", c.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bioperf::cli::kInputError;
  }

  c.mode = bioperf::harness::parse_mode(mode);
  c.method = bioperf::parse_method(method);
  c.format = bioperf::parse_format(format);
  c.rates = rates == "recorded" ? bioperf::cli::RateSource::recorded
                                : bioperf::cli::RateSource::derived;
  if (payload) {
    c.workload.message_size = *payload;
    c.workload.chunk_size = *payload;
  }
  bioperf::cli::apply_environment(c);

  if (serve->parsed()) {
    // Block the signals before any server thread exists so sigwait sees them.
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    return bioperf::cli::cmd_serve(c, wait_for_signal, std::cout, std::cerr);
  }
  if (run->parsed()) return bioperf::cli::cmd_run(c, std::cout, std::cerr);
  if (analyze->parsed()) return bioperf::cli::cmd_analyze(c, std::cout, std::cerr);
  return bioperf::cli::cmd_tree(c, std::cout, std::cerr);
}
