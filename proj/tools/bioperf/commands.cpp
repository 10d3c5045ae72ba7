#include "bioperf/commands.hpp"

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "bioperf/distance_csv.hpp"
#include "bioperf/error.hpp"
#include "bioperf/factors_csv.hpp"
#include "bioperf/harness/run_record.hpp"
#include "bioperf/newick.hpp"
#include "bioperf/path_matrix.hpp"
#include "bioperf/phylo_nj.hpp"

namespace bioperf::cli {
namespace fs = std::filesystem;

void apply_environment(Config& config) {
  if (const char* dir = std::getenv("BIOPERF_OUT_DIR"); dir != nullptr && *dir != '\0') {
    config.out_dir = dir;
  }
}

std::uint16_t chat_port(const Config& c) {
  if (c.mode == harness::Mode::file_transfer) return harness::kDefaultChatPort;
  return c.port.value_or(harness::kDefaultChatPort);
}

std::uint16_t file_port(const Config& c) {
  if (c.mode == harness::Mode::file_transfer) return c.port.value_or(harness::kDefaultFilePort);
  return c.file_port.value_or(harness::kDefaultFilePort);
}

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw NetworkError("cannot create output directory '" + dir + "': " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw NetworkError("cannot write '" + path.string() + "'");
}

std::string file_stem_for(const std::string& label) {
  std::string out;
  for (char c : label) out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

}  // namespace

int cmd_serve(const Config& config, const std::function<void()>& wait_for_shutdown,
              std::ostream& out, std::ostream& err) {
  harness::ServerConfig sc;
  sc.mode = config.mode;
  sc.host = config.host;
  sc.chat_port = chat_port(config);
  sc.file_port = file_port(config);
  std::unique_ptr<harness::TrafficServer> server;
  try {
    server = harness::TrafficServer::start(sc);
  } catch (const NetworkError& e) {
    err << "bioperf serve: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  if (auto p = server->chat_port()) out << "listening chat on " << sc.host << ':' << *p << '\n';
  if (auto p = server->file_port()) {
    out << "listening file_transfer on " << sc.host << ':' << *p << '\n';
  }
  out.flush();
  wait_for_shutdown();
  server->stop();
  const auto s = server->stats();
  out << "shutdown: " << s.sessions_opened << " sessions, " << s.chat_frames << " chat frames, "
      << s.file_frames << " data frames received\n";
  return kOk;
}

int cmd_run(const Config& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.workload.client_count < 1) throw ValidationError("--clients must be at least 1");
    harness::ServerAddress address{config.host, chat_port(config), file_port(config)};
    std::unique_ptr<harness::TrafficServer> local;
    std::optional<double> server_start;
    if (config.local_server) {
      harness::ServerConfig sc;
      sc.mode = config.mode;
      sc.host = config.host;
      sc.chat_port = 0;
      sc.file_port = 0;
      local = harness::TrafficServer::start(sc);
      if (auto p = local->chat_port()) address.chat_port = *p;
      if (auto p = local->file_port()) address.file_port = *p;
      server_start = local->start_time_ms();
    }

    const harness::RunRecord run =
        harness::run_client(config.mode, address, config.workload, server_start);
    if (local) local->stop();

    ensure_dir(config.out_dir);
    const fs::path json_path =
        fs::path(config.out_dir) / ("run_" + file_stem_for(run.run_label) + ".json");
    harness::write_run_record(json_path.string(), run);

    const fs::path csv_path = fs::path(config.out_dir) / "factors.csv";
    const bool fresh = !fs::exists(csv_path) || fs::file_size(csv_path) == 0;
    std::ofstream csv(csv_path, std::ios::binary | std::ios::app);
    if (fresh) write_factors_header(csv);
    write_factors_row(csv, run.factors);
    if (!csv) throw NetworkError("cannot write '" + csv_path.string() + "'");

    out << "run " << run.run_label << ": " << run.sessions.size() << " sessions, "
        << run.factors.packets_sent << " packets sent, " << run.factors.packets_received
        << " received\n"
        << "wrote " << json_path.string() << " and " << csv_path.string() << '\n';
    if (!run.complete) {
      for (const auto& s : run.sessions) {
        if (!s.complete) err << "session " << s.session_id << " incomplete: " << s.error << '\n';
      }
      return kRuntimeFailure;
    }
    return kOk;
  } catch (const ValidationError& e) {
    err << "bioperf run: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "bioperf run: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}

std::vector<RunInput> load_inputs(const std::vector<std::string>& paths, RateSource rates) {
  if (paths.empty()) throw ValidationError("no input files");
  std::vector<RunInput> runs;
  for (const auto& path : paths) {
    if (fs::path(path).extension() == ".json") {
      if (rates == RateSource::recorded) {
        throw ValidationError(path + ": run records carry no recorded rates");
      }
      const auto run = harness::read_run_record(path);
      runs.push_back(RunInput{run.factors, derive(run.factors)});
      continue;
    }
    for (auto& row : read_factors_csv(path)) {
      DerivedRates r;
      if (rates == RateSource::recorded) {
        if (!row.recorded) throw ValidationError(path + ": no rate columns to use as recorded");
        r = *row.recorded;
      } else {
        try {
          r = derive(row.factors);
        } catch (const DomainError& e) {
          throw ValidationError(path + ": run '" + row.factors.run_label + "': " + e.what());
        }
      }
      runs.push_back(RunInput{std::move(row.factors), r});
    }
  }
  return runs;
}

int cmd_analyze(const Config& config, std::ostream& out, std::ostream& err) {
  std::string report;
  try {
    const Analysis a = analyze(load_inputs(config.inputs, config.rates), config.method);
    report = render(a, config.format);
  } catch (const ValidationError& e) {
    err << "bioperf analyze: " << e.what() << '\n';
    return kInputError;
  } catch (const DomainError& e) {
    err << "bioperf analyze: " << e.what() << '\n';
    return kInputError;
  }
  out << report;
  if (config.out_dir != ".") {
    try {
      ensure_dir(config.out_dir);
      write_text(fs::path(config.out_dir) / ("report." + std::string(to_string(config.format))),
                 report);
    } catch (const std::exception& e) {
      err << "bioperf analyze: " << e.what() << '\n';
      return kRuntimeFailure;
    }
  }
  return kOk;
}

std::vector<std::pair<std::string, std::string>> parse_paths(const std::string& spec) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == item.size() ||
        item.find(':', colon + 1) != std::string::npos) {
      throw ValidationError("bad path '" + item + "', expected FROM:TO");
    }
    out.emplace_back(item.substr(0, colon), item.substr(colon + 1));
  }
  return out;
}

int cmd_tree(const Config& config, std::ostream& out, std::ostream& err) {
  PhyloTree tree;
  IncidenceMatrix r;
  try {
    const DistanceMatrix d = read_distance_csv(config.distance_csv);
    tree = nj_build(d);
    const auto endpoints = config.paths.empty() ? all_leaf_pairs(tree) : parse_paths(config.paths);
    r = build_incidence(tree, endpoints);
  } catch (const ValidationError& e) {
    err << "bioperf tree: " << e.what() << '\n';
    return kInputError;
  }
  if (tree.clamped_negative) err << "bioperf tree: warning: negative branch lengths clamped to 0\n";

  const std::string newick = to_newick(config.midpoint ? midpoint_root(tree) : tree);
  try {
    ensure_dir(config.out_dir);
    const fs::path dir(config.out_dir);
    write_text(dir / "tree.nwk", newick + "\n");
    write_text(dir / "incidence.csv", to_csv(r, "R"));
    write_text(dir / "incidence_t.csv", to_csv(transpose(r), "R^T"));
  } catch (const std::exception& e) {
    err << "bioperf tree: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  out << newick << '\n';
  return kOk;
}

}  // namespace bioperf::cli
