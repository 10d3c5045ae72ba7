#include "bioperf/commands.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "bioperf/csv.hpp"
#include "bioperf/error.hpp"
#include "bioperf/factors_csv.hpp"
#include "table2.hpp"

namespace bioperf::cli {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("bioperf_cmd_" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

template <typename Fn>
Outcome invoke(Fn fn, const Config& c) {
  std::ostringstream out, err;
  const int code = fn(c, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json analyze_json(Config c) {
  c.format = Format::json;
  const auto r = invoke(cmd_analyze, c);
  EXPECT_EQ(r.code, kOk) << r.err;
  return nlohmann::json::parse(r.out);
}

TEST(Analyze, PublishedCountersDerived) {
  TempDir dir;
  write(dir / "t2.csv", testing::table2_csv());
  Config c;
  c.inputs = {(dir / "t2.csv").string()};
  const auto j = analyze_json(c);
  EXPECT_NEAR(j["bio"]["utilization_q"].get<double>(), testing::kPublishedBioUtilization, 0.001);
  EXPECT_NEAR(j["bio"]["avg_bs"].get<double>(), testing::kPublishedAvgBs, 0.1);
}

TEST(Analyze, PublishedRatesRecorded) {
  TempDir dir;
  write(dir / "t2.csv", testing::table2_csv());
  Config c;
  c.inputs = {(dir / "t2.csv").string()};
  c.rates = RateSource::recorded;
  const auto j = analyze_json(c);
  EXPECT_EQ(j["inputs"][1]["derived"]["service_rate"], 36.3);
  const double diff = j["comparison"]["diff_utilization"].get<double>();
  EXPECT_GE(diff, 0.0005);
  EXPECT_LE(diff, 0.0125);
}

TEST(Analyze, ZeroTraffic) {
  TempDir dir;
  std::ostringstream csv;
  write_factors_header(csv);
  // Zero service time cannot be derived; write the row by hand.
  csv << "idle,2,1,10,100,0,0,5,1e12,0,1000\n";
  write(dir / "z.csv", csv.str());
  Config c;
  c.inputs = {(dir / "z.csv").string()};
  const auto r = invoke(cmd_analyze, c);
  EXPECT_EQ(r.code, kInputError) << "service time 0 is rejected by validation";

  std::ostringstream quiet;
  write_factors_header(quiet);
  quiet << "quiet,2,1,0,0,0,0,5,1e12,400,1000,0,0,0,0\n";
  write(dir / "q.csv", quiet.str());
  c.inputs = {(dir / "q.csv").string()};
  const auto j = analyze_json(c);
  EXPECT_EQ(j["bio"]["utilization_q"].get<double>(), 0.0);
  EXPECT_EQ(j["bio"]["idle"].get<double>(), 1.0);
  EXPECT_EQ(j["littles"]["rho"].get<double>(), 0.0);
}

TEST(Analyze, InputErrorsExitTwo) {
  TempDir dir;
  Config c;
  c.inputs = {(dir / "missing.csv").string()};
  EXPECT_EQ(invoke(cmd_analyze, c).code, kInputError);

  write(dir / "bad.csv", "Run,No. of Online Clients\nx,2\n");
  c.inputs = {(dir / "bad.csv").string()};
  auto r = invoke(cmd_analyze, c);
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("missing column"), std::string::npos) << r.err;

  std::ostringstream text;
  write_factors_header(text);
  text << "r,2,1,10,100,11,100,5,1e12,10,1000,1,1,1,1\n";
  write(dir / "more.csv", text.str());
  c.inputs = {(dir / "more.csv").string()};
  r = invoke(cmd_analyze, c);
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("row 2: run 'r': packets received exceeds packets sent"), std::string::npos) << r.err;

  write(dir / "t2.csv", testing::table2_csv());
  c.inputs = {(dir / "t2.csv").string()};
  EXPECT_EQ(invoke(cmd_analyze, c).code, kOk);
}

TEST(Analyze, WritesReportWhenOutDirGiven) {
  TempDir dir;
  write(dir / "t2.csv", testing::table2_csv());
  Config c;
  c.inputs = {(dir / "t2.csv").string()};
  c.format = Format::csv;
  c.out_dir = (dir / "out").string();
  const auto r = invoke(cmd_analyze, c);
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(slurp(dir / "out" / "report.csv"), r.out);
}

TEST(Run, LocalRunThenAnalyzeRoundTrip) {
  TempDir dir;
  Config c;
  c.mode = harness::Mode::both;
  c.local_server = true;
  c.workload.client_count = 2;
  c.workload.messages = 30;
  c.workload.file_size = 8192;
  c.out_dir = dir.str();
  const auto r = invoke(cmd_run, c);
  ASSERT_EQ(r.code, kOk) << r.err;
  ASSERT_TRUE(fs::exists(dir / "run_IRCD_FTP.json"));
  ASSERT_TRUE(fs::exists(dir / "factors.csv"));

  Config from_json;
  from_json.inputs = {(dir / "run_IRCD_FTP.json").string()};
  Config from_csv;
  from_csv.inputs = {(dir / "factors.csv").string()};
  for (auto format : {Format::text, Format::csv, Format::json}) {
    from_json.format = from_csv.format = format;
    const auto a = invoke(cmd_analyze, from_json);
    const auto b = invoke(cmd_analyze, from_csv);
    ASSERT_EQ(a.code, kOk) << a.err;
    ASSERT_EQ(b.code, kOk) << b.err;
    EXPECT_EQ(a.out, b.out);
  }

  // A second run appends a row without repeating the header.
  ASSERT_EQ(invoke(cmd_run, c).code, kOk);
  EXPECT_EQ(csv::read_file((dir / "factors.csv").string()).size(), 3u);
}

TEST(Run, UnreachableServerExitsOne) {
  Config c;
  c.mode = harness::Mode::chat;
  c.port = 1;  // privileged and unused in the sandbox
  TempDir dir;
  c.out_dir = dir.str();
  const auto r = invoke(cmd_run, c);
  EXPECT_EQ(r.code, kRuntimeFailure);
  EXPECT_FALSE(fs::exists(dir / "factors.csv"));
}

TEST(Run, BadWorkloadExitsTwo) {
  Config c;
  c.local_server = true;
  c.workload.client_count = 0;
  EXPECT_EQ(invoke(cmd_run, c).code, kInputError);
}

TEST(Serve, OccupiedPortExitsOne) {
  auto holder = harness::TrafficServer::start(harness::ServerConfig{harness::Mode::chat,
                                                                    "127.0.0.1", 0, 0});
  Config c;
  c.port = *holder->chat_port();
  bool waited = false;
  const auto code = [&] {
    std::ostringstream out, err;
    return cmd_serve(c, [&] { waited = true; }, out, err);
  }();
  EXPECT_EQ(code, kRuntimeFailure);
  EXPECT_FALSE(waited);
}

TEST(Serve, ReportsListeners) {
  Config c;
  c.mode = harness::Mode::both;
  c.port = 0;
  c.file_port = 0;
  std::ostringstream out, err;
  EXPECT_EQ(cmd_serve(c, [] {}, out, err), kOk);
  EXPECT_NE(out.str().find("listening chat on 127.0.0.1:"), std::string::npos);
  EXPECT_NE(out.str().find("listening file_transfer on 127.0.0.1:"), std::string::npos);
}

TEST(Tree, WritesArtifacts) {
  TempDir dir;
  write(dir / "d.csv", ",A,B,C,D\nA,0,5,9,10\nB,5,0,10,11\nC,9,10,0,9\nD,10,11,9,0\n");
  Config c;
  c.distance_csv = (dir / "d.csv").string();
  c.paths = "A:B";
  c.out_dir = (dir / "out").string();
  const auto r = invoke(cmd_tree, c);
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(slurp(dir / "out" / "tree.nwk"), r.out);
  const auto inc = csv::read_file((dir / "out" / "incidence.csv").string());
  ASSERT_EQ(inc.size(), 6u);
  EXPECT_EQ(inc[0], (csv::Row{"R", "P1"}));
  int ones = 0;
  for (std::size_t i = 1; i < inc.size(); ++i) ones += inc[i][1] == "1";
  EXPECT_EQ(ones, 2);
  const auto inc_t = csv::read_file((dir / "out" / "incidence_t.csv").string());
  ASSERT_EQ(inc_t.size(), 2u);
  EXPECT_EQ(inc_t[0][0], "R^T");
  EXPECT_TRUE(r.err.empty());
}

TEST(Tree, InputErrors) {
  TempDir dir;
  Config c;
  c.out_dir = dir.str();
  write(dir / "asym.csv", ",A,B\nA,0,1\nB,2,0\n");
  c.distance_csv = (dir / "asym.csv").string();
  EXPECT_EQ(invoke(cmd_tree, c).code, kInputError);

  write(dir / "ok.csv", ",A,B,C\nA,0,5,9\nB,5,0,10\nC,9,10,0\n");
  c.distance_csv = (dir / "ok.csv").string();
  c.paths = "A:Z";
  EXPECT_EQ(invoke(cmd_tree, c).code, kInputError);
  c.paths = "A-B";
  EXPECT_EQ(invoke(cmd_tree, c).code, kInputError);

  write(dir / "bad.csv", ",A,B,C\nA,0,10,1\nB,10,0,1\nC,1,1,0\n");
  c.distance_csv = (dir / "bad.csv").string();
  c.paths.clear();
  const auto r = invoke(cmd_tree, c);
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.err.find("clamped"), std::string::npos);
}

TEST(ParsePaths, Forms) {
  EXPECT_EQ(parse_paths("A:C,B:D"),
            (std::vector<std::pair<std::string, std::string>>{{"A", "C"}, {"B", "D"}}));
  EXPECT_TRUE(parse_paths("").empty());
  EXPECT_THROW(parse_paths("A:"), ValidationError);
  EXPECT_THROW(parse_paths("A:B:C"), ValidationError);
}

TEST(Environment, OutDirOverride) {
  Config c;
  ::setenv("BIOPERF_OUT_DIR", "/tmp/elsewhere", 1);
  apply_environment(c);
  EXPECT_EQ(c.out_dir, "/tmp/elsewhere");
  ::setenv("BIOPERF_OUT_DIR", "", 1);
  Config d;
  apply_environment(d);
  EXPECT_EQ(d.out_dir, ".");
  ::unsetenv("BIOPERF_OUT_DIR");
}

TEST(Ports, Defaults) {
  Config c;
  EXPECT_EQ(chat_port(c), harness::kDefaultChatPort);
  c.mode = harness::Mode::file_transfer;
  EXPECT_EQ(file_port(c), harness::kDefaultFilePort);
  c.port = 9000;
  EXPECT_EQ(file_port(c), 9000);
}

}  // namespace
}  // namespace bioperf::cli
