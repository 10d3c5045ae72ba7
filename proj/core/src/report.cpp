#include "bioperf/report.hpp"

#include <fmt/format.h>

#include <json.hpp>

#include "bioperf/csv.hpp"
#include "bioperf/error.hpp"

namespace bioperf {

Method parse_method(std::string_view s) {
  if (s == "bio") return Method::bio;
  if (s == "littles") return Method::littles;
  if (s == "both") return Method::both;
  throw ValidationError("unknown method '" + std::string(s) + "' (expected bio, littles, both)");
}

Format parse_format(std::string_view s) {
  if (s == "text") return Format::text;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ValidationError("unknown format '" + std::string(s) + "' (expected text, csv, json)");
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::bio:
      return "bio";
    case Method::littles:
      return "littles";
    case Method::both:
      return "both";
  }
  return "?";
}

std::string_view to_string(Format f) {
  switch (f) {
    case Format::text:
      return "text";
    case Format::csv:
      return "csv";
    case Format::json:
      return "json";
  }
  return "?";
}

Analysis analyze(std::vector<RunInput> runs, Method method) {
  if (runs.empty()) throw ValidationError("analyze: no input runs");
  Analysis a;
  a.method = method;
  a.runs = std::move(runs);
  std::vector<DerivedRates> rates;
  for (const auto& r : a.runs) rates.push_back(r.rates);
  if (method != Method::littles) a.bio = bio_utilization(rates);
  if (method != Method::bio) a.littles = littles_from_runs(rates);
  if (a.bio && a.littles) a.comparison = compare(*a.bio, *a.littles);
  return a;
}

namespace {

using nlohmann::json;

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string render_json(const Analysis& a) {
  json j;
  j["method"] = std::string(to_string(a.method));
  j["inputs"] = json::array();
  for (const auto& r : a.runs) {
    const auto& f = r.factors;
    j["inputs"].push_back({
        {"run_label", f.run_label},
        {"clients_online", f.clients_online},
        {"servers", f.servers},
        {"packets_sent", f.packets_sent},
        {"packets_sent_length", f.packets_sent_length},
        {"packets_received", f.packets_received},
        {"packets_received_length", f.packets_received_length},
        {"total_arrival_time", f.total_arrival_time},
        {"total_departure_time", f.total_departure_time},
        {"total_service_time", f.total_service_time},
        {"total_time", f.total_time},
        {"derived",
         {{"byte_rate_bs", r.rates.byte_rate_bs},
          {"capacity_c", r.rates.capacity_c},
          {"arrival_rate", r.rates.arrival_rate},
          {"service_rate", r.rates.service_rate}}},
    });
  }
  j["bio"] = nullptr;
  j["littles"] = nullptr;
  j["comparison"] = nullptr;
  if (a.bio) {
    j["bio"] = {{"avg_bs", a.bio->avg_bs},
                {"avg_c", a.bio->avg_c},
                {"utilization_q", a.bio->utilization_q},
                {"idle", a.bio->idle},
                {"constraint_ok", a.bio->constraint_ok}};
  }
  if (a.littles) {
    const auto& m = *a.littles;
    j["littles"] = {{"lambda", m.lambda},   {"mu", m.mu},
                    {"rho", m.rho},         {"idle", 1.0 - m.rho},
                    {"stable", m.stable()}, {"l_system", opt(m.l_system)},
                    {"w_system", opt(m.w_system)}, {"servers", m.servers}};
  }
  if (a.comparison) {
    j["comparison"] = {{"diff_utilization", a.comparison->diff_utilization},
                       {"diff_percent", a.comparison->diff_percent}};
  }
  return j.dump(2) + "\n";
}

std::string num(double v) { return fmt::format("{:.9f}", v); }
std::string num(const std::optional<double>& v) { return v ? num(*v) : "undefined"; }
std::string rate(double v) { return fmt::format("{:.3f}", v); }

std::string render_text(const Analysis& a) {
  std::string out;
  out += fmt::format("{:<12} {:>16} {:>16} {:>16} {:>16}\n", "Run", "BS (bit/s)", "C (bit/s)",
                     "lambda (pkt/s)", "mu (pkt/s)");
  for (const auto& r : a.runs) {
    out += fmt::format("{:<12} {:>16.3f} {:>16.3f} {:>16.3f} {:>16.3f}\n", r.factors.run_label,
                       r.rates.byte_rate_bs, r.rates.capacity_c, r.rates.arrival_rate,
                       r.rates.service_rate);
  }
  out += "\n";

  if (a.bio) {
    const auto& b = *a.bio;
    out += "Bio-computing estimate\n";
    out += fmt::format("  {:<36} {}\n", "Average byte rate BS (bit/s)", rate(b.avg_bs));
    out += fmt::format("  {:<36} {}\n", "Average capacity C (bit/s)", rate(b.avg_c));
    out += fmt::format("  {:<36} {}\n", "Utilization", num(b.utilization_q));
    out += fmt::format("  {:<36} {}\n", "Expected idle time", num(b.idle));
    out += fmt::format("  {:<36} {}\n", "Constraint BS <= C", b.constraint_ok ? "holds" : "VIOLATED");
    out += fmt::format("  {:<36} {}\n\n", "Servers", 1);
  }
  if (a.littles) {
    const auto& m = *a.littles;
    out += "Little's law (M/M/1)\n";
    out += fmt::format("  {:<36} {}\n", "Arrival rate lambda (pkt/s)", rate(m.lambda));
    out += fmt::format("  {:<36} {}\n", "Service rate mu (pkt/s)", rate(m.mu));
    out += fmt::format("  {:<36} {}\n", "Utilization rho", num(m.rho));
    out += fmt::format("  {:<36} {}\n", "Expected idle time", num(1.0 - m.rho));
    out += fmt::format("  {:<36} {}\n", "Packets in system L", num(m.l_system));
    out += fmt::format("  {:<36} {}\n", "Time in system W (s)", num(m.w_system));
    out += fmt::format("  {:<36} {}\n\n", "Servers", m.servers);
  }
  if (a.comparison) {
    const auto& c = *a.comparison;
    out += fmt::format("{:<34} {:>14} {:>14} {:>14}\n", "Technique \\ Average Performance",
                       "Bio-computing", "Little's Law", "Difference");
    out += fmt::format("{:<34} {:>14} {:>14} {:>14}\n", "Utilization", num(c.bio.utilization_q),
                       num(c.littles.rho), num(c.diff_utilization));
    out += fmt::format("{:<34} {:>14} {:>14} {:>14}\n", "Expected idle time", num(c.bio.idle),
                       num(1.0 - c.littles.rho), num(std::abs(c.bio.idle - (1.0 - c.littles.rho))));
    out += fmt::format("Difference in percent: {:.3f}%\n", c.diff_percent);
  }
  return out;
}

std::string render_csv(const Analysis& a) {
  auto cell = [](const std::optional<double>& v) {
    return v ? csv::format_number(*v) : std::string();
  };
  std::optional<double> bio_u, bio_idle, lit_u, lit_idle, diff, diff_idle;
  if (a.bio) {
    bio_u = a.bio->utilization_q;
    bio_idle = a.bio->idle;
  }
  if (a.littles) {
    lit_u = a.littles->rho;
    lit_idle = 1.0 - a.littles->rho;
  }
  if (a.comparison) {
    diff = a.comparison->diff_utilization;
    diff_idle = std::abs(*bio_idle - *lit_idle);
  }
  std::string out = "metric,bio_computing,littles_law,difference\n";
  out += csv::join({"utilization", cell(bio_u), cell(lit_u), cell(diff)}) + "\n";
  out += csv::join({"expected_idle_time", cell(bio_idle), cell(lit_idle), cell(diff_idle)}) + "\n";
  if (a.comparison) {
    out += csv::join({"difference_percent", "", "", cell(a.comparison->diff_percent)}) + "\n";
  }
  if (a.bio) {
    out += csv::join({"avg_bs", cell(a.bio->avg_bs), "", ""}) + "\n";
    out += csv::join({"avg_c", cell(a.bio->avg_c), "", ""}) + "\n";
  }
  if (a.littles) {
    out += csv::join({"lambda", "", cell(a.littles->lambda), ""}) + "\n";
    out += csv::join({"mu", "", cell(a.littles->mu), ""}) + "\n";
    out += csv::join({"l_system", "", cell(a.littles->l_system), ""}) + "\n";
    out += csv::join({"w_system", "", cell(a.littles->w_system), ""}) + "\n";
  }
  return out;
}

}  // namespace

std::string render(const Analysis& a, Format format) {
  switch (format) {
    case Format::text:
      return render_text(a);
    case Format::csv:
      return render_csv(a);
    case Format::json:
      return render_json(a);
  }
  return {};
}

}  // namespace bioperf
