#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bioperf/flow_metrics.hpp"
#include "bioperf/perf_estimators.hpp"

namespace bioperf {

enum class Method { bio, littles, both };
enum class Format { text, csv, json };

/// Throw ValidationError for unknown names.
Method parse_method(std::string_view s);
Format parse_format(std::string_view s);
std::string_view to_string(Method m);
std::string_view to_string(Format f);

struct RunInput {
  FlowFactors factors;
  DerivedRates rates;
};

struct Analysis {
  Method method = Method::both;
  std::vector<RunInput> runs;
  std::optional<BioEstimate> bio;
  std::optional<LittlesModel> littles;
  std::optional<ComparisonReport> comparison;
};

/// Runs the requested estimators over `runs` (which must be non-empty).
Analysis analyze(std::vector<RunInput> runs, Method method);

/// Aligned text table, long-form CSV, or a JSON record with every input.
std::string render(const Analysis& a, Format format);

}  // namespace bioperf
