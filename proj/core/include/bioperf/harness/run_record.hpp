#pragma once

#include <string>
#include <string_view>

#include "bioperf/harness/client.hpp"

namespace bioperf::harness {

/// JSON with field names matching the record types; doubles round-trip exactly.
std::string to_json(const RunRecord& run);

/// Throws ValidationError on malformed or incomplete documents.
RunRecord run_record_from_json(std::string_view text);

void write_run_record(const std::string& path, const RunRecord& run);
RunRecord read_run_record(const std::string& path);

}  // namespace bioperf::harness
