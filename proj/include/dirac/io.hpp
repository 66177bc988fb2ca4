#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dirac/fuchsian.hpp"
#include "dirac/spin.hpp"
#include "dirac/trace_terms.hpp"

namespace dirac::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0.0";

/// {"model": "cyclic"|"gamma2"|"custom", "ell": number, "generators": [[[a,b],[c,d]], ...]}
GroupPresentation parse_group(const Json& j);
GroupPresentation load_group(const std::string& path);
Json group_to_json(const GroupPresentation& g);

/// {"signs": [-1, -1]}
SpinAssignment parse_spin(const Json& j);
SpinAssignment load_spin(const std::string& path);

Json report_to_json(const TraceReport& rep, const GroupPresentation& group, const SpinAssignment& spin);

/// 17 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_double(double x);

/// Comma-joined fields; fields containing commas or quotes are quoted.
std::string csv_line(const std::vector<std::string>& fields);

/// Reads a whole file; ValidationError when it cannot be opened.
std::string read_file(const std::string& path);
/// Writes a whole file (or stdout for "-"); ResourceError on failure.
void write_output(const std::string& path, const std::string& text);

}  // namespace dirac::io
