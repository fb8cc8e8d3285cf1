#pragma once

// Versioned JSON/CSV serialisation of scan results.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgres/constants.hpp"
#include "kgres/resonance.hpp"

namespace kgres::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "resonance-report/1";
inline constexpr const char* kConstantsSchema = "constants-budget/1";

/// Infinite values (an empty resonant set has min_gap = +inf) are written as null.
json to_json(const ResonanceReport& report);
/// Throws std::runtime_error on a schema mismatch or missing field.
ResonanceReport report_from_json(const json& doc);

json to_json(const ConstantsSearch& search, double A, int n);

/// CSV with header "c,separated,min_gap", 17 significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// printf("%.17g") formatting used by every CSV writer.
std::string format_double(double v);

}  // namespace kgres::io
