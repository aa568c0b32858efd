#pragma once

#include <string>
#include <string_view>

#include "repalign/json_io.hpp"

namespace repalign {

enum class ReportFormat { json, table };

ReportFormat parse_report_format(std::string_view text);

/// JSON output is `dump(report)`. The table flattens nested keys
/// ("mapping.n", "eaves_ranks[0]"), aligns the value column, renders
/// "num/den" strings as "num/den (≈d.ddd)" and empty arrays as "n/a".
std::string render_report(const Json& report, ReportFormat format);

/// "3/2" -> "3/2 (≈1.500)"; anything else is returned unchanged.
std::string render_rational(std::string_view text);

} // namespace repalign
