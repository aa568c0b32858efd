#include "repalign/report.hpp"

#include <cstdio>
#include <regex>
#include <utility>
#include <vector>

#include "repalign/errors.hpp"

namespace repalign {

ReportFormat parse_report_format(std::string_view text) {
    if (text == "json") return ReportFormat::json;
    if (text == "table") return ReportFormat::table;
    throw FormatError("report format must be json or table, got '" + std::string(text) + "'");
}

std::string render_rational(std::string_view text) {
    static const std::regex fraction(R"(-?[0-9]+/[0-9]+)");
    const std::string s(text);
    if (!std::regex_match(s, fraction)) return s;
    const double value = rational_from_string(s).get_d();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s (≈%.3f)", s.c_str(), value);
    return buf;
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        if (j.empty()) out.emplace_back(prefix, "n/a");
        for (const auto& [key, value] : j.items()) flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    } else if (j.is_array()) {
        if (j.empty()) out.emplace_back(prefix, "n/a");
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else if (j.is_string()) {
        out.emplace_back(prefix, render_rational(j.get<std::string>()));
    } else if (j.is_null()) {
        out.emplace_back(prefix, "n/a");
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

} // namespace

std::string render_report(const Json& report, ReportFormat format) {
    if (format == ReportFormat::json) return dump(report);
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    std::size_t width = 0;
    for (const auto& [key, _] : rows) width = std::max(width, key.size());
    std::string out;
    for (const auto& [key, value] : rows) {
        out += key;
        out.append(width - key.size() + 2, ' ');
        out += value;
        out += '\n';
    }
    return out;
}

} // namespace repalign
