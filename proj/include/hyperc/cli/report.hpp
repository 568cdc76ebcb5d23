#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hyperc::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class ReportFormat { text, json };

ReportFormat parse_report_format(const std::string& s);

struct ReportEntry {
    std::string name;
    std::string value;  // already formatted
    std::optional<double> numeric;
    // Residual or tolerance attached to a numeric output.
    std::string qualifier_name;
    std::optional<double> qualifier;
};

struct CheckRow {
    std::string name;
    std::string subject;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<ReportEntry> outputs;
    std::vector<CheckRow> checks;
    std::vector<std::string> notes;
    std::string method;
    double wall_time = 0.0;
    // Omits the wall time so equal inputs give byte-identical reports.
    bool deterministic = false;

    void input(std::string key, std::string value);
    void output(std::string name, double value);
    void output(std::string name, double value, std::string qualifier_name, double qualifier);
    void output_text(std::string name, std::string value);
    void check(std::string name, std::string subject, double value, double tolerance, bool passed);
    bool all_passed() const;

    std::string render(ReportFormat format) const;
};

// Writes text to path atomically (temporary file then rename); "-" streams
// to out. Throws IoError.
void write_output(const std::string& path, const std::string& text, std::ostream& out);

}  // namespace hyperc::cli
