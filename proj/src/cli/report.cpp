#include "hyperc/cli/report.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hyperc/cli/args.hpp"
#include "hyperc/errors.hpp"
#include "json.hpp"

namespace hyperc::cli {

ReportFormat parse_report_format(const std::string& s) {
    if (s == "text") return ReportFormat::text;
    if (s == "json") return ReportFormat::json;
    throw InputError("unknown report format '" + s + "' (text or json)");
}

void RunReport::input(std::string key, std::string value) { inputs.emplace_back(std::move(key), std::move(value)); }

void RunReport::output(std::string name, double value) {
    outputs.push_back({std::move(name), format_double(value), value, {}, std::nullopt});
}

void RunReport::output(std::string name, double value, std::string qualifier_name, double qualifier) {
    outputs.push_back({std::move(name), format_double(value), value, std::move(qualifier_name), qualifier});
}

void RunReport::output_text(std::string name, std::string value) {
    outputs.push_back({std::move(name), std::move(value), std::nullopt, {}, std::nullopt});
}

void RunReport::check(std::string name, std::string subject, double value, double tolerance, bool passed) {
    checks.push_back({std::move(name), std::move(subject), value, tolerance, passed});
}

bool RunReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRow& c) { return c.passed; });
}

std::string RunReport::render(ReportFormat format) const {
    if (format == ReportFormat::json) {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["version"] = kVersion;
        nlohmann::ordered_json in = nlohmann::ordered_json::object();
        for (const auto& [k, v] : inputs) in[k] = v;
        j["inputs"] = in;
        nlohmann::ordered_json out = nlohmann::ordered_json::object();
        for (const ReportEntry& e : outputs) {
            if (e.numeric) {
                out[e.name] = *e.numeric;
            } else {
                out[e.name] = e.value;
            }
            if (e.qualifier) out[e.name + "_" + e.qualifier_name] = *e.qualifier;
        }
        j["outputs"] = out;
        if (!method.empty()) j["method"] = method;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const CheckRow& c : checks) {
            rows.push_back({{"check", c.name},
                            {"subject", c.subject},
                            {"value", c.value},
                            {"tolerance", c.tolerance},
                            {"passed", c.passed}});
        }
        if (!checks.empty() || command == "identities") j["checks"] = rows;
        if (!notes.empty()) j["notes"] = notes;
        if (!deterministic) j["wall_time_s"] = wall_time;
        return j.dump(2) + "\n";
    }

    std::ostringstream os;
    os << "hyperc " << kVersion << " " << command << "\n";
    for (const auto& [k, v] : inputs) os << "  input  " << k << " = " << v << "\n";
    for (const ReportEntry& e : outputs) {
        os << "  output " << e.name << " = " << e.value;
        if (e.qualifier) os << "  (" << e.qualifier_name << " " << format_double(*e.qualifier) << ")";
        os << "\n";
    }
    if (!method.empty()) os << "  method " << method << "\n";
    for (const std::string& n : notes) os << "  note   " << n << "\n";
    if (checks.empty() && command == "identities") os << "  checks (none)\n";
    if (!checks.empty()) {
        os << "  checks\n";
        for (const CheckRow& c : checks) {
            os << "    " << (c.passed ? "PASS" : "FAIL") << "  " << c.name;
            if (!c.subject.empty()) os << " " << c.subject;
            os << "  value " << format_double(c.value) << "  tol " << format_double(c.tolerance) << "\n";
        }
    }
    if (!deterministic) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f", wall_time);
        os << "  wall time " << buf << " s\n";
    }
    return os.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        out.flush();
        return;
    }
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
        f << text;
        f.flush();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path + "'");
    }
}

}  // namespace hyperc::cli
