#include "spinframe/report.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinframe {

namespace {
const char* to_string(Comparison c) {
    switch (c) {
        case Comparison::AtMost: return "<=";
        case Comparison::AtLeast: return ">=";
        default: return "==";
    }
}

nlohmann::ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}
}  // namespace

Check make_check(std::string name, double value, double tolerance, Comparison cmp, std::string note) {
    Check c{std::move(name), value, tolerance, cmp, false, std::move(note)};
    switch (cmp) {
        case Comparison::AtMost: c.pass = value <= tolerance; break;
        case Comparison::AtLeast: c.pass = value >= tolerance; break;
        case Comparison::Equal: c.pass = value == tolerance; break;
    }
    return c;
}

void Report::add(Check check) {
    const bool dup = std::any_of(checks_.begin(), checks_.end(), [&](const Check& c) { return c.name == check.name; });
    if (dup) throw std::logic_error("duplicate check name: " + check.name);
    checks_.push_back(std::move(check));
}

void Report::add_all(const std::vector<Check>& checks) {
    for (const auto& c : checks) add(c);
}

bool Report::pass() const {
    if (!error_.empty()) return false;
    return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.pass; });
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = kReportSchema;
    j["subcommand"] = subcommand_;
    j["inputs"] = inputs_;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["value"] = number(c.value);
        e["comparison"] = to_string(c.comparison);
        e["tolerance"] = number(c.tolerance);
        e["pass"] = c.pass;
        if (!c.note.empty()) e["note"] = c.note;
        arr.push_back(e);
    }
    j["checks"] = arr;
    j["data"] = data_;
    if (!error_.empty()) j["error"] = error_;
    j["status"] = !error_.empty() ? "error" : (pass() ? "pass" : "fail");
    return j;
}

}  // namespace spinframe
