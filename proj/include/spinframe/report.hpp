#pragma once

// Machine-readable verification reports. The JSON body is a pure function of
// the inputs; wall time is kept out of it and written separately.

#include <json.hpp>

#include <string>
#include <vector>

namespace spinframe {

inline constexpr const char* kReportSchema = "spinframe.report/1";

enum class Comparison { AtMost, AtLeast, Equal };

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    Comparison comparison = Comparison::AtMost;
    bool pass = false;
    std::string note;
};

/// value <= tol, value >= tol, or value == tol; NaN never passes.
Check make_check(std::string name, double value, double tolerance, Comparison cmp = Comparison::AtMost,
                 std::string note = {});

class Report {
public:
    explicit Report(std::string subcommand) : subcommand_(std::move(subcommand)) {}

    const std::string& subcommand() const { return subcommand_; }
    nlohmann::ordered_json& inputs() { return inputs_; }
    nlohmann::ordered_json& data() { return data_; }
    const std::vector<Check>& checks() const { return checks_; }

    /// Throws std::logic_error on a duplicate check name.
    void add(Check check);
    void add_all(const std::vector<Check>& checks);
    /// A run that stopped on an exception; status becomes "error".
    void set_error(std::string message) { error_ = std::move(message); }
    const std::string& error() const { return error_; }
    bool pass() const;

    nlohmann::ordered_json to_json() const;
    std::string dump() const { return to_json().dump(2) + "\n"; }

private:
    std::string subcommand_;
    nlohmann::ordered_json inputs_ = nlohmann::ordered_json::object();
    nlohmann::ordered_json data_ = nlohmann::ordered_json::object();
    std::vector<Check> checks_;
    std::string error_;
};

}  // namespace spinframe
