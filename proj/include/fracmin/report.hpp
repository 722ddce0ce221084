#pragma once

// Machine-readable run reports. One JSON document per command; the schema
// is report.schema.json at the repository root.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracmin/error.hpp"
#include "fracmin/map_io.hpp"

namespace fracmin {

#ifdef FRACMIN_VERSION
inline constexpr const char* version_string = FRACMIN_VERSION;
#else
inline constexpr const char* version_string = "0.1.0";
#endif

struct CheckOutcome {
    std::string name;
    bool pass = false;
    double margin = 0.0;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

class Report {
public:
    using Param = std::variant<double, std::int64_t, std::string, bool>;

    explicit Report(std::string command) : command_(std::move(command)) {}

    void param(const std::string& key, Param value) { parameters_[key] = std::move(value); }

    void result(const std::string& key, double value) {
        if (!std::isfinite(value)) throw Error("report: non-finite result '" + key + "'");
        results_[key] = value;
    }
    void result(const std::string& key, bool value) { results_[key] = value; }
    void result(const std::string& key, int value) { results_[key] = static_cast<std::int64_t>(value); }

    /// pass is decided by the caller; margin is the signed distance to the
    /// threshold (non-negative when passing).
    void check(const std::string& name, bool pass, double margin) {
        if (!std::isfinite(margin)) margin = pass ? 0.0 : -1.0;
        checks_.push_back({name, pass, margin});
    }

    void seed(std::uint64_t s) { seed_ = s; }
    void table(const std::string& name, Table t) { tables_[name] = std::move(t); }

    bool all_checks_pass() const {
        for (const auto& c : checks_)
            if (!c.pass) return false;
        return true;
    }
    const std::vector<CheckOutcome>& checks() const { return checks_; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["command"] = command_;
        j["version"] = version_string;
        auto& params = j["parameters"] = nlohmann::json::object();
        for (const auto& [k, v] : parameters_)
            std::visit([&](const auto& x) { params[k] = x; }, v);
        auto& results = j["results"] = nlohmann::json::object();
        for (const auto& [k, v] : results_) std::visit([&](const auto& x) { results[k] = x; }, v);
        auto& checks = j["checks"] = nlohmann::json::array();
        for (const auto& c : checks_) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"margin", c.margin}});
        if (seed_) j["seed"] = *seed_;
        if (!tables_.empty()) {
            auto& tables = j["tables"] = nlohmann::json::object();
            for (const auto& [name, t] : tables_) {
                for (const auto& row : t.rows)
                    for (double v : row)
                        if (!std::isfinite(v)) throw Error("report: non-finite entry in table '" + name + "'");
                tables[name] = {{"columns", t.columns}, {"rows", t.rows}};
            }
        }
        return j;
    }

    void write_json(std::ostream& os) const { os << to_json().dump(2) << '\n'; }

    /// CSV view: the first table if there is one, otherwise key,value rows of
    /// the results followed by the checks.
    void write_csv(std::ostream& os) const {
        if (!tables_.empty()) {
            const Table& t = tables_.begin()->second;
            for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
            os << '\n';
            for (const auto& row : t.rows) {
                for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_g17(row[c]);
                os << '\n';
            }
            return;
        }
        os << "key,value\n";
        for (const auto& [k, v] : results_) {
            os << k << ',';
            std::visit(
                [&](const auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, double>)
                        os << format_g17(x);
                    else if constexpr (std::is_same_v<T, bool>)
                        os << (x ? "true" : "false");
                    else
                        os << x;
                },
                v);
            os << '\n';
        }
        for (const auto& c : checks_)
            os << "check:" << c.name << ',' << (c.pass ? "pass" : "fail") << '\n';
    }

private:
    std::string command_;
    std::map<std::string, Param> parameters_;
    std::map<std::string, std::variant<double, std::int64_t, bool>> results_;
    std::vector<CheckOutcome> checks_;
    std::optional<std::uint64_t> seed_;
    std::map<std::string, Table> tables_;
};

} // namespace fracmin
