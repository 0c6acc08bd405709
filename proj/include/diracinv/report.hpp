#pragma once

/**
 * @file report.hpp
 * @brief Hierarchical pass/fail report with attached data, serialised as
 *        ordered JSON so that output is byte-stable for a fixed input.
 */

#include "json.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace diracinv {

enum class CheckStatus { Pass, Fail, Skip };

[[nodiscard]] inline const char* to_string(CheckStatus s) noexcept
{
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skip: return "skip";
    }
    return "unknown";
}

class Report {
public:
    using json = nlohmann::ordered_json;

    struct Check {
        std::string name;
        CheckStatus status;
        json detail;
    };

    explicit Report(std::string title) : title_(std::move(title)) {}

    [[nodiscard]] const std::string& title() const noexcept { return title_; }

    bool check(std::string name, bool ok, json detail = json::object())
    {
        checks_.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(detail)});
        return ok;
    }

    /// Passes iff value < threshold; NaN never passes.
    bool check_below(std::string name, double value, double threshold)
    {
        const bool ok = value < threshold;
        json detail = json::object();
        detail["value"] = value;
        detail["threshold"] = threshold;
        return check(std::move(name), ok, std::move(detail));
    }

    void skip(std::string name, const std::string& reason)
    {
        json detail = json::object();
        detail["reason"] = reason;
        checks_.push_back({std::move(name), CheckStatus::Skip, std::move(detail)});
    }

    void set(const std::string& key, json value) { data_[key] = std::move(value); }
    [[nodiscard]] const json& data() const noexcept { return data_; }

    void add_section(Report child) { sections_.push_back(std::move(child)); }

    [[nodiscard]] const std::vector<Check>& checks() const noexcept { return checks_; }
    [[nodiscard]] const std::vector<Report>& sections() const noexcept { return sections_; }

    [[nodiscard]] bool passed() const { return failure_count() == 0; }

    [[nodiscard]] std::size_t check_count() const
    {
        std::size_t n = checks_.size();
        for (const auto& s : sections_) n += s.check_count();
        return n;
    }

    [[nodiscard]] std::size_t failure_count() const
    {
        std::size_t n = 0;
        for (const auto& c : checks_) n += c.status == CheckStatus::Fail;
        for (const auto& s : sections_) n += s.failure_count();
        return n;
    }

    /// Slash-separated paths of every failed check.
    [[nodiscard]] std::vector<std::string> failures(const std::string& prefix = {}) const
    {
        std::vector<std::string> out;
        const std::string here = prefix.empty() ? title_ : prefix + "/" + title_;
        for (const auto& c : checks_)
            if (c.status == CheckStatus::Fail) out.push_back(here + "/" + c.name);
        for (const auto& s : sections_) {
            auto sub = s.failures(here);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }

    [[nodiscard]] json to_json() const
    {
        json j = json::object();
        j["title"] = title_;
        j["passed"] = passed();
        j["checks_total"] = check_count();
        j["checks_failed"] = failure_count();
        json cs = json::array();
        for (const auto& c : checks_) {
            json e = json::object();
            e["name"] = c.name;
            e["status"] = to_string(c.status);
            for (const auto& [k, v] : c.detail.items()) e[k] = v;
            cs.push_back(std::move(e));
        }
        j["checks"] = std::move(cs);
        if (!data_.empty()) j["data"] = data_;
        if (!sections_.empty()) {
            json ss = json::array();
            for (const auto& s : sections_) ss.push_back(s.to_json());
            j["sections"] = std::move(ss);
        }
        return j;
    }

private:
    std::string title_;
    std::vector<Check> checks_;
    json data_ = json::object();
    std::vector<Report> sections_;
};

/// True if every number in the document is finite.
[[nodiscard]] inline bool all_finite(const nlohmann::ordered_json& j)
{
    if (j.is_number_float()) return std::isfinite(j.get<double>());
    if (j.is_structured()) {
        for (const auto& v : j)
            if (!all_finite(v)) return false;
    }
    return true;
}

}  // namespace diracinv
