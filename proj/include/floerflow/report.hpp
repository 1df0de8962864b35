#pragma once

#include <algorithm>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace floerflow {

/// One named property in a diagnostic report, with the concrete cells or
/// items that violated it.
struct Check
{
    std::string property;
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string what)
    {
        ok = false;
        failures.push_back(std::move(what));
    }
};

/// Result of a diagnostic operation. Validators never throw on a failed
/// property; they record it here.
class Report
{
public:
    explicit Report(std::string subject = {}) : subject_(std::move(subject)) {}

    Check& check(std::string const& property)
    {
        for (auto& c : checks_)
            if (c.property == property)
                return c;
        checks_.push_back(Check{property, true, {}});
        return checks_.back();
    }

    bool passed() const
    {
        return std::all_of(checks_.begin(), checks_.end(),
                           [](Check const& c) { return c.ok; });
    }

    bool passed(std::string const& property) const
    {
        for (auto const& c : checks_)
            if (c.property == property)
                return c.ok;
        return true;
    }

    std::vector<std::string> failuresOf(std::string const& property) const
    {
        for (auto const& c : checks_)
            if (c.property == property)
                return c.failures;
        return {};
    }

    std::string const& subject() const { return subject_; }
    std::deque<Check> const& checks() const { return checks_; }

private:
    std::string subject_;
    std::deque<Check> checks_; // check() hands out references
};

inline void to_json(nlohmann::json& j, Report const& r)
{
    j = nlohmann::json::object();
    j["subject"] = r.subject();
    j["passed"] = r.passed();
    auto arr = nlohmann::json::array();
    for (auto const& c : r.checks())
        arr.push_back({{"property", c.property}, {"ok", c.ok}, {"failures", c.failures}});
    j["checks"] = std::move(arr);
}

} // namespace floerflow
