#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace gbgw {

struct CheckRecord {
    std::string id;
    bool pass = false;
    std::string lhs, rhs;
    double seconds = 0.0;
};

// Ordered list of named identity checks.
class Report {
public:
    explicit Report(std::string suite = "") : suite_(std::move(suite)) {}

    void add(std::string id, bool pass, std::string lhs = {}, std::string rhs = {}, double seconds = 0.0)
    {
        checks_.push_back({std::move(id), pass, std::move(lhs), std::move(rhs), seconds});
    }
    void append(const Report& other)
    {
        for (const auto& c : other.checks_) {
            checks_.push_back(c);
            if (!other.suite_.empty())
                checks_.back().id = other.suite_ + ": " + c.id;
        }
    }

    const std::string& suite() const { return suite_; }
    const std::vector<CheckRecord>& checks() const { return checks_; }
    bool ok() const
    {
        for (const auto& c : checks_)
            if (!c.pass)
                return false;
        return true;
    }
    std::size_t failures() const
    {
        std::size_t n = 0;
        for (const auto& c : checks_)
            n += !c.pass;
        return n;
    }

private:
    std::string suite_;
    std::vector<CheckRecord> checks_;
};

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace gbgw
