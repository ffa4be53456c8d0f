#pragma once

#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace bpbnu {

enum class Relation { less, less_equal, greater };

inline std::string_view to_string(Relation r)
{
    switch (r) {
    case Relation::less: return "<";
    case Relation::less_equal: return "<=";
    case Relation::greater: return ">";
    }
    return "?";
}

/// One named inequality `lhs rel rhs`. `margin` is oriented so that a
/// positive value means the inequality holds with room to spare.
struct BoundRecord {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    Relation rel = Relation::less;
    std::string at;
    bool holds = false;
};

/// Rounding allowance for non-strict bounds. Strict bounds need margin > 0.
inline constexpr double non_strict_slack = 1e-12;

/// Collects bound checks, keeping the worst instance per name in first-seen order.
class BoundLog {
public:
    explicit BoundLog(bool enforce = true) : enforce_(enforce) {}

    const BoundRecord& check(std::string_view name, double lhs, Relation rel, double rhs, std::string at = {})
    {
        BoundRecord r{std::string(name), lhs, rhs, 0.0, rel, std::move(at), false};
        r.margin = rel == Relation::greater ? lhs - rhs : rhs - lhs;
        r.holds = rel == Relation::less_equal ? r.margin >= -non_strict_slack : r.margin > 0.0;

        if (!r.holds && enforce_) {
            char buf[256];
            std::snprintf(buf, sizeof buf, "%.17g %s %.17g fails (margin %.3g)%s%s", lhs,
                          std::string(to_string(rel)).c_str(), rhs, r.margin, r.at.empty() ? "" : " at ", r.at.c_str());
            throw invariant_error(r.name, buf);
        }

        for (auto& existing : records_) {
            if (existing.name == r.name) {
                if (r.margin < existing.margin || (existing.holds && !r.holds))
                    existing = std::move(r);
                return existing;
            }
        }
        records_.push_back(std::move(r));
        return records_.back();
    }

    const std::vector<BoundRecord>& records() const noexcept { return records_; }

    bool all_hold() const
    {
        for (const auto& r : records_)
            if (!r.holds)
                return false;
        return true;
    }

    const BoundRecord* find(std::string_view name) const
    {
        for (const auto& r : records_)
            if (r.name == name)
                return &r;
        return nullptr;
    }

private:
    bool enforce_;
    std::vector<BoundRecord> records_;
};

} // namespace bpbnu
