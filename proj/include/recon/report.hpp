#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

namespace recon {

inline constexpr const char* kReportSchemaVersion = "1.0.0";

/// Semantic version of the JSON report schema.
inline std::string report_schema_version() { return kReportSchemaVersion; }

/// Coordinates of the first violation found by a check. `k` is 0 when the
/// identity has no deleted point.
struct Counterexample {
    int k = 0;
    int i = 0;
    int j = 0;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    std::string part; // sub-identity label, e.g. "c" or "row-shift"

    friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

/// Outcome of one named check at one order. fail <=> counterexample present.
class VerificationReport {
public:
    VerificationReport(std::string check, int p) : check_(std::move(check)), p_(p) {}

    [[nodiscard]] const std::string& check() const noexcept { return check_; }
    [[nodiscard]] int p() const noexcept { return p_; }
    [[nodiscard]] bool passed() const noexcept { return !counterexample_.has_value(); }
    [[nodiscard]] const std::optional<Counterexample>& counterexample() const noexcept {
        return counterexample_;
    }
    [[nodiscard]] std::uint64_t checked() const noexcept { return checked_; }
    [[nodiscard]] const std::optional<std::uint64_t>& seed() const noexcept { return seed_; }

    void add_checked(std::uint64_t count) noexcept { checked_ += count; }
    void set_seed(std::uint64_t seed) noexcept { seed_ = seed; }

    /// Records a violation; only the first one is kept.
    void fail(Counterexample cx) {
        if (!counterexample_) counterexample_ = std::move(cx);
    }

    /// Folds another report's count and (first) failure into this one.
    void absorb(const VerificationReport& other) {
        checked_ += other.checked_;
        if (other.counterexample_) fail(*other.counterexample_);
    }

    /// Compares and counts in one step; returns whether the values agreed.
    bool expect_equal(std::int64_t lhs, std::int64_t rhs, int k, int i, int j,
                      const char* part = "") {
        ++checked_;
        if (lhs == rhs) return true;
        fail({k, i, j, lhs, rhs, part});
        return false;
    }

    [[nodiscard]] nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json out;
        out["schema"] = kReportSchemaVersion;
        out["check"] = check_;
        out["p"] = p_;
        out["outcome"] = passed() ? "pass" : "fail";
        if (counterexample_) {
            const auto& cx = *counterexample_;
            nlohmann::ordered_json c;
            c["k"] = cx.k;
            c["i"] = cx.i;
            c["j"] = cx.j;
            c["lhs"] = cx.lhs;
            c["rhs"] = cx.rhs;
            if (!cx.part.empty()) c["part"] = cx.part;
            out["counterexample"] = std::move(c);
        }
        out["checked"] = checked_;
        if (seed_) out["seed"] = *seed_;
        return out;
    }

private:
    std::string check_;
    int p_;
    std::uint64_t checked_ = 0;
    std::optional<Counterexample> counterexample_;
    std::optional<std::uint64_t> seed_;
};

} // namespace recon
