#pragma once

// Outcome of one verification suite, with JSON / CSV / text renderings.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qmod/arith.hpp"

namespace qmod {

using ordered_json = nlohmann::ordered_json;

struct violation
{
    ordered_json params;
    integer modulus;  ///< 0 means an exact identity was checked
    integer residue;  ///< value mod modulus (the full difference when modulus is 0)
};

struct congruence_report
{
    std::string suite;
    ordered_json params = ordered_json::object();
    std::int64_t checked = 0;
    std::int64_t skipped = 0;
    std::vector<violation> violations;
    std::int64_t millis = 0;
    std::int64_t precision = 0; ///< largest series precision used; not part of the JSON

    bool passed() const noexcept { return violations.empty(); }
    std::string status() const { return passed() ? "pass" : "fail"; }

    /// Counts one check of value == 0 (mod modulus); modulus 0 asks for exact zero.
    bool expect_divisible(const integer& value, const integer& modulus, ordered_json point)
    {
        ++checked;
        integer r = modulus == 0 ? value : residue(value, modulus);
        if (r == 0)
            return true;
        violations.push_back({std::move(point), modulus, std::move(r)});
        return false;
    }

    /// Counts one check that value is NOT divisible by modulus.
    bool expect_not_divisible(const integer& value, const integer& modulus, ordered_json point)
    {
        ++checked;
        integer r = residue(value, modulus);
        if (r != 0)
            return true;
        point["expect"] = "nonzero residue";
        violations.push_back({std::move(point), modulus, std::move(r)});
        return false;
    }

    void merge(const congruence_report& other)
    {
        checked += other.checked;
        skipped += other.skipped;
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
        precision = std::max(precision, other.precision);
    }

    ordered_json to_json() const
    {
        ordered_json j;
        j["suite"] = suite;
        j["params"] = params;
        j["checked"] = checked;
        j["skipped"] = skipped;
        ordered_json v = ordered_json::array();
        for (const auto& x : violations) {
            ordered_json e;
            e["params"] = x.params;
            e["modulus"] = x.modulus.get_str();
            e["residue"] = x.residue.get_str();
            v.push_back(std::move(e));
        }
        j["violations"] = std::move(v);
        j["status"] = status();
        j["millis"] = millis;
        return j;
    }

    std::string to_text() const
    {
        std::ostringstream out;
        out << suite << ": " << status() << " (checked " << checked << ", skipped " << skipped << ", violations "
            << violations.size() << ", precision " << precision << ", " << millis << " ms)\n";
        out << "  params " << params.dump() << "\n";
        for (const auto& x : violations)
            out << "  violation " << x.params.dump() << " modulus " << x.modulus.get_str() << " residue "
                << x.residue.get_str() << "\n";
        return out.str();
    }

    static std::string csv_header() { return "suite,status,checked,skipped,violations,millis"; }

    std::string to_csv_row() const
    {
        return suite + "," + status() + "," + std::to_string(checked) + "," + std::to_string(skipped) + ","
               + std::to_string(violations.size()) + "," + std::to_string(millis);
    }
};

/// Measures wall time into report.millis on destruction.
class report_timer
{
public:
    explicit report_timer(congruence_report& r) : report_(r), start_(std::chrono::steady_clock::now()) {}
    ~report_timer()
    {
        report_.millis =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
    }
    report_timer(const report_timer&) = delete;
    report_timer& operator=(const report_timer&) = delete;

private:
    congruence_report& report_;
    std::chrono::steady_clock::time_point start_;
};

} // namespace qmod
