#pragma once

// JSON serialization of merit reports, split out so library users who do not
// need it avoid the json dependency.

#include <json.hpp>

#include <limits>

#include "qca/correlation.hpp"

namespace qca {

inline nlohmann::ordered_json merit_report_to_json(const MeritReport& report) {
    nlohmann::ordered_json j;
    j["n"] = report.n;
    j["m"] = report.m;
    if (report.merit.num() > std::numeric_limits<std::int64_t>::max() ||
        report.merit.den() > std::numeric_limits<std::int64_t>::max() ||
        report.sidelobe > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("merit_report_to_json: value exceeds 64-bit JSON range");
    j["merit_num"] = static_cast<std::int64_t>(report.merit.num());
    j["merit_den"] = static_cast<std::int64_t>(report.merit.den());
    j["merit_float"] = report.merit_float;
    j["energy"] = static_cast<std::int64_t>(report.sidelobe);
    j["engine"] = engine_name(report.engine);
    j["seconds"] = report.seconds;
    return j;
}

inline std::string merit_report_json(const MeritReport& report) { return merit_report_to_json(report).dump(); }

} // namespace qca
