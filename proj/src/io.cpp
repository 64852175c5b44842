#include "cloneqfi/io.hpp"

#include <cstdio>

namespace cloneqfi {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string curve_csv(const Curve& curve) {
    std::string out = "eta_a,eta_b,fid_a,fid_b,qfi_a,qfi_b,sum_fid,sum_qfi\n";
    for (const TradeoffPoint& p : curve.points) {
        out += format_double(p.eta_a) + ',' + format_double(p.eta_b) + ',' +
               format_double(p.fid_a) + ',' + format_double(p.fid_b) + ',' +
               format_double(p.qfi_a) + ',' + format_double(p.qfi_b) + ',' +
               format_double(p.sum_fid) + ',' + format_double(p.sum_qfi) + '\n';
    }
    return out;
}

std::string scan_csv(const ScanRecord& record) {
    std::string out = "d,global_min_eta_a,symmetric_point,is_symmetric,extrema_count\n";
    for (const ScanEntry& e : record.entries) {
        out += std::to_string(e.d) + ',' + format_double(e.global_min_eta_a) + ',' +
               format_double(e.symmetric_point) + ',' + (e.is_symmetric ? "1" : "0") + ',' +
               std::to_string(e.extrema_count) + '\n';
    }
    out += "# last_symmetric_d=" + std::to_string(record.last_symmetric_d) +
           " first_asymmetric_d=" + std::to_string(record.first_asymmetric_d) + '\n';
    return out;
}

nlohmann::json curve_points_json(const Curve& curve) {
    nlohmann::json points = nlohmann::json::array();
    for (const TradeoffPoint& p : curve.points) {
        points.push_back({{"eta_a", p.eta_a},
                          {"eta_b", p.eta_b},
                          {"fid_a", p.fid_a},
                          {"fid_b", p.fid_b},
                          {"qfi_a", p.qfi_a},
                          {"qfi_b", p.qfi_b},
                          {"sum_fid", p.sum_fid},
                          {"sum_qfi", p.sum_qfi}});
    }
    return points;
}

nlohmann::json scan_entries_json(const ScanRecord& record) {
    nlohmann::json entries = nlohmann::json::array();
    for (const ScanEntry& e : record.entries) {
        entries.push_back({{"d", e.d},
                           {"global_min_eta_a", e.global_min_eta_a},
                           {"symmetric_point", e.symmetric_point},
                           {"is_symmetric", e.is_symmetric},
                           {"extrema_count", e.extrema_count}});
    }
    return entries;
}

nlohmann::json scan_summary_json(const ScanRecord& record) {
    return {{"last_symmetric_d", record.last_symmetric_d},
            {"first_asymmetric_d", record.first_asymmetric_d}};
}

}  // namespace cloneqfi
