#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <doctest.h>
#include <json.hpp>

#include "cloneqfi/io.hpp"
#include "cloneqfi/scan.hpp"

using namespace cloneqfi;

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) lines.push_back(line);
    return lines;
}

std::vector<double> parse_row(const std::string& line) {
    std::vector<double> values;
    std::stringstream stream(line);
    std::string field;
    while (std::getline(stream, field, ',')) values.push_back(std::strtod(field.c_str(), nullptr));
    return values;
}

}  // namespace

TEST_CASE("format_double round trips bit-exactly") {
    for (double x : {1.0 / 3.0, 8.0 / 9.0, 0.1 + 0.2, 1.0, 0.0, 2.0 / 3.0, 1e-300,
                     0.12515247552607872}) {
        const std::string text = format_double(x);
        CHECK(std::strtod(text.c_str(), nullptr) == x);
    }
}

TEST_CASE("curve csv carries recomputable sums") {
    const Curve curve = qfi_sum_curve(MachineKind::Uqcm, 3, 21);
    const std::string csv = curve_csv(curve);
    const std::vector<std::string> lines = split_lines(csv);
    REQUIRE(lines.size() == 22);
    CHECK(lines[0] == "eta_a,eta_b,fid_a,fid_b,qfi_a,qfi_b,sum_fid,sum_qfi");
    CHECK(csv.back() == '\n');

    for (size_t i = 1; i < lines.size(); ++i) {
        const std::vector<double> row = parse_row(lines[i]);
        REQUIRE(row.size() == 8);
        // parsed fields reproduce the sum columns exactly
        CHECK(row[2] + row[3] == row[6]);
        CHECK(row[4] + row[5] == row[7]);
    }
}

TEST_CASE("scan csv ends with the critical-dimension summary") {
    const ScanRecord record = bifurcation_scan(MachineKind::Uqcm, 2, 4, 501, 1e-9);
    const std::vector<std::string> lines = split_lines(scan_csv(record));
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "d,global_min_eta_a,symmetric_point,is_symmetric,extrema_count");
    CHECK(lines.back() == "# last_symmetric_d=4 first_asymmetric_d=-1");
    CHECK(parse_row(lines[1])[0] == 2.0);
}

TEST_CASE("json emitters mirror the structures") {
    const Curve curve = qfi_sum_curve(MachineKind::Pqcm, 2, 11);
    const nlohmann::json points = curve_points_json(curve);
    REQUIRE(points.size() == 11);
    CHECK(points[0].contains("sum_qfi"));
    // nlohmann serializes doubles losslessly
    const nlohmann::json reparsed = nlohmann::json::parse(points.dump());
    CHECK(reparsed[5]["eta_b"].get<double>() == curve.points[5].eta_b);

    const ScanRecord record = bifurcation_scan(MachineKind::Uqcm, 2, 3, 501, 1e-9);
    const nlohmann::json entries = scan_entries_json(record);
    REQUIRE(entries.size() == 2);
    CHECK(entries[0]["d"] == 2);
    CHECK(entries[0]["is_symmetric"] == true);
    const nlohmann::json summary = scan_summary_json(record);
    CHECK(summary["last_symmetric_d"] == 3);
    CHECK(summary["first_asymmetric_d"] == -1);
}
