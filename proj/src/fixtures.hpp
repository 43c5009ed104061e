#pragma once

#include <string>
#include <vector>

namespace gpb {

struct FixtureTable {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // cells, header order
};

/// Loads one checked-in reference table. Throws std::runtime_error on missing
/// or malformed files.
FixtureTable load_fixture(const std::string& path);

struct FixtureCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Trend/consistency suite over the checked-in reference tables. The tables
/// are published values with known internal conflicts; checks are relative
/// comparisons and arithmetic cross-checks, never solver-equality demands.
std::vector<FixtureCheck> fixtures_check(const std::string& fixtures_dir);

bool all_passed(const std::vector<FixtureCheck>& checks);

}  // namespace gpb
