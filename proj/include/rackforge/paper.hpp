#pragma once

#include <string>
#include <vector>

#include "rackforge/json_io.hpp"

namespace rackforge {

// One verified expectation row.
struct CheckResult {
    std::string name;
    bool ok = false;
    bool skipped = false;  // out of desk scale / gated behind --long
    std::string detail;
};

// Builders for the groups the expectation files reference by name:
// "S5".."S8", "A4".."A8", "M11", "PSL(2,q)" for supported q.
PermGroup named_group(const std::string &name);

std::vector<CheckResult> run_table1_homology(const std::string &dir);
std::vector<CheckResult> run_prop_cohomology(const std::string &dir, bool include_big);
std::vector<CheckResult> run_table2_sporadic(const std::string &dir);
std::vector<CheckResult> run_symmetric_sweep(const std::string &dir);
std::vector<CheckResult> run_table4_thr(const std::string &dir);
std::vector<CheckResult> run_table6_nichols(const std::string &dir, bool long_mode);

// every desk-scale suite in paper order
std::vector<CheckResult> run_verify_paper(const std::string &dir, bool long_mode, bool include_big);

}  // namespace rackforge
