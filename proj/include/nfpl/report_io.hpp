#pragma once

#include "nfpl/engine.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace nfpl {

// Writes via a sibling temp file and rename, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// t,policy,mean,d1,d9 with t starting at 1.
std::string series_csv(const ExperimentReport& report);
// policy,final_mean,final_d1,final_d9,cum_cost,opt_cost,regret,bound
std::string summary_csv(const ExperimentReport& report);
// variant,rate,cache,final_mean,final_d1,final_d9
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace nfpl
