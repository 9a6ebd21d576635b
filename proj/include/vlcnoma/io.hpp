#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "vlcnoma/montecarlo.hpp"

namespace vlcnoma {

inline constexpr const char* kAggregateHeader =
    "sweep_var,sweep_value,scheme,objective,mean_rate_nat_s,mean_rate_bit_s,stderr,n_trials,"
    "n_infeasible,n_degenerate";

enum class RateUnit { nat, bit };

/// Aggregate CSV. Both rate columns are always present; `stderr` follows
/// `unit`.
std::string aggregate_csv(const std::vector<Aggregate>& rows, RateUnit unit = RateUnit::nat);

/// One row per trial and scheme.
std::string records_csv(const std::string& sweep_var, const std::vector<double>& sweep_values,
                        const std::vector<std::vector<TrialRecord>>& records);

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

/// UTC time as ISO 8601.
std::string utc_timestamp();

}  // namespace vlcnoma
