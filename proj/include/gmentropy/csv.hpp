#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gmentropy/estimate.hpp"

namespace gmentropy {

/// Column order of every estimate CSV. Absent fields are written empty; no
/// column is ever dropped.
inline constexpr const char* kCsvHeader =
    "mixture_id,method,C,r,beta,m,b,h_est,std_error,pct_error_vs_oracle,certified_lower_bound,solve_mode,"
    "condition_estimate,runtime_ms";

inline constexpr const char* kFitCurveHeader = "r,C,b,s,g_hat,neg_s_ln_s";

struct CsvRow {
    std::string mixture_id;
    EntropyEstimate estimate;
    std::optional<double> pct_error_vs_oracle;
    std::optional<double> runtime_ms;
};

/// Shortest round-tripping decimal ("%.17g").
std::string format_real(double value);

/// One CSV line without trailing newline. `nats_per_unit` divides h_est and
/// std_error (1 for nats, ln 2 for bits).
std::string format_row(const CsvRow& row, double nats_per_unit = 1.0);

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows, double nats_per_unit = 1.0);

}  // namespace gmentropy
