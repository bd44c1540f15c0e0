#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "syslab/errors.hpp"
#include "syslab/mesh.hpp"

namespace syslab {

inline constexpr const char* kVersion = "0.1.0";

/// One row of the asymptotics report.
struct SweepRecord {
    double j = 0.0;
    MeshDims res;
    double vol = 0.0;
    double sys1 = 0.0;
    double stsys1_lb = 0.0;
    double stsys1_ub = 0.0;
    double sys2rel_dz = 0.0;
    double sys2rel_dy = 0.0;
    double calib_area = 0.0;
    double ratio_eq2 = 0.0;  // vol / (sys1 * sys2rel_dz)
    double gap_eq5 = 0.0;    // sys1 / stsys1_ub

    bool operator==(const SweepRecord&) const = default;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int points_used = 0;
};

/// Field accessors by report column name (the numeric columns).
std::function<double(const SweepRecord&)> record_field(const std::string& name);

/// Least-squares fit of log(y) against log(x); the slope is the growth
/// exponent. Needs >= 3 records and positive values.
FitResult fit_exponent(const std::vector<SweepRecord>& records, const std::string& x_field,
                       const std::string& y_field);

/// CSV with one `#` header line (version, seed, column names) and one
/// row per record, reals at 17 significant digits.
std::string emit_report_csv(const std::vector<SweepRecord>& records, uint64_t seed);

/// JSON mirror of the CSV fields, plus any fits.
std::string emit_report_json(const std::vector<SweepRecord>& records, uint64_t seed,
                             const std::vector<std::pair<std::string, FitResult>>& fits = {});

/// Inverse of emit_report_csv (round-trip exact at 17 digits).
std::vector<SweepRecord> parse_report_csv(const std::string& text);

/// gnuplot script rendering the log-log growth curves of a report CSV.
std::string emit_plot_script(const std::string& csv_path);

/// 17-significant-digit formatting used for all floating-point output.
std::string fmt17(double v);

/// Witness chain file: header `#chain dim=<d> mesh=<nx>x<ny>x<nz>`,
/// then one cell index per line, ascending.
std::string chain_to_index_file(const Chain& chain, const MeshDims& dims);

} // namespace syslab
