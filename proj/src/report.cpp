#include "syslab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace syslab {

namespace {

constexpr const char* kColumns =
    "j,nx,ny,nz,vol,sys1,stsys1_lb,stsys1_ub,sys2rel_dz,sys2rel_dy,calib_area,"
    "ratio_eq2,gap_eq5";

} // namespace

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::function<double(const SweepRecord&)> record_field(const std::string& name) {
    if (name == "j") return [](const SweepRecord& r) { return r.j; };
    if (name == "vol") return [](const SweepRecord& r) { return r.vol; };
    if (name == "sys1") return [](const SweepRecord& r) { return r.sys1; };
    if (name == "stsys1_lb") return [](const SweepRecord& r) { return r.stsys1_lb; };
    if (name == "stsys1_ub") return [](const SweepRecord& r) { return r.stsys1_ub; };
    if (name == "sys2rel_dz") return [](const SweepRecord& r) { return r.sys2rel_dz; };
    if (name == "sys2rel_dy") return [](const SweepRecord& r) { return r.sys2rel_dy; };
    if (name == "calib_area") return [](const SweepRecord& r) { return r.calib_area; };
    if (name == "ratio_eq2") return [](const SweepRecord& r) { return r.ratio_eq2; };
    if (name == "gap_eq5") return [](const SweepRecord& r) { return r.gap_eq5; };
    throw ValidationError("unknown report field: " + name);
}

FitResult fit_exponent(const std::vector<SweepRecord>& records, const std::string& x_field,
                       const std::string& y_field) {
    if (records.size() < 3)
        throw ValidationError("fit_exponent: need at least 3 records");
    const auto fx = record_field(x_field);
    const auto fy = record_field(y_field);

    std::vector<double> lx, ly;
    for (const auto& r : records) {
        const double x = fx(r), y = fy(r);
        if (!(x > 0.0) || !(y > 0.0))
            throw ValidationError("fit_exponent: fields must be strictly positive");
        lx.push_back(std::log(x));
        ly.push_back(std::log(y));
    }
    const int n = int(lx.size());
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx <= 0.0)
        throw ValidationError("fit_exponent: x values do not vary");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.points_used = n;
    return fit;
}

std::string emit_report_csv(const std::vector<SweepRecord>& records, uint64_t seed) {
    if (records.empty())
        throw ValidationError("emit_report_csv: no records");
    std::ostringstream os;
    os << "# syslab-report version=" << kVersion << " seed=" << seed
       << " columns=" << kColumns << "\n";
    for (const auto& r : records) {
        os << fmt17(r.j) << ',' << r.res.nx << ',' << r.res.ny << ',' << r.res.nz << ','
           << fmt17(r.vol) << ',' << fmt17(r.sys1) << ',' << fmt17(r.stsys1_lb) << ','
           << fmt17(r.stsys1_ub) << ',' << fmt17(r.sys2rel_dz) << ','
           << fmt17(r.sys2rel_dy) << ',' << fmt17(r.calib_area) << ','
           << fmt17(r.ratio_eq2) << ',' << fmt17(r.gap_eq5) << "\n";
    }
    return os.str();
}

std::string emit_report_json(const std::vector<SweepRecord>& records, uint64_t seed,
                             const std::vector<std::pair<std::string, FitResult>>& fits) {
    if (records.empty())
        throw ValidationError("emit_report_json: no records");
    std::ostringstream os;
    os << "{\"version\":\"" << kVersion << "\",\"seed\":" << seed << ",\"records\":[";
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (i) os << ',';
        os << "{\"j\":" << fmt17(r.j) << ",\"nx\":" << r.res.nx << ",\"ny\":" << r.res.ny
           << ",\"nz\":" << r.res.nz << ",\"vol\":" << fmt17(r.vol)
           << ",\"sys1\":" << fmt17(r.sys1) << ",\"stsys1_lb\":" << fmt17(r.stsys1_lb)
           << ",\"stsys1_ub\":" << fmt17(r.stsys1_ub)
           << ",\"sys2rel_dz\":" << fmt17(r.sys2rel_dz)
           << ",\"sys2rel_dy\":" << fmt17(r.sys2rel_dy)
           << ",\"calib_area\":" << fmt17(r.calib_area)
           << ",\"ratio_eq2\":" << fmt17(r.ratio_eq2)
           << ",\"gap_eq5\":" << fmt17(r.gap_eq5) << "}";
    }
    os << "]";
    if (!fits.empty()) {
        os << ",\"fits\":[";
        for (size_t i = 0; i < fits.size(); ++i) {
            if (i) os << ',';
            os << "{\"field\":\"" << fits[i].first << "\",\"slope\":" << fmt17(fits[i].second.slope)
               << ",\"intercept\":" << fmt17(fits[i].second.intercept)
               << ",\"r_squared\":" << fmt17(fits[i].second.r_squared)
               << ",\"points_used\":" << fits[i].second.points_used << "}";
        }
        os << "]";
    }
    os << "}";
    return os.str();
}

std::vector<SweepRecord> parse_report_csv(const std::string& text) {
    std::vector<SweepRecord> records;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 13)
            throw ValidationError("parse_report_csv: expected 13 columns, got " +
                                  std::to_string(cells.size()));
        SweepRecord r;
        r.j = std::stod(cells[0]);
        r.res.nx = std::stoi(cells[1]);
        r.res.ny = std::stoi(cells[2]);
        r.res.nz = std::stoi(cells[3]);
        r.vol = std::stod(cells[4]);
        r.sys1 = std::stod(cells[5]);
        r.stsys1_lb = std::stod(cells[6]);
        r.stsys1_ub = std::stod(cells[7]);
        r.sys2rel_dz = std::stod(cells[8]);
        r.sys2rel_dy = std::stod(cells[9]);
        r.calib_area = std::stod(cells[10]);
        r.ratio_eq2 = std::stod(cells[11]);
        r.gap_eq5 = std::stod(cells[12]);
        records.push_back(r);
    }
    return records;
}

std::string emit_plot_script(const std::string& csv_path) {
    std::ostringstream os;
    os << "# gnuplot script: log-log growth curves of the sweep report\n"
       << "set datafile separator ','\n"
       << "set datafile commentschars '#'\n"
       << "set logscale xy\n"
       << "set xlabel 'j'\n"
       << "set key left top\n"
       << "set terminal pngcairo size 900,600\n"
       << "set output 'sweep_loglog.png'\n"
       << "plot '" << csv_path << "' using 1:5 with linespoints title 'vol', \\\n"
       << "     '' using 1:6 with linespoints title 'sys1', \\\n"
       << "     '' using 1:8 with linespoints title 'stsys1 ub', \\\n"
       << "     '' using 1:9 with linespoints title 'sys2rel dz', \\\n"
       << "     '' using 1:12 with linespoints title 'ratio eq2'\n";
    return os.str();
}

std::string chain_to_index_file(const Chain& chain, const MeshDims& dims) {
    std::ostringstream os;
    os << "#chain dim=" << chain.dimension << " mesh=" << dims.nx << "x" << dims.ny << "x"
       << dims.nz << "\n";
    for (const auto& [idx, c] : chain.coef)
        if (c != 0) os << idx << "\n";
    return os.str();
}

} // namespace syslab
