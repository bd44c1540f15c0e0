#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "syslab/curvature.hpp"
#include "syslab/cycles.hpp"
#include "syslab/errors.hpp"
#include "syslab/forms.hpp"
#include "syslab/intersection.hpp"
#include "syslab/metric.hpp"
#include "syslab/mincut.hpp"
#include "syslab/pants.hpp"
#include "syslab/report.hpp"
#include "syslab/surface.hpp"
#include "syslab/sweep.hpp"

namespace {

using namespace syslab;

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ValidationError("cannot open output file: " + out_path);
    f << text;
}

MeshDims parse_res(const std::string& spec) {
    MeshDims d;
    if (std::sscanf(spec.c_str(), "%d,%d,%d", &d.nx, &d.ny, &d.nz) != 3)
        throw ValidationError("--res expects NX,NY,NZ");
    return d;
}

void check_budget(const MeshDims& d, int64_t max_cells) {
    if (int64_t(d.nx) * d.ny * d.nz > max_cells)
        throw BudgetExceeded("requested resolution " + std::to_string(d.nx) + "x" +
                             std::to_string(d.ny) + "x" + std::to_string(d.nz) +
                             " exceeds --max-cells=" + std::to_string(max_cells));
}

std::string systole_json(const SystoleResult& r) {
    std::ostringstream os;
    os << "{\"value\":" << fmt17(r.value) << ",\"class\":[" << r.cls.a << "," << r.cls.b
       << "],\"certificate\":" << fmt17(r.lower_bound_certificate) << ",\"resolution\":["
       << r.resolution.nx << "," << r.resolution.ny << "," << r.resolution.nz << "]}";
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"syslab: systolic geometry workbench on T^2 x I"};
    app.set_config("--config", "", "line-oriented key=value configuration file");
    app.require_subcommand(1);

    uint64_t seed = 0;
    std::string format = "csv";
    std::string out_path;
    double tol = 1e-6;
    int64_t max_cells = int64_t(1) << 24;
    app.add_option("--seed", seed, "random seed (controls all sampling)");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output path (default stdout)");
    app.add_option("--tol", tol, "tolerance for verification commands");
    app.add_option("--max-cells", max_cells, "mesh cell budget");

    // --- metric ---
    auto* metric = app.add_subcommand("metric", "evaluate the metric family");
    auto* metric_eval = metric->add_subcommand("eval", "tensor and psi components at a point");
    double mj = 1.0, mdelta = 0.1, mx = 0.0, my = 0.0, mz = 0.0;
    metric_eval->add_option("--j", mj)->required();
    metric_eval->add_option("--delta", mdelta, "smoothing half-width");
    metric_eval->add_option("--x", mx)->required();
    metric_eval->add_option("--y", my)->required();
    metric_eval->add_option("--z", mz)->required();

    auto* metric_volume = metric->add_subcommand("volume", "total Riemannian volume");
    double vj = 1.0, vdelta = 0.1;
    int vorder = 8;
    metric_volume->add_option("--j", vj)->required();
    metric_volume->add_option("--delta", vdelta);
    metric_volume->add_option("--order", vorder, "Gauss-Legendre order");

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "numerical calibration certificates");
    auto* verify_cal = verify->add_subcommand("calibration", "comass, closedness, defects");
    double cj = 2.0, cdelta = 0.1, cfd = 1e-3;
    int cpoints = 10000, cplanes = 8;
    verify_cal->add_option("--j", cj)->required();
    verify_cal->add_option("--delta", cdelta);
    verify_cal->add_option("--fd-step", cfd);
    verify_cal->add_option("--points", cpoints);
    verify_cal->add_option("--planes", cplanes);

    // --- systole ---
    auto* systole = app.add_subcommand("systole", "combinatorial 1-systoles");
    auto* sys1 = systole->add_subcommand("sys1", "shortest homologically nontrivial cycle");
    double s1j = 2.0, s1delta = 0.1;
    std::string s1res, s1witness;
    int s1w = 2;
    sys1->add_option("--j", s1j)->required();
    sys1->add_option("--delta", s1delta);
    sys1->add_option("--res", s1res, "NX,NY,NZ (default from policy)");
    sys1->add_option("--max-winding", s1w);
    sys1->add_option("--witness-out", s1witness, "write the witness chain index file");

    auto* stable = systole->add_subcommand("stable", "stable-norm bracket of a class");
    double stj = 4.0, stdelta = 0.1;
    std::string stclass = "1,0", stres;
    int stmm = 16;
    stable->add_option("--j", stj)->required();
    stable->add_option("--delta", stdelta);
    stable->add_option("--class", stclass, "A,B winding class");
    stable->add_option("--res", stres);
    stable->add_option("--max-multiple", stmm);

    // --- cut ---
    auto* cut = app.add_subcommand("cut", "relative 2-cycles by max-flow/min-cut");
    auto* sys2 = cut->add_subcommand("sys2rel", "minimal separating relative 2-cycle");
    double c2j = 2.0, c2delta = 0.1;
    std::string c2dual = "dz", c2res, c2witness;
    sys2->add_option("--j", c2j)->required();
    sys2->add_option("--delta", c2delta);
    sys2->add_option("--dual", c2dual)->check(CLI::IsMember({"dz", "dy"}));
    sys2->add_option("--res", c2res);
    sys2->add_option("--witness-out", c2witness);

    // --- pants ---
    auto* pants = app.add_subcommand("pants", "sphere-map plans for decorated surfaces");
    auto* pants_build = pants->add_subcommand("build", "build and certify a map plan");
    std::string pants_in;
    pants_build->add_option("--in", pants_in, "decorated surface description")->required();

    // --- sweep ---
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep over j");
    std::string sweep_js = "1,2,4,8";
    double sweep_delta = 0.1;
    sweep_cmd->add_option("--j-values", sweep_js, "comma-separated, increasing");
    sweep_cmd->add_option("--delta", sweep_delta);

    // --- report ---
    auto* report_cmd = app.add_subcommand("report", "fits and reformatting of a sweep CSV");
    std::string report_in;
    std::vector<std::string> report_fits = {"vol", "sys2rel_dz", "calib_area", "ratio_eq2"};
    report_cmd->add_option("--in", report_in, "sweep CSV path")->required();
    report_cmd->add_option("--fit", report_fits, "y-fields to fit against j");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*metric_eval) {
            MetricParams params{mj, mdelta};
            params.validate();
            const PointTI p = PointTI{mx, my, mz}.reduced();
            const SymmetricBilinear3 g = metric_at(p, params);
            const TwoForm3 w = psi_at(p, params);
            std::ostringstream os;
            os << "{\"j\":" << fmt17(params.j) << ",\"smoothing_delta\":"
               << fmt17(params.smoothing_delta) << ",\"point\":{\"x\":" << fmt17(p.x)
               << ",\"y\":" << fmt17(p.y) << ",\"z\":" << fmt17(p.z)
               << "},\"hat\":" << fmt17(hat(p.x, params)) << ",\"metric\":{\"xx\":"
               << fmt17(g.xx) << ",\"xy\":" << fmt17(g.xy) << ",\"xz\":" << fmt17(g.xz)
               << ",\"yy\":" << fmt17(g.yy) << ",\"yz\":" << fmt17(g.yz)
               << ",\"zz\":" << fmt17(g.zz) << "},\"det\":" << fmt17(g.det())
               << ",\"psi\":{\"xy\":" << fmt17(w.xy) << ",\"xz\":" << fmt17(w.xz)
               << ",\"yz\":" << fmt17(w.yz) << "}}";
            write_output(out_path, os.str());
        } else if (*metric_volume) {
            MetricParams params{vj, vdelta};
            params.validate();
            std::ostringstream os;
            os << "{\"j\":" << fmt17(params.j)
               << ",\"volume\":" << fmt17(total_volume(params, vorder)) << "}";
            write_output(out_path, os.str());
        } else if (*verify_cal) {
            MetricParams params{cj, cdelta};
            params.validate();
            const FormFieldSpec spec = FormFieldSpec::psi(params);
            const ComassReport comass = verify_comass(spec, cpoints, cplanes, tol, seed);
            const ClosednessReport closed = verify_closed(spec, cpoints, cfd, seed + 1);
            const double d_thresh = std::max(1e-5, 10.0 * cfd * cfd);
            std::ostringstream os;
            os << "{\"comass_max\":" << fmt17(comass.max_value)
               << ",\"comass_violation\":" << fmt17(comass.max_violation)
               << ",\"d_residual\":" << fmt17(closed.max_residual) << ",\"defect_by_patch\":{";
            bool defect_ok = true;
            const double zs[4] = {0.0, 0.25, 0.5, 0.75};
            for (int i = 0; i < 4; ++i) {
                const SurfacePatch patch = make_z_slice_patch(params, zs[i], 512, 16);
                const double defect = calibration_defect(spec, patch);
                defect_ok = defect_ok && std::abs(defect) <= 1e-4;
                if (i) os << ",";
                os << "\"z=" << zs[i] << "\":" << fmt17(defect);
            }
            const bool comass_ok = std::abs(comass.max_violation) <= tol;
            const bool closed_ok = closed.max_residual <= d_thresh;
            const bool ok = comass_ok && closed_ok && defect_ok;
            os << "},\"passed\":" << (ok ? "true" : "false") << "}";
            write_output(out_path, os.str());
            if (!ok)
                throw ToleranceViolation("calibration verification failed");
        } else if (*sys1) {
            MetricParams params{s1j, s1delta};
            params.validate();
            ResolutionPolicy policy;
            policy.max_cells = max_cells;
            MeshDims dims = s1res.empty() ? policy.resolution_for(s1j) : parse_res(s1res);
            check_budget(dims, max_cells);
            const CubicalMesh mesh = build_mesh(params, dims);
            const SystoleResult r = shortest_nontrivial_cycle(mesh, s1w);
            write_output(out_path, systole_json(r));
            if (!s1witness.empty())
                write_output(s1witness, chain_to_index_file(r.witness, dims));
        } else if (*stable) {
            MetricParams params{stj, stdelta};
            params.validate();
            WindingClass target;
            if (std::sscanf(stclass.c_str(), "%d,%d", &target.a, &target.b) != 2)
                throw ValidationError("--class expects A,B");
            ResolutionPolicy policy;
            policy.max_cells = max_cells;
            MeshDims dims = stres.empty() ? policy.resolution_for(stj) : parse_res(stres);
            check_budget(dims, max_cells);
            const CubicalMesh mesh = build_mesh(params, dims);
            const StableNormBounds b = stable_norm_bounds(mesh, target, stmm);
            std::ostringstream os;
            os << "{\"class\":[" << target.a << "," << target.b << "],\"lb\":" << fmt17(b.lb)
               << ",\"ub\":" << fmt17(b.ub) << ",\"resolution\":[" << dims.nx << "," << dims.ny
               << "," << dims.nz << "]}";
            write_output(out_path, os.str());
        } else if (*sys2) {
            MetricParams params{c2j, c2delta};
            params.validate();
            ResolutionPolicy policy;
            policy.max_cells = max_cells;
            MeshDims dims = c2res.empty() ? policy.resolution_for(c2j) : parse_res(c2res);
            check_budget(dims, max_cells);
            const CubicalMesh mesh = build_mesh(params, dims);
            const DualDirection dir =
                (c2dual == "dz") ? DualDirection::dz : DualDirection::dy;
            const SystoleResult r = min_relative_2cycle(mesh, dir);
            write_output(out_path, systole_json(r));
            if (!c2witness.empty())
                write_output(c2witness, chain_to_index_file(r.witness, dims));
        } else if (*pants_build) {
            std::ifstream f(pants_in);
            if (!f) throw ValidationError("cannot open " + pants_in);
            const DecoratedSurface s = parse_decorated_surface(f);
            const MapPlan plan = build_map_plan(s);
            write_output(out_path, plan_to_json(s, plan));
        } else if (*sweep_cmd) {
            SweepOptions opts;
            opts.seed = seed;
            opts.smoothing_delta = sweep_delta;
            opts.policy.max_cells = max_cells;
            std::istringstream js(sweep_js);
            std::string tok;
            while (std::getline(js, tok, ',')) opts.j_values.push_back(std::stod(tok));
            ResolutionPolicy probe;
            probe.max_cells = max_cells;
            for (double j : opts.j_values) {
                probe.resolution_for(j);
                if (probe.capped_last_query)
                    std::cerr << "warning: cell budget caps the resolution at j=" << j
                              << "; accuracy targets may fail\n";
            }
            const std::vector<SweepRecord> records = run_sweep(opts);
            const std::string text = (format == "csv")
                                         ? emit_report_csv(records, seed)
                                         : emit_report_json(records, seed);
            write_output(out_path, text);
            if (!out_path.empty())
                write_output(out_path + ".gnuplot", emit_plot_script(out_path));
        } else if (*report_cmd) {
            std::ifstream f(report_in);
            if (!f) throw ValidationError("cannot open " + report_in);
            std::stringstream buf;
            buf << f.rdbuf();
            const std::vector<SweepRecord> records = parse_report_csv(buf.str());
            std::vector<std::pair<std::string, FitResult>> fits;
            for (const std::string& field : report_fits)
                fits.emplace_back(field, fit_exponent(records, "j", field));
            write_output(out_path, emit_report_json(records, seed, fits));
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const ToleranceViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
