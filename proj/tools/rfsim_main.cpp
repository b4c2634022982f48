// rfsim: urban RF ray-tracing simulator and sim-to-real fidelity harness.
//
// Subcommands: scene build, scene export-obj, simulate, evaluate, sweep,
// optimize, report. Every run is described by one JSON config; flags
// override config fields. Outputs are written atomically and carry a
// provenance header (seed + config hash).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfsim/evaluation.hpp"
#include "rfsim/geojson.hpp"
#include "rfsim/io_util.hpp"
#include "rfsim/json_io.hpp"
#include "rfsim/obj_io.hpp"
#include "rfsim/optimizer.hpp"
#include "rfsim/pipeline.hpp"
#include "rfsim/propagation.hpp"
#include "rfsim/report.hpp"
#include "rfsim/run_config.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rfsim;

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<int> k;
    std::optional<int> samples_per_src;
    std::optional<double> frequency_hz;
    std::optional<std::string> footprints, measurements, stations, overrides, output_dir;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "Run config JSON")->required();
    cmd->add_option("--seed", flags.seed, "Override config seed");
    cmd->add_option("--workers", flags.workers, "Worker threads (0 = auto)");
    cmd->add_option("--k", flags.k, "kNN neighbor count");
    cmd->add_option("--samples-per-src", flags.samples_per_src, "Solver samples per source");
    cmd->add_option("--frequency-hz", flags.frequency_hz, "Carrier frequency in Hz");
    cmd->add_option("--footprints", flags.footprints, "Footprints GeoJSON path");
    cmd->add_option("--measurements", flags.measurements, "Measurements CSV path");
    cmd->add_option("--stations", flags.stations, "Stations JSON path");
    cmd->add_option("--overrides", flags.overrides, "Overrides JSON path");
    cmd->add_option("--output-dir", flags.output_dir, "Output directory");
}

RunConfig effective_config(const CommonFlags& flags) {
    RunConfig cfg = RunConfig::load(flags.config_path);
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.workers) cfg.workers = *flags.workers;
    if (flags.k) cfg.k = *flags.k;
    if (flags.samples_per_src) cfg.solver.samples_per_src = *flags.samples_per_src;
    if (flags.frequency_hz) cfg.solver.frequency_hz = *flags.frequency_hz;
    if (flags.footprints) cfg.footprints_path = *flags.footprints;
    if (flags.measurements) cfg.measurements_path = *flags.measurements;
    if (flags.stations) cfg.stations_path = *flags.stations;
    if (flags.overrides) cfg.overrides_path = *flags.overrides;
    if (flags.output_dir) cfg.output_dir = *flags.output_dir;
    return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& explicit_path,
                     const std::string& default_name) {
    if (!explicit_path.empty()) return explicit_path;
    fs::create_directories(cfg.output_dir);
    return (fs::path(cfg.output_dir) / default_name).string();
}

void write_json_output(const RunConfig& cfg, const std::string& path, json body) {
    body["provenance"] = {{"seed", cfg.seed}, {"config_hash", cfg.config_hash()}};
    io::write_file_atomic(path, body.dump(2) + "\n");
}

eval::Split run_split(const RunConfig& cfg, const std::vector<std::string>& ue_ids) {
    return eval::make_split(ue_ids, cfg.split_ratio, cfg.seed);
}

opt::EvalContext make_context(const LoadedRun& run, const RunConfig& cfg) {
    opt::EvalContext ctx;
    ctx.scene = &run.scene;
    ctx.real = &run.real;
    ctx.split = run_split(cfg, run.real.ues());
    ctx.options = {cfg.k, cfg.floor_dbm};
    ctx.seed = cfg.seed;
    ctx.workers = cfg.workers;
    return ctx;
}

opt::SimulationInput make_input(const LoadedRun& run, const RunConfig& cfg) {
    return {run.stations, run.ues, cfg.solver};
}

int cmd_scene_build(const CommonFlags& flags, const std::string& out) {
    const RunConfig cfg = effective_config(flags);
    const LoadedScene loaded = load_scene_only(cfg);
    const auto extent = loaded.scene.ground_extent();

    json summary;
    summary["prism_count"] = loaded.scene.prisms().size();
    summary["face_count"] = loaded.scene.faces().size();
    summary["triangle_count"] = loaded.scene.triangles().size();
    summary["origin"] = {{"lat", loaded.enu_origin.lat()}, {"lon", loaded.enu_origin.lon()}};
    summary["ground_extent_enu"] = {{"min", {extent[0].x, extent[0].y}},
                                    {"max", {extent[1].x, extent[1].y}}};
    summary["material"] = loaded.scene.material().name();

    const std::string path = out_path(cfg, out, "scene_summary.json");
    write_json_output(cfg, path, std::move(summary));
    std::cout << "scene: " << loaded.scene.prisms().size() << " prisms, "
              << loaded.scene.triangles().size() << " triangles -> " << path << "\n";
    return 0;
}

int cmd_scene_export_obj(const CommonFlags& flags, const std::string& out) {
    const RunConfig cfg = effective_config(flags);
    const LoadedScene loaded = load_scene_only(cfg);
    std::ostringstream buf;
    scene::write_obj(loaded.scene, buf, cfg.provenance());
    const std::string path = out_path(cfg, out, "scene.obj");
    io::write_file_atomic(path, buf.str());
    std::cout << "scene mesh -> " << path << "\n";
    return 0;
}

int cmd_simulate(const CommonFlags& flags, const std::string& out) {
    const RunConfig cfg = effective_config(flags);
    const LoadedRun run = load_run(cfg);
    const RssiMatrix sim = prop::simulate_rssi(run.scene, run.stations, run.ues, cfg.solver,
                                               cfg.seed, cfg.workers);
    std::ostringstream buf;
    sim.write_csv(buf, cfg.provenance());
    const std::string path = out_path(cfg, out, "sim_rssi.csv");
    io::write_file_atomic(path, buf.str());
    std::cout << "simulated " << sim.n_stations() << " stations x " << sim.n_ues() << " UEs -> "
              << path << "\n";
    return 0;
}

int cmd_evaluate(const CommonFlags& flags, const std::string& sim_path, const std::string& out) {
    const RunConfig cfg = effective_config(flags);
    const LoadedRun run = load_run(cfg);

    std::ifstream sim_file(sim_path);
    if (!sim_file) throw std::runtime_error(sim_path + ": cannot open simulated matrix");
    RssiMatrix sim = RssiMatrix::read_csv(sim_file, RssiSource::kSim, sim_path);
    sim = sim.reordered(run.real.stations(), run.real.ues());

    const eval::FidelityReport report = eval::evaluate(run.real, sim, run.ues, run.enu_origin,
                                                       run_split(cfg, run.real.ues()),
                                                       {cfg.k, cfg.floor_dbm});
    const std::string path = out_path(cfg, out, "report.json");
    write_json_output(cfg, path, report.to_json());
    std::cout << "fidelity report -> " << path << "\n";
    return 0;
}

int cmd_sweep(const CommonFlags& flags, const std::string& out) {
    const RunConfig cfg = effective_config(flags);
    if (!cfg.sweep_axis.has_value()) {
        throw std::runtime_error("run config has no 'sweep' axis");
    }
    const LoadedRun run = load_run(cfg);
    const opt::EvalContext ctx = make_context(run, cfg);
    opt::SimCache cache;
    const auto rows = opt::sweep(*cfg.sweep_axis, make_input(run, cfg), ctx, cache);

    json body;
    body["axis"] = sweep_axis_to_json(*cfg.sweep_axis);
    json jrows = json::array();
    for (const auto& row : rows) {
        jrows.push_back({{"value", row.value}, {"report", row.report.to_json()}});
    }
    body["rows"] = std::move(jrows);

    const std::string path = out_path(cfg, out, "sweep.json");
    write_json_output(cfg, path, std::move(body));
    std::cout << "sweep over " << cfg.sweep_axis->name() << " (" << rows.size() << " values) -> "
              << path << "\n";
    return 0;
}

int cmd_optimize(const CommonFlags& flags) {
    const RunConfig cfg = effective_config(flags);
    if (cfg.optimize_axes.empty()) {
        throw std::runtime_error("run config has no 'optimize.axes'");
    }
    const LoadedRun run = load_run(cfg);
    const opt::EvalContext ctx = make_context(run, cfg);
    opt::SimCache cache;
    const opt::OptimizeResult result =
        opt::greedy_optimize(cfg.optimize_axes, opt::objective_from_name(cfg.objective),
                             make_input(run, cfg), ctx, cache, cfg.passes);

    fs::create_directories(cfg.output_dir);
    const fs::path dir(cfg.output_dir);

    std::ostringstream trace;
    opt::write_trace_csv(trace, result.trace, cfg.provenance());
    io::write_file_atomic((dir / "trace.csv").string(), trace.str());

    write_json_output(cfg, (dir / "initial_report.json").string(),
                      result.initial_report.to_json());
    write_json_output(cfg, (dir / "final_report.json").string(), result.final_report.to_json());

    json optimized;
    optimized["objective"] = cfg.objective;
    json stations = json::array();
    for (const auto& s : result.config.stations) stations.push_back(station_to_json(s));
    optimized["stations"] = std::move(stations);
    optimized["solver"] = solver_to_json(result.config.solver);
    optimized["cache"] = {{"simulations", cache.entries()}, {"hits", cache.hits()}};
    write_json_output(cfg, (dir / "optimized_config.json").string(), std::move(optimized));

    const auto mean0 = result.initial_report.mean_spearman();
    const auto mean1 = result.final_report.mean_spearman();
    std::cout << "greedy optimization: mean spearman "
              << (mean0 ? std::to_string(*mean0) : "undefined") << " -> "
              << (mean1 ? std::to_string(*mean1) : "undefined") << ", trace "
              << result.trace.size() << " steps -> " << cfg.output_dir << "\n";
    return 0;
}

int cmd_report(const CommonFlags& flags, const std::vector<std::string>& inputs,
               const std::string& title) {
    const RunConfig cfg = effective_config(flags);
    std::vector<std::pair<std::string, eval::FidelityReport>> rows;

    for (const auto& input : inputs) {
        const json doc = json::parse(io::read_file(input));
        const std::string stem = fs::path(input).stem().string();
        if (doc.contains("rows")) {
            // Sweep output: one row per swept value.
            for (const auto& row : doc.at("rows")) {
                rows.emplace_back(stem + "=" + row.at("value").dump(),
                                  eval::FidelityReport::from_json(row.at("report")));
            }
        } else {
            rows.emplace_back(stem, eval::FidelityReport::from_json(doc));
        }
    }
    if (rows.empty()) throw std::runtime_error("report: no inputs");

    fs::create_directories(cfg.output_dir);
    const fs::path dir(cfg.output_dir);
    const std::string prov = cfg.provenance();
    io::write_file_atomic((dir / "table.csv").string(), report::render_table_csv(rows, prov));
    io::write_file_atomic((dir / "spearman.svg").string(),
                          report::render_spearman_svg(rows, title, prov));
    io::write_file_atomic((dir / "knn_error.svg").string(),
                          report::render_knn_svg(rows, title, prov));
    std::cout << "rendered " << rows.size() << " rows -> " << cfg.output_dir
              << "/table.csv, spearman.svg, knn_error.svg\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Urban RF ray-tracing simulator and sim-to-real fidelity harness"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string out, sim_path, title = "fidelity";
    std::vector<std::string> report_inputs;

    CLI::App* scene_cmd = app.add_subcommand("scene", "Scene construction");
    scene_cmd->require_subcommand(1);
    CLI::App* scene_build = scene_cmd->add_subcommand("build", "Build and summarize the scene");
    add_common_flags(scene_build, flags);
    scene_build->add_option("--out", out, "Summary JSON path");
    CLI::App* scene_obj = scene_cmd->add_subcommand("export-obj", "Export the scene mesh as OBJ");
    add_common_flags(scene_obj, flags);
    scene_obj->add_option("--out", out, "OBJ path");

    CLI::App* simulate = app.add_subcommand("simulate", "Ray trace and write the SIM RSSI matrix");
    add_common_flags(simulate, flags);
    simulate->add_option("--out", out, "Matrix CSV path");

    CLI::App* evaluate = app.add_subcommand("evaluate", "Score a SIM matrix against measurements");
    add_common_flags(evaluate, flags);
    evaluate->add_option("--sim", sim_path, "Simulated matrix CSV")->required();
    evaluate->add_option("--out", out, "Report JSON path");

    CLI::App* sweep = app.add_subcommand("sweep", "Evaluate every value of the config's sweep axis");
    add_common_flags(sweep, flags);
    sweep->add_option("--out", out, "Sweep JSON path");

    CLI::App* optimize = app.add_subcommand("optimize", "Greedy coordinate ascent over config axes");
    add_common_flags(optimize, flags);

    CLI::App* report_cmd = app.add_subcommand("report", "Render reports as CSV table and SVG charts");
    add_common_flags(report_cmd, flags);
    report_cmd->add_option("--in", report_inputs, "Report or sweep JSON files")->required();
    report_cmd->add_option("--title", title, "Chart title");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scene_build->parsed()) return cmd_scene_build(flags, out);
        if (scene_obj->parsed()) return cmd_scene_export_obj(flags, out);
        if (simulate->parsed()) return cmd_simulate(flags, out);
        if (evaluate->parsed()) return cmd_evaluate(flags, sim_path, out);
        if (sweep->parsed()) return cmd_sweep(flags, out);
        if (optimize->parsed()) return cmd_optimize(flags);
        if (report_cmd->parsed()) return cmd_report(flags, report_inputs, title);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
