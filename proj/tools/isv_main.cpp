// isv: entropy-driven viewpoint selection and camera-path rendering for
// time-varying scalar fields.

#include "isv/config_parse.hpp"
#include "isv/kernels.hpp"
#include "isv/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

namespace {

const char* const kValueFlags[] = {"source", "dims",      "steps", "blobs", "seed", "entropy",
                                   "colormap", "grid",    "nv",    "ne",    "interp", "image",
                                   "fov",    "radius-factor", "isovalues", "out", "fps", "threads"};
const char* const kBoolFlags[] = {"metrics", "skip-distance", "no-frames"};
// Sweep takes comma lists for these.
const char* const kMatrixFlags[] = {"entropy", "colormap", "grid", "ne", "interp"};

struct Flags {
    std::map<std::string, std::string> values;
    std::map<std::string, bool> switches;
    std::string config;
};

void add_flags(CLI::App& app, Flags& f, bool sweep)
{
    for (const char* name : kValueFlags) {
        app.add_option(std::string("--") + name, f.values[name]);
    }
    for (const char* name : kBoolFlags) {
        app.add_flag(std::string("--") + name, f.switches[name]);
    }
    app.add_option("--config", f.config, "key=value file; command-line flags take precedence");

    auto describe = [&](const char* name, const std::string& text) {
        app.get_option(std::string("--") + name)->description(text);
    };
    const std::string list = sweep ? "comma list of " : "";
    describe("source", "blob-sim or raw series prefix (<prefix>_<step:06d>.raw)");
    describe("dims", "grid size <nx>x<ny>x<nz>");
    describe("steps", "simulation steps (0: every raw file found)");
    describe("blobs", "blob count for blob-sim");
    describe("seed", "blob-sim seed");
    describe("entropy", list + "depth | lightness | both");
    describe("colormap", list + "RdBu | PiYG | PuOr");
    describe("grid", list + "viewpoint grid <lat>x<lon>");
    describe("nv", "simulation steps per visualization step");
    describe("ne", list + "visualization steps per entropy evaluation");
    describe("interp", list + "slerp | squad");
    describe("image", "image size <w>x<h>");
    describe("fov", "vertical field of view in degrees");
    describe("radius-factor", "viewsphere radius over the volume's bounding radius");
    describe("out", "output directory");
    describe("fps", "frame rate recorded in the manifest");
    describe("threads", "render threads for entropy evaluation");
    describe("isovalues", "comma-separated isovalues (default: 25/50/75% of range)");
    describe("metrics", "score every frame; report average entropy and accumulative distance");
    describe("skip-distance", "metrics without the full-grid trace");
    describe("no-frames", "do not write frame images");
}

// Config file entries first, then every flag given on the command line.
std::map<std::string, std::string> merged_settings(const Flags& f)
{
    std::map<std::string, std::string> s;
    if (!f.config.empty()) {
        s = isv::read_config_file(f.config);
    }
    for (const auto& [name, value] : f.values) {
        if (!value.empty()) {
            s[name] = value;
        }
    }
    for (const auto& [name, on] : f.switches) {
        if (on) {
            s[name] = "true";
        }
    }
    return s;
}

bool take_bool(std::map<std::string, std::string>& s, const std::string& key)
{
    const auto it = s.find(key);
    if (it == s.end()) {
        return false;
    }
    const bool v = isv::parse_bool(it->second, key);
    s.erase(it);
    return v;
}

isv::RunConfig to_config(std::map<std::string, std::string> s)
{
    isv::RunConfig cfg;
    cfg.metrics = take_bool(s, "metrics");
    cfg.distance = !take_bool(s, "skip-distance");
    cfg.write_frames = !take_bool(s, "no-frames");
    for (const auto& [key, value] : s) {
        isv::apply_option(cfg, key, value);
    }
    return cfg;
}

int do_run(const Flags& f)
{
    const isv::RunConfig cfg = to_config(merged_settings(f));
    const isv::RunSummary s = isv::run(cfg);
    std::cout << "kernels: " << isv::kernels::isa_name(isv::kernels::active_isa()) << '\n'
              << "frames: " << s.frames << '\n'
              << "evaluations: " << s.evaluations << '\n';
    if (s.average_entropy) {
        std::cout << "average_entropy: " << isv::format_number(*s.average_entropy) << '\n';
    }
    if (s.final_distance) {
        std::cout << "final_accumulative_distance: " << isv::format_number(*s.final_distance) << '\n';
    }
    std::cout << "output: " << cfg.out_dir.string() << '\n';
    return 0;
}

int do_sweep(const Flags& f)
{
    auto settings = merged_settings(f);
    std::map<std::string, std::string> axes;
    for (const char* name : kMatrixFlags) {
        if (const auto it = settings.find(name); it != settings.end()) {
            axes[name] = it->second;
            settings.erase(it);
        }
    }
    const isv::RunConfig base = to_config(settings);
    base.validate();
    const isv::SweepMatrix m = isv::make_sweep_matrix(base, axes["entropy"], axes["colormap"], axes["grid"],
                                                      axes["ne"], axes["interp"]);
    const auto cells = isv::sweep(m);
    std::size_t failed = 0;
    for (const auto& c : cells) {
        if (!c.summary) {
            ++failed;
            std::cerr << "cell " << c.config.out_dir.string() << " failed: " << c.error << '\n';
        }
    }
    std::cout << "cells: " << cells.size() << " (" << failed << " failed)\n"
              << "summary: " << (base.out_dir / "summary.csv").string() << '\n';
    return failed == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Entropy-based viewpoint selection and quaternion camera paths"};
    app.require_subcommand(1);

    Flags run_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "run one configuration");
    add_flags(*run_cmd, run_flags, false);

    Flags sweep_flags;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a parameter matrix and summarise each cell");
    add_flags(*sweep_cmd, sweep_flags, true);

    CLI11_PARSE(app, argc, argv);

    try {
        return run_cmd->parsed() ? do_run(run_flags) : do_sweep(sweep_flags);
    } catch (const isv::ConfigError& e) {
        std::cerr << "configuration error: --" << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
