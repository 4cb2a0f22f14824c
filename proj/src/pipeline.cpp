#include "isv/pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <tuple>

namespace isv {

namespace {

std::string numbered(const char* stem, std::size_t i, const char* ext)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%06zu.%s", stem, i, ext);
    return buf;
}

std::string cell_dir_name(std::size_t i)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "cell_%03zu", i);
    return buf;
}

void write_metrics(const RunSummary& s, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    if (s.average_entropy) {
        out << "average_entropy," << format_number(*s.average_entropy) << '\n';
    }
    if (s.final_distance) {
        out << "final_accumulative_distance," << format_number(*s.final_distance) << '\n';
    }
    for (std::size_t i = 0; i < s.distance_series.size(); ++i) {
        out << "distance," << s.log.frames[i].vis_step << ',' << format_number(s.distance_series[i]) << '\n';
    }
}

} // namespace

void RunConfig::validate() const
{
    if (source.empty()) {
        throw ConfigError("source", "must be blob-sim or a raw series prefix");
    }
    for (const std::size_t d : dims) {
        if (d < 2) {
            throw ConfigError("dims", "every dimension must be at least 2");
        }
    }
    if (source == kBlobSimSource && steps == 0) {
        throw ConfigError("steps", "blob-sim needs at least one step");
    }
    if (n_lat == 0 || n_lon == 0) {
        throw ConfigError("grid", "latitude and longitude counts must be positive");
    }
    if (n_v == 0) {
        throw ConfigError("nv", "must be at least 1");
    }
    if (n_e == 0) {
        throw ConfigError("ne", "must be at least 1");
    }
    if (width == 0 || height == 0) {
        throw ConfigError("image", "width and height must be positive");
    }
    if (!(radius_factor > 1.0)) {
        throw ConfigError("radius-factor", "camera sphere must enclose the volume (factor > 1)");
    }
    if (!(vertical_fov > 0.0 && vertical_fov < 3.14)) {
        throw ConfigError("fov", "must lie in (0, pi)");
    }
    if (!(fps > 0.0)) {
        throw ConfigError("fps", "must be positive");
    }
}

std::unique_ptr<VolumeSource> make_source(const RunConfig& cfg)
{
    if (cfg.source == kBlobSimSource) {
        return std::make_unique<BlobSimSource>(BlobSimConfig::seeded(cfg.dims, cfg.blobs, cfg.steps, cfg.seed));
    }
    try {
        return std::make_unique<RawSeriesSource>(cfg.source, cfg.dims, RawValueType::Float32, cfg.steps);
    } catch (const std::exception& e) {
        throw ConfigError("source", e.what());
    }
}

RenderSpec make_run_render_spec(const RunConfig& cfg, const ScalarVolume& first)
{
    const auto [lo, hi] = first.value_range();
    std::vector<double> isos = cfg.isovalues.empty() ? default_isovalues(lo, hi) : cfg.isovalues;
    for (const double v : isos) {
        if (v < lo || v > hi) {
            throw ConfigError("isovalues", "isovalue " + format_number(v) + " outside the field range [" +
                                               format_number(lo) + ", " + format_number(hi) + "]");
        }
    }
    return make_render_spec(std::move(isos), ColorMap::builtin(cfg.colormap), lo, hi);
}

ViewpointGrid make_run_grid(const RunConfig& cfg, const ScalarVolume& first)
{
    return build_grid(cfg.n_lat, cfg.n_lon, cfg.radius_factor * first.bounding_radius(), first.center());
}

RunSummary run(const RunConfig& cfg, EvaluationCache* cache)
{
    cfg.validate();
    const auto source = make_source(cfg);
    const ScalarVolume first = source->volume(0);
    const RenderSpec spec = make_run_render_spec(cfg, first);
    const ViewpointGrid grid = make_run_grid(cfg, first);

    DirectorConfig dc;
    dc.schedule = {1.0, cfg.n_v, cfg.n_e, source->steps() - 1};
    dc.interpolation = cfg.interpolation;
    dc.evaluation = {{cfg.width, cfg.height, cfg.vertical_fov}, cfg.entropy, cfg.threads};
    dc.render = spec;
    dc.score_frames = cfg.metrics;
    dc.keep_images = cfg.write_frames;

    EvaluationCache local_cache;
    EvaluationCache& evals = cache ? *cache : local_cache;

    std::optional<BestViewpointTrace> trace;
    if (cfg.metrics && cfg.distance) {
        trace = best_viewpoint_trace(*source, dc.schedule, grid, spec, dc.evaluation, &evals);
    }

    const auto frames_dir = cfg.out_dir / "frames";
    const auto heatmap_dir = cfg.out_dir / "heatmaps";
    std::filesystem::create_directories(heatmap_dir);
    if (cfg.write_frames) {
        std::filesystem::create_directories(frames_dir);
    }

    RunSummary summary;
    Director director(grid, dc, evals.evaluator(grid, spec, dc.evaluation));
    auto consume = [&](std::vector<Frame>&& frames) {
        for (Frame& f : frames) {
            if (cfg.write_frames) {
                const auto path = frames_dir / numbered("frame", f.index, "ppm");
                write_image(f.image, path);
                if (cfg.metrics) {
                    write_depth(f.image, frames_dir / numbered("frame", f.index, "pfm"));
                }
                summary.frame_paths.push_back(path);
            }
            summary.log.frames.push_back(to_record(f));
        }
    };
    for (std::size_t t = 0; t <= dc.schedule.t_end; ++t) {
        consume(director.on_timestep(t, t == 0 ? first : source->volume(t)));
    }
    consume(director.finalize());

    summary.log.evaluations = director.evaluations();
    for (const EvaluationRecord& e : summary.log.evaluations) {
        write_heatmap(e.result.heatmap, heatmap_dir / numbered("heatmap", e.vis_step, "csv"));
    }
    summary.frames = summary.log.frames.size();
    summary.evaluations = summary.log.evaluations.size();
    if (cfg.metrics) {
        summary.average_entropy = average_entropy(summary.log.frames);
        if (trace) {
            summary.distance_series = accumulative_distance(summary.log.frames, *trace, grid);
            summary.final_distance = summary.distance_series.empty() ? 0.0 : summary.distance_series.back();
        }
        write_metrics(summary, cfg.out_dir / "metrics.csv");
    }
    write_run_log(summary.log, grid, cfg.out_dir / "run_log.csv");
    write_manifest(summary.frame_paths, cfg.fps, cfg.out_dir / "manifest.txt");
    return summary;
}

std::vector<SweepCell> sweep(const SweepMatrix& m)
{
    auto or_base = [](auto list, auto base) { return list.empty() ? decltype(list){base} : list; };
    const auto entropies = or_base(m.entropy, m.base.entropy);
    const auto cmaps = or_base(m.colormaps, m.base.colormap);
    const auto grids = or_base(m.grids, std::pair{m.base.n_lat, m.base.n_lon});
    const auto nes = or_base(m.n_e, m.base.n_e);
    const auto interps = or_base(m.interpolation, m.base.interpolation);

    // Evaluations depend only on (entropy, colormap, grid); cells differing in
    // n_e or interpolation share them.
    std::map<std::tuple<EntropySource, ColorMapName, std::size_t, std::size_t>, EvaluationCache> caches;

    std::vector<SweepCell> cells;
    for (const EntropySource e : entropies) {
        for (const ColorMapName c : cmaps) {
            for (const auto& [lat, lon] : grids) {
                for (const std::size_t ne : nes) {
                    for (const Interpolation ip : interps) {
                        SweepCell cell;
                        cell.config = m.base;
                        cell.config.entropy = e;
                        cell.config.colormap = c;
                        cell.config.n_lat = lat;
                        cell.config.n_lon = lon;
                        cell.config.n_e = ne;
                        cell.config.interpolation = ip;
                        cell.config.metrics = true;
                        cell.config.out_dir = m.base.out_dir / cell_dir_name(cells.size());
                        try {
                            cell.summary = run(cell.config, &caches[{e, c, lat, lon}]);
                        } catch (const std::exception& ex) {
                            cell.error = ex.what();
                        }
                        cells.push_back(std::move(cell));
                    }
                }
            }
        }
    }

    std::filesystem::create_directories(m.base.out_dir);
    std::ofstream out(m.base.out_dir / "summary.csv", std::ios::trunc);
    out << "cell,entropy,colormap,grid,ne,interp,average_entropy,final_distance,status\n";
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const SweepCell& c = cells[i];
        out << i << ',' << to_string(c.config.entropy) << ',' << to_string(c.config.colormap) << ','
            << c.config.n_lat << 'x' << c.config.n_lon << ',' << c.config.n_e << ','
            << to_string(c.config.interpolation) << ',';
        if (c.summary) {
            out << format_number(c.summary->average_entropy.value_or(0.0)) << ','
                << (c.summary->final_distance ? format_number(*c.summary->final_distance) : "") << ",ok\n";
        } else {
            std::string msg = c.error;
            for (char& ch : msg) {
                if (ch == ',' || ch == '\n') {
                    ch = ';';
                }
            }
            out << ",," << "error: " << msg << '\n';
        }
    }
    return cells;
}

} // namespace isv
