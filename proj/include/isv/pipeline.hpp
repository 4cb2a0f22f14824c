#pragma once

#include "isv/colormap.hpp"
#include "isv/director.hpp"
#include "isv/output.hpp"
#include "isv/sim.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace isv {

/// Invalid configuration value; field() is the flag name without dashes.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& msg)
        : std::invalid_argument(field + ": " + msg), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

inline constexpr const char* kBlobSimSource = "blob-sim";

struct RunConfig {
    /// "blob-sim" or the prefix of a raw series (prefix_000000.raw, ...).
    std::string source = kBlobSimSource;
    Dims dims{64, 64, 64};
    /// Simulation steps to run; 0 means all files of a raw series. Blob sim defaults to 300.
    std::size_t steps = 300;
    std::size_t blobs = 3;
    std::uint64_t seed = 1;

    EntropySource entropy = EntropySource::DepthAndLightness;
    ColorMapName colormap = ColorMapName::RdBu;
    std::size_t n_lat = 25;
    std::size_t n_lon = 50;
    std::size_t n_v = 1;
    std::size_t n_e = 30;
    Interpolation interpolation = Interpolation::Squad;
    std::size_t width = 512;
    std::size_t height = 512;
    double vertical_fov = 0.872664626;
    double radius_factor = 2.5;
    /// Empty selects 25/50/75% of the first volume's value range.
    std::vector<double> isovalues;

    std::filesystem::path out_dir = "out";
    bool write_frames = true;
    /// Score every emitted frame and report average entropy and accumulative distance.
    bool metrics = false;
    /// In metrics mode, also run the full-grid trace needed for accumulative distance.
    bool distance = true;
    double fps = 30.0;
    unsigned threads = 1;

    /// Throws ConfigError naming the first invalid field.
    void validate() const;
};

struct RunSummary {
    std::size_t frames = 0;
    std::size_t evaluations = 0;
    std::optional<double> average_entropy;
    std::vector<double> distance_series;
    std::optional<double> final_distance;
    RunLog log;
    std::vector<std::filesystem::path> frame_paths;
};

std::unique_ptr<VolumeSource> make_source(const RunConfig& cfg);

/// Rendering parameters for the run, derived from the first volume.
RenderSpec make_run_render_spec(const RunConfig& cfg, const ScalarVolume& first);

ViewpointGrid make_run_grid(const RunConfig& cfg, const ScalarVolume& first);

/// Runs the director over every simulation step and writes frames, heatmaps, the
/// run log, the manifest and (metrics mode) metrics.csv under cfg.out_dir.
/// cache, when given, must only be shared between runs that differ in n_e and
/// interpolation.
RunSummary run(const RunConfig& cfg, EvaluationCache* cache = nullptr);

struct SweepMatrix {
    RunConfig base;
    std::vector<EntropySource> entropy;
    std::vector<ColorMapName> colormaps;
    std::vector<std::pair<std::size_t, std::size_t>> grids;
    std::vector<std::size_t> n_e;
    std::vector<Interpolation> interpolation;
};

struct SweepCell {
    RunConfig config;
    std::optional<RunSummary> summary;
    std::string error;
};

/// Runs the cross product entropy x colormap x grid x n_e x interpolation (in that
/// nesting order) with metrics on, each cell under base.out_dir/cell_<i>, and
/// writes base.out_dir/summary.csv. A failing cell is recorded and skipped.
std::vector<SweepCell> sweep(const SweepMatrix& matrix);

} // namespace isv
