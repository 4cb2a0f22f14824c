#pragma once

#include "isv/director.hpp"
#include "isv/framebuffer.hpp"
#include "isv/viewsphere.hpp"

#include <filesystem>
#include <optional>
#include <vector>

namespace isv {

/// What the run log keeps about an emitted frame.
struct FrameRecord {
    std::size_t index = 0;
    std::size_t vis_step = 0;
    Quaternion orientation;
    Vec3 position;
    std::optional<double> entropy;
};

FrameRecord to_record(const Frame& f);

struct RunLog {
    std::vector<FrameRecord> frames;
    std::vector<EvaluationRecord> evaluations;
};

/// Binary PPM (P6, maxval 255), top row first.
void write_image(const FrameBuffer& fb, const std::filesystem::path& path);

/// Reads a P6 file written by write_image. Depth is set to 0 (not stored in PPM).
FrameBuffer read_image(const std::filesystem::path& path);

/// Depth channel as a little-endian greyscale PFM ("Pf", scale -1, bottom row first).
void write_depth(const FrameBuffer& fb, const std::filesystem::path& path);

/// Restores the depth channel of fb from a PFM written by write_depth.
void read_depth(FrameBuffer& fb, const std::filesystem::path& path);

/// n_lat lines of n_lon comma-separated values, 6 significant digits.
void write_heatmap(const Heatmap& hm, const std::filesystem::path& path);
Heatmap read_heatmap(const std::filesystem::path& path);

/// Line records:
///   frame,<idx>,<vis_step>,<qw>,<qx>,<qy>,<qz>,<entropy>   (entropy empty when not computed)
///   eval,<vis_step>,<best_lat>,<best_lon>,<best_score>
void write_run_log(const RunLog& log, const ViewpointGrid& grid, const std::filesystem::path& path);

/// Parses the frame records of a run log (positions are not stored and stay zero).
std::vector<FrameRecord> read_run_log_frames(const std::filesystem::path& path);

/// Running sum over visualization steps of the great-circle distance between the
/// camera and that step's best viewpoint. Throws std::invalid_argument when the
/// frame log and the trace do not cover the same steps.
std::vector<double> accumulative_distance(const std::vector<FrameRecord>& frames, const BestViewpointTrace& trace,
                                          const ViewpointGrid& grid);

/// Mean per-frame entropy. Throws std::invalid_argument for an empty log or a
/// frame without a score.
double average_entropy(const std::vector<FrameRecord>& frames);

/// "fps=<fps>" then one frame path per line, relative to the manifest's directory.
void write_manifest(const std::vector<std::filesystem::path>& frame_paths, double fps,
                    const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

} // namespace isv
