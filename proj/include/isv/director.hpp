#pragma once

#include "isv/entropy.hpp"
#include "isv/framebuffer.hpp"
#include "isv/render.hpp"
#include "isv/sim.hpp"
#include "isv/viewsphere.hpp"

#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace isv {

/// Time-step bookkeeping. Simulation steps run 0 .. t_end inclusive; every n_v-th
/// step is a visualization step and every n_e-th visualization step is an entropy
/// evaluation step.
struct Schedule {
    double dt = 1.0;
    std::size_t n_v = 1;
    std::size_t n_e = 30;
    std::size_t t_end = 0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    double vis_interval() const { return static_cast<double>(n_v) * dt; }
    double eval_interval() const { return static_cast<double>(n_e * n_v) * dt; }
    bool is_vis_step(std::size_t t) const { return t % n_v == 0; }
    bool is_eval_step(std::size_t t) const { return t % (n_v * n_e) == 0; }
    std::size_t vis_steps() const { return t_end / n_v + 1; }
};

enum class Interpolation { Slerp, Squad };

std::string_view to_string(Interpolation m);
std::optional<Interpolation> parse_interpolation(std::string_view s);

/// Per-viewpoint scores of one evaluation, latitude-major.
struct Heatmap {
    std::size_t n_lat = 0;
    std::size_t n_lon = 0;
    std::size_t vis_step = 0;
    std::vector<double> values;

    double at(std::size_t lat, std::size_t lon) const { return values[lat * n_lon + lon]; }
};

struct EvaluationResult {
    std::size_t best_index = 0;
    Quaternion best;
    double best_score = 0.0;
    Heatmap heatmap;
};

struct EvaluationSettings {
    ImageSettings image;
    EntropySource source = EntropySource::DepthAndLightness;
    /// Worker threads for rendering viewpoints; the result does not depend on it.
    unsigned threads = 1;
};

Camera camera_for(const Vec3& position, const Quaternion& orientation, const ScalarVolume& vol,
                  const ImageSettings& image);

/// Renders the volume from every viewpoint and scores each image. The best
/// viewpoint is the first (latitude-major) to reach the maximum score, so an
/// all-zero evaluation returns viewpoint 0.
EvaluationResult entropy_evaluation(const ScalarVolume& vol, const ViewpointGrid& grid, const RenderSpec& spec,
                                    const EvaluationSettings& settings);

/// One point of a knot-to-knot segment. SQUAD uses the outer neighbours to
/// build the inner control points; SLERP ignores them. All four inputs must
/// already share a hemisphere pairwise along the chain prev, from, to, next.
Quaternion interpolate_segment(const Quaternion& prev, const Quaternion& from, const Quaternion& to,
                               const Quaternion& next, double s, Interpolation method);

enum class FrameKind {
    Segment, ///< on a knot-to-knot segment, including the knot frames themselves
    Tail,    ///< after the last knot, held at its orientation
};

struct Frame {
    std::size_t index = 0;
    std::size_t vis_step = 0;
    std::size_t sim_step = 0;
    FrameKind kind = FrameKind::Segment;
    Quaternion orientation;
    Vec3 position;
    /// Set when the camera sits exactly on a selected viewpoint.
    std::optional<std::size_t> viewpoint;
    std::optional<double> entropy;
    FrameBuffer image;
};

struct EvaluationRecord {
    std::size_t vis_step = 0;
    std::size_t sim_step = 0;
    EvaluationResult result;
};

struct DirectorConfig {
    Schedule schedule;
    Interpolation interpolation = Interpolation::Squad;
    EvaluationSettings evaluation;
    RenderSpec render;
    /// Score every emitted frame (metrics mode). Otherwise only knot frames carry a score.
    bool score_frames = false;
    /// Keep the rendered image in each emitted Frame.
    bool keep_images = true;
};

/// Replaces the built-in evaluation, e.g. to reuse cached results.
using Evaluator = std::function<EvaluationResult(std::size_t vis_step, const ScalarVolume&)>;

/// In-situ driver. Feed every simulation step in order with on_timestep, then
/// call finalize once; exactly one frame comes out per visualization step.
///
/// Knots are kept in a sliding window of four: the segment between the middle
/// two is emitted as soon as the knot after it is known, and the window then
/// advances by one knot. The first knot is pushed twice and the last one is
/// repeated at the end, so the outer segments have neighbours.
class Director {
public:
    Director(const ViewpointGrid& grid, DirectorConfig cfg, Evaluator evaluator = {});

    /// Throws std::logic_error unless t is exactly one past the previous call
    /// (0 on the first call), is within the schedule, and finalize has not run.
    std::vector<Frame> on_timestep(std::size_t t, const ScalarVolume& vol);

    /// Emits the remaining segment and the tail frames. Later calls return nothing.
    std::vector<Frame> finalize();

    const std::vector<EvaluationRecord>& evaluations() const { return evaluations_; }
    const DirectorConfig& config() const { return cfg_; }
    std::size_t buffered_volumes() const { return volumes_.size(); }
    std::size_t frames_emitted() const { return next_frame_; }

private:
    struct Knot {
        std::size_t viewpoint;
        std::size_t vis_step;
        Quaternion orientation;
        Vec3 position;
    };
    struct Buffered {
        std::size_t vis_step;
        std::size_t sim_step;
        ScalarVolume volume;
    };

    void push_knot(const EvaluationResult& r, std::size_t vis_step);
    void emit_segment(const Knot& prev, const Knot& from, const Knot& to, const Knot& next, std::vector<Frame>& out);
    void emit_hold(const Knot& knot, std::vector<Frame>& out);
    Frame make_frame(const Buffered& b, FrameKind kind, const Quaternion& q, const Vec3& position,
                     std::optional<std::size_t> viewpoint);

    const ViewpointGrid& grid_;
    DirectorConfig cfg_;
    Evaluator evaluator_;
    std::deque<Knot> knots_;
    std::deque<Buffered> volumes_;
    std::vector<EvaluationRecord> evaluations_;
    std::size_t next_t_ = 0;
    std::size_t next_frame_ = 0;
    bool finalized_ = false;
};

/// Evaluation results keyed by visualization step.
class EvaluationCache {
public:
    const EvaluationResult* find(std::size_t vis_step) const;
    void insert(std::size_t vis_step, EvaluationResult r) { results_.insert_or_assign(vis_step, std::move(r)); }
    std::size_t size() const { return results_.size(); }

    /// Evaluator that serves cached steps and evaluates (and stores) the rest.
    Evaluator evaluator(const ViewpointGrid& grid, const RenderSpec& spec, const EvaluationSettings& settings);

private:
    std::map<std::size_t, EvaluationResult> results_;
};

/// Full-grid argmax at every visualization step (the N_E = 1 reference path).
struct BestViewpointTrace {
    std::vector<std::size_t> vis_steps;
    std::vector<std::size_t> best_index;
    std::vector<double> best_score;

    std::size_t size() const { return best_index.size(); }
};

/// Evaluates every visualization step of the schedule. When cache is given the
/// full results are stored in it so a later Director run can reuse them.
BestViewpointTrace best_viewpoint_trace(const VolumeSource& source, const Schedule& schedule,
                                        const ViewpointGrid& grid, const RenderSpec& spec,
                                        const EvaluationSettings& settings, EvaluationCache* cache = nullptr);

} // namespace isv
