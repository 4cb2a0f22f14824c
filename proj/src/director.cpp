#include "isv/director.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

namespace isv {

void Schedule::validate() const
{
    if (!(dt > 0.0)) {
        throw std::invalid_argument("dt must be positive");
    }
    if (n_v < 1) {
        throw std::invalid_argument("nv must be at least 1");
    }
    if (n_e < 1) {
        throw std::invalid_argument("ne must be at least 1");
    }
}

std::string_view to_string(Interpolation m) { return m == Interpolation::Slerp ? "slerp" : "squad"; }

std::optional<Interpolation> parse_interpolation(std::string_view s)
{
    if (s == "slerp") return Interpolation::Slerp;
    if (s == "squad") return Interpolation::Squad;
    return std::nullopt;
}

Camera camera_for(const Vec3& position, const Quaternion& orientation, const ScalarVolume& vol,
                  const ImageSettings& image)
{
    return fit_camera(position, orientation, vol, image);
}

EvaluationResult entropy_evaluation(const ScalarVolume& vol, const ViewpointGrid& grid, const RenderSpec& spec,
                                    const EvaluationSettings& settings)
{
    const IsosurfaceRenderer renderer(vol, spec);
    const std::size_t n = grid.size();
    std::vector<double> scores(n, 0.0);
    auto score_one = [&](std::size_t i) {
        const Viewpoint& vp = grid[i];
        const FrameBuffer fb = renderer.render(camera_for(vp.position, vp.orientation, vol, settings.image));
        scores[i] = viewpoint_score(fb, settings.source);
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(settings.threads, static_cast<unsigned>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            score_one(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    score_one(i);
                }
            });
        }
    }

    // Reduction in grid order with strict '>' so ties go to the earliest viewpoint.
    EvaluationResult r;
    r.best_index = 0;
    r.best_score = scores[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (scores[i] > r.best_score) {
            r.best_score = scores[i];
            r.best_index = i;
        }
    }
    r.best = grid[r.best_index].orientation;
    r.heatmap.n_lat = grid.n_lat();
    r.heatmap.n_lon = grid.n_lon();
    r.heatmap.values = std::move(scores);
    return r;
}

Quaternion interpolate_segment(const Quaternion& prev, const Quaternion& from, const Quaternion& to,
                               const Quaternion& next, double s, Interpolation method)
{
    if (method == Interpolation::Slerp) {
        return slerp(from, to, s);
    }
    const Quaternion a_from = squad_control(prev, from, to);
    const Quaternion a_to = squad_control(from, to, next);
    return squad(from, to, a_from, a_to, s);
}

Director::Director(const ViewpointGrid& grid, DirectorConfig cfg, Evaluator evaluator)
    : grid_(grid), cfg_(std::move(cfg)), evaluator_(std::move(evaluator))
{
    cfg_.schedule.validate();
    if (!evaluator_) {
        evaluator_ = [this](std::size_t, const ScalarVolume& vol) {
            return entropy_evaluation(vol, grid_, cfg_.render, cfg_.evaluation);
        };
    }
}

void Director::push_knot(const EvaluationResult& r, std::size_t vis_step)
{
    const Viewpoint& vp = grid_[r.best_index];
    Knot k{r.best_index, vis_step, r.best, vp.position};
    if (!knots_.empty()) {
        k.orientation = ensure_shortest(knots_.back().orientation, k.orientation);
    }
    knots_.push_back(k);
}

Frame Director::make_frame(const Buffered& b, FrameKind kind, const Quaternion& q, const Vec3& position,
                           std::optional<std::size_t> viewpoint)
{
    Frame f;
    f.index = next_frame_++;
    f.vis_step = b.vis_step;
    f.sim_step = b.sim_step;
    f.kind = kind;
    f.orientation = q;
    f.position = position;
    f.viewpoint = viewpoint;
    const bool need_image = cfg_.keep_images || cfg_.score_frames;
    if (need_image) {
        FrameBuffer fb = IsosurfaceRenderer(b.volume, cfg_.render)
                             .render(camera_for(position, q, b.volume, cfg_.evaluation.image));
        if (cfg_.score_frames) {
            f.entropy = viewpoint_score(fb, cfg_.evaluation.source);
        }
        if (cfg_.keep_images) {
            f.image = std::move(fb);
        }
    }
    if (!f.entropy && viewpoint) {
        // A knot frame renders exactly what the evaluation rendered.
        for (auto it = evaluations_.rbegin(); it != evaluations_.rend(); ++it) {
            if (it->vis_step == b.vis_step) {
                const auto& values = it->result.heatmap.values;
                if (*viewpoint < values.size()) {
                    f.entropy = values[*viewpoint];
                }
                break;
            }
        }
    }
    return f;
}

void Director::emit_segment(const Knot& prev, const Knot& from, const Knot& to, const Knot& next,
                            std::vector<Frame>& out)
{
    const std::size_t n_e = cfg_.schedule.n_e;
    for (std::size_t j = 0; j < n_e && !volumes_.empty(); ++j) {
        const Buffered b = std::move(volumes_.front());
        volumes_.pop_front();
        if (j == 0) {
            out.push_back(make_frame(b, FrameKind::Segment, from.orientation, from.position, from.viewpoint));
            continue;
        }
        const double s = static_cast<double>(j) / static_cast<double>(n_e);
        const Quaternion q = interpolate_segment(prev.orientation, from.orientation, to.orientation,
                                                 next.orientation, s, cfg_.interpolation);
        out.push_back(make_frame(b, FrameKind::Segment, q, grid_.position_for(q), std::nullopt));
    }
}

void Director::emit_hold(const Knot& knot, std::vector<Frame>& out)
{
    while (!volumes_.empty()) {
        const Buffered b = std::move(volumes_.front());
        volumes_.pop_front();
        const bool on_knot = b.vis_step == knot.vis_step;
        out.push_back(make_frame(b, on_knot ? FrameKind::Segment : FrameKind::Tail, knot.orientation,
                                 knot.position, on_knot ? std::optional<std::size_t>(knot.viewpoint) : std::nullopt));
    }
}

std::vector<Frame> Director::on_timestep(std::size_t t, const ScalarVolume& vol)
{
    if (finalized_) {
        throw std::logic_error("on_timestep called after finalize");
    }
    if (t != next_t_) {
        throw std::logic_error("non-monotonic timestep: expected " + std::to_string(next_t_) + ", got " +
                               std::to_string(t));
    }
    const Schedule& sched = cfg_.schedule;
    if (t > sched.t_end) {
        throw std::logic_error("timestep " + std::to_string(t) + " beyond t_end " + std::to_string(sched.t_end));
    }
    ++next_t_;

    std::vector<Frame> out;
    if (!sched.is_vis_step(t)) {
        return out;
    }
    const std::size_t vis = t / sched.n_v;
    volumes_.push_back({vis, t, vol});
    if (!sched.is_eval_step(t)) {
        return out;
    }

    EvaluationResult r = evaluator_(vis, vol);
    r.heatmap.vis_step = vis;
    evaluations_.push_back({vis, t, r});
    push_knot(r, vis);
    if (vis == 0) {
        push_knot(r, vis);
    }
    if (knots_.size() == 4) {
        emit_segment(knots_[0], knots_[1], knots_[2], knots_[3], out);
        knots_.pop_front();
    }
    return out;
}

std::vector<Frame> Director::finalize()
{
    std::vector<Frame> out;
    if (finalized_ || knots_.empty()) {
        finalized_ = true;
        return out;
    }
    finalized_ = true;
    if (knots_.size() == 3) {
        emit_segment(knots_[0], knots_[1], knots_[2], knots_[2], out);
    }
    emit_hold(knots_.back(), out);
    knots_.clear();
    return out;
}

const EvaluationResult* EvaluationCache::find(std::size_t vis_step) const
{
    const auto it = results_.find(vis_step);
    return it == results_.end() ? nullptr : &it->second;
}

Evaluator EvaluationCache::evaluator(const ViewpointGrid& grid, const RenderSpec& spec,
                                     const EvaluationSettings& settings)
{
    return [this, &grid, spec, settings](std::size_t vis_step, const ScalarVolume& vol) {
        if (const EvaluationResult* hit = find(vis_step)) {
            return *hit;
        }
        EvaluationResult r = entropy_evaluation(vol, grid, spec, settings);
        r.heatmap.vis_step = vis_step;
        insert(vis_step, r);
        return r;
    };
}

BestViewpointTrace best_viewpoint_trace(const VolumeSource& source, const Schedule& schedule,
                                        const ViewpointGrid& grid, const RenderSpec& spec,
                                        const EvaluationSettings& settings, EvaluationCache* cache)
{
    schedule.validate();
    BestViewpointTrace trace;
    for (std::size_t t = 0; t <= schedule.t_end; t += schedule.n_v) {
        const std::size_t vis = t / schedule.n_v;
        EvaluationResult r;
        if (const EvaluationResult* hit = cache ? cache->find(vis) : nullptr) {
            r = *hit;
        } else {
            r = entropy_evaluation(source.volume(t), grid, spec, settings);
            r.heatmap.vis_step = vis;
            if (cache) {
                cache->insert(vis, r);
            }
        }
        trace.vis_steps.push_back(vis);
        trace.best_index.push_back(r.best_index);
        trace.best_score.push_back(r.best_score);
    }
    return trace;
}

} // namespace isv
