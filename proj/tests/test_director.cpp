#include "isv/colormap.hpp"
#include "isv/director.hpp"
#include "isv/sim.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace isv;

namespace {

const ScalarVolume& tiny_volume()
{
    static const ScalarVolume vol({2, 2, 2}, {1, 1, 1}, {});
    return vol;
}

// Scripted evaluator: best viewpoint per visualization step from a function.
Evaluator scripted(std::function<std::size_t(std::size_t)> pick, std::size_t* calls = nullptr)
{
    return [pick, calls](std::size_t vis, const ScalarVolume&) {
        if (calls) ++*calls;
        EvaluationResult r;
        r.best_index = pick(vis);
        r.best_score = 1.0;
        return r;
    };
}

DirectorConfig no_render_config(std::size_t t_end, std::size_t n_v, std::size_t n_e, Interpolation m)
{
    DirectorConfig cfg;
    cfg.schedule = {1.0, n_v, n_e, t_end};
    cfg.interpolation = m;
    cfg.keep_images = false;
    cfg.score_frames = false;
    return cfg;
}

// Scripted evaluators need best set from the grid.
Evaluator grid_scripted(const ViewpointGrid& grid, std::function<std::size_t(std::size_t)> pick,
                        std::size_t* calls = nullptr)
{
    auto inner = scripted(std::move(pick), calls);
    return [inner, &grid](std::size_t vis, const ScalarVolume& v) {
        EvaluationResult r = inner(vis, v);
        r.best = grid[r.best_index].orientation;
        return r;
    };
}

std::vector<Frame> drive(Director& d, std::size_t t_end)
{
    std::vector<Frame> frames;
    for (std::size_t t = 0; t <= t_end; ++t) {
        for (Frame& f : d.on_timestep(t, tiny_volume())) frames.push_back(std::move(f));
    }
    for (Frame& f : d.finalize()) frames.push_back(std::move(f));
    return frames;
}

bool same_rotation(const Quaternion& a, const Quaternion& b) { return a == b || a == -b; }

} // namespace

TEST(Schedule, Counts)
{
    const Schedule s{1.0, 2, 3, 10};
    EXPECT_EQ(s.vis_steps(), 6u);
    EXPECT_TRUE(s.is_vis_step(4));
    EXPECT_FALSE(s.is_vis_step(5));
    EXPECT_TRUE(s.is_eval_step(6));
    EXPECT_FALSE(s.is_eval_step(4));
    EXPECT_DOUBLE_EQ(s.eval_interval(), 6.0);
    EXPECT_THROW((Schedule{1.0, 1, 0, 5}.validate()), std::invalid_argument);
    EXPECT_THROW((Schedule{1.0, 0, 1, 5}.validate()), std::invalid_argument);
}

TEST(Director, FrameCountMatchesVisSteps)
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::size_t> t_end_d(0, 200), nv_d(1, 5), ne_d(1, 40), pick_d(0, 17);
    const ViewpointGrid grid = build_grid(3, 6, 3.0, {});
    for (int c = 0; c < 50; ++c) {
        const std::size_t t_end = t_end_d(rng), n_v = nv_d(rng), n_e = ne_d(rng);
        const std::uint64_t seed = rng();
        Director d(grid, no_render_config(t_end, n_v, n_e, c % 2 ? Interpolation::Squad : Interpolation::Slerp),
                   grid_scripted(grid, [seed](std::size_t vis) { return (vis * 7 + seed) % 18; }));
        const auto frames = drive(d, t_end);
        const Schedule s{1.0, n_v, n_e, t_end};
        ASSERT_EQ(frames.size(), s.vis_steps()) << t_end << ' ' << n_v << ' ' << n_e;
        for (std::size_t i = 0; i < frames.size(); ++i) {
            EXPECT_EQ(frames[i].index, i);
            EXPECT_EQ(frames[i].vis_step, i);
            EXPECT_EQ(frames[i].sim_step, i * n_v);
            EXPECT_NEAR(norm(frames[i].orientation), 1.0, 1e-12);
        }
        EXPECT_EQ(d.buffered_volumes(), 0u);
    }
}

TEST(Director, KnotFramesSitOnSelectedViewpoints)
{
    const ViewpointGrid grid = build_grid(4, 8, 3.0, {});
    const std::size_t n_e = 5, t_end = 33;
    Director d(grid, no_render_config(t_end, 1, n_e, Interpolation::Squad),
               grid_scripted(grid, [](std::size_t vis) { return (vis * 5) % 32; }));
    const auto frames = drive(d, t_end);
    for (const Frame& f : frames) {
        if (f.vis_step % n_e == 0) {
            const std::size_t want = (f.vis_step * 5) % 32;
            ASSERT_TRUE(f.viewpoint.has_value());
            EXPECT_EQ(*f.viewpoint, want);
            EXPECT_TRUE(same_rotation(f.orientation, grid[want].orientation));
            EXPECT_EQ(f.position, grid[want].position);
            EXPECT_EQ(f.kind, FrameKind::Segment);
        } else {
            EXPECT_FALSE(f.viewpoint.has_value());
        }
    }
    // 30 is the last knot; 31..33 hold it.
    for (std::size_t v = 31; v <= 33; ++v) {
        EXPECT_EQ(frames[v].kind, FrameKind::Tail);
        EXPECT_EQ(frames[v].orientation, frames[30].orientation);
    }
}

TEST(Director, CameraStaysOnSphere)
{
    const ViewpointGrid grid = build_grid(5, 10, 2.0, {0.5, 0.0, -0.5});
    Director d(grid, no_render_config(60, 1, 7, Interpolation::Squad),
               grid_scripted(grid, [](std::size_t vis) { return (vis * 13 + 3) % 50; }));
    for (const Frame& f : drive(d, 60)) {
        EXPECT_NEAR(norm(f.position - grid.center()), 2.0, 1e-12);
        EXPECT_NEAR(dot(rotate(f.orientation, kCameraForward), normalized(grid.center() - f.position)), 1.0, 1e-12);
    }
}

TEST(Director, SquadContinuousAcrossKnots)
{
    const ViewpointGrid grid = build_grid(6, 12, 3.0, {});
    std::mt19937_64 rng(8);
    std::vector<std::size_t> picks(20);
    for (auto& p : picks) p = rng() % grid.size();
    std::vector<Quaternion> knots;
    for (std::size_t i = 0; i < picks.size(); ++i) {
        Quaternion q = grid[picks[i]].orientation;
        if (!knots.empty()) q = ensure_shortest(knots.back(), q);
        knots.push_back(q);
    }
    // Segment i runs knots[i] -> knots[i+1] with neighbours clamped at the ends.
    auto seg = [&](std::size_t i, double s) {
        const Quaternion& prev = knots[i == 0 ? 0 : i - 1];
        const Quaternion& next = knots[std::min(i + 2, knots.size() - 1)];
        return interpolate_segment(prev, knots[i], knots[i + 1], next, s, Interpolation::Squad);
    };
    for (std::size_t i = 0; i + 2 < knots.size(); ++i) {
        EXPECT_LT(rotation_angle(seg(i, 1.0), seg(i + 1, 0.0)), 1e-6);
        // Tangent continuity: one-sided finite differences agree.
        const double h = 1e-5;
        const Quaternion left = seg(i, 1.0 - h), right = seg(i + 1, h);
        EXPECT_NEAR(rotation_angle(left, knots[i + 1]), rotation_angle(knots[i + 1], right), 1e-3 * h + 1e-7);
    }
}

TEST(Director, FirstAndLastSegmentsWithRepeatedEnds)
{
    const ViewpointGrid grid = build_grid(3, 6, 1.0, {});
    // Two knots only (vis 0 and 4): one segment using the repeated end points, then the tail.
    Director d(grid, no_render_config(6, 1, 4, Interpolation::Squad),
               grid_scripted(grid, [](std::size_t vis) { return vis == 0 ? 1u : 14u; }));
    const auto frames = drive(d, 6);
    ASSERT_EQ(frames.size(), 7u);
    const Quaternion q0 = grid[1].orientation;
    const Quaternion q1 = ensure_shortest(q0, grid[14].orientation);
    for (std::size_t j = 1; j < 4; ++j) {
        const double s = j / 4.0;
        const Quaternion want = interpolate_segment(q0, q0, q1, q1, s, Interpolation::Squad);
        EXPECT_EQ(frames[j].orientation, want);
    }
    EXPECT_EQ(frames[4].viewpoint, std::optional<std::size_t>(14));
    EXPECT_EQ(frames[6].orientation, frames[4].orientation);
}

TEST(Director, SingleEvaluationHoldsFirstKnot)
{
    const ViewpointGrid grid = build_grid(3, 6, 1.0, {});
    Director d(grid, no_render_config(9, 1, 30, Interpolation::Slerp),
               grid_scripted(grid, [](std::size_t) { return 5u; }));
    const auto frames = drive(d, 9);
    ASSERT_EQ(frames.size(), 10u);
    for (const Frame& f : frames) EXPECT_EQ(f.orientation, grid[5].orientation);
    EXPECT_EQ(frames[0].kind, FrameKind::Segment);
    EXPECT_EQ(frames[9].kind, FrameKind::Tail);
}

TEST(Director, EmitsSegmentOnceNextKnotKnown)
{
    const ViewpointGrid grid = build_grid(3, 6, 1.0, {});
    Director d(grid, no_render_config(100, 1, 10, Interpolation::Squad),
               grid_scripted(grid, [](std::size_t vis) { return vis % 18; }));
    std::size_t emitted = 0;
    for (std::size_t t = 0; t <= 20; ++t) {
        emitted += d.on_timestep(t, tiny_volume()).size();
        if (t < 20) EXPECT_EQ(emitted, 0u);
    }
    // Knot at 20 completes the window; the segment 0 -> 10 is released.
    EXPECT_EQ(emitted, 10u);
    EXPECT_EQ(d.buffered_volumes(), 11u);
}

TEST(Director, SlerpHasConstantStepsWithinSegment)
{
    const ViewpointGrid grid = build_grid(5, 10, 1.0, {});
    const std::size_t n_e = 8;
    Director d(grid, no_render_config(48, 1, n_e, Interpolation::Slerp),
               grid_scripted(grid, [](std::size_t vis) { return (vis * 3 + 7) % 50; }));
    const auto frames = drive(d, 48);
    for (std::size_t k = 0; k + n_e < frames.size(); k += n_e) {
        const double first = rotation_angle(frames[k].orientation, frames[k + 1].orientation);
        for (std::size_t j = 1; j < n_e; ++j) {
            EXPECT_NEAR(rotation_angle(frames[k + j].orientation, frames[k + j + 1].orientation), first, 1e-9);
        }
    }
}

TEST(Director, NeOneFollowsArgmax)
{
    const ViewpointGrid grid = build_grid(4, 4, 1.0, {});
    Director d(grid, no_render_config(25, 1, 1, Interpolation::Squad),
               grid_scripted(grid, [](std::size_t vis) { return (vis * vis) % 16; }));
    for (const Frame& f : drive(d, 25)) {
        ASSERT_TRUE(f.viewpoint.has_value());
        EXPECT_EQ(*f.viewpoint, (f.vis_step * f.vis_step) % 16);
        EXPECT_EQ(f.position, grid[*f.viewpoint].position);
    }
}

TEST(Director, RejectsOutOfOrderSteps)
{
    const ViewpointGrid grid = build_grid(3, 6, 1.0, {});
    Director d(grid, no_render_config(5, 1, 2, Interpolation::Squad), grid_scripted(grid, [](std::size_t) { return 0u; }));
    EXPECT_THROW(d.on_timestep(1, tiny_volume()), std::logic_error);
    d.on_timestep(0, tiny_volume());
    EXPECT_THROW(d.on_timestep(0, tiny_volume()), std::logic_error);
    for (std::size_t t = 1; t <= 5; ++t) d.on_timestep(t, tiny_volume());
    EXPECT_THROW(d.on_timestep(6, tiny_volume()), std::logic_error);
    // Segment 0 -> 2 was released at step 4; frames 2..5 remain.
    EXPECT_EQ(d.finalize().size(), 4u);
    EXPECT_TRUE(d.finalize().empty());
    EXPECT_THROW(d.on_timestep(6, tiny_volume()), std::logic_error);
}

TEST(Director, RejectsInvalidSchedule)
{
    const ViewpointGrid grid = build_grid(3, 6, 1.0, {});
    EXPECT_THROW(Director(grid, no_render_config(5, 1, 0, Interpolation::Squad)), std::invalid_argument);
}

TEST(Director, EvaluatesOnlyOnEvalSteps)
{
    const ViewpointGrid grid = build_grid(3, 6, 1.0, {});
    std::size_t calls = 0;
    Director d(grid, no_render_config(29, 2, 3, Interpolation::Squad),
               grid_scripted(grid, [](std::size_t) { return 2u; }, &calls));
    drive(d, 29);
    // Eval at sim steps 0, 6, 12, 18, 24.
    EXPECT_EQ(calls, 5u);
    ASSERT_EQ(d.evaluations().size(), 5u);
    EXPECT_EQ(d.evaluations()[2].vis_step, 6u);
    EXPECT_EQ(d.evaluations()[2].sim_step, 12u);
}

namespace {

struct RenderedFixture {
    ScalarVolume vol = blob_sim_step(BlobSimConfig::seeded({24, 24, 24}, 3, 2, 5), 1);
    ViewpointGrid grid = build_grid(3, 5, 2.5 * vol.bounding_radius(), vol.center());
    RenderSpec spec;
    EvaluationSettings settings;

    RenderedFixture()
    {
        const auto [lo, hi] = vol.value_range();
        spec = make_render_spec(default_isovalues(lo, hi), ColorMap::builtin(ColorMapName::RdBu), lo, hi);
        settings.image = {24, 24, 0.87};
    }
};

} // namespace

TEST(EntropyEvaluation, ArgmaxOfHeatmap)
{
    RenderedFixture fx;
    const EvaluationResult r = entropy_evaluation(fx.vol, fx.grid, fx.spec, fx.settings);
    ASSERT_EQ(r.heatmap.values.size(), fx.grid.size());
    const auto it = std::max_element(r.heatmap.values.begin(), r.heatmap.values.end());
    EXPECT_EQ(r.best_index, static_cast<std::size_t>(it - r.heatmap.values.begin()));
    EXPECT_EQ(r.best_score, *it);
    EXPECT_EQ(r.best, fx.grid[r.best_index].orientation);
    // Each entry is the score of a direct render from that viewpoint.
    const Viewpoint& vp = fx.grid[4];
    const FrameBuffer fb = render_isosurfaces(fx.vol, camera_for(vp.position, vp.orientation, fx.vol, fx.settings.image), fx.spec);
    EXPECT_EQ(r.heatmap.values[4], viewpoint_score(fb, fx.settings.source));
}

TEST(EntropyEvaluation, ThreadCountDoesNotChangeResult)
{
    RenderedFixture fx;
    const EvaluationResult a = entropy_evaluation(fx.vol, fx.grid, fx.spec, fx.settings);
    fx.settings.threads = 3;
    const EvaluationResult b = entropy_evaluation(fx.vol, fx.grid, fx.spec, fx.settings);
    EXPECT_EQ(a.heatmap.values, b.heatmap.values);
    EXPECT_EQ(a.best_index, b.best_index);
}

TEST(EntropyEvaluation, TiesGoToFirstViewpoint)
{
    RenderedFixture fx;
    fx.spec.isovalues.clear();
    fx.spec.colors.clear();
    const EvaluationResult r = entropy_evaluation(fx.vol, fx.grid, fx.spec, fx.settings);
    EXPECT_EQ(r.best_index, 0u);
    EXPECT_EQ(r.best_score, 0.0);
}

TEST(EvaluationCache, ReusesResults)
{
    RenderedFixture fx;
    EvaluationCache cache;
    auto eval = cache.evaluator(fx.grid, fx.spec, fx.settings);
    const EvaluationResult a = eval(3, fx.vol);
    EXPECT_EQ(cache.size(), 1u);
    // A different volume under the same step is served from the cache.
    const EvaluationResult b = eval(3, tiny_volume());
    EXPECT_EQ(a.heatmap.values, b.heatmap.values);
    EXPECT_EQ(b.heatmap.vis_step, 3u);
}

TEST(Director, KnotFrameScoreMatchesHeatmap)
{
    RenderedFixture fx;
    DirectorConfig cfg;
    cfg.schedule = {1.0, 1, 2, 4};
    cfg.evaluation = fx.settings;
    cfg.render = fx.spec;
    cfg.score_frames = true;
    cfg.keep_images = true;
    Director d(fx.grid, cfg);
    std::vector<Frame> frames;
    for (std::size_t t = 0; t <= 4; ++t) {
        for (Frame& f : d.on_timestep(t, fx.vol)) frames.push_back(std::move(f));
    }
    for (Frame& f : d.finalize()) frames.push_back(std::move(f));
    ASSERT_EQ(frames.size(), 5u);
    for (const Frame& f : frames) {
        ASSERT_TRUE(f.entropy.has_value());
        EXPECT_EQ(*f.entropy, viewpoint_score(f.image, fx.settings.source));
        if (f.viewpoint) {
            EXPECT_EQ(*f.entropy, d.evaluations()[f.vis_step / 2].result.heatmap.values[*f.viewpoint]);
        }
    }
}
