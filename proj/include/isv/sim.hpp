#pragma once

#include "isv/volume.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace isv {

/// Time-varying scalar field consumed step by step by the director.
class VolumeSource {
public:
    virtual ~VolumeSource() = default;
    /// Number of simulation steps available (indices 0 .. steps() - 1).
    virtual std::size_t steps() const = 0;
    virtual ScalarVolume volume(std::size_t t) const = 0;
};

/// Spacing and origin that place a grid of these dimensions in [-1, 1] along its
/// longest axis, centred on the origin.
void normalized_geometry(const Dims& dims, Vec3& spacing, Vec3& origin);

/// Gaussian blob whose centre orbits the z axis and bobs along it:
/// c(t) = (R cos(w t + p), R sin(w t + p), z0 + A_z sin(w_z t + p_z)).
struct Blob {
    double amplitude = 1.0;
    double width = 0.2;
    double orbit_radius = 0.4;
    double angular_speed = 0.0; // radians per step
    double phase = 0.0;
    double z_center = 0.0;
    double z_amplitude = 0.0;
    double z_speed = 0.0;
    double z_phase = 0.0;

    Vec3 center(double t) const;
    /// Upper bound on the centre's speed, world units per step.
    double max_speed() const;
};

struct BlobSimConfig {
    Dims dims{64, 64, 64};
    std::vector<Blob> blobs;
    std::size_t steps = 300;
    std::uint64_t seed = 1;

    /// Blob parameters drawn from a mt19937_64 seeded with seed.
    static BlobSimConfig seeded(Dims dims, std::size_t blob_count, std::size_t steps, std::uint64_t seed);

    double amplitude_sum() const;
};

/// Sum of Gaussian blobs at step t. Throws std::out_of_range for t >= cfg.steps.
ScalarVolume blob_sim_step(const BlobSimConfig& cfg, std::size_t t);

class BlobSimSource final : public VolumeSource {
public:
    explicit BlobSimSource(BlobSimConfig cfg) : cfg_(std::move(cfg)) {}
    std::size_t steps() const override { return cfg_.steps; }
    ScalarVolume volume(std::size_t t) const override { return blob_sim_step(cfg_, t); }
    const BlobSimConfig& config() const { return cfg_; }

private:
    BlobSimConfig cfg_;
};

enum class RawValueType { Float32, Float64 };

std::size_t value_width(RawValueType type);

/// "<prefix>_<step:06d>.raw"
std::filesystem::path raw_series_path(const std::string& prefix, std::size_t step);

/// Little-endian, x-fastest, no header.
void write_raw_volume(const ScalarVolume& vol, const std::filesystem::path& path,
                      RawValueType type = RawValueType::Float32);

/// Throws std::runtime_error if the file is missing or its size is not
/// dims product x value width (the message gives expected and actual byte counts).
ScalarVolume read_raw_volume(const std::filesystem::path& path, const Dims& dims,
                             RawValueType type = RawValueType::Float32);

/// Number of consecutive files prefix_000000.raw, prefix_000001.raw, ... that exist.
std::size_t count_raw_series(const std::string& prefix);

/// Loads count volumes in step order. A missing file raises an error naming its index.
std::vector<ScalarVolume> load_raw_series(const std::string& prefix, const Dims& dims, RawValueType type,
                                          std::size_t count);

/// Reads series files on demand.
class RawSeriesSource final : public VolumeSource {
public:
    /// count == 0 means every consecutive file found on disk.
    RawSeriesSource(std::string prefix, Dims dims, RawValueType type = RawValueType::Float32, std::size_t count = 0);
    std::size_t steps() const override { return count_; }
    ScalarVolume volume(std::size_t t) const override;

private:
    std::string prefix_;
    Dims dims_;
    RawValueType type_;
    std::size_t count_;
};

} // namespace isv
