#include "isv/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

namespace isv {

namespace {

// Uniform double in [lo, hi) from the raw generator output. std::uniform_real_distribution
// is implementation-defined, which would break cross-platform reproducibility.
double uniform(std::mt19937_64& rng, double lo, double hi)
{
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

template <typename UInt>
void put_le(std::vector<char>& out, UInt bits)
{
    for (std::size_t b = 0; b < sizeof(UInt); ++b) {
        out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFF));
    }
}

template <typename UInt>
UInt get_le(const unsigned char* p)
{
    UInt v = 0;
    for (std::size_t b = 0; b < sizeof(UInt); ++b) {
        v |= static_cast<UInt>(p[b]) << (8 * b);
    }
    return v;
}

} // namespace

void normalized_geometry(const Dims& dims, Vec3& spacing, Vec3& origin)
{
    const std::size_t longest = std::max({dims[0], dims[1], dims[2]});
    const double h = 2.0 / static_cast<double>(longest - 1);
    spacing = {h, h, h};
    origin = {-0.5 * h * static_cast<double>(dims[0] - 1), -0.5 * h * static_cast<double>(dims[1] - 1),
              -0.5 * h * static_cast<double>(dims[2] - 1)};
}

Vec3 Blob::center(double t) const
{
    const double a = angular_speed * t + phase;
    return {orbit_radius * std::cos(a), orbit_radius * std::sin(a), z_center + z_amplitude * std::sin(z_speed * t + z_phase)};
}

double Blob::max_speed() const
{
    return std::hypot(orbit_radius * angular_speed, z_amplitude * z_speed);
}

BlobSimConfig BlobSimConfig::seeded(Dims dims, std::size_t blob_count, std::size_t steps, std::uint64_t seed)
{
    BlobSimConfig cfg;
    cfg.dims = dims;
    cfg.steps = steps;
    cfg.seed = seed;
    std::mt19937_64 rng(seed);
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < blob_count; ++i) {
        Blob b;
        b.amplitude = uniform(rng, 0.6, 1.0);
        b.width = uniform(rng, 0.14, 0.26);
        b.orbit_radius = uniform(rng, 0.25, 0.55);
        // One revolution takes between 200 and 500 steps, either direction.
        const double period = uniform(rng, 200.0, 500.0);
        const double sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
        b.angular_speed = sign * kTwoPi / period;
        b.phase = uniform(rng, 0.0, kTwoPi);
        b.z_center = uniform(rng, -0.3, 0.3);
        b.z_amplitude = uniform(rng, 0.0, 0.2);
        b.z_speed = std::abs(b.angular_speed) * std::numbers::phi;
        b.z_phase = uniform(rng, 0.0, kTwoPi);
        cfg.blobs.push_back(b);
    }
    return cfg;
}

double BlobSimConfig::amplitude_sum() const
{
    double s = 0.0;
    for (const Blob& b : blobs) {
        s += b.amplitude;
    }
    return s;
}

ScalarVolume blob_sim_step(const BlobSimConfig& cfg, std::size_t t)
{
    if (t >= cfg.steps) {
        throw std::out_of_range("simulation step " + std::to_string(t) + " beyond configured " +
                                std::to_string(cfg.steps) + " steps");
    }
    Vec3 spacing;
    Vec3 origin;
    normalized_geometry(cfg.dims, spacing, origin);
    ScalarVolume vol(cfg.dims, spacing, origin);

    struct Active {
        Vec3 c;
        double amp;
        double inv2w2;
    };
    std::vector<Active> blobs;
    for (const Blob& b : cfg.blobs) {
        blobs.push_back({b.center(static_cast<double>(t)), b.amplitude, 1.0 / (2.0 * b.width * b.width)});
    }
    const Dims& d = cfg.dims;
    for (std::size_t k = 0; k < d[2]; ++k) {
        for (std::size_t j = 0; j < d[1]; ++j) {
            for (std::size_t i = 0; i < d[0]; ++i) {
                const Vec3 p = vol.node_position(i, j, k);
                double v = 0.0;
                for (const Active& b : blobs) {
                    const Vec3 r = p - b.c;
                    v += b.amp * std::exp(-dot(r, r) * b.inv2w2);
                }
                vol.at(i, j, k) = v;
            }
        }
    }
    return vol;
}

std::size_t value_width(RawValueType type) { return type == RawValueType::Float32 ? 4 : 8; }

std::filesystem::path raw_series_path(const std::string& prefix, std::size_t step)
{
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "_%06zu.raw", step);
    return prefix + suffix;
}

void write_raw_volume(const ScalarVolume& vol, const std::filesystem::path& path, RawValueType type)
{
    std::vector<char> bytes;
    bytes.reserve(vol.size() * value_width(type));
    for (const double v : vol.values()) {
        if (type == RawValueType::Float32) {
            put_le(bytes, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
        } else {
            put_le(bytes, std::bit_cast<std::uint64_t>(v));
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

ScalarVolume read_raw_volume(const std::filesystem::path& path, const Dims& dims, RawValueType type)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open raw volume " + path.string());
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const std::size_t count = dims[0] * dims[1] * dims[2];
    const std::size_t width = value_width(type);
    if (bytes.size() != count * width) {
        throw std::runtime_error("raw volume " + path.string() + " has " + std::to_string(bytes.size()) +
                                 " bytes, expected " + std::to_string(count * width));
    }
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        const unsigned char* p = bytes.data() + i * width;
        values[i] = type == RawValueType::Float32 ? static_cast<double>(std::bit_cast<float>(get_le<std::uint32_t>(p)))
                                                  : std::bit_cast<double>(get_le<std::uint64_t>(p));
    }
    Vec3 spacing;
    Vec3 origin;
    normalized_geometry(dims, spacing, origin);
    return ScalarVolume(dims, spacing, origin, std::move(values));
}

std::size_t count_raw_series(const std::string& prefix)
{
    std::size_t n = 0;
    while (std::filesystem::exists(raw_series_path(prefix, n))) {
        ++n;
    }
    return n;
}

std::vector<ScalarVolume> load_raw_series(const std::string& prefix, const Dims& dims, RawValueType type,
                                          std::size_t count)
{
    std::vector<ScalarVolume> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto path = raw_series_path(prefix, i);
        if (!std::filesystem::exists(path)) {
            throw std::runtime_error("raw series step " + std::to_string(i) + " missing: " + path.string());
        }
        out.push_back(read_raw_volume(path, dims, type));
    }
    return out;
}

RawSeriesSource::RawSeriesSource(std::string prefix, Dims dims, RawValueType type, std::size_t count)
    : prefix_(std::move(prefix)), dims_(dims), type_(type), count_(count == 0 ? count_raw_series(prefix_) : count)
{
    if (count_ == 0) {
        throw std::runtime_error("no raw volumes found for prefix " + prefix_);
    }
}

ScalarVolume RawSeriesSource::volume(std::size_t t) const
{
    const auto path = raw_series_path(prefix_, t);
    if (t >= count_ || !std::filesystem::exists(path)) {
        throw std::runtime_error("raw series step " + std::to_string(t) + " missing: " + path.string());
    }
    return read_raw_volume(path, dims_, type_);
}

} // namespace isv
