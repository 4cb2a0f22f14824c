#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace isv {

using Rgb8 = std::array<std::uint8_t, 3>;

/// Depth written for pixels whose ray hits nothing.
inline constexpr float kBackgroundDepth = 1.0f;

/// Row-major (top row first) RGB + normalized depth image.
/// Hit pixels carry depth in [0, 1); misses carry exactly kBackgroundDepth.
class FrameBuffer {
public:
    FrameBuffer() = default;
    FrameBuffer(std::size_t width, std::size_t height, Rgb8 background = {0, 0, 0})
        : width_(width), height_(height), rgb_(width * height * 3), depth_(width * height, kBackgroundDepth)
    {
        if (width == 0 || height == 0) {
            throw std::invalid_argument("framebuffer dimensions must be positive");
        }
        for (std::size_t i = 0; i < width * height; ++i) {
            set_rgb(i, background);
        }
    }

    std::size_t width() const { return width_; }
    std::size_t height() const { return height_; }
    std::size_t pixel_count() const { return width_ * height_; }

    std::vector<std::uint8_t>& rgb() { return rgb_; }
    const std::vector<std::uint8_t>& rgb() const { return rgb_; }
    std::vector<float>& depth() { return depth_; }
    const std::vector<float>& depth() const { return depth_; }

    Rgb8 rgb_at(std::size_t i) const { return {rgb_[3 * i], rgb_[3 * i + 1], rgb_[3 * i + 2]}; }
    void set_rgb(std::size_t i, Rgb8 c)
    {
        rgb_[3 * i] = c[0];
        rgb_[3 * i + 1] = c[1];
        rgb_[3 * i + 2] = c[2];
    }
    bool is_background(std::size_t i) const { return depth_[i] == kBackgroundDepth; }

    bool operator==(const FrameBuffer&) const = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<std::uint8_t> rgb_;
    std::vector<float> depth_;
};

} // namespace isv
