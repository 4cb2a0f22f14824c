#pragma once

#include "isv/framebuffer.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace isv {

enum class ColorMapName { RdBu, PiYG, PuOr };

std::string_view to_string(ColorMapName name);
std::optional<ColorMapName> parse_colormap_name(std::string_view s);

/// Linear RGB triple in 8-bit units, kept unrounded for shading.
using ColorF = std::array<double, 3>;

struct ColorControlPoint {
    double t;
    ColorF rgb;
};

/// Piecewise-linear colour map. Control point positions increase strictly from 0 to 1.
class ColorMap {
public:
    /// Throws std::invalid_argument if the control points are not strictly
    /// increasing or do not start at 0 and end at 1.
    ColorMap(ColorMapName name, std::vector<ColorControlPoint> points);

    /// The 11-class ColorBrewer diverging scheme, evenly spaced.
    static ColorMap builtin(ColorMapName name);

    ColorMapName name() const { return name_; }
    const std::vector<ColorControlPoint>& points() const { return points_; }

    /// t is clamped to [0, 1].
    ColorF sample(double t) const;

private:
    ColorMapName name_;
    std::vector<ColorControlPoint> points_;
};

Rgb8 to_rgb8(const ColorF& c);

/// sample() rounded to 8 bits.
Rgb8 colormap_sample(const ColorMap& map, double t);

} // namespace isv
