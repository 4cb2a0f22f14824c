#include "isv/colormap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isv {

namespace {

using Hex = std::array<std::uint8_t, 3>;

// ColorBrewer 11-class diverging schemes, first colour at t = 0.
constexpr std::array<Hex, 11> kRdBu = {{{103, 0, 31},    {178, 24, 43},   {214, 96, 77},   {244, 165, 130},
                                        {253, 219, 199}, {247, 247, 247}, {209, 229, 240}, {146, 197, 222},
                                        {67, 147, 195},  {33, 102, 172},  {5, 48, 97}}};
constexpr std::array<Hex, 11> kPiYG = {{{142, 1, 82},    {197, 27, 125},  {222, 119, 174}, {241, 182, 218},
                                        {253, 224, 239}, {247, 247, 247}, {230, 245, 208}, {184, 225, 134},
                                        {127, 188, 65},  {77, 146, 33},   {39, 100, 25}}};
constexpr std::array<Hex, 11> kPuOr = {{{127, 59, 8},    {179, 88, 6},    {224, 130, 20},  {253, 184, 99},
                                        {254, 224, 182}, {247, 247, 247}, {216, 218, 235}, {178, 171, 210},
                                        {128, 115, 172}, {84, 39, 136},   {45, 0, 75}}};

std::vector<ColorControlPoint> evenly_spaced(const std::array<Hex, 11>& table)
{
    std::vector<ColorControlPoint> pts;
    pts.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(table.size() - 1);
        pts.push_back({t, {double(table[i][0]), double(table[i][1]), double(table[i][2])}});
    }
    return pts;
}

} // namespace

std::string_view to_string(ColorMapName name)
{
    switch (name) {
    case ColorMapName::RdBu: return "RdBu";
    case ColorMapName::PiYG: return "PiYG";
    case ColorMapName::PuOr: return "PuOr";
    }
    return "unknown";
}

std::optional<ColorMapName> parse_colormap_name(std::string_view s)
{
    if (s == "RdBu") return ColorMapName::RdBu;
    if (s == "PiYG") return ColorMapName::PiYG;
    if (s == "PuOr") return ColorMapName::PuOr;
    return std::nullopt;
}

ColorMap::ColorMap(ColorMapName name, std::vector<ColorControlPoint> points)
    : name_(name), points_(std::move(points))
{
    if (points_.size() < 2 || points_.front().t != 0.0 || points_.back().t != 1.0) {
        throw std::invalid_argument("colour map control points must span [0, 1]");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].t > points_[i - 1].t)) {
            throw std::invalid_argument("colour map control points must be strictly increasing");
        }
    }
}

ColorMap ColorMap::builtin(ColorMapName name)
{
    switch (name) {
    case ColorMapName::RdBu: return ColorMap(name, evenly_spaced(kRdBu));
    case ColorMapName::PiYG: return ColorMap(name, evenly_spaced(kPiYG));
    case ColorMapName::PuOr: return ColorMap(name, evenly_spaced(kPuOr));
    }
    throw std::invalid_argument("unknown colour map");
}

ColorF ColorMap::sample(double t) const
{
    t = std::clamp(t, 0.0, 1.0);
    const auto upper = std::upper_bound(points_.begin(), points_.end(), t,
                                        [](double v, const ColorControlPoint& p) { return v < p.t; });
    if (upper == points_.end()) {
        return points_.back().rgb;
    }
    const ColorControlPoint& hi = *upper;
    const ColorControlPoint& lo = *(upper - 1);
    const double f = (t - lo.t) / (hi.t - lo.t);
    ColorF c;
    for (int i = 0; i < 3; ++i) {
        c[i] = lo.rgb[i] + (hi.rgb[i] - lo.rgb[i]) * f;
    }
    return c;
}

Rgb8 to_rgb8(const ColorF& c)
{
    Rgb8 out;
    for (int i = 0; i < 3; ++i) {
        out[i] = static_cast<std::uint8_t>(std::lround(std::clamp(c[i], 0.0, 255.0)));
    }
    return out;
}

Rgb8 colormap_sample(const ColorMap& map, double t) { return to_rgb8(map.sample(t)); }

} // namespace isv
