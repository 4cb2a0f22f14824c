#include "isv/config_parse.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

namespace isv {

namespace {

std::size_t parse_count(std::string_view s, const std::string& field)
{
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ConfigError(field, "expected a non-negative integer, got '" + std::string(s) + "'");
    }
    return v;
}

double parse_real(std::string_view s, const std::string& field)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ConfigError(field, "expected a number, got '" + std::string(s) + "'");
    }
    return v;
}

template <typename T, typename Parser>
T parse_enum(const std::string& value, const std::string& field, Parser parse, const char* choices)
{
    if (const auto v = parse(value)) {
        return *v;
    }
    throw ConfigError(field, "'" + value + "' is not one of " + choices);
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

} // namespace

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot read " + path.string());
    }
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config", path.string() + ":" + std::to_string(line_no) + ": expected key=value");
        }
        std::string key = trim(std::string_view(body).substr(0, eq));
        key.erase(0, key.find_first_not_of('-'));
        out[key] = trim(std::string_view(body).substr(eq + 1));
    }
    return out;
}

bool parse_bool(std::string_view s, const std::string& field)
{
    if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0") return false;
    throw ConfigError(field, "expected true or false, got '" + std::string(s) + "'");
}

std::vector<std::string> split_list(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const std::size_t end = std::min(s.find(sep, start), s.size());
        if (end > start) {
            out.emplace_back(s.substr(start, end - start));
        }
        start = end + 1;
    }
    return out;
}

std::vector<std::size_t> parse_extent(std::string_view s, std::size_t count, const std::string& field)
{
    const auto parts = split_list(s, 'x');
    if (parts.size() != count) {
        throw ConfigError(field, "expected " + std::to_string(count) + " 'x'-separated values, got '" +
                                     std::string(s) + "'");
    }
    std::vector<std::size_t> out;
    for (const auto& p : parts) {
        const std::size_t v = parse_count(p, field);
        if (v == 0) {
            throw ConfigError(field, "values must be positive");
        }
        out.push_back(v);
    }
    return out;
}

std::vector<double> parse_number_list(std::string_view s, const std::string& field)
{
    std::vector<double> out;
    for (const auto& p : split_list(s)) {
        out.push_back(parse_real(p, field));
    }
    return out;
}

void apply_option(RunConfig& cfg, const std::string& key, const std::string& value)
{
    if (key == "source") {
        cfg.source = value;
    } else if (key == "dims") {
        const auto d = parse_extent(value, 3, key);
        cfg.dims = {d[0], d[1], d[2]};
    } else if (key == "steps") {
        cfg.steps = parse_count(value, key);
    } else if (key == "blobs") {
        cfg.blobs = parse_count(value, key);
    } else if (key == "seed") {
        cfg.seed = parse_count(value, key);
    } else if (key == "entropy") {
        cfg.entropy = parse_enum<EntropySource>(value, key, parse_entropy_source, "depth, lightness, both");
    } else if (key == "colormap") {
        cfg.colormap = parse_enum<ColorMapName>(value, key, parse_colormap_name, "RdBu, PiYG, PuOr");
    } else if (key == "grid") {
        const auto g = parse_extent(value, 2, key);
        cfg.n_lat = g[0];
        cfg.n_lon = g[1];
    } else if (key == "nv") {
        cfg.n_v = parse_count(value, key);
    } else if (key == "ne") {
        cfg.n_e = parse_count(value, key);
    } else if (key == "interp") {
        cfg.interpolation = parse_enum<Interpolation>(value, key, parse_interpolation, "slerp, squad");
    } else if (key == "image") {
        const auto im = parse_extent(value, 2, key);
        cfg.width = im[0];
        cfg.height = im[1];
    } else if (key == "fov") {
        cfg.vertical_fov = parse_real(value, key) * std::numbers::pi / 180.0;
    } else if (key == "radius-factor") {
        cfg.radius_factor = parse_real(value, key);
    } else if (key == "isovalues") {
        cfg.isovalues = parse_number_list(value, key);
    } else if (key == "out") {
        cfg.out_dir = value;
    } else if (key == "fps") {
        cfg.fps = parse_real(value, key);
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(parse_count(value, key));
    } else {
        throw ConfigError(key, "unknown option");
    }
}

SweepMatrix make_sweep_matrix(const RunConfig& base, const std::string& entropy, const std::string& colormaps,
                              const std::string& grids, const std::string& ne, const std::string& interp)
{
    SweepMatrix m;
    m.base = base;
    for (const auto& e : split_list(entropy)) {
        m.entropy.push_back(parse_enum<EntropySource>(e, "entropy", parse_entropy_source, "depth, lightness, both"));
    }
    for (const auto& c : split_list(colormaps)) {
        m.colormaps.push_back(parse_enum<ColorMapName>(c, "colormap", parse_colormap_name, "RdBu, PiYG, PuOr"));
    }
    for (const auto& g : split_list(grids)) {
        const auto v = parse_extent(g, 2, "grid");
        m.grids.emplace_back(v[0], v[1]);
    }
    for (const auto& n : split_list(ne)) {
        const std::size_t v = parse_count(n, "ne");
        if (v == 0) {
            throw ConfigError("ne", "must be at least 1");
        }
        m.n_e.push_back(v);
    }
    for (const auto& i : split_list(interp)) {
        m.interpolation.push_back(parse_enum<Interpolation>(i, "interp", parse_interpolation, "slerp, squad"));
    }
    return m;
}

} // namespace isv
