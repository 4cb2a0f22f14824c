#include "isv/output.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace isv {

namespace {

std::ofstream open_out(const std::filesystem::path& path, bool binary)
{
    std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    return out;
}

void check_written(const std::ofstream& out, const std::filesystem::path& path)
{
    if (!out) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

// Reads one whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in)
{
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#') {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        return tok;
    }
    throw std::runtime_error("truncated image header");
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream ss(line);
    while (std::getline(ss, cur, sep)) {
        parts.push_back(cur);
    }
    if (!line.empty() && line.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

std::string format_g(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

} // namespace

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

FrameRecord to_record(const Frame& f) { return {f.index, f.vis_step, f.orientation, f.position, f.entropy}; }

void write_image(const FrameBuffer& fb, const std::filesystem::path& path)
{
    auto out = open_out(path, true);
    out << "P6\n" << fb.width() << ' ' << fb.height() << "\n255\n";
    out.write(reinterpret_cast<const char*>(fb.rgb().data()), static_cast<std::streamsize>(fb.rgb().size()));
    check_written(out, path);
}

FrameBuffer read_image(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    if (header_token(in) != "P6") {
        throw std::runtime_error(path.string() + " is not a binary PPM");
    }
    const std::size_t w = std::stoul(header_token(in));
    const std::size_t h = std::stoul(header_token(in));
    if (header_token(in) != "255") {
        throw std::runtime_error(path.string() + ": only maxval 255 is supported");
    }
    in.get(); // single whitespace before the raster
    FrameBuffer fb(w, h);
    in.read(reinterpret_cast<char*>(fb.rgb().data()), static_cast<std::streamsize>(fb.rgb().size()));
    if (in.gcount() != static_cast<std::streamsize>(fb.rgb().size())) {
        throw std::runtime_error(path.string() + ": truncated pixel data");
    }
    std::fill(fb.depth().begin(), fb.depth().end(), 0.0f);
    return fb;
}

void write_depth(const FrameBuffer& fb, const std::filesystem::path& path)
{
    auto out = open_out(path, true);
    out << "Pf\n" << fb.width() << ' ' << fb.height() << "\n-1.0\n";
    std::vector<char> bytes;
    bytes.reserve(fb.pixel_count() * 4);
    for (std::size_t row = fb.height(); row-- > 0;) {
        for (std::size_t x = 0; x < fb.width(); ++x) {
            const auto bits = std::bit_cast<std::uint32_t>(fb.depth()[row * fb.width() + x]);
            for (int b = 0; b < 4; ++b) {
                bytes.push_back(static_cast<char>((bits >> (8 * b)) & 0xFF));
            }
        }
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    check_written(out, path);
}

void read_depth(FrameBuffer& fb, const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    if (header_token(in) != "Pf") {
        throw std::runtime_error(path.string() + " is not a greyscale PFM");
    }
    const std::size_t w = std::stoul(header_token(in));
    const std::size_t h = std::stoul(header_token(in));
    if (w != fb.width() || h != fb.height()) {
        throw std::runtime_error(path.string() + ": depth size does not match image");
    }
    if (std::stod(header_token(in)) >= 0.0) {
        throw std::runtime_error(path.string() + ": only little-endian PFM is supported");
    }
    in.get();
    std::vector<unsigned char> bytes(w * h * 4);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
        throw std::runtime_error(path.string() + ": truncated depth data");
    }
    std::size_t i = 0;
    for (std::size_t row = h; row-- > 0;) {
        for (std::size_t x = 0; x < w; ++x, i += 4) {
            const std::uint32_t bits = std::uint32_t(bytes[i]) | std::uint32_t(bytes[i + 1]) << 8 |
                                       std::uint32_t(bytes[i + 2]) << 16 | std::uint32_t(bytes[i + 3]) << 24;
            fb.depth()[row * w + x] = std::bit_cast<float>(bits);
        }
    }
}

void write_heatmap(const Heatmap& hm, const std::filesystem::path& path)
{
    auto out = open_out(path, false);
    for (std::size_t i = 0; i < hm.n_lat; ++i) {
        for (std::size_t j = 0; j < hm.n_lon; ++j) {
            if (j) {
                out << ',';
            }
            out << format_g(hm.at(i, j), 6);
        }
        out << '\n';
    }
    check_written(out, path);
}

Heatmap read_heatmap(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    Heatmap hm;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto cells = split(line, ',');
        if (hm.n_lat == 0) {
            hm.n_lon = cells.size();
        } else if (cells.size() != hm.n_lon) {
            throw std::runtime_error(path.string() + ": ragged heatmap row");
        }
        for (const auto& c : cells) {
            hm.values.push_back(std::stod(c));
        }
        ++hm.n_lat;
    }
    return hm;
}

void write_run_log(const RunLog& log, const ViewpointGrid& grid, const std::filesystem::path& path)
{
    auto out = open_out(path, false);
    for (const FrameRecord& f : log.frames) {
        out << "frame," << f.index << ',' << f.vis_step << ',' << format_number(f.orientation.w) << ','
            << format_number(f.orientation.x) << ',' << format_number(f.orientation.y) << ','
            << format_number(f.orientation.z) << ',' << (f.entropy ? format_number(*f.entropy) : "") << '\n';
    }
    for (const EvaluationRecord& e : log.evaluations) {
        const Viewpoint& vp = grid[e.result.best_index];
        out << "eval," << e.vis_step << ',' << vp.lat_idx << ',' << vp.lon_idx << ','
            << format_number(e.result.best_score) << '\n';
    }
    check_written(out, path);
}

std::vector<FrameRecord> read_run_log_frames(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::vector<FrameRecord> frames;
    std::string line;
    while (std::getline(in, line)) {
        const auto parts = split(line, ',');
        if (parts.empty() || parts[0] != "frame") {
            continue;
        }
        if (parts.size() != 8) {
            throw std::runtime_error(path.string() + ": malformed frame record");
        }
        FrameRecord r;
        r.index = std::stoul(parts[1]);
        r.vis_step = std::stoul(parts[2]);
        r.orientation = {std::stod(parts[3]), std::stod(parts[4]), std::stod(parts[5]), std::stod(parts[6])};
        if (!parts[7].empty()) {
            r.entropy = std::stod(parts[7]);
        }
        frames.push_back(r);
    }
    return frames;
}

std::vector<double> accumulative_distance(const std::vector<FrameRecord>& frames, const BestViewpointTrace& trace,
                                          const ViewpointGrid& grid)
{
    if (frames.size() != trace.size()) {
        throw std::invalid_argument("frame log has " + std::to_string(frames.size()) + " steps, trace has " +
                                    std::to_string(trace.size()));
    }
    std::vector<double> series;
    series.reserve(frames.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].vis_step != trace.vis_steps[i]) {
            throw std::invalid_argument("frame log and trace cover different visualization steps");
        }
        sum += geodesic(frames[i].position, grid[trace.best_index[i]].position, grid.center(), grid.radius());
        series.push_back(sum);
    }
    return series;
}

double average_entropy(const std::vector<FrameRecord>& frames)
{
    if (frames.empty()) {
        throw std::invalid_argument("average entropy of an empty frame log");
    }
    double sum = 0.0;
    for (const FrameRecord& f : frames) {
        if (!f.entropy) {
            throw std::invalid_argument("frame " + std::to_string(f.index) + " has no entropy score");
        }
        sum += *f.entropy;
    }
    return sum / static_cast<double>(frames.size());
}

void write_manifest(const std::vector<std::filesystem::path>& frame_paths, double fps,
                    const std::filesystem::path& path)
{
    auto out = open_out(path, false);
    const auto base = path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path();
    out << "fps=" << format_number(fps) << '\n';
    for (const auto& p : frame_paths) {
        out << std::filesystem::path(p).lexically_proximate(base).generic_string() << '\n';
    }
    check_written(out, path);
}

} // namespace isv
