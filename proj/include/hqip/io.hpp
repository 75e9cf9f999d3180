// File formats: two-column spectrum CSV, row-labeled 2D grid CSV, a compact
// binary cache for raw series, and JSON manifests carrying a config hash so
// reruns with identical settings are byte-identical.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqip/specproc.hpp"
#include "hqip/spin_system.hpp"

namespace hqip {

inline uint64_t fnv1a64(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string config_hash(const nlohmann::json& config) {
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(config.dump());
    return hex.str();
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

inline std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

inline std::ifstream open_in(const std::filesystem::path& path, bool binary = false) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return in;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

inline nlohmann::json read_json(const std::filesystem::path& path) {
    auto in = open_in(path);
    nlohmann::json j;
    in >> j;
    return j;
}

// two-column (Hz, intensity) CSV; intensity is the real part
inline void write_spectrum_csv(const std::filesystem::path& path, const Spectrum1D& spec) {
    auto out = open_out(path);
    out << "freq_hz,intensity\n";
    for (size_t i = 0; i < spec.size(); ++i)
        out << format_double(spec.freq_hz[i]) << "," << format_double(spec.intensity[i].real())
            << "\n";
}

// (t, re, im) CSV for a raw acquisition
inline void write_fid_csv(const std::filesystem::path& path, const TimeSeries& fid) {
    auto out = open_out(path);
    out << "t_s,re,im\n";
    for (size_t n = 0; n < fid.points.size(); ++n)
        out << format_double(n * fid.dwell) << "," << format_double(fid.points[n].real()) << ","
            << format_double(fid.points[n].imag()) << "\n";
}

inline TimeSeries read_fid_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    std::getline(in, line);  // header
    TimeSeries fid;
    std::vector<double> times;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string t, re, im;
        if (!std::getline(ls, t, ',') || !std::getline(ls, re, ',') || !std::getline(ls, im))
            throw std::runtime_error("malformed FID row in " + path.string());
        times.push_back(std::stod(t));
        fid.points.emplace_back(std::stod(re), std::stod(im));
    }
    if (times.size() < 2) throw std::runtime_error("FID too short in " + path.string());
    fid.dwell = times[1] - times[0];
    return fid;
}

// row-labeled magnitude grid: label, f1_hz, then one column per F2 bin
inline void write_grid_csv(const std::filesystem::path& path, const Spectrum2D& spec) {
    int bits = 0;
    while ((1u << bits) < spec.rows.size()) ++bits;
    auto out = open_out(path);
    out << "label,f1_hz";
    for (double f : spec.f2_axis) out << "," << format_double(f);
    out << "\n";
    for (const auto& row : spec.rows) {
        out << label_string(row.label, bits) << "," << format_double(row.f1_hz);
        for (const auto& v : row.intensity) out << "," << format_double(std::abs(v));
        out << "\n";
    }
}

// compact binary cache: magic, dims, raw doubles
inline void write_doubles_bin(const std::filesystem::path& path,
                              const std::vector<double>& data) {
    auto out = open_out(path, true);
    const char magic[8] = {'H', 'Q', 'B', 'I', 'N', '0', '0', '1'};
    out.write(magic, 8);
    const uint64_t n = data.size();
    out.write(reinterpret_cast<const char*>(&n), sizeof(n));
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(n * sizeof(double)));
}

inline std::vector<double> read_doubles_bin(const std::filesystem::path& path) {
    auto in = open_in(path, true);
    char magic[8];
    in.read(magic, 8);
    if (std::string(magic, 8) != "HQBIN001")
        throw std::runtime_error("bad binary cache: " + path.string());
    uint64_t n = 0;
    in.read(reinterpret_cast<char*>(&n), sizeof(n));
    std::vector<double> data(n);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw std::runtime_error("truncated binary cache: " + path.string());
    return data;
}

}  // namespace hqip
