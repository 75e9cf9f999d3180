// Binary information storage on a gradient-encoded slice register and the
// parallel XOR search.
//
// 256 sample slices map to 256 equally spaced frequencies. One acquisition
// per Hadamard row excites every slice with phase y or -y; the stored set of
// composite spectra can later be decoded into any bit pattern (a written
// sentence, or a repeated-letter ancilla). The per-cipher integral of the
// absolute difference spectrum equals the Hamming distance between cipher and
// query code: 0 flags the letter, 5 its bitwise complement.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqip/hadamard.hpp"
#include "hqip/io.hpp"
#include "hqip/specproc.hpp"

namespace hqip {

inline constexpr int kBitsPerCipher = 5;

// ---------------------------------------------------------------------------
// slice register
// ---------------------------------------------------------------------------

struct SliceRegister {
    int n_slices = 256;
    double spacing_hz = 50.0;          // uniform grid under the nominal gradient
    double lorentz_fwhm_hz = 1.0;      // per-slice lineshape width
    int bins_per_slice = 32;           // spectral bins covering one slice band
    double gradient_gauss_per_cm = 25.0;  // hardware metadata
    double pulse_duration_s = 0.030;      // hardware metadata

    int n_axis() const { return n_slices * bins_per_slice; }
    double bin_width() const { return spacing_hz / bins_per_slice; }
    double axis_start() const { return -0.5 * n_slices * spacing_hz; }

    std::vector<double> axis() const {
        std::vector<double> f(n_axis());
        for (int i = 0; i < n_axis(); ++i) f[i] = axis_start() + i * bin_width();
        return f;
    }

    // slice centers sit mid-band, on the bin grid
    double slice_center(int j) const { return axis_start() + (j + 0.5) * spacing_hz; }

    int slice_center_bin(int j) const { return j * bins_per_slice + bins_per_slice / 2; }

    // bin index range [first, last] of slice j's integration band
    std::pair<int, int> band_bins(int j) const {
        return {j * bins_per_slice, (j + 1) * bins_per_slice - 1};
    }

    std::pair<double, double> band_hz(int j) const {
        const auto [lo, hi] = band_bins(j);
        return {axis_start() + lo * bin_width(), axis_start() + hi * bin_width()};
    }
};

namespace detail {

inline double lorentz(double offset_hz, double fwhm_hz) {
    const double g = 0.5 * fwhm_hz;  // half width
    return g * g / (g * g + offset_hz * offset_hz);
}

// unit-height lineshape tabulated over signed bin offsets from a slice
// center: profile[d + n_axis] = L(d * bin_width), d in [-n_axis, n_axis)
inline std::vector<double> offset_profile(const SliceRegister& reg) {
    const int n = reg.n_axis();
    std::vector<double> prof(2 * n);
    for (int d = -n; d < n; ++d)
        prof[d + n] = lorentz(d * reg.bin_width(), reg.lorentz_fwhm_hz);
    return prof;
}

}  // namespace detail

// integral of one slice's own band for a unit-amplitude line; defines the
// intensity unit for every report
inline double calibration_constant(const SliceRegister& reg) {
    const std::vector<double> prof = detail::offset_profile(reg);
    const int n = reg.n_axis();
    const int center = reg.slice_center_bin(0);
    const auto [lo, hi] = reg.band_bins(0);
    double acc = 0.0;
    for (int i = lo; i <= hi; ++i) acc += prof[i - center + n];
    return acc;
}

// ---------------------------------------------------------------------------
// acquisition
// ---------------------------------------------------------------------------

// one Hadamard-encoded acquisition: every slice contributes its lineshape
// with the scheduled sign (+x or -x magnetization)
inline Spectrum1D acquire_encoded(const SliceRegister& reg, const std::vector<int>& signs,
                                  double noise_sigma = 0.0, std::mt19937_64* rng = nullptr) {
    if (static_cast<int>(signs.size()) != reg.n_slices)
        throw std::invalid_argument("acquire_encoded: schedule length != slice count");
    const std::vector<double> prof = detail::offset_profile(reg);
    const int n = reg.n_axis();
    std::vector<double> acc(n, 0.0);
    for (int j = 0; j < reg.n_slices; ++j) {
        const int center = reg.slice_center_bin(j);
        const double w = static_cast<double>(signs[j]);
        const double* shifted = prof.data() + n - center;
        for (int i = 0; i < n; ++i) acc[i] += w * shifted[i];
    }
    if (noise_sigma > 0.0) {
        if (!rng) throw std::invalid_argument("acquire_encoded: noise needs a generator");
        std::normal_distribution<double> dist(0.0, noise_sigma);
        for (auto& v : acc) v += dist(*rng);
    }
    Spectrum1D spec;
    spec.freq_hz = reg.axis();
    spec.intensity.reserve(n);
    for (double v : acc) spec.intensity.emplace_back(v, 0.0);
    return spec;
}

// '+' -> y, '-' -> -y
inline std::vector<std::string> phase_schedule(const HadamardMatrix& h, int row) {
    if (row < 0 || row >= h.k) throw std::invalid_argument("phase_schedule: bad row");
    std::vector<std::string> phases(h.k);
    for (int c = 0; c < h.k; ++c) phases[c] = h.at(row, c) > 0 ? "y" : "-y";
    return phases;
}

// ---------------------------------------------------------------------------
// recorded dataset
// ---------------------------------------------------------------------------

struct EncodedDataset {
    SliceRegister reg;
    Eigen::MatrixXd spectra;  // k x n_axis, one row per Hadamard row
    double calibration = 0.0;
    double noise_sigma = 0.0;
    uint64_t seed = 0;

    int k() const { return reg.n_slices; }
};

inline EncodedDataset record_hadamard_dataset(const SliceRegister& reg,
                                              double noise_sigma = 0.0, uint64_t seed = 0) {
    if (!is_power_of_two(static_cast<unsigned>(reg.n_slices)))
        throw std::invalid_argument("slice count must be a power of two");
    const HadamardMatrix h = hadamard_matrix(reg.n_slices);
    EncodedDataset ds;
    ds.reg = reg;
    ds.noise_sigma = noise_sigma;
    ds.seed = seed;
    ds.calibration = calibration_constant(reg);
    ds.spectra.resize(reg.n_slices, reg.n_axis());
    std::mt19937_64 rng(seed);
    std::vector<int> signs(reg.n_slices);
    for (int r = 0; r < reg.n_slices; ++r) {
        for (int c = 0; c < reg.n_slices; ++c) signs[c] = h.at(r, c);
        const Spectrum1D spec =
            acquire_encoded(reg, signs, noise_sigma, noise_sigma > 0 ? &rng : nullptr);
        for (int i = 0; i < reg.n_axis(); ++i) ds.spectra(r, i) = spec.intensity[i].real();
    }
    return ds;
}

// ---------------------------------------------------------------------------
// messages
// ---------------------------------------------------------------------------

struct BinaryMessage {
    std::string text;
    std::vector<int> bits;  // 5 per letter, most significant first

    int n_ciphers() const { return static_cast<int>(bits.size()) / kBitsPerCipher; }
};

// ordinal cipher code: space = 0, a = 1 ... z = 26
inline unsigned cipher_code(char c) {
    if (c == ' ') return 0;
    if (c >= 'a' && c <= 'z') return static_cast<unsigned>(c - 'a' + 1);
    throw std::invalid_argument(std::string("unsupported character '") + c + "'");
}

inline BinaryMessage encode_message(const std::string& text, int n_slices = 256) {
    if (static_cast<int>(text.size()) * kBitsPerCipher > n_slices)
        throw std::invalid_argument("message does not fit the slice register");
    BinaryMessage msg;
    msg.text = text;
    msg.bits.reserve(text.size() * kBitsPerCipher);
    for (char c : text) {
        const unsigned code = cipher_code(c);
        for (int b = kBitsPerCipher - 1; b >= 0; --b)
            msg.bits.push_back(static_cast<int>((code >> b) & 1u));
    }
    return msg;
}

inline BinaryMessage ancilla_pattern(char letter, int n_ciphers, int n_slices = 256) {
    if (letter < 'a' || letter > 'z')
        throw std::invalid_argument("ancilla pattern needs a letter a-z");
    if (n_ciphers < 1 || n_ciphers * kBitsPerCipher > n_slices)
        throw std::invalid_argument("ancilla pattern does not fit the slice register");
    BinaryMessage msg;
    msg.text = std::string(n_ciphers, letter);
    const unsigned code = cipher_code(letter);
    for (int c = 0; c < n_ciphers; ++c)
        for (int b = kBitsPerCipher - 1; b >= 0; --b)
            msg.bits.push_back(static_cast<int>((code >> b) & 1u));
    return msg;
}

// linear combination of the stored spectra reconstructing unit intensity at
// bit=1 slices and zero elsewhere
inline Spectrum1D write_message(const EncodedDataset& ds, const BinaryMessage& msg) {
    const int k = ds.k();
    if (static_cast<int>(msg.bits.size()) > k)
        throw std::invalid_argument("write_message: message overflows the register");
    const HadamardMatrix h = hadamard_matrix(k);

    // decode weight per row: sum over set slices of H[row][slice]
    std::vector<double> weight(k, 0.0);
    for (int j = 0; j < static_cast<int>(msg.bits.size()); ++j) {
        if (!msg.bits[j]) continue;
        for (int r = 0; r < k; ++r) weight[r] += h.at(r, j);
    }
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(ds.reg.n_axis());
    for (int r = 0; r < k; ++r)
        if (weight[r] != 0.0) acc += (weight[r] / k) * ds.spectra.row(r).transpose();

    Spectrum1D spec;
    spec.freq_hz = ds.reg.axis();
    spec.intensity.reserve(acc.size());
    for (int i = 0; i < acc.size(); ++i) spec.intensity.emplace_back(acc(i), 0.0);
    spec.metadata["text"] = msg.text;
    return spec;
}

// thresholded read-back of the first n_bits slices
inline std::vector<int> read_bits(const EncodedDataset& ds, const Spectrum1D& spec,
                                  int n_bits, double threshold = 0.5) {
    std::vector<int> bits(n_bits);
    for (int j = 0; j < n_bits; ++j) {
        const auto [lo, hi] = ds.reg.band_hz(j);
        const double v = integrate_band(spec, lo, hi, BandMode::Signed) / ds.calibration;
        bits[j] = v >= threshold ? 1 : 0;
    }
    return bits;
}

// ---------------------------------------------------------------------------
// XOR search
// ---------------------------------------------------------------------------

struct CipherReport {
    std::vector<double> intensities;   // per cipher, in single-bit units
    std::vector<int> matches;          // intensity <= match threshold
    std::vector<int> complements;      // intensity >= complement threshold
    double match_threshold = 0.25;
    double complement_threshold = 4.75;
};

inline CipherReport xor_search(const EncodedDataset& ds, const Spectrum1D& sentence,
                               const Spectrum1D& ancilla, int n_ciphers) {
    if (sentence.size() != ancilla.size() || sentence.freq_hz != ancilla.freq_hz)
        throw std::invalid_argument("xor_search: spectra live on different axes");
    if (n_ciphers * kBitsPerCipher > ds.reg.n_slices)
        throw std::invalid_argument("xor_search: cipher count exceeds the register");

    Spectrum1D diff;
    diff.freq_hz = sentence.freq_hz;
    diff.intensity.resize(sentence.size());
    for (size_t i = 0; i < sentence.size(); ++i)
        diff.intensity[i] = sentence.intensity[i] - ancilla.intensity[i];

    CipherReport report;
    for (int c = 0; c < n_ciphers; ++c) {
        double acc = 0.0;
        for (int b = 0; b < kBitsPerCipher; ++b) {
            const auto [lo, hi] = ds.reg.band_hz(c * kBitsPerCipher + b);
            acc += integrate_band(diff, lo, hi, BandMode::Absolute);
        }
        report.intensities.push_back(acc / ds.calibration);
    }
    for (int c = 0; c < n_ciphers; ++c) {
        if (report.intensities[c] <= report.match_threshold) report.matches.push_back(c);
        if (report.intensities[c] >= report.complement_threshold)
            report.complements.push_back(c);
    }
    return report;
}

// ---------------------------------------------------------------------------
// persistence: manifest + one numbered series file per row
// ---------------------------------------------------------------------------

inline nlohmann::json dataset_manifest(const EncodedDataset& ds) {
    nlohmann::json j;
    j["kind"] = "mem_dataset";
    j["n_slices"] = ds.reg.n_slices;
    j["spacing_hz"] = ds.reg.spacing_hz;
    j["lorentz_fwhm_hz"] = ds.reg.lorentz_fwhm_hz;
    j["bins_per_slice"] = ds.reg.bins_per_slice;
    j["gradient_gauss_per_cm"] = ds.reg.gradient_gauss_per_cm;
    j["pulse_duration_s"] = ds.reg.pulse_duration_s;
    j["calibration"] = ds.calibration;
    j["noise_sigma"] = ds.noise_sigma;
    j["seed"] = ds.seed;
    j["hadamard_k"] = ds.reg.n_slices;
    j["config_hash"] = config_hash(j);
    return j;
}

inline void save_dataset(const EncodedDataset& ds, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_json(dir / "manifest.json", dataset_manifest(ds));
    std::vector<double> row(ds.reg.n_axis());
    for (int r = 0; r < ds.k(); ++r) {
        for (int i = 0; i < ds.reg.n_axis(); ++i) row[i] = ds.spectra(r, i);
        char name[32];
        std::snprintf(name, sizeof(name), "row_%03d.bin", r);
        write_doubles_bin(dir / name, row);
    }
}

inline EncodedDataset load_dataset(const std::filesystem::path& dir) {
    const nlohmann::json j = read_json(dir / "manifest.json");
    if (j.value("kind", "") != "mem_dataset")
        throw std::runtime_error("not a memory dataset: " + dir.string());
    EncodedDataset ds;
    ds.reg.n_slices = j.at("n_slices").get<int>();
    ds.reg.spacing_hz = j.at("spacing_hz").get<double>();
    ds.reg.lorentz_fwhm_hz = j.at("lorentz_fwhm_hz").get<double>();
    ds.reg.bins_per_slice = j.at("bins_per_slice").get<int>();
    ds.reg.gradient_gauss_per_cm = j.at("gradient_gauss_per_cm").get<double>();
    ds.reg.pulse_duration_s = j.at("pulse_duration_s").get<double>();
    ds.calibration = j.at("calibration").get<double>();
    ds.noise_sigma = j.at("noise_sigma").get<double>();
    ds.seed = j.at("seed").get<uint64_t>();
    ds.spectra.resize(ds.k(), ds.reg.n_axis());
    for (int r = 0; r < ds.k(); ++r) {
        char name[32];
        std::snprintf(name, sizeof(name), "row_%03d.bin", r);
        const std::vector<double> row = read_doubles_bin(dir / name);
        if (static_cast<int>(row.size()) != ds.reg.n_axis())
            throw std::runtime_error("row length mismatch in " + dir.string());
        for (int i = 0; i < ds.reg.n_axis(); ++i) ds.spectra(r, i) = row[i];
    }
    return ds;
}

}  // namespace hqip
