// Time-domain synthesis and Fourier processing.
//
// Detection convention: quadrature observer signal
//   s(t) = Tr(rho(t) (I_x^O + i I_y^O)) * exp(-pi * linewidth * t)
// which reduces to a sum over observer single-quantum coherences, one complex
// tone per work label. Spectra use a forward DFT with a centered axis.

#pragma once

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqip/liouville.hpp"
#include "hqip/spin_system.hpp"

namespace hqip {

struct TimeSeries {
    double dwell = 0.0;  // seconds
    std::vector<Complex> points;
};

struct Spectrum1D {
    std::vector<double> freq_hz;      // strictly increasing
    std::vector<Complex> intensity;   // same length
    std::map<std::string, std::string> metadata;

    size_t size() const { return freq_hz.size(); }
    double bin_width() const {
        return freq_hz.size() > 1 ? freq_hz[1] - freq_hz[0] : 0.0;
    }
};

// rows indexed by work label at synthetic F1 positions, complex F2 traces
struct Spectrum2D {
    struct Row {
        unsigned label = 0;
        double f1_hz = 0.0;
        std::vector<Complex> intensity;
    };
    std::vector<Row> rows;
    std::vector<double> f2_axis;
};

// ---------------------------------------------------------------------------
// synthesis
// ---------------------------------------------------------------------------

inline TimeSeries synthesize_fid(const DensityOperator& rho, const SpinSystem& sys,
                                 int n_points, double dwell, double linewidth_hz) {
    if (n_points < 1 || dwell <= 0) throw std::invalid_argument("synthesize_fid: bad grid");
    if (linewidth_hz < 0) throw std::invalid_argument("synthesize_fid: negative linewidth");

    // observer single-quantum tones: amplitude rho[(1,s),(0,s)] at omega_s
    const TransitionTable table = transition_table(sys);
    std::vector<std::pair<double, Complex>> tones;
    for (unsigned s = 0; s < static_cast<unsigned>(table.k()); ++s) {
        const Complex amp = rho.mat()(full_index(sys, 1, s), full_index(sys, 0, s));
        if (std::abs(amp) > 0.0) tones.emplace_back(table.at(s), amp);
    }

    TimeSeries fid;
    fid.dwell = dwell;
    fid.points.resize(n_points);
    for (int n = 0; n < n_points; ++n) {
        const double t = n * dwell;
        Complex v(0.0, 0.0);
        for (const auto& [freq, amp] : tones)
            v += amp * std::polar(1.0, 2.0 * M_PI * freq * t);
        fid.points[n] = v * std::exp(-M_PI * linewidth_hz * t);
    }
    return fid;
}

// ---------------------------------------------------------------------------
// transforms
// ---------------------------------------------------------------------------

inline std::vector<Complex> dft_forward(std::vector<Complex> data) {
    const int n = static_cast<int>(data.size());
    std::vector<Complex> out(n);
    fftw_plan plan = fftw_plan_dft_1d(
        n, reinterpret_cast<fftw_complex*>(data.data()),
        reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

// centered axis spanning [-1/(2 dwell), +1/(2 dwell)); optional zero fill
// multiplies the number of bins
inline Spectrum1D spectrum_1d(const TimeSeries& fid, int zero_fill = 1) {
    if (fid.points.empty()) throw std::invalid_argument("spectrum_1d: empty series");
    if (zero_fill < 1) throw std::invalid_argument("spectrum_1d: bad zero-fill factor");

    std::vector<Complex> padded(fid.points.size() * zero_fill, Complex(0, 0));
    std::copy(fid.points.begin(), fid.points.end(), padded.begin());
    const std::vector<Complex> raw = dft_forward(std::move(padded));

    const int m = static_cast<int>(raw.size());
    const double df = 1.0 / (m * fid.dwell);
    Spectrum1D spec;
    spec.freq_hz.resize(m);
    spec.intensity.resize(m);
    for (int i = 0; i < m; ++i) {
        const int q = i - m / 2;                 // signed frequency index
        spec.freq_hz[i] = q * df;
        spec.intensity[i] = raw[(q + m) % m];
    }
    return spec;
}

// ---------------------------------------------------------------------------
// peaks and bands
// ---------------------------------------------------------------------------

struct Peak {
    double freq_hz = 0.0;
    double magnitude = 0.0;
};

// local magnitude maxima above threshold*max, refined by 3-point quadratic
// interpolation
inline std::vector<Peak> pick_peaks(const Spectrum1D& spec, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("pick_peaks: threshold must lie in (0,1)");
    const int n = static_cast<int>(spec.size());
    std::vector<double> mag(n);
    for (int i = 0; i < n; ++i) mag[i] = std::abs(spec.intensity[i]);
    const double top = *std::max_element(mag.begin(), mag.end());
    std::vector<Peak> peaks;
    if (top <= 0.0) return peaks;

    const double floor = threshold * top;
    for (int i = 1; i + 1 < n; ++i) {
        if (mag[i] < floor) continue;
        if (!(mag[i] > mag[i - 1] && mag[i] >= mag[i + 1])) continue;
        const double denom = mag[i - 1] - 2.0 * mag[i] + mag[i + 1];
        double delta = 0.0;
        if (denom < 0.0) delta = 0.5 * (mag[i - 1] - mag[i + 1]) / denom;
        delta = std::clamp(delta, -0.5, 0.5);
        peaks.push_back({spec.freq_hz[i] + delta * spec.bin_width(),
                         mag[i] - 0.25 * (mag[i - 1] - mag[i + 1]) * delta});
    }
    return peaks;
}

enum class BandMode { Signed, Absolute };

// sum of real intensities over bins with lo <= f <= hi
inline double integrate_band(const Spectrum1D& spec, double lo, double hi, BandMode mode) {
    if (!(lo < hi)) throw std::invalid_argument("integrate_band: lo must be below hi");
    double acc = 0.0;
    size_t used = 0;
    for (size_t i = 0; i < spec.size(); ++i) {
        if (spec.freq_hz[i] < lo || spec.freq_hz[i] > hi) continue;
        const double v = spec.intensity[i].real();
        acc += (mode == BandMode::Absolute) ? std::abs(v) : v;
        ++used;
    }
    if (used == 0) throw std::invalid_argument("integrate_band: band holds no bins");
    return acc;
}

inline double parseval_ratio(const TimeSeries& fid, const Spectrum1D& spec) {
    double et = 0.0, ef = 0.0;
    for (const auto& v : fid.points) et += std::norm(v);
    for (const auto& v : spec.intensity) ef += std::norm(v);
    return et / (ef / static_cast<double>(spec.size()));
}

}  // namespace hqip
