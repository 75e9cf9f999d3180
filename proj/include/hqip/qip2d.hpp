// Two-dimensional gate experiments on the observer qubit.
//
// Conventional route: frequency-label the inputs during t1, run the gate,
// acquire over t2, Fourier transform both dimensions.
//
// Hadamard route: replace the t1 dimension with k = 2^N encoded acquisitions
// (multi-frequency pi pulse or J-evolution), decode by the matrix transpose,
// and insert the decoded traces at their input frequencies in F1.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "hqip/gates.hpp"
#include "hqip/hadamard.hpp"
#include "hqip/liouville.hpp"
#include "hqip/pulses.hpp"
#include "hqip/specproc.hpp"
#include "hqip/spin_system.hpp"

namespace hqip {

struct AcquisitionParams {
    int n_t2 = 512;
    double dwell = 1e-3;          // seconds, both dimensions
    double linewidth_hz = 1.0;    // exponential apodization
    int zero_fill = 2;

    // defaults matched to the two bundled systems: wide lines need a wide
    // window, the crowded four-spin system a long acquisition
    static AcquisitionParams for_system(const SpinSystem& sys) {
        AcquisitionParams p;
        if (sys.n_work() >= 3) {
            p.n_t2 = 2048;
            p.dwell = 1e-2;
        }
        return p;
    }
};

enum class EncodingMode { MfPulse, JEvolution };

inline std::string to_string(EncodingMode m) {
    return m == EncodingMode::MfPulse ? "mf" : "j";
}

// ---------------------------------------------------------------------------
// conventional method
// ---------------------------------------------------------------------------

struct RawData2D {
    double t1_dwell = 0.0;
    double t2_dwell = 0.0;
    Eigen::MatrixXcd signal;  // n_t1 x n_t2
    int acquisitions() const { return static_cast<int>(signal.rows()); }
};

inline RawData2D run_conventional(const SpinSystem& sys, const Gate& gate, int n_t1,
                                  const AcquisitionParams& p) {
    if (n_t1 < 1) throw std::invalid_argument("run_conventional: need at least one increment");
    const DensityOperator eq = observer_equilibrium(sys);
    const Operator pulse_y = hard_pulse(sys, sys.observer, M_PI / 2.0, M_PI / 2.0);
    const Operator pulse_my = hard_pulse(sys, sys.observer, M_PI / 2.0, -M_PI / 2.0);

    RawData2D raw;
    raw.t1_dwell = p.dwell;
    raw.t2_dwell = p.dwell;
    raw.signal.resize(n_t1, p.n_t2);
    for (int i = 0; i < n_t1; ++i) {
        DensityOperator rho = apply_unitary(eq, pulse_y);
        rho = evolve(rho, sys, i * p.dwell);
        rho = apply_unitary(rho, pulse_my);
        rho = apply_unitary(rho, gate.unitary);
        rho = apply_unitary(rho, pulse_y);
        const TimeSeries fid = synthesize_fid(rho, sys, p.n_t2, p.dwell, p.linewidth_hz);
        for (int n = 0; n < p.n_t2; ++n) raw.signal(i, n) = fid.points[n];
    }
    return raw;
}

// complex transform in both dimensions, then one F2 trace per work label read
// at the F1 bin nearest its input frequency
inline Spectrum2D spectrum2d_from_conventional(const RawData2D& raw, const SpinSystem& sys,
                                               const AcquisitionParams& p) {
    const TransitionTable table = transition_table(sys);
    const int n_t1 = static_cast<int>(raw.signal.rows());
    const int n_t2 = static_cast<int>(raw.signal.cols());

    // F2 transform of every increment
    std::vector<Spectrum1D> f2_rows;
    f2_rows.reserve(n_t1);
    for (int i = 0; i < n_t1; ++i) {
        TimeSeries row{raw.t2_dwell,
                       std::vector<Complex>(raw.signal.row(i).begin(), raw.signal.row(i).end())};
        f2_rows.push_back(spectrum_1d(row, p.zero_fill));
    }
    const int m2 = static_cast<int>(f2_rows.front().size());

    // F1 transform down each column, with matching apodization and zero fill
    const int m1 = n_t1 * p.zero_fill;
    Eigen::MatrixXcd grid(m1, m2);
    std::vector<Complex> column(m1);
    for (int c = 0; c < m2; ++c) {
        std::fill(column.begin(), column.end(), Complex(0, 0));
        for (int i = 0; i < n_t1; ++i)
            column[i] = f2_rows[i].intensity[c] *
                        std::exp(-M_PI * p.linewidth_hz * i * raw.t1_dwell);
        TimeSeries t1_series{raw.t1_dwell, column};
        const Spectrum1D f1 = spectrum_1d(t1_series, 1);
        for (int r = 0; r < m1; ++r) grid(r, c) = f1.intensity[r];
    }

    const double df1 = 1.0 / (m1 * raw.t1_dwell);
    Spectrum2D out;
    out.f2_axis = f2_rows.front().freq_hz;
    for (unsigned s = 0; s < static_cast<unsigned>(table.k()); ++s) {
        const double f1 = table.at(s);
        int bin = static_cast<int>(std::lround(f1 / df1)) + m1 / 2;
        bin = std::clamp(bin, 0, m1 - 1);
        Spectrum2D::Row row;
        row.label = s;
        row.f1_hz = f1;
        row.intensity.assign(grid.row(bin).begin(), grid.row(bin).end());
        out.rows.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hadamard method
// ---------------------------------------------------------------------------

struct EncodedRow {
    int index = 0;
    std::vector<unsigned> pulse_targets;
    std::vector<int> product_operator_tag;
    int decode_sign = 1;  // -1 when the prepared pattern is the row's negation
};

struct HadamardGateRun {
    int k = 0;
    EncodingMode mode = EncodingMode::MfPulse;
    std::vector<unsigned> label_order;
    std::vector<EncodedRow> rows;
    std::vector<TimeSeries> fids;
    AcquisitionParams params;
    int acquisitions() const { return static_cast<int>(fids.size()); }
};

inline HadamardGateRun run_hadamard_2d(const SpinSystem& sys, const Gate& gate,
                                       const AcquisitionParams& p, EncodingMode mode) {
    const TransitionTable table = transition_table(sys);
    const int k = table.k();
    const HadamardMatrix h = hadamard_matrix(k);
    const DensityOperator eq = observer_equilibrium(sys);
    const Operator read_pulse = hard_pulse(sys, sys.observer, M_PI / 2.0, M_PI / 2.0);

    HadamardGateRun run;
    run.k = k;
    run.mode = mode;
    run.params = p;
    run.label_order = counting_label_order(k);

    for (int r = 0; r < k; ++r) {
        const HadamardSchedule sched = schedule_for_row(h, r, run.label_order, sys.n_work());
        const Operator enc = (mode == EncodingMode::MfPulse)
                                 ? mf_pi_pulse(sys, table, sched.pulse_targets)
                                 : j_evolution_encoding(sys, sched.product_operator_tag);
        DensityOperator rho = apply_unitary(eq, enc);

        // the J-evolution recipes fix pulse phases, so the prepared product
        // operator may be the negated row; normalize at decode time
        EncodedRow row{r, sched.pulse_targets, sched.product_operator_tag, 1};
        const std::vector<double> eps = observer_pattern(rho, sys);
        double plus = 0.0, minus = 0.0;
        for (int c = 0; c < k; ++c) {
            plus = std::max(plus, std::abs(eps[run.label_order[c]] - h.at(r, c)));
            minus = std::max(minus, std::abs(eps[run.label_order[c]] + h.at(r, c)));
        }
        if (plus < 1e-9) {
            row.decode_sign = 1;
        } else if (minus < 1e-9) {
            row.decode_sign = -1;
        } else {
            throw std::runtime_error("encoding row " + std::to_string(r) +
                                     " did not produce a clean sign pattern");
        }

        rho = apply_unitary(rho, gate.unitary);
        rho = apply_unitary(rho, read_pulse);
        run.fids.push_back(synthesize_fid(rho, sys, p.n_t2, p.dwell, p.linewidth_hz));
        run.rows.push_back(std::move(row));
    }
    return run;
}

// transpose decode of the recorded composite responses, one trace per input
inline std::map<unsigned, TimeSeries> decode_gate_run(const HadamardGateRun& run) {
    const HadamardMatrix h = hadamard_matrix(run.k);
    std::vector<std::vector<Complex>> responses;
    responses.reserve(run.k);
    for (int j = 0; j < run.k; ++j) {
        std::vector<Complex> r = run.fids[j].points;
        if (run.rows[j].decode_sign < 0)
            for (auto& v : r) v = -v;
        responses.push_back(std::move(r));
    }
    std::map<unsigned, TimeSeries> decoded;
    for (int i = 0; i < run.k; ++i) {
        TimeSeries ts;
        ts.dwell = run.fids.front().dwell;
        ts.points = decode(responses, h, i);
        decoded[run.label_order[i]] = std::move(ts);
    }
    return decoded;
}

// decoded traces transformed in F2 and inserted at their input frequencies
inline Spectrum2D assemble_2d(const std::map<unsigned, TimeSeries>& decoded,
                              const TransitionTable& table, int zero_fill = 2) {
    Spectrum2D out;
    for (unsigned s = 0; s < static_cast<unsigned>(table.k()); ++s) {
        const auto it = decoded.find(s);
        if (it == decoded.end())
            throw std::invalid_argument("assemble_2d: missing decoded trace for input " +
                                        label_string(s, table.n_work));
        const Spectrum1D f2 = spectrum_1d(it->second, zero_fill);
        if (out.f2_axis.empty()) out.f2_axis = f2.freq_hz;
        if (f2.freq_hz.size() != out.f2_axis.size())
            throw std::invalid_argument("assemble_2d: decoded traces differ in length");
        out.rows.push_back({s, table.at(s), f2.intensity});
    }
    return out;
}

// ---------------------------------------------------------------------------
// correlation readout
// ---------------------------------------------------------------------------

struct CorrelationMap {
    struct Pair {
        unsigned input = 0;
        unsigned output = 0;
        double peak_hz = 0.0;
        double intensity = 0.0;
    };
    std::vector<Pair> pairs;
    bool is_permutation = false;

    std::vector<unsigned> permutation() const {
        std::vector<unsigned> p(pairs.size());
        for (const auto& e : pairs) p[e.input] = e.output;
        return p;
    }
};

// one peak per row above threshold * global max, assigned to the nearest
// transition frequency
inline CorrelationMap correlation_map(const Spectrum2D& spec, const TransitionTable& table,
                                      double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("correlation_map: threshold must lie in (0,1)");
    double global_max = 0.0;
    for (const auto& row : spec.rows)
        for (const auto& v : row.intensity) global_max = std::max(global_max, std::abs(v));
    if (global_max <= 0.0) throw std::runtime_error("correlation_map: empty spectrum");

    CorrelationMap map;
    for (const auto& row : spec.rows) {
        Spectrum1D trace;
        trace.freq_hz = spec.f2_axis;
        trace.intensity = row.intensity;
        std::vector<Peak> peaks = pick_peaks(trace, threshold);
        // retain only peaks above the global threshold
        std::erase_if(peaks, [&](const Peak& p) { return p.magnitude < threshold * global_max; });
        if (peaks.size() != 1)
            throw std::runtime_error(
                "correlation_map: input row " + label_string(row.label, table.n_work) +
                " shows " + std::to_string(peaks.size()) + " peaks above threshold");
        map.pairs.push_back(
            {row.label, table.nearest(peaks[0].freq_hz), peaks[0].freq_hz, peaks[0].magnitude});
    }
    std::vector<bool> seen(table.k(), false);
    map.is_permutation = true;
    for (const auto& e : map.pairs) {
        if (seen[e.output]) map.is_permutation = false;
        seen[e.output] = true;
    }
    return map;
}

}  // namespace hqip
