// Weakly coupled spin-1/2 systems: offsets, scalar couplings, and the
// observer-transition table that maps work-qubit basis states to line
// frequencies.
//
// Conventions used throughout the library:
//   * spin 0..N, one of them designated the observer; spin 0 is the most
//     significant bit of the Zeeman product basis index.
//   * magnetic quantum number m = +1/2 for bit 0, -1/2 for bit 1.
//   * all frequencies in Hz; angular conversion happens at evolution time.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hqip {

inline constexpr double kDegeneracyTolHz = 1e-9;

struct SpinSystem {
    int n_spins = 0;                 // N+1 including the observer
    int observer = 0;                // index of the observer spin
    Eigen::VectorXd shifts_hz;       // offset frequency of each spin
    Eigen::MatrixXd couplings_hz;    // symmetric, zero diagonal

    int n_work() const { return n_spins - 1; }
    int dim() const { return 1 << n_spins; }

    // work qubits are numbered 1..N in ascending spin order, skipping the
    // observer; returns the spin index of work qubit q
    int work_spin(int q) const {
        if (q < 1 || q > n_work())
            throw std::invalid_argument("work qubit index out of range");
        int count = 0;
        for (int s = 0; s < n_spins; ++s) {
            if (s == observer) continue;
            if (++count == q) return s;
        }
        throw std::logic_error("unreachable");
    }
};

// ---------------------------------------------------------------------------
// basis bookkeeping
// ---------------------------------------------------------------------------

// m quantum number for a basis bit
inline double m_of_bit(int bit) { return bit == 0 ? 0.5 : -0.5; }

// bit of spin `s` within a full basis-state index (spin 0 = MSB)
inline int spin_bit(unsigned index, int spin, int n_spins) {
    return (index >> (n_spins - 1 - spin)) & 1u;
}

// full basis index from observer bit + work label (work bits keep their
// ascending spin order, observer bit inserted at its spin position)
inline unsigned full_index(const SpinSystem& sys, int observer_bit, unsigned work_label) {
    unsigned idx = 0;
    int q = 0;  // work bits consumed, most significant first
    for (int s = 0; s < sys.n_spins; ++s) {
        int bit;
        if (s == sys.observer) {
            bit = observer_bit;
        } else {
            bit = (work_label >> (sys.n_work() - 1 - q)) & 1u;
            ++q;
        }
        idx = (idx << 1) | static_cast<unsigned>(bit);
    }
    return idx;
}

inline std::string label_string(unsigned value, int bits) {
    std::string s(bits, '0');
    for (int i = 0; i < bits; ++i)
        if ((value >> (bits - 1 - i)) & 1u) s[i] = '1';
    return s;
}

inline unsigned parse_label(const std::string& s) {
    unsigned v = 0;
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("bad basis label: " + s);
        v = (v << 1) | static_cast<unsigned>(c - '0');
    }
    return v;
}

// ---------------------------------------------------------------------------
// construction and validation
// ---------------------------------------------------------------------------

inline SpinSystem build_spin_system(const std::vector<double>& shifts_hz,
                                    const std::vector<std::vector<double>>& couplings_hz,
                                    int observer_index) {
    const int n = static_cast<int>(shifts_hz.size());
    if (n < 1) throw std::invalid_argument("spin system needs at least one spin");
    if (static_cast<int>(couplings_hz.size()) != n)
        throw std::invalid_argument("coupling matrix dimension != number of spins");
    if (observer_index < 0 || observer_index >= n)
        throw std::invalid_argument("observer index out of range");

    SpinSystem sys;
    sys.n_spins = n;
    sys.observer = observer_index;
    sys.shifts_hz = Eigen::Map<const Eigen::VectorXd>(shifts_hz.data(), n);
    sys.couplings_hz.resize(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(couplings_hz[i].size()) != n)
            throw std::invalid_argument("coupling matrix is not square");
        for (int j = 0; j < n; ++j) sys.couplings_hz(i, j) = couplings_hz[i][j];
    }
    for (int i = 0; i < n; ++i) {
        if (sys.couplings_hz(i, i) != 0.0)
            throw std::invalid_argument("coupling matrix must have zero diagonal");
        for (int j = i + 1; j < n; ++j)
            if (sys.couplings_hz(i, j) != sys.couplings_hz(j, i))
                throw std::invalid_argument("coupling matrix is not symmetric");
    }
    return sys;
}

// diagonal of H/(2*pi) in Hz over the Zeeman product basis:
//   sum_i nu_i m_i + sum_{i<j} J_ij m_i m_j
inline Eigen::VectorXd hamiltonian_diagonal(const SpinSystem& sys) {
    const int d = sys.dim();
    Eigen::VectorXd diag(d);
    for (unsigned a = 0; a < static_cast<unsigned>(d); ++a) {
        double e = 0.0;
        for (int i = 0; i < sys.n_spins; ++i) {
            const double mi = m_of_bit(spin_bit(a, i, sys.n_spins));
            e += sys.shifts_hz(i) * mi;
            for (int j = i + 1; j < sys.n_spins; ++j)
                e += sys.couplings_hz(i, j) * mi * m_of_bit(spin_bit(a, j, sys.n_spins));
        }
        diag(a) = e;
    }
    return diag;
}

inline Eigen::MatrixXcd hamiltonian(const SpinSystem& sys) {
    return hamiltonian_diagonal(sys).cast<std::complex<double>>().asDiagonal();
}

// ---------------------------------------------------------------------------
// observer transition table
// ---------------------------------------------------------------------------

struct TransitionTable {
    int n_work = 0;
    std::vector<double> freq_hz;  // indexed by work label in counting order

    int k() const { return 1 << n_work; }
    double at(unsigned work_label) const { return freq_hz.at(work_label); }
    double at(const std::string& label) const { return freq_hz.at(parse_label(label)); }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(freq_hz.size());
        for (unsigned s = 0; s < freq_hz.size(); ++s)
            out.push_back(label_string(s, n_work));
        return out;
    }

    // (frequency, label) pairs in ascending frequency
    std::vector<std::pair<double, unsigned>> sorted_by_frequency() const {
        std::vector<std::pair<double, unsigned>> v;
        for (unsigned s = 0; s < freq_hz.size(); ++s) v.emplace_back(freq_hz[s], s);
        std::sort(v.begin(), v.end());
        return v;
    }

    // label of the entry closest in frequency
    unsigned nearest(double hz) const {
        unsigned best = 0;
        double d = std::abs(freq_hz[0] - hz);
        for (unsigned s = 1; s < freq_hz.size(); ++s)
            if (std::abs(freq_hz[s] - hz) < d) { d = std::abs(freq_hz[s] - hz); best = s; }
        return best;
    }
};

inline TransitionTable transition_table(const SpinSystem& sys) {
    const int nw = sys.n_work();
    TransitionTable table;
    table.n_work = nw;
    table.freq_hz.resize(1u << nw);
    const double nu_o = sys.shifts_hz(sys.observer);
    for (unsigned s = 0; s < table.freq_hz.size(); ++s) {
        double w = nu_o;
        for (int q = 1; q <= nw; ++q) {
            const int spin = sys.work_spin(q);
            const int bit = (s >> (nw - q)) & 1u;
            w += sys.couplings_hz(sys.observer, spin) * m_of_bit(bit);
        }
        table.freq_hz[s] = w;
    }
    for (size_t a = 0; a < table.freq_hz.size(); ++a)
        for (size_t b = a + 1; b < table.freq_hz.size(); ++b)
            if (std::abs(table.freq_hz[a] - table.freq_hz[b]) < kDegeneracyTolHz)
                throw std::invalid_argument(
                    "degenerate observer transitions " + label_string(a, nw) + " and " +
                    label_string(b, nw) + ": encoding needs resolved lines");
    return table;
}

// ---------------------------------------------------------------------------
// bundled parameter sets and config files
// ---------------------------------------------------------------------------

// trifluoroiodoethylene: three fluorines, observer + two work qubits
inline SpinSystem preset_c2f3i() {
    return build_spin_system({0.0, 11807.0, -17114.0},
                             {{0.0, 68.1, -128.8},
                              {68.1, 0.0, 48.9},
                              {-128.8, 48.9, 0.0}},
                             0);
}

// 2-amino-3,4,5,6-tetrafluorobenzoic acid: four fluorines, observer + three
// work qubits
inline SpinSystem preset_tfba() {
    return build_spin_system({0.0, 13564.2, 6845.8, -5261.2},
                             {{0.0, 10.5, 20.5, 6.0},
                              {10.5, 0.0, 9.5, 22.7},
                              {20.5, 9.5, 0.0, 21.9},
                              {6.0, 22.7, 21.9, 0.0}},
                             0);
}

inline SpinSystem spin_system_from_json(const nlohmann::json& j) {
    std::vector<double> shifts = j.at("shifts_hz").get<std::vector<double>>();
    const int n = static_cast<int>(shifts.size());
    std::vector<double> flat = j.at("couplings_hz").get<std::vector<double>>();
    if (static_cast<int>(flat.size()) != n * n)
        throw std::invalid_argument("couplings_hz must hold n*n row-major entries");
    std::vector<std::vector<double>> couplings(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) couplings[i][c] = flat[i * n + c];
    return build_spin_system(shifts, couplings, j.at("observer_index").get<int>());
}

inline SpinSystem load_spin_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spin system file: " + path);
    nlohmann::json j;
    in >> j;
    return spin_system_from_json(j);
}

// resolves a preset name or a config file path
inline SpinSystem resolve_spin_system(const std::string& name_or_path) {
    if (name_or_path == "c2f3i") return preset_c2f3i();
    if (name_or_path == "tfba") return preset_tfba();
    return load_spin_system(name_or_path);
}

}  // namespace hqip
