// Ideal unitary propagators: hard spin-selective pulses, transition-selective
// pulses, multi-frequency pi pulses on observer lines, and the spin-echo
// J-evolution sequences that prepare I_z^O * prod(2 I_z^i) product operators.
//
// Pulses are instantaneous rotations. Real multi-frequency pulse durations
// (100 ms / 600 ms on the reference systems) are hardware metadata, not
// simulated dynamics.

#pragma once

#include <cctype>
#include <cmath>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hqip/liouville.hpp"
#include "hqip/spin_system.hpp"

namespace hqip {

// ---------------------------------------------------------------------------
// phases and rotations
// ---------------------------------------------------------------------------

inline double parse_phase(const std::string& p) {
    if (p == "x") return 0.0;
    if (p == "y") return M_PI / 2.0;
    if (p == "-x") return M_PI;
    if (p == "-y") return -M_PI / 2.0;
    try {
        size_t used = 0;
        const double v = std::stod(p, &used);
        if (used == p.size()) return v;
    } catch (...) {
    }
    throw std::invalid_argument("bad pulse phase: " + p);
}

// 2x2 rotation exp(-i angle (cos(phase) Ix + sin(phase) Iy))
inline Operator rotation2(double angle, double phase) {
    const Complex i(0.0, 1.0);
    Operator r(2, 2);
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    r << c, -i * s * std::exp(-i * phase),
        -i * s * std::exp(i * phase), c;
    return r;
}

inline void check_angle(double angle) {
    if (!(angle > 0.0 && angle <= 2.0 * M_PI + 1e-12))
        throw std::invalid_argument("pulse angle must lie in (0, 2*pi]");
}

// tensor m2 at `spin`, identity elsewhere
inline Operator embed_spin(const SpinSystem& sys, int spin, const Operator& m2) {
    Operator out = Operator::Identity(1, 1);
    for (int s = 0; s < sys.n_spins; ++s) {
        const Operator f = (s == spin) ? m2 : Operator::Identity(2, 2);
        Operator next(out.rows() * 2, out.cols() * 2);
        for (int r = 0; r < out.rows(); ++r)
            for (int c = 0; c < out.cols(); ++c)
                next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
        out = next;
    }
    return out;
}

inline Operator hard_pulse(const SpinSystem& sys, int spin, double angle, double phase) {
    if (spin < 0 || spin >= sys.n_spins)
        throw std::invalid_argument("hard_pulse: spin index out of range");
    check_angle(angle);
    return embed_spin(sys, spin, rotation2(angle, phase));
}

inline Operator hard_pulse(const SpinSystem& sys, int spin, double angle,
                           const std::string& phase) {
    return hard_pulse(sys, spin, angle, parse_phase(phase));
}

// rotation confined to one pair of connected levels; the pair must differ in
// exactly one bit (a single-quantum line)
inline Operator transition_pulse(const SpinSystem& sys, unsigned state_a, unsigned state_b,
                                 double angle, double phase) {
    const unsigned d = static_cast<unsigned>(sys.dim());
    if (state_a >= d || state_b >= d || state_a == state_b)
        throw std::invalid_argument("transition_pulse: bad basis states");
    const unsigned diff = state_a ^ state_b;
    if ((diff & (diff - 1)) != 0)
        throw std::invalid_argument(
            "transition_pulse: states " + label_string(state_a, sys.n_spins) + " and " +
            label_string(state_b, sys.n_spins) + " differ in more than one bit");
    check_angle(angle);
    const Operator r = rotation2(angle, phase);
    Operator u = Operator::Identity(d, d);
    u(state_a, state_a) = r(0, 0);
    u(state_a, state_b) = r(0, 1);
    u(state_b, state_a) = r(1, 0);
    u(state_b, state_b) = r(1, 1);
    return u;
}

inline Operator transition_pulse(const SpinSystem& sys, const std::string& label_a,
                                 const std::string& label_b, double angle, double phase) {
    if (static_cast<int>(label_a.size()) != sys.n_spins ||
        static_cast<int>(label_b.size()) != sys.n_spins)
        throw std::invalid_argument("transition_pulse: label length != number of spins");
    return transition_pulse(sys, parse_label(label_a), parse_label(label_b), angle, phase);
}

// ---------------------------------------------------------------------------
// Hadamard-row encodings
// ---------------------------------------------------------------------------

// pi pulses on the observer transitions of the named work states; on the
// observer equilibrium state this negates exactly the targeted I_z^O terms
inline Operator mf_pi_pulse(const SpinSystem& sys, const TransitionTable& table,
                            const std::vector<unsigned>& targets) {
    Operator u = Operator::Identity(sys.dim(), sys.dim());
    for (unsigned s : targets) {
        if (s >= static_cast<unsigned>(table.k()))
            throw std::invalid_argument("mf_pi_pulse: unknown work label " +
                                        std::to_string(s));
        u = transition_pulse(sys, full_index(sys, 0, s), full_index(sys, 1, s), M_PI, 0.0) * u;
    }
    return u;
}

// spin-echo block realizing pure J_{O,i} evolution for 1/(2|J|): half delay,
// simultaneous pi on observer and qubit i, half delay
inline Operator j_echo_block(const SpinSystem& sys, int work_qubit) {
    const int spin = sys.work_spin(work_qubit);
    const double j = sys.couplings_hz(sys.observer, spin);
    if (std::abs(j) < 1e-12)
        throw std::invalid_argument("j_evolution_encoding: zero coupling to work qubit " +
                                    std::to_string(work_qubit));
    const double half = 1.0 / (4.0 * std::abs(j));
    const Operator e = free_evolution(sys, half);
    const Operator refocus =
        hard_pulse(sys, sys.observer, M_PI, 0.0) * hard_pulse(sys, spin, M_PI, 0.0);
    return e * refocus * e;
}

// prepares I_z^O * prod_{i in subset} 2 I_z^i (up to overall sign) from the
// observer equilibrium state:
//   {}      identity
//   {i}     (pi/2)_y^O - 1/(2J_Oi) - (pi/2)_x^O
//   {i,j}   (pi/2)_y^O - 1/(2J_Oi) - 1/(2J_Oj) - (pi/2)_y^O
//   {i,j,k} (pi/2)_y^O - 1/(2J_Oi) - 1/(2J_Oj) - 1/(2J_Ok) - (pi/2)_-x^O
inline Operator j_evolution_encoding(const SpinSystem& sys, std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
        throw std::invalid_argument("j_evolution_encoding: duplicate work qubit");
    for (int q : subset)
        if (q < 1 || q > sys.n_work())
            throw std::invalid_argument("j_evolution_encoding: work qubit out of range");
    if (subset.empty()) return Operator::Identity(sys.dim(), sys.dim());
    if (subset.size() > 3)
        throw std::invalid_argument("j_evolution_encoding: subsets above size 3 unsupported");

    Operator u = hard_pulse(sys, sys.observer, M_PI / 2.0, M_PI / 2.0);  // (pi/2)_y
    for (int q : subset) u = j_echo_block(sys, q) * u;
    double final_phase = 0.0;  // (pi/2)_x closes the single-qubit sequence
    if (subset.size() == 2) final_phase = M_PI / 2.0;
    if (subset.size() == 3) final_phase = M_PI;
    return hard_pulse(sys, sys.observer, M_PI / 2.0, final_phase) * u;
}

// ---------------------------------------------------------------------------
// declarative pulse sequences
// ---------------------------------------------------------------------------

struct PulseSpec {
    int spin = -1;                       // spin-selective when >= 0
    unsigned state_a = 0, state_b = 0;   // transition-selective otherwise
    bool transition = false;
    double angle = 0.0;
    double phase = 0.0;
};

struct Delay {
    double seconds = 0.0;
};

using SequenceStep = std::variant<PulseSpec, Delay>;

inline double parse_angle(const std::string& text) {
    const auto pi_pos = text.find("pi");
    if (pi_pos == std::string::npos) {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("bad angle: " + text);
        return v;
    }
    const std::string pre = text.substr(0, pi_pos);
    const std::string post = text.substr(pi_pos + 2);
    double mul = pre.empty() ? 1.0 : std::stod(pre);
    double div = 1.0;
    if (!post.empty()) {
        if (post[0] != '/') throw std::invalid_argument("bad angle: " + text);
        div = std::stod(post.substr(1));
    }
    return mul * M_PI / div;
}

// text form, one step per line:
//   pulse spin=1 angle=pi/2 phase=y
//   pulse transition=001-011 angle=pi phase=x
//   delay 0.00734
// '#' starts a comment
inline std::vector<SequenceStep> parse_pulse_sequence(std::istream& in) {
    std::vector<SequenceStep> steps;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        const std::string where = " (line " + std::to_string(line_no) + ")";
        if (word == "delay") {
            Delay d;
            if (!(ls >> d.seconds) || d.seconds < 0)
                throw std::invalid_argument("bad delay" + where);
            steps.emplace_back(d);
        } else if (word == "pulse") {
            PulseSpec p;
            std::optional<std::string> transition_text;
            std::string field;
            while (ls >> field) {
                const auto eq = field.find('=');
                if (eq == std::string::npos)
                    throw std::invalid_argument("expected key=value" + where);
                const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
                if (key == "spin") p.spin = std::stoi(val);
                else if (key == "transition") transition_text = val;
                else if (key == "angle") p.angle = parse_angle(val);
                else if (key == "phase") p.phase = parse_phase(val);
                else throw std::invalid_argument("unknown pulse field '" + key + "'" + where);
            }
            if (transition_text) {
                const auto dash = transition_text->find('-');
                if (dash == std::string::npos)
                    throw std::invalid_argument("transition needs a-b labels" + where);
                p.transition = true;
                p.state_a = parse_label(transition_text->substr(0, dash));
                p.state_b = parse_label(transition_text->substr(dash + 1));
            } else if (p.spin < 0) {
                throw std::invalid_argument("pulse needs spin= or transition=" + where);
            }
            steps.emplace_back(p);
        } else {
            throw std::invalid_argument("unknown step '" + word + "'" + where);
        }
    }
    return steps;
}

inline Operator sequence_operator(const SpinSystem& sys,
                                  const std::vector<SequenceStep>& steps) {
    Operator u = Operator::Identity(sys.dim(), sys.dim());
    for (const auto& step : steps) {
        if (std::holds_alternative<Delay>(step)) {
            u = free_evolution(sys, std::get<Delay>(step).seconds) * u;
        } else {
            const auto& p = std::get<PulseSpec>(step);
            u = (p.transition
                     ? transition_pulse(sys, p.state_a, p.state_b, p.angle, p.phase)
                     : hard_pulse(sys, p.spin, p.angle, p.phase)) *
                u;
        }
    }
    return u;
}

}  // namespace hqip
