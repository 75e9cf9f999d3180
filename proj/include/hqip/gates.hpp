// Gate library for the computation period. Gates act on the work qubits;
// their classical action on basis states is a permutation read back from the
// unitary.
//
// Realizations follow the pulse recipes used on the reference systems:
// NOT gates are hard pi pulses on the named work qubits; SWAP, CNOT(1) and
// the Toffoli are products of transition-selective pi pulses applied on both
// observer manifolds.

#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "hqip/liouville.hpp"
#include "hqip/pulses.hpp"
#include "hqip/spin_system.hpp"

namespace hqip {

struct Gate {
    std::string name;
    Operator unitary;
    std::vector<std::string> recipe;  // human-readable pulse list
};

namespace detail {

// transition-selective pi on (observer_bit, work_a) - (observer_bit, work_b)
inline void add_work_transition_pulse(const SpinSystem& sys, Gate& gate, int observer_bit,
                                      unsigned work_a, unsigned work_b) {
    const unsigned a = full_index(sys, observer_bit, work_a);
    const unsigned b = full_index(sys, observer_bit, work_b);
    gate.unitary = transition_pulse(sys, a, b, M_PI, 0.0) * gate.unitary;
    gate.recipe.push_back("pi |" + label_string(a, sys.n_spins) + ">-|" +
                          label_string(b, sys.n_spins) + ">");
}

}  // namespace detail

inline std::vector<std::string> gate_names(int n_work) {
    std::vector<std::string> names = {"nop"};
    for (int q = 1; q <= n_work; ++q) names.push_back("not" + std::to_string(q));
    if (n_work >= 2) names.push_back("not12");
    if (n_work == 2) {
        names.push_back("swap");
        names.push_back("cnot1");
    }
    if (n_work == 3) names.push_back("toffoli");
    return names;
}

inline Gate make_gate(const SpinSystem& sys, std::string name) {
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    Gate gate;
    gate.name = name;
    gate.unitary = Operator::Identity(sys.dim(), sys.dim());

    if (name == "nop") return gate;

    if (name.rfind("not", 0) == 0 && name.size() > 3) {
        for (size_t i = 3; i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i])))
                throw std::invalid_argument("unknown gate: " + name);
            const int q = name[i] - '0';
            if (q < 1 || q > sys.n_work())
                throw std::invalid_argument("gate " + name + ": work qubit " +
                                            std::to_string(q) + " out of range");
            gate.unitary = hard_pulse(sys, sys.work_spin(q), M_PI, 0.0) * gate.unitary;
            gate.recipe.push_back("pi on work qubit " + std::to_string(q));
        }
        return gate;
    }

    if (name == "swap") {
        if (sys.n_work() != 2)
            throw std::invalid_argument("swap gate needs exactly two work qubits");
        // six pulses, repeats included, applied in the listed order
        const std::vector<std::pair<int, std::pair<unsigned, unsigned>>> seq = {
            {1, {0b10, 0b11}}, {0, {0b10, 0b11}}, {1, {0b01, 0b11}},
            {0, {0b01, 0b11}}, {1, {0b10, 0b11}}, {0, {0b10, 0b11}}};
        for (const auto& [bit, pair] : seq)
            detail::add_work_transition_pulse(sys, gate, bit, pair.first, pair.second);
        return gate;
    }

    if (name == "cnot1") {
        if (sys.n_work() != 2)
            throw std::invalid_argument("cnot1 gate needs exactly two work qubits");
        detail::add_work_transition_pulse(sys, gate, 0, 0b01, 0b11);
        detail::add_work_transition_pulse(sys, gate, 1, 0b01, 0b11);
        return gate;
    }

    if (name == "toffoli") {
        if (sys.n_work() != 3)
            throw std::invalid_argument("toffoli gate needs exactly three work qubits");
        detail::add_work_transition_pulse(sys, gate, 0, 0b110, 0b111);
        detail::add_work_transition_pulse(sys, gate, 1, 0b110, 0b111);
        return gate;
    }

    throw std::invalid_argument("unknown gate: " + name);
}

// classical action on work basis states; throws if the unitary is not a
// permutation (up to per-state phases) acting identically on both observer
// manifolds
inline std::vector<unsigned> classical_permutation(const Gate& gate, const SpinSystem& sys) {
    const unsigned k = 1u << sys.n_work();
    std::vector<unsigned> perm(k);
    for (int bit = 0; bit < 2; ++bit) {
        for (unsigned s = 0; s < k; ++s) {
            const unsigned col = full_index(sys, bit, s);
            int hits = 0;
            unsigned image = 0;
            for (unsigned row = 0; row < static_cast<unsigned>(sys.dim()); ++row) {
                const double a = std::abs(gate.unitary(row, col));
                if (a > 0.999) {
                    ++hits;
                    image = row;
                } else if (a > 1e-6) {
                    throw std::invalid_argument("gate " + gate.name +
                                                " is not a classical permutation");
                }
            }
            if (hits != 1)
                throw std::invalid_argument("gate " + gate.name +
                                            " is not a classical permutation");
            unsigned obs_bit_out = spin_bit(image, sys.observer, sys.n_spins);
            if (static_cast<int>(obs_bit_out) != bit)
                throw std::invalid_argument("gate " + gate.name + " moves the observer");
            // strip the observer bit to recover the work label
            unsigned work = 0;
            for (int q = 1; q <= sys.n_work(); ++q)
                work = (work << 1) | spin_bit(image, sys.work_spin(q), sys.n_spins);
            if (bit == 0)
                perm[s] = work;
            else if (perm[s] != work)
                throw std::invalid_argument("gate " + gate.name +
                                            " acts differently on the observer manifolds");
        }
    }
    std::vector<bool> seen(k, false);
    for (unsigned v : perm) {
        if (seen[v]) throw std::invalid_argument("gate " + gate.name + " is not a bijection");
        seen[v] = true;
    }
    return perm;
}

}  // namespace hqip
