#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "hqip/gates.hpp"
#include "hqip/qip2d.hpp"
#include "hqip/spin_system.hpp"

using namespace hqip;
using Catch::Approx;

namespace {

std::vector<unsigned> pipeline_permutation(const SpinSystem& sys, const std::string& gate_name,
                                           EncodingMode mode) {
    const Gate gate = make_gate(sys, gate_name);
    const AcquisitionParams p = AcquisitionParams::for_system(sys);
    const HadamardGateRun run = run_hadamard_2d(sys, gate, p, mode);
    const TransitionTable table = transition_table(sys);
    const Spectrum2D spec = assemble_2d(decode_gate_run(run), table, p.zero_fill);
    return correlation_map(spec, table, 0.3).permutation();
}

}  // namespace

TEST_CASE("gate unitaries realize their textbook permutations") {
    const SpinSystem s3 = preset_c2f3i();
    const SpinSystem s4 = preset_tfba();

    REQUIRE(classical_permutation(make_gate(s3, "nop"), s3) ==
            std::vector<unsigned>{0, 1, 2, 3});
    REQUIRE(classical_permutation(make_gate(s3, "not12"), s3) ==
            std::vector<unsigned>{3, 2, 1, 0});
    REQUIRE(classical_permutation(make_gate(s3, "swap"), s3) ==
            std::vector<unsigned>{0, 2, 1, 3});
    REQUIRE(classical_permutation(make_gate(s3, "cnot1"), s3) ==
            std::vector<unsigned>{0, 3, 2, 1});
    REQUIRE(classical_permutation(make_gate(s3, "not1"), s3) ==
            std::vector<unsigned>{2, 3, 0, 1});

    // Toffoli: third work qubit flips when the first two read |11>
    std::vector<unsigned> toffoli(8);
    for (unsigned s = 0; s < 8; ++s) toffoli[s] = (s >> 1) == 0b11 ? (s ^ 1u) : s;
    REQUIRE(classical_permutation(make_gate(s4, "toffoli"), s4) == toffoli);

    REQUIRE(classical_permutation(make_gate(s4, "not2"), s4) ==
            std::vector<unsigned>{2, 3, 0, 1, 6, 7, 4, 5});

    REQUIRE_THROWS_AS(make_gate(s3, "bogus"), std::invalid_argument);
    REQUIRE_THROWS_AS(make_gate(s3, "toffoli"), std::invalid_argument);
    REQUIRE_THROWS_AS(make_gate(s4, "swap"), std::invalid_argument);
    REQUIRE_THROWS_AS(make_gate(s3, "not7"), std::invalid_argument);

    // the six-pulse swap recipe is unitary even with its repeated pulses
    REQUIRE(is_unitary(make_gate(s3, "swap").unitary));
}

TEST_CASE("conventional run produces the expected raw grid") {
    const SpinSystem sys = preset_c2f3i();
    AcquisitionParams p = AcquisitionParams::for_system(sys);
    p.n_t2 = 64;
    const RawData2D raw = run_conventional(sys, make_gate(sys, "not12"), 128, p);
    REQUIRE(raw.signal.rows() == 128);
    REQUIRE(raw.signal.cols() == 64);
    REQUIRE(raw.acquisitions() == 128);

    // t1 = 0: all four output tones at half amplitude each
    REQUIRE(std::abs(raw.signal(0, 0) - Complex(2.0, 0.0)) < 1e-12);
}

TEST_CASE("conventional 2D spectrum shows the input-output correlation") {
    const SpinSystem sys = preset_c2f3i();
    const TransitionTable table = transition_table(sys);
    const AcquisitionParams p = AcquisitionParams::for_system(sys);

    // NOP: every input appears at its own frequency
    {
        const RawData2D raw = run_conventional(sys, make_gate(sys, "nop"), 128, p);
        const Spectrum2D spec = spectrum2d_from_conventional(raw, sys, p);
        const CorrelationMap map = correlation_map(spec, table, 0.3);
        REQUIRE(map.permutation() == std::vector<unsigned>{0, 1, 2, 3});
        REQUIRE(map.is_permutation);
    }

    // NOT(1,2): anti-diagonal pairing of input and output lines
    {
        const RawData2D raw = run_conventional(sys, make_gate(sys, "not12"), 128, p);
        const Spectrum2D spec = spectrum2d_from_conventional(raw, sys, p);
        const CorrelationMap map = correlation_map(spec, table, 0.3);
        REQUIRE(map.permutation() == std::vector<unsigned>{3, 2, 1, 0});
        // the input labelled omega_00 shows its peak at omega_11, to one F2 bin
        const double f2_bin = 1.0 / (p.n_t2 * p.zero_fill * p.dwell);
        for (const auto& pair : map.pairs)
            REQUIRE(std::abs(pair.peak_hz - table.at(pair.output)) < f2_bin);
    }
}

TEST_CASE("Hadamard run records k encoded acquisitions with signed lines") {
    const SpinSystem sys = preset_c2f3i();
    const TransitionTable table = transition_table(sys);
    const AcquisitionParams p = AcquisitionParams::for_system(sys);
    const HadamardGateRun run =
        run_hadamard_2d(sys, make_gate(sys, "not12"), p, EncodingMode::MfPulse);
    REQUIRE(run.k == 4);
    REQUIRE(run.acquisitions() == 4);
    REQUIRE(run.fids.size() == 4);

    // row 2 spectrum: output lines weighted (+,-,+,-) against input order
    const HadamardMatrix h = hadamard_matrix(4);
    const Spectrum1D spec = spectrum_1d(run.fids[1], 2);
    const std::vector<unsigned> gate_map = {3, 2, 1, 0};
    for (unsigned s = 0; s < 4; ++s) {
        const double out_hz = table.at(gate_map[s]);
        size_t bin = 0;
        for (size_t i = 1; i < spec.size(); ++i)
            if (std::abs(spec.freq_hz[i] - out_hz) < std::abs(spec.freq_hz[bin] - out_hz))
                bin = i;
        const double v = spec.intensity[bin].real();
        REQUIRE(v * h.at(1, s) > 0.0);
    }

    // four-spin system: eight acquisitions
    const SpinSystem big = preset_tfba();
    const AcquisitionParams pb = AcquisitionParams::for_system(big);
    const HadamardGateRun run8 =
        run_hadamard_2d(big, make_gate(big, "nop"), pb, EncodingMode::JEvolution);
    REQUIRE(run8.k == 8);
    REQUIRE(run8.acquisitions() == 8);
}

TEST_CASE("assembled 2D maps recover every gate's classical action") {
    struct Case {
        const char* system;
        const char* gate;
    };
    const std::vector<Case> cases = {
        {"c2f3i", "nop"},  {"c2f3i", "not12"}, {"c2f3i", "swap"},
        {"c2f3i", "cnot1"}, {"c2f3i", "not1"},  {"c2f3i", "not2"},
        {"tfba", "nop"},   {"tfba", "not1"},   {"tfba", "not2"},
        {"tfba", "toffoli"}};
    for (const Case& c : cases) {
        const SpinSystem sys = resolve_spin_system(c.system);
        const Gate gate = make_gate(sys, c.gate);
        const std::vector<unsigned> truth = classical_permutation(gate, sys);
        const std::vector<unsigned> measured =
            pipeline_permutation(sys, c.gate, EncodingMode::MfPulse);
        INFO(c.system << " " << c.gate);
        REQUIRE(measured == truth);
    }
}

TEST_CASE("assemble_2d validates its inputs") {
    const SpinSystem sys = preset_c2f3i();
    const TransitionTable table = transition_table(sys);
    const AcquisitionParams p = AcquisitionParams::for_system(sys);
    const HadamardGateRun run =
        run_hadamard_2d(sys, make_gate(sys, "nop"), p, EncodingMode::MfPulse);
    std::map<unsigned, TimeSeries> decoded = decode_gate_run(run);
    decoded.erase(2);
    REQUIRE_THROWS_AS(assemble_2d(decoded, table, 2), std::invalid_argument);
}

TEST_CASE("both encodings decode to the same spectra") {
    for (const char* name : {"nop", "not1", "not2", "toffoli"}) {
        const SpinSystem sys = preset_tfba();
        const Gate gate = make_gate(sys, name);
        const AcquisitionParams p = AcquisitionParams::for_system(sys);
        const TransitionTable table = transition_table(sys);

        const Spectrum2D a = assemble_2d(
            decode_gate_run(run_hadamard_2d(sys, gate, p, EncodingMode::MfPulse)), table,
            p.zero_fill);
        const Spectrum2D b = assemble_2d(
            decode_gate_run(run_hadamard_2d(sys, gate, p, EncodingMode::JEvolution)), table,
            p.zero_fill);

        double peak = 0.0, dev = 0.0;
        for (size_t r = 0; r < a.rows.size(); ++r)
            for (size_t i = 0; i < a.rows[r].intensity.size(); ++i) {
                peak = std::max(peak, std::abs(a.rows[r].intensity[i]));
                dev = std::max(dev,
                               std::abs(a.rows[r].intensity[i] - b.rows[r].intensity[i]));
            }
        INFO(name);
        REQUIRE(dev <= 1e-8 * peak);
    }
}

TEST_CASE("conventional and Hadamard peak positions agree within one bin") {
    for (const char* system : {"c2f3i", "tfba"}) {
        const SpinSystem sys = resolve_spin_system(system);
        const TransitionTable table = transition_table(sys);
        const AcquisitionParams p = AcquisitionParams::for_system(sys);
        for (const std::string& name : gate_names(sys.n_work())) {
            const Gate gate = make_gate(sys, name);
            const RawData2D raw = run_conventional(sys, gate, 128, p);
            const CorrelationMap conv =
                correlation_map(spectrum2d_from_conventional(raw, sys, p), table, 0.3);
            const HadamardGateRun run = run_hadamard_2d(sys, gate, p, EncodingMode::MfPulse);
            const CorrelationMap had = correlation_map(
                assemble_2d(decode_gate_run(run), table, p.zero_fill), table, 0.3);

            REQUIRE(conv.permutation() == had.permutation());
            const double bin = 1.0 / (p.n_t2 * p.zero_fill * p.dwell);
            for (size_t i = 0; i < conv.pairs.size(); ++i)
                REQUIRE(std::abs(conv.pairs[i].peak_hz - had.pairs[i].peak_hz) <= bin);

            // acquisition counts: 2^N against the configured t1 increments
            REQUIRE(run.acquisitions() == table.k());
            REQUIRE(raw.acquisitions() == 128);
        }
    }
}

TEST_CASE("ambiguous rows fail loudly") {
    const SpinSystem sys = preset_c2f3i();
    const TransitionTable table = transition_table(sys);

    auto blank = [&]() {
        Spectrum2D spec;
        for (int i = 0; i < 9; ++i) spec.f2_axis.push_back(-40.0 + 10.0 * i);
        for (unsigned s = 0; s < 4; ++s)
            spec.rows.push_back({s, table.at(s), std::vector<Complex>(9, Complex(0, 0))});
        return spec;
    };

    // a row with no peak above threshold
    Spectrum2D missing = blank();
    for (unsigned s = 0; s < 3; ++s) missing.rows[s].intensity[2 * s + 1] = Complex(1, 0);
    REQUIRE_THROWS_AS(correlation_map(missing, table, 0.3), std::runtime_error);

    // a row with two peaks above threshold
    Spectrum2D twin = blank();
    for (unsigned s = 0; s < 4; ++s) twin.rows[s].intensity[2 * s + 1] = Complex(1, 0);
    twin.rows[2].intensity[7] = Complex(0.9, 0.0);
    REQUIRE_THROWS_AS(correlation_map(twin, table, 0.3), std::runtime_error);
}
