#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <random>
#include <set>

#include "hqip/spin_system.hpp"

using namespace hqip;
using Catch::Approx;

TEST_CASE("build_spin_system validates its inputs") {
    REQUIRE_NOTHROW(preset_c2f3i());
    REQUIRE_NOTHROW(preset_tfba());

    // asymmetric couplings
    REQUIRE_THROWS_AS(build_spin_system({0.0, 100.0, 200.0},
                                        {{0, 1, 2}, {1, 0, 3}, {2, 4, 0}}, 0),
                      std::invalid_argument);
    // nonzero diagonal
    REQUIRE_THROWS_AS(build_spin_system({0.0, 100.0}, {{1, 2}, {2, 0}}, 0),
                      std::invalid_argument);
    // observer out of range
    REQUIRE_THROWS_AS(build_spin_system({0.0, 100.0}, {{0, 2}, {2, 0}}, 2),
                      std::invalid_argument);
    // non-square matrix
    REQUIRE_THROWS_AS(build_spin_system({0.0, 100.0}, {{0, 2}}, 0), std::invalid_argument);
}

TEST_CASE("hamiltonian diagonal on small systems") {
    // single spin: I_z eigenvalues +-1/2
    const SpinSystem one = build_spin_system({100.0}, {{0.0}}, 0);
    const Eigen::VectorXd d1 = hamiltonian_diagonal(one);
    REQUIRE(d1(0) == Approx(50.0));
    REQUIRE(d1(1) == Approx(-50.0));

    // two spins at zero offset coupled by 48.9 Hz: J * m1 * m2
    const SpinSystem two = build_spin_system({0.0, 0.0}, {{0.0, 48.9}, {48.9, 0.0}}, 0);
    const Eigen::VectorXd d2 = hamiltonian_diagonal(two);
    REQUIRE(d2(0) == Approx(12.225));
    REQUIRE(d2(1) == Approx(-12.225));
    REQUIRE(d2(2) == Approx(-12.225));
    REQUIRE(d2(3) == Approx(12.225));

    // full matrix is diagonal and Hermitian
    const Eigen::MatrixXcd h = hamiltonian(preset_c2f3i());
    REQUIRE((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    for (int a = 0; a < h.rows(); ++a)
        for (int b = 0; b < h.cols(); ++b)
            if (a != b) REQUIRE(h(a, b) == Complex(0.0, 0.0));
}

TEST_CASE("transition table reproduces the three-spin line positions") {
    const SpinSystem sys = preset_c2f3i();
    const TransitionTable table = transition_table(sys);
    REQUIRE(table.k() == 4);
    REQUIRE(table.at("00") == Approx(-30.35));
    REQUIRE(table.at("01") == Approx(98.45));
    REQUIRE(table.at("10") == Approx(-98.45));
    REQUIRE(table.at("11") == Approx(30.35));
}

TEST_CASE("transition table matches Hamiltonian eigenvalue differences") {
    // oracle: brute-force energy differences between states flipping only the
    // observer bit
    for (const SpinSystem& sys : {preset_c2f3i(), preset_tfba()}) {
        const TransitionTable table = transition_table(sys);
        const Eigen::VectorXd energy = hamiltonian_diagonal(sys);
        for (unsigned s = 0; s < static_cast<unsigned>(table.k()); ++s) {
            const double direct =
                energy(full_index(sys, 0, s)) - energy(full_index(sys, 1, s));
            REQUIRE(table.at(s) == Approx(direct).margin(1e-12));
        }
    }
}

TEST_CASE("four-spin table spans +-18.5 Hz with eight distinct lines") {
    const TransitionTable table = transition_table(preset_tfba());
    REQUIRE(table.k() == 8);
    std::set<double> unique(table.freq_hz.begin(), table.freq_hz.end());
    REQUIRE(unique.size() == 8);
    REQUIRE(*unique.begin() == Approx(-18.5));
    REQUIRE(*unique.rbegin() == Approx(18.5));

    // oracle: all sign combinations of (10.5, 20.5, 6)/2
    std::set<double> expected;
    for (int a : {-1, 1})
        for (int b : {-1, 1})
            for (int c : {-1, 1})
                expected.insert(a * 10.5 / 2 + b * 20.5 / 2 + c * 6.0 / 2);
    for (double f : table.freq_hz) {
        bool found = false;
        for (double e : expected)
            if (std::abs(e - f) < 1e-12) found = true;
        REQUIRE(found);
    }
}

TEST_CASE("unresolved transitions are rejected") {
    const SpinSystem flat =
        build_spin_system({0.0, 500.0, 900.0},
                          {{0.0, 0.0, 0.0}, {0.0, 0.0, 10.0}, {0.0, 10.0, 0.0}}, 0);
    REQUIRE_THROWS_AS(transition_table(flat), std::invalid_argument);
}

TEST_CASE("negating one observer coupling permutes labels, not frequencies") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coupling(5.0, 150.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double j1 = coupling(rng), j2 = coupling(rng), j12 = coupling(rng);
        auto build = [&](double sign) {
            return build_spin_system({0.0, 1000.0, -2000.0},
                                     {{0.0, j1, sign * j2},
                                      {j1, 0.0, j12},
                                      {sign * j2, j12, 0.0}},
                                     0);
        };
        const TransitionTable base = transition_table(build(1.0));
        const TransitionTable flipped = transition_table(build(-1.0));
        for (unsigned s = 0; s < 4; ++s) {
            // negating J_O2 flips bit 2 of every label
            REQUIRE(flipped.at(s ^ 1u) == Approx(base.at(s)).margin(1e-12));
        }
        const std::multiset<double> a(base.freq_hz.begin(), base.freq_hz.end());
        const std::multiset<double> b(flipped.freq_hz.begin(), flipped.freq_hz.end());
        REQUIRE(a == b);
    }
}

TEST_CASE("spin systems load from JSON config files") {
    const std::string path = "test_spinsys_config.json";
    {
        std::ofstream out(path);
        out << R"({"shifts_hz": [0.0, 11807.0, -17114.0],
                   "couplings_hz": [0.0, 68.1, -128.8,
                                    68.1, 0.0, 48.9,
                                    -128.8, 48.9, 0.0],
                   "observer_index": 0})";
    }
    const SpinSystem sys = load_spin_system(path);
    const SpinSystem ref = preset_c2f3i();
    REQUIRE(sys.n_spins == ref.n_spins);
    REQUIRE(sys.observer == ref.observer);
    REQUIRE((sys.couplings_hz - ref.couplings_hz).cwiseAbs().maxCoeff() == 0.0);
    std::remove(path.c_str());

    REQUIRE_THROWS_AS(load_spin_system("does_not_exist.json"), std::runtime_error);
    REQUIRE(resolve_spin_system("tfba").n_spins == 4);
}
