// Sylvester Hadamard matrices, row-to-schedule conversion, and the transpose
// decode that turns k composite acquisitions into per-input responses.

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqip {

struct HadamardMatrix {
    int k = 0;
    Eigen::MatrixXi entries;  // +1 / -1

    int at(int row, int col) const { return entries(row, col); }
};

inline bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

inline HadamardMatrix hadamard_matrix(int k) {
    if (k < 1 || !is_power_of_two(static_cast<unsigned>(k)))
        throw std::invalid_argument("hadamard_matrix: dimension must be a power of two");
    HadamardMatrix h;
    h.k = k;
    h.entries.resize(k, k);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
            h.entries(r, c) = __builtin_parity(static_cast<unsigned>(r & c)) ? -1 : 1;
    return h;
}

// one row read as a pulse/no-pulse plan over an ordered set of work labels
struct HadamardSchedule {
    int row = 0;
    std::vector<unsigned> pulse_targets;     // labels under '-' columns
    std::vector<int> product_operator_tag;   // work qubits whose I_z factors realize the row
};

inline std::vector<unsigned> counting_label_order(int k) {
    std::vector<unsigned> order(k);
    for (int i = 0; i < k; ++i) order[i] = static_cast<unsigned>(i);
    return order;
}

inline HadamardSchedule schedule_for_row(const HadamardMatrix& h, int row,
                                         const std::vector<unsigned>& label_order,
                                         int n_work) {
    if (row < 0 || row >= h.k) throw std::invalid_argument("schedule_for_row: bad row");
    if (static_cast<int>(label_order.size()) != h.k)
        throw std::invalid_argument("schedule_for_row: label order must have k entries");

    HadamardSchedule sched;
    sched.row = row;
    for (int c = 0; c < h.k; ++c)
        if (h.at(row, c) < 0) sched.pulse_targets.push_back(label_order[c]);

    // a qubit belongs to the tag iff the row is negative on the label that
    // sets only that qubit's bit
    for (int q = 1; q <= n_work; ++q) {
        const unsigned unit = 1u << (n_work - q);
        for (int c = 0; c < h.k; ++c) {
            if (label_order[c] != unit) continue;
            if (h.at(row, c) < 0) sched.product_operator_tag.push_back(q);
            break;
        }
    }
    // the tag must reproduce the whole row, not just the unit labels
    for (int c = 0; c < h.k; ++c) {
        int sign = 1;
        for (int q : sched.product_operator_tag)
            if ((label_order[c] >> (n_work - q)) & 1u) sign = -sign;
        if (sign != h.at(row, c))
            throw std::invalid_argument(
                "schedule_for_row: row " + std::to_string(row) +
                " is not a product-operator sign pattern under this label order");
    }
    return sched;
}

// decoded response for one input: (1/k) sum_j H^T[input][j] * responses[j]
template <typename Scalar>
std::vector<Scalar> decode(const std::vector<std::vector<Scalar>>& responses,
                           const HadamardMatrix& h, int input_index) {
    if (static_cast<int>(responses.size()) != h.k)
        throw std::invalid_argument("decode: expected k responses");
    if (input_index < 0 || input_index >= h.k)
        throw std::invalid_argument("decode: bad input index");
    const size_t len = responses.front().size();
    for (const auto& r : responses)
        if (r.size() != len) throw std::invalid_argument("decode: responses differ in length");

    std::vector<Scalar> out(len, Scalar(0));
    for (int j = 0; j < h.k; ++j) {
        const double w = static_cast<double>(h.at(j, input_index));
        for (size_t n = 0; n < len; ++n) out[n] += w * responses[j][n];
    }
    const double norm = 1.0 / h.k;
    for (auto& v : out) v *= norm;
    return out;
}

// forward combination used by round-trip checks: responses from single-input
// series x_i are encoded as sum_i H[j][i] * x_i
template <typename Scalar>
std::vector<std::vector<Scalar>> encode(const std::vector<std::vector<Scalar>>& singles,
                                        const HadamardMatrix& h) {
    if (static_cast<int>(singles.size()) != h.k)
        throw std::invalid_argument("encode: expected k single-input series");
    const size_t len = singles.front().size();
    std::vector<std::vector<Scalar>> out(h.k, std::vector<Scalar>(len, Scalar(0)));
    for (int j = 0; j < h.k; ++j)
        for (int i = 0; i < h.k; ++i) {
            const double w = static_cast<double>(h.at(j, i));
            for (size_t n = 0; n < len; ++n) out[j][n] += w * singles[i][n];
        }
    return out;
}

}  // namespace hqip
