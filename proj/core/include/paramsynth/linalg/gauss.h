#pragma once

#include "paramsynth/errors.h"

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

namespace paramsynth::linalg {

template<typename Value>
using SparseRow = std::map<std::size_t, Value>;

inline bool isZeroValue(mpq_class const& v) { return v == 0; }
template<typename Value>
bool isZeroValue(Value const& v) { return v.isZero(); }

// Solves A x = b for square A over a field by Gaussian elimination: natural column order,
// swapping in the first row with a nonzero pivot. Throws InvalidArgument if singular.
template<typename Value>
std::vector<Value> solve(std::vector<SparseRow<Value>> matrix, std::vector<Value> rhs) {
    std::size_t n = matrix.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n) {
            auto it = matrix[pivot].find(k);
            if (it != matrix[pivot].end() && !isZeroValue(it->second)) {
                break;
            }
            ++pivot;
        }
        if (pivot == n) {
            throw InvalidArgument("singular linear system");
        }
        if (pivot != k) {
            std::swap(matrix[pivot], matrix[k]);
            std::swap(rhs[pivot], rhs[k]);
        }
        Value const pivotValue = matrix[k].at(k);
        for (std::size_t j = k + 1; j < n; ++j) {
            auto it = matrix[j].find(k);
            if (it == matrix[j].end()) {
                continue;
            }
            Value factor = it->second / pivotValue;
            matrix[j].erase(it);
            if (isZeroValue(factor)) {
                continue;
            }
            for (auto const& [column, value] : matrix[k]) {
                if (column == k) {
                    continue;
                }
                Value updated = matrix[j][column] - factor * value;
                if (isZeroValue(updated)) {
                    matrix[j].erase(column);
                } else {
                    matrix[j][column] = std::move(updated);
                }
            }
            if (!isZeroValue(rhs[k])) {
                rhs[j] = rhs[j] - factor * rhs[k];
            }
        }
    }
    std::vector<Value> x(n);
    for (std::size_t k = n; k-- > 0;) {
        Value sum = rhs[k];
        for (auto const& [column, value] : matrix[k]) {
            if (column > k && !isZeroValue(x[column])) {
                sum = sum - value * x[column];
            }
        }
        x[k] = sum / matrix[k].at(k);
    }
    return x;
}

}  // namespace paramsynth::linalg
