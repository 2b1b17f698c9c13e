// SPDX-License-Identifier: Apache-2.0
//
// mimosim: Monte Carlo simulator for co-located, semi-distributed, and
// fully-distributed multi-user MIMO antenna topologies
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mimosim/linalg.hpp"

#include <cmath>
#include <limits>

namespace mimosim {

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("ComplexMatrix: dimensions must be non-negative");
    data_.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

std::span<Complex> ComplexMatrix::column(int c) {
    return {data_.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(rows_),
            static_cast<std::size_t>(rows_)};
}

std::span<const Complex> ComplexMatrix::column(int c) const {
    return {data_.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(rows_),
            static_cast<std::size_t>(rows_)};
}

bool ComplexMatrix::all_finite() const {
    for (const auto &v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

double column_norm(const ComplexMatrix &a, int col) {
    double sum = 0.0;
    for (const auto &v : a.column(col))
        sum += std::norm(v);
    return std::sqrt(sum);
}

Complex column_product(const ComplexMatrix &a, int col_a, const ComplexMatrix &b, int col_b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("column_product: row count mismatch");
    Complex acc = 0.0;
    const auto ca = a.column(col_a);
    const auto cb = b.column(col_b);
    for (int r = 0; r < a.rows(); ++r)
        acc += ca[static_cast<std::size_t>(r)] * cb[static_cast<std::size_t>(r)];
    return acc;
}

ComplexMatrix conjugate(const ComplexMatrix &a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (int c = 0; c < a.cols(); ++c)
        for (int r = 0; r < a.rows(); ++r)
            out(r, c) = std::conj(a(r, c));
    return out;
}

ComplexMatrix multiply(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("multiply: inner dimension mismatch");
    ComplexMatrix out(a.rows(), b.cols());
    for (int c = 0; c < b.cols(); ++c)
        for (int k = 0; k < a.cols(); ++k) {
            const Complex f = b(k, c);
            if (f == Complex{})
                continue;
            for (int r = 0; r < a.rows(); ++r)
                out(r, c) += a(r, k) * f;
        }
    return out;
}

double norm_1(const ComplexMatrix &a) {
    double best = 0.0;
    for (int c = 0; c < a.cols(); ++c) {
        double sum = 0.0;
        for (const auto &v : a.column(c))
            sum += std::abs(v);
        best = std::max(best, sum);
    }
    return best;
}

double max_abs(const ComplexMatrix &a) {
    double best = 0.0;
    for (int c = 0; c < a.cols(); ++c)
        for (const auto &v : a.column(c))
            best = std::max(best, std::abs(v));
    return best;
}

ComplexMatrix solve_linear(ComplexMatrix a, ComplexMatrix b) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("solve_linear: matrix must be square");
    if (b.rows() != a.rows())
        throw std::invalid_argument("solve_linear: right-hand side row count mismatch");

    const int n = a.rows();
    const double pivot_floor = 1e-14 * max_abs(a);

    for (int col = 0; col < n; ++col) {
        int pivot_row = col;
        double best = std::abs(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double mag = std::abs(a(r, col));
            if (mag > best) {
                best = mag;
                pivot_row = r;
            }
        }
        if (best <= pivot_floor)
            throw SingularMatrixError("solve_linear: singular pivot at column " + std::to_string(col),
                                      std::numeric_limits<double>::infinity());
        if (pivot_row != col) {
            for (int c = 0; c < n; ++c)
                std::swap(a(col, c), a(pivot_row, c));
            for (int c = 0; c < b.cols(); ++c)
                std::swap(b(col, c), b(pivot_row, c));
        }
        const Complex pivot = a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const Complex factor = a(r, col) / pivot;
            if (factor == Complex{})
                continue;
            a(r, col) = 0.0;
            for (int c = col + 1; c < n; ++c)
                a(r, c) -= factor * a(col, c);
            for (int c = 0; c < b.cols(); ++c)
                b(r, c) -= factor * b(col, c);
        }
    }

    for (int c = 0; c < b.cols(); ++c)
        for (int r = n - 1; r >= 0; --r) {
            Complex acc = b(r, c);
            for (int j = r + 1; j < n; ++j)
                acc -= a(r, j) * b(j, c);
            b(r, c) = acc / a(r, r);
        }
    return b;
}

} // namespace mimosim
