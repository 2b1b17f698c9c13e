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

#ifndef MIMOSIM_LINALG_HPP
#define MIMOSIM_LINALG_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mimosim {

using Complex = std::complex<double>;

// Dense column-major complex matrix. Sized for the small systems handled
// here (channels up to 64 rows, Gram systems up to 64x64); plain value
// semantics, no view machinery.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex &operator()(int r, int c) {
        return data_[static_cast<std::size_t>(c) * static_cast<std::size_t>(rows_) + static_cast<std::size_t>(r)];
    }
    const Complex &operator()(int r, int c) const {
        return data_[static_cast<std::size_t>(c) * static_cast<std::size_t>(rows_) + static_cast<std::size_t>(r)];
    }

    std::span<Complex> column(int c);
    std::span<const Complex> column(int c) const;

    bool all_finite() const;

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> data_;
};

// Euclidean norm of one column.
double column_norm(const ComplexMatrix &a, int col);

// Unconjugated product a(:,col_a)^T b(:,col_b).
Complex column_product(const ComplexMatrix &a, int col_a, const ComplexMatrix &b, int col_b);

ComplexMatrix conjugate(const ComplexMatrix &a);
ComplexMatrix multiply(const ComplexMatrix &a, const ComplexMatrix &b);

// Maximum absolute column sum.
double norm_1(const ComplexMatrix &a);
double max_abs(const ComplexMatrix &a);

class SingularMatrixError : public std::runtime_error {
  public:
    SingularMatrixError(const std::string &message, double condition_estimate)
        : std::runtime_error(message), condition_estimate_(condition_estimate) {}

    double condition_estimate() const { return condition_estimate_; }

  private:
    double condition_estimate_;
};

// Solves A X = B by Gaussian elimination with partial pivoting. Throws
// SingularMatrixError when a pivot magnitude falls below 1e-14 times the
// largest entry magnitude of A.
ComplexMatrix solve_linear(ComplexMatrix a, ComplexMatrix b);

} // namespace mimosim

#endif
