// SPDX-License-Identifier: Apache-2.0
//
// cfmimo: sequential uplink processing for cell-free massive MIMO with limited-memory APs
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

#ifndef cfmimo_linalg_H
#define cfmimo_linalg_H

#include "types.hpp"

#include <cmath>
#include <numbers>

namespace cfmimo
{

// log2 det(A) for a Hermitian positive-definite A, via Cholesky
inline double log2det_hpd(const CMatrix &A)
{
    if (A.rows() == 0)
        return 0.0;
    Eigen::LLT<CMatrix> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericError("matrix is not Hermitian positive definite");
    double acc = 0.0;
    const auto &Lm = llt.matrixLLT();
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        acc += std::log(Lm(i, i).real());
    return 2.0 * acc / std::numbers::ln2;
}

// log2 det(I + c X^H X), evaluated on the smaller of the two Gram matrices
inline double log2det_identity_plus_gram(const CMatrix &X, double c)
{
    if (X.rows() >= X.cols())
    {
        CMatrix G = c * (X.adjoint() * X);
        G.diagonal().array() += 1.0;
        return log2det_hpd(G);
    }
    CMatrix G = c * (X * X.adjoint());
    G.diagonal().array() += 1.0;
    return log2det_hpd(G);
}

inline CMatrix hermitian_part(const CMatrix &A) { return 0.5 * (A + A.adjoint()); }

// Largest |A - A^H| entry relative to the largest |A| entry
inline double hermitian_defect(const CMatrix &A)
{
    const double scale = A.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        return 0.0;
    return (A - A.adjoint()).cwiseAbs().maxCoeff() / scale;
}

} // namespace cfmimo

#endif
