// SPDX-License-Identifier: Apache-2.0
//
// cransim: downlink simulator for clustered cloud-RAN antenna domains
// Copyright (C) 2026 The cransim Authors
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

#ifndef CRANSIM_LINALG_HPP
#define CRANSIM_LINALG_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace cransim {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

// Raised for failures that indicate a bug or numerical breakdown rather than bad input.
class InternalError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// SplitMix64 finalizer. Used to derive independent, stable sub-seeds.
constexpr std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Order-sensitive combination of several 64-bit words into one seed.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words)
{
    std::uint64_t h = 0x6A09E667F3BCC908ULL;
    for (auto w : words)
        h = mix64(h ^ mix64(w));
    return h;
}

// Eigenvalue clipping repair for a real symmetric correlation matrix.
// Negative eigenvalues are set to 0 and the diagonal is re-normalised to 1.
// Matrices that are already PSD are returned unchanged.
inline RMatrix repair_psd(const RMatrix &r)
{
    if (r.rows() != r.cols())
        throw std::invalid_argument("repair_psd: matrix must be square");
    if (r.rows() == 0)
        return r;
    RMatrix sym = 0.5 * (r + r.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> es(sym);
    if (es.info() != Eigen::Success)
        throw InternalError("repair_psd: eigen-decomposition failed");
    if (es.eigenvalues().minCoeff() >= 0.0)
        return sym;

    RVector lam = es.eigenvalues().cwiseMax(0.0);
    RMatrix out = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    RVector d = out.diagonal();
    for (Eigen::Index i = 0; i < d.size(); ++i)
        d(i) = d(i) > 0.0 ? 1.0 / std::sqrt(d(i)) : 0.0;
    out = d.asDiagonal() * out * d.asDiagonal();
    for (Eigen::Index i = 0; i < out.rows(); ++i)
        out(i, i) = d(i) > 0.0 ? 1.0 : 0.0;
    return 0.5 * (out + out.transpose());
}

// Symmetric square root of a PSD matrix (eigenvalues clipped at 0).
inline RMatrix sqrt_psd(const RMatrix &r)
{
    if (r.rows() == 0)
        return r;
    Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (r + r.transpose()));
    if (es.info() != Eigen::Success)
        throw InternalError("sqrt_psd: eigen-decomposition failed");
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() < -1e-9 * scale)
        throw InternalError("sqrt_psd: matrix is not positive semi-definite");
    RVector s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().transpose();
}

struct PsdFactor
{
    RMatrix repaired; // repair_psd(r)
    RMatrix root;     // symmetric square root of `repaired`
};

// repair_psd followed by the symmetric square root, sharing the eigen-decomposition
// when no repair is needed.
inline PsdFactor repair_and_sqrt(const RMatrix &r)
{
    PsdFactor f;
    if (r.rows() == 0)
        return f;
    RMatrix sym = 0.5 * (r + r.transpose());
    Eigen::SelfAdjointEigenSolver<RMatrix> es(sym);
    if (es.info() != Eigen::Success)
        throw InternalError("repair_and_sqrt: eigen-decomposition failed");
    if (es.eigenvalues().minCoeff() >= 0.0) {
        f.repaired = std::move(sym);
        f.root = es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
        return f;
    }
    f.repaired = repair_psd(r);
    f.root = sqrt_psd(f.repaired);
    return f;
}

} // namespace cransim

#endif
