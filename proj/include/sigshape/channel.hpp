// SPDX-License-Identifier: Apache-2.0
//
// sigshape - transmit-vector set design for GenSM/GenQSM MIMO links
// Copyright (C) 2026 The sigshape authors
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

#ifndef SIGSHAPE_CHANNEL_HPP
#define SIGSHAPE_CHANNEL_HPP

#include "sigshape/common.hpp"

#include <iosfwd>

namespace sigshape::channel {

// N_r x N_t complex channel.
struct ComplexChannel {
    Eigen::MatrixXcd entries;
};

// 2N_r x 2N_t real expansion [Re -Im; Im Re].
struct RealChannel {
    Eigen::MatrixXd entries;
};

// Exponential transmit correlation with real coefficient delta.
struct CorrelationModel {
    double delta = 0.0;
    Eigen::MatrixXcd r_tx;   // [R_tx]_{k,l} = delta^|k-l|
    Eigen::MatrixXcd r_sqrt; // principal square root of r_tx
    Eigen::MatrixXd weight;  // real expansion of r_sqrt, 2N_t x 2N_t

    int n_t() const { return static_cast<int>(r_tx.rows()); }
};

struct ChannelSample {
    ComplexChannel complex;
    RealChannel real;
};

// Throws std::domain_error unless 0 <= delta < 1 and n_t >= 1.
CorrelationModel make_correlation(double delta, int n_t);

// Principal square root of a Hermitian PSD matrix. Eigenvalues in
// (-1e-10, 0) are clamped to zero; anything lower raises NotPsdError.
Eigen::MatrixXcd matrix_sqrt(const Eigen::MatrixXcd& psd);

Eigen::MatrixXd real_expand(const Eigen::MatrixXcd& m);
Eigen::VectorXd real_expand(const Eigen::VectorXcd& v);
Eigen::VectorXcd complex_compress(const Eigen::VectorXd& v);

// H = H_w R_tx^{1/2} with H_w i.i.d. CN(0, 1).
ChannelSample sample_channel(Rng& rng, const CorrelationModel& corr, int n_r);

// Adds i.i.d. CN(0, eta/rho) estimation error. eta == 0 returns the input.
ComplexChannel perturb_channel(const ComplexChannel& ch, double eta, double rho, Rng& rng);

// CSV: one row per matrix row, columns re1,im1,re2,im2,...
void write_channel_csv(std::ostream& os, const ComplexChannel& ch);
ComplexChannel read_channel_csv(std::istream& is);

} // namespace sigshape::channel

#endif
