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

#ifndef SIGSHAPE_OBSS_HPP
#define SIGSHAPE_OBSS_HPP

#include "sigshape/shaping.hpp"
#include "sigshape/tac.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sigshape::obss {

// Number of points assigned to each TAC (the partition matrix W_t stored
// as counts). Points are stacked TAC-major: all points of TAC 0, then TAC 1...
struct PartitionIndicator {
    std::vector<int> counts;

    int total() const;
    std::vector<int> point_tacs() const;
    bool operator==(const PartitionIndicator&) const = default;
};

// Entry-optimization problem for a fixed partition: maximize
// min_{i<j} q^T Q_ij q subject to q^T q <= t.
struct QcqpInstance {
    int points = 0;          // t
    int block = 0;           // 2 N_RF entries per point
    int n_t = 0;
    std::vector<int> point_tac;
    Eigen::MatrixXd w;       // W_t, 2N_t x (t * block)
    Eigen::MatrixXd r_aw;    // W_t^T A^T A W_t
    double power_budget = 0; // t

    int dimension() const { return points * block; }
    std::size_t pair_count() const { return static_cast<std::size_t>(points) * static_cast<std::size_t>(points - 1) / 2; }

    // q^T Q_ij q evaluated from the (i,i), (j,j), (i,j) blocks of R_AW.
    double pair_form(int i, int j, const Eigen::Ref<const Eigen::VectorXd>& q) const;

    // Dense Q_ij = R_AW (Hadamard) (e_i - e_j)(e_i - e_j)^T with e_i = g_i (x) 1.
    Eigen::MatrixXd pair_matrix(int i, int j) const;

    // Rows x_i = W_t D_q e_i.
    shaping::PointSet points_from(const Eigen::Ref<const Eigen::VectorXd>& q) const;
};

struct SolverOptions {
    int max_iters = 500;
    double tol = 1e-6;
    int restarts = 20;
    std::uint64_t seed = 1;
    int inner_iters = 40;
    // QAM order used for deterministic codebook warm starts; 0 disables them.
    int codebook_m_c = 16;
    bool record_trace = false;
    // Every start first runs to this looser relative tolerance; only the
    // best run continues to tol. Values <= tol disable screening.
    double screen_tol = 1e-4;
};

struct SolveResult {
    Eigen::VectorXd q;
    double d_min_sq = 0.0;
    bool converged = false;
    int iterations = 0; // outer iterations of the winning run
    int best_run = 0;
    // Per run, min_{i<j} q^T Q_ij q after every outer iteration.
    std::vector<std::vector<double>> traces;
};

QcqpInstance build_qcqp(const PartitionIndicator& partition, const tac::TacFamily& family, const Eigen::MatrixXd& a);

// Multi-start sequential convexification. Warm starts run first, followed
// by opts.restarts random starts on the sphere of radius sqrt(t). The
// returned q satisfies q^T q = t. best_run indexes warm starts first.
SolveResult solve_entry_qcqp(const QcqpInstance& inst, const SolverOptions& opts,
                             std::span<const Eigen::VectorXd> warm_starts = {});

// Greedy codebook initialization for a fixed partition, scaled to q^T q = t.
Eigen::VectorXd codebook_start(const QcqpInstance& inst, const tac::TacFamily& family, const Eigen::MatrixXd& a, int m_c);

struct X2Result {
    shaping::TransmitSet set;
    PartitionIndicator partition;
    Eigen::VectorXd q;
    std::pair<int, int> tac_pair;
    std::size_t candidates_evaluated = 0;
};

// All |F|^2 ordered TAC pairs; best d_min, ties to the lowest pair.
X2Result exhaustive_x2(const tac::TacFamily& family, const shaping::WeightMatrix& a, const SolverOptions& opts);

struct DesignResult {
    shaping::TransmitSet set;
    PartitionIndicator partition;
    std::vector<double> d_min_by_size; // entry t-2 holds d_min of X_t at unit power
    std::size_t candidates_evaluated = 0;
    bool converged = true;
};

DesignResult recursive_design(const SystemConfig& config, const shaping::WeightMatrix& a, const SolverOptions& opts);

void write_trace_csv(std::ostream& os, const SolveResult& result);

// Transmit sets printed for the (3,2,2,3) GenSM and (3,2,2,4) GenQSM
// systems: gensm_d0, gensm_d01, gensm_d03, genqsm_d0, genqsm_d01, genqsm_d03.
shaping::TransmitSet load_fixture_set(const std::string& name);
std::vector<std::string> fixture_names();
double fixture_delta(const std::string& name);

} // namespace sigshape::obss

#endif
