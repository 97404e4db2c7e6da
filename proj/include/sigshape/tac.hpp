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

#ifndef SIGSHAPE_TAC_HPP
#define SIGSHAPE_TAC_HPP

#include "sigshape/common.hpp"

#include <json.hpp>

#include <vector>

namespace sigshape::tac {

// One transmit-antenna combination, stored as 0-based antenna index sets.
// For GenSM the imaginary support always equals the real support.
struct TacDescriptor {
    Scheme scheme = Scheme::GenSM;
    std::vector<int> real_support;
    std::vector<int> imag_support;

    bool operator==(const TacDescriptor&) const = default;
};

struct TacFamily {
    SystemConfig config;
    std::vector<TacDescriptor> members;

    std::size_t size() const { return members.size(); }
    const TacDescriptor& operator[](std::size_t k) const { return members[k]; }
};

// All size-k subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> combinations(int n, int k);

// Lexicographic order. GenQSM members are ordered real-support major.
TacFamily enumerate_tacs(const SystemConfig& config);

// Scatters s (2 N_RF entries: real parts then imaginary parts) into a
// 2 N_t vector.
Eigen::VectorXd apply_tac(const TacDescriptor& tac, int n_t, const Eigen::Ref<const Eigen::VectorXd>& s);

// Dense F_k, 2N_t x 2N_RF.
Eigen::MatrixXd selection_matrix(const TacDescriptor& tac, int n_t);

// Position-constrained sparsity: |I^R u I^I| <= N_RF for GenSM,
// |I^R| <= N_RF and |I^I| <= N_RF for GenQSM.
bool check_sparsity(const Eigen::Ref<const Eigen::VectorXd>& x, const SystemConfig& config);

// ||x||_0 <= 2 N_RF.
bool check_conventional_sparsity(const Eigen::Ref<const Eigen::VectorXd>& x, int n_rf);

// JSON list of {real_support, imag_support} with 1-based antenna numbers.
nlohmann::json to_json(const TacFamily& family);
TacFamily family_from_json(const nlohmann::json& j, const SystemConfig& config);

} // namespace sigshape::tac

#endif
