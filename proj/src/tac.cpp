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

#include "sigshape/tac.hpp"

#include <set>

namespace sigshape::tac {

std::vector<std::vector<int>> combinations(int n, int k)
{
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

TacFamily enumerate_tacs(const SystemConfig& config)
{
    if (config.n_rf < 1 || config.n_t < 1)
        throw std::domain_error("enumerate_tacs: N_t and N_RF must be positive");
    if (config.n_rf > config.n_t)
        throw std::domain_error("enumerate_tacs: N_RF exceeds N_t");

    TacFamily family;
    family.config = config;
    const auto subsets = combinations(config.n_t, config.n_rf);
    if (config.scheme == Scheme::GenSM) {
        for (const auto& c : subsets) family.members.push_back({Scheme::GenSM, c, c});
    } else {
        for (const auto& cu : subsets)
            for (const auto& cv : subsets) family.members.push_back({Scheme::GenQSM, cu, cv});
    }
    return family;
}

Eigen::VectorXd apply_tac(const TacDescriptor& tac, int n_t, const Eigen::Ref<const Eigen::VectorXd>& s)
{
    const auto n_rf = static_cast<Eigen::Index>(tac.real_support.size());
    if (s.size() != 2 * n_rf || static_cast<Eigen::Index>(tac.imag_support.size()) != n_rf)
        throw std::invalid_argument("apply_tac: symbol vector must have 2 N_RF entries");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * n_t);
    for (Eigen::Index r = 0; r < n_rf; ++r) {
        const int re = tac.real_support[static_cast<std::size_t>(r)];
        const int im = tac.imag_support[static_cast<std::size_t>(r)];
        if (re < 0 || re >= n_t || im < 0 || im >= n_t)
            throw std::invalid_argument("apply_tac: support index out of range");
        x(re) = s(r);
        x(n_t + im) = s(n_rf + r);
    }
    return x;
}

Eigen::MatrixXd selection_matrix(const TacDescriptor& tac, int n_t)
{
    const auto n_rf = static_cast<Eigen::Index>(tac.real_support.size());
    Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2 * n_t, 2 * n_rf);
    for (Eigen::Index r = 0; r < n_rf; ++r) {
        f(tac.real_support[static_cast<std::size_t>(r)], r) = 1.0;
        f(n_t + tac.imag_support[static_cast<std::size_t>(r)], n_rf + r) = 1.0;
    }
    return f;
}

bool check_sparsity(const Eigen::Ref<const Eigen::VectorXd>& x, const SystemConfig& config)
{
    const int n_t = config.n_t;
    if (x.size() != 2 * n_t) return false;
    int real_count = 0, imag_count = 0, union_count = 0;
    for (int k = 0; k < n_t; ++k) {
        const bool re = x(k) != 0.0;
        const bool im = x(n_t + k) != 0.0;
        real_count += re;
        imag_count += im;
        union_count += re || im;
    }
    if (config.scheme == Scheme::GenSM) return union_count <= config.n_rf;
    return real_count <= config.n_rf && imag_count <= config.n_rf;
}

bool check_conventional_sparsity(const Eigen::Ref<const Eigen::VectorXd>& x, int n_rf)
{
    Eigen::Index nnz = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) nnz += x(i) != 0.0;
    return nnz <= 2 * n_rf;
}

nlohmann::json to_json(const TacFamily& family)
{
    auto one_based = [](const std::vector<int>& v) {
        std::vector<int> out;
        for (int i : v) out.push_back(i + 1);
        return out;
    };
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : family.members)
        arr.push_back({{"real_support", one_based(m.real_support)}, {"imag_support", one_based(m.imag_support)}});
    return arr;
}

TacFamily family_from_json(const nlohmann::json& j, const SystemConfig& config)
{
    if (!j.is_array())
        throw std::invalid_argument("TAC family JSON must be an array");
    TacFamily family;
    family.config = config;
    std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
    for (const auto& item : j) {
        TacDescriptor d;
        d.scheme = config.scheme;
        for (int i : item.at("real_support").get<std::vector<int>>()) d.real_support.push_back(i - 1);
        for (int i : item.at("imag_support").get<std::vector<int>>()) d.imag_support.push_back(i - 1);
        auto valid = [&](const std::vector<int>& s) {
            if (static_cast<int>(s.size()) != config.n_rf) return false;
            for (std::size_t k = 0; k < s.size(); ++k) {
                if (s[k] < 0 || s[k] >= config.n_t) return false;
                if (k > 0 && s[k] <= s[k - 1]) return false;
            }
            return true;
        };
        if (!valid(d.real_support) || !valid(d.imag_support))
            throw std::invalid_argument("TAC support must be strictly increasing within [1, N_t]");
        if (config.scheme == Scheme::GenSM && d.real_support != d.imag_support)
            throw std::invalid_argument("GenSM TAC needs identical real and imaginary supports");
        if (!seen.insert({d.real_support, d.imag_support}).second)
            throw std::invalid_argument("duplicate TAC in family");
        family.members.push_back(std::move(d));
    }
    return family;
}

} // namespace sigshape::tac
