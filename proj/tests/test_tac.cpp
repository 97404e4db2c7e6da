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

#include <catch_amalgamated.hpp>

#include <set>

using namespace sigshape;

namespace {

SystemConfig cfg(int n_t, int n_rf, Scheme s)
{
    return SystemConfig{n_t, 2, n_rf, 3, s, CsitMode::None};
}

} // namespace

TEST_CASE("combinations are lexicographic and complete")
{
    const auto c = tac::combinations(4, 2);
    const std::vector<std::vector<int>> expect{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    CHECK(c == expect);
    for (int n = 1; n <= 7; ++n)
        for (int k = 0; k <= n; ++k) {
            const auto all = tac::combinations(n, k);
            CHECK(all.size() == binomial(n, k));
            CHECK(std::is_sorted(all.begin(), all.end()));
            CHECK(std::set<std::vector<int>>(all.begin(), all.end()).size() == all.size());
        }
}

TEST_CASE("family sizes")
{
    CHECK(tac::enumerate_tacs(cfg(3, 2, Scheme::GenSM)).size() == 3);
    CHECK(tac::enumerate_tacs(cfg(3, 2, Scheme::GenQSM)).size() == 9);
    CHECK(tac::enumerate_tacs(cfg(4, 2, Scheme::GenSM)).size() == 6);
    CHECK(tac::enumerate_tacs(cfg(4, 2, Scheme::GenQSM)).size() == 36);
    CHECK(tac::enumerate_tacs(cfg(4, 4, Scheme::GenSM)).size() == 1);
    CHECK_THROWS_AS(tac::enumerate_tacs(cfg(2, 3, Scheme::GenSM)), std::domain_error);
}

TEST_CASE("GenQSM members are real-support major")
{
    const auto fam = tac::enumerate_tacs(cfg(3, 2, Scheme::GenQSM));
    CHECK(fam[0].real_support == std::vector<int>{0, 1});
    CHECK(fam[0].imag_support == std::vector<int>{0, 1});
    CHECK(fam[1].real_support == std::vector<int>{0, 1});
    CHECK(fam[1].imag_support == std::vector<int>{0, 2});
    CHECK(fam[3].real_support == std::vector<int>{0, 2});
    CHECK(fam[3].imag_support == std::vector<int>{0, 1});
    const auto sm = tac::enumerate_tacs(cfg(3, 2, Scheme::GenSM));
    for (const auto& m : sm.members) CHECK(m.real_support == m.imag_support);
}

TEST_CASE("apply_tac equals the selection matrix product")
{
    for (Scheme s : {Scheme::GenSM, Scheme::GenQSM}) {
        const SystemConfig c = cfg(4, 2, s);
        const auto fam = tac::enumerate_tacs(c);
        Rng rng(4);
        std::normal_distribution<double> n01;
        for (const auto& m : fam.members) {
            Eigen::VectorXd sym(4);
            for (int i = 0; i < 4; ++i) sym(i) = n01(rng);
            const Eigen::VectorXd x = tac::apply_tac(m, 4, sym);
            CHECK((x - tac::selection_matrix(m, 4) * sym).norm() == 0.0);
            CHECK(tac::check_sparsity(x, c));
            CHECK(tac::check_conventional_sparsity(x, 2));
            CHECK(x.norm() == Catch::Approx(sym.norm()));
        }
    }
}

TEST_CASE("the GenSM and GenQSM sparsity rules differ")
{
    Eigen::VectorXd x(6);
    // real part on antennas 1,2, imaginary part on antennas 2,3
    x << 1, 1, 0, 0, 1, 1;
    CHECK_FALSE(tac::check_sparsity(x, cfg(3, 2, Scheme::GenSM)));
    CHECK(tac::check_sparsity(x, cfg(3, 2, Scheme::GenQSM)));
    CHECK(tac::check_conventional_sparsity(x, 2));

    Eigen::VectorXd y(6);
    y << 1, 1, 1, 0, 0, 0;
    CHECK_FALSE(tac::check_sparsity(y, cfg(3, 2, Scheme::GenQSM)));
    CHECK(tac::check_sparsity(Eigen::VectorXd::Zero(6), cfg(3, 2, Scheme::GenSM)));
}

TEST_CASE("JSON round trip and validation")
{
    const SystemConfig c = cfg(3, 2, Scheme::GenQSM);
    const auto fam = tac::enumerate_tacs(c);
    const auto j = tac::to_json(fam);
    CHECK(j[0]["real_support"] == nlohmann::json::array({1, 2}));
    const auto back = tac::family_from_json(j, c);
    CHECK(back.members == fam.members);

    nlohmann::json dup = nlohmann::json::array();
    dup.push_back(j[0]);
    dup.push_back(j[0]);
    CHECK_THROWS(tac::family_from_json(dup, c));

    nlohmann::json bad = nlohmann::json::array();
    bad.push_back({{"real_support", {1, 4}}, {"imag_support", {1, 2}}});
    CHECK_THROWS(tac::family_from_json(bad, c));
}
