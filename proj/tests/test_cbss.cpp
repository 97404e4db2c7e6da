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

#include "sigshape/cbss.hpp"

#include "sigshape/tac.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

using namespace sigshape;
using Catch::Approx;

namespace {

const SystemConfig kSM{3, 2, 2, 3, Scheme::GenSM, CsitMode::Instantaneous};

shaping::WeightMatrix random_channel_weight(Rng& rng)
{
    const auto h = channel::sample_channel(rng, channel::make_correlation(0.0, 3), 2);
    return shaping::make_weight(shaping::WeightMode::Instantaneous, 3, nullptr, &h.real);
}

shaping::PointSet rows_of(const shaping::PointSet& cand, const std::vector<std::size_t>& idx)
{
    shaping::PointSet x(static_cast<Eigen::Index>(idx.size()), cand.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) x.row(static_cast<Eigen::Index>(i)) = cand.row(static_cast<Eigen::Index>(idx[i]));
    return x;
}

} // namespace

TEST_CASE("QAM constellations")
{
    for (int m : {4, 16, 64}) {
        const auto q = cbss::qam_constellation(m);
        REQUIRE(q.size() == static_cast<std::size_t>(m));
        double e = 0.0;
        for (const auto& s : q) e += std::norm(s);
        CHECK(e / m == Approx(1.0).epsilon(1e-12));
        for (const auto& s : q) {
            bool found = false;
            for (const auto& t : q) found = found || std::abs(t + s) < 1e-15;
            CHECK(found);
            CHECK(s.real() != 0.0);
            CHECK(s.imag() != 0.0);
        }
    }
    const auto q4 = cbss::qam_constellation(4);
    CHECK(q4[0].real() == Approx(-std::sqrt(0.5)));
    const auto q16 = cbss::qam_constellation(16);
    CHECK(q16[0] == Complex(-3.0 / std::sqrt(10.0), -3.0 / std::sqrt(10.0)));
    CHECK(q16[1] == Complex(-3.0 / std::sqrt(10.0), -1.0 / std::sqrt(10.0)));
    CHECK_THROWS(cbss::qam_constellation(8));
}

TEST_CASE("codebook sizes and sparsity")
{
    const auto fam = tac::enumerate_tacs(kSM);
    const auto cb16 = cbss::build_codebook(kSM, fam, 16);
    CHECK(cb16.size() == 768);
    const auto cb4 = cbss::build_codebook(kSM, fam, 4);
    CHECK(cb4.size() == 48);
    for (Eigen::Index i = 0; i < cb16.candidates.rows(); ++i) {
        const Eigen::VectorXd x = cb16.candidates.row(i).transpose();
        CHECK(tac::check_sparsity(x, kSM));
        CHECK((x.array() != 0.0).count() == 4);
    }
    std::set<std::vector<double>> distinct;
    for (Eigen::Index i = 0; i < cb16.candidates.rows(); ++i) {
        const Eigen::VectorXd r = cb16.candidates.row(i).transpose();
        distinct.insert(std::vector<double>(r.data(), r.data() + r.size()));
    }
    CHECK(distinct.size() == 768);
    CHECK(cbss::symbol_vectors(2, 4).rows() == 16);
}

TEST_CASE("antipodal pair wins on a tiny codebook")
{
    cbss::Codebook cb;
    cb.config = SystemConfig{3, 2, 2, 1, Scheme::GenSM, CsitMode::None};
    cb.m_c = 4;
    cb.candidates = shaping::PointSet::Zero(4, 6);
    cb.candidates(0, 0) = 1.0;
    cb.candidates(1, 0) = -1.0;
    cb.candidates(2, 1) = 2.0;
    cb.candidates(3, 1) = -2.0;
    const auto w = shaping::make_weight(shaping::WeightMode::Identity, 3);
    const auto sel = cbss::progressive_select(cb, w, 2);
    // {e1, -e1} and {2e2, -2e2} both reach CFM 4; the lower indices win.
    CHECK(sel.indices == std::vector<std::size_t>{0, 1});
    REQUIRE(sel.trace.size() == 1);
    CHECK(sel.trace[0].cfm == Approx(4.0));
    CHECK(shaping::average_power(sel.set) == Approx(1.0));
    CHECK_THROWS_AS(cbss::progressive_select(cb, w, 8), InfeasibleError);
    CHECK_THROWS_AS(cbss::progressive_select(cb, w, 3), std::invalid_argument);
}

TEST_CASE("every greedy step is step-optimal")
{
    Rng rng(31);
    const auto fam = tac::enumerate_tacs(kSM);
    const auto cb = cbss::build_codebook(kSM, fam, 16);
    for (int trial = 0; trial < 3; ++trial) {
        const auto w = random_channel_weight(rng);
        const auto sel = cbss::progressive_select(cb, w, 8);
        REQUIRE(sel.indices.size() == 8);
        REQUIRE(sel.trace.size() == 7);

        // initial pair: exhaustive
        const double pair_cfm = shaping::cfm(rows_of(cb.candidates, {sel.indices[0], sel.indices[1]}), w.entries);
        CHECK(sel.trace[0].cfm == Approx(pair_cfm).epsilon(1e-12));
        for (std::size_t i = 0; i < cb.size(); i += 7)
            for (std::size_t j = i + 1; j < cb.size(); j += 5)
                CHECK(shaping::cfm(rows_of(cb.candidates, {i, j}), w.entries) <= pair_cfm * (1 + 1e-12));

        for (std::size_t s = 2; s < 8; ++s) {
            std::vector<std::size_t> prefix(sel.indices.begin(), sel.indices.begin() + static_cast<long>(s));
            prefix.push_back(sel.indices[s]);
            const double chosen = shaping::cfm(rows_of(cb.candidates, prefix), w.entries);
            CHECK(sel.trace[s - 1].cfm == Approx(chosen).epsilon(1e-12));
            CHECK(sel.trace[s - 1].step == static_cast<int>(s + 1));
            for (std::size_t c = 0; c < cb.size(); ++c) {
                if (std::find(sel.indices.begin(), sel.indices.begin() + static_cast<long>(s), c) !=
                    sel.indices.begin() + static_cast<long>(s))
                    continue;
                prefix.back() = c;
                CHECK(shaping::cfm(rows_of(cb.candidates, prefix), w.entries) <= chosen * (1 + 1e-12));
            }
        }

        // output is the normalized subset of the codebook
        const shaping::PointSet raw = rows_of(cb.candidates, sel.indices);
        const double scale = std::sqrt(shaping::average_power(raw));
        CHECK((sel.set.points() * scale - raw).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("greedy never beats exhaustive search on small codebooks")
{
    Rng rng(32);
    const auto fam = tac::enumerate_tacs(kSM);
    const auto full = cbss::build_codebook(kSM, fam, 4);
    for (int trial = 0; trial < 20; ++trial) {
        cbss::Codebook cb = full;
        std::vector<std::size_t> pick(full.size());
        std::iota(pick.begin(), pick.end(), 0);
        std::shuffle(pick.begin(), pick.end(), rng);
        pick.resize(12);
        cb.candidates = rows_of(full.candidates, pick);
        const auto w = random_channel_weight(rng);
        const auto sel = cbss::progressive_select(cb, w, 4);
        const double greedy = shaping::cfm(sel.set.points(), w.entries);
        double best = 0.0;
        for (const auto& s : tac::combinations(12, 4)) {
            std::vector<std::size_t> idx(s.begin(), s.end());
            best = std::max(best, shaping::cfm(rows_of(cb.candidates, idx), w.entries));
        }
        CHECK(best >= greedy * (1 - 1e-12));
    }
}

TEST_CASE("selection trace CSV")
{
    Rng rng(33);
    const auto fam = tac::enumerate_tacs(kSM);
    const auto cb = cbss::build_codebook(kSM, fam, 4);
    const auto sel = cbss::progressive_select(cb, random_channel_weight(rng), 4);
    std::ostringstream os;
    cbss::write_trace_csv(os, sel);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "step,index,cfm");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 3);
}
