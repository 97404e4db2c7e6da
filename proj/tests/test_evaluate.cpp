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

#include "sigshape/evaluate.hpp"

#include "sigshape/obss.hpp"
#include "sigshape/tac.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace sigshape;
using Catch::Approx;

namespace {

double q_function(double x)
{
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

// Union bound written out term by term.
double bound_oracle(const shaping::PointSet& x, const Eigen::MatrixXd& r, double rho, int n_r)
{
    double c = std::pow(rho, -n_r) / static_cast<double>(x.rows());
    double binom = 1.0;
    for (int k = 1; k <= n_r; ++k) binom *= static_cast<double>(2 * n_r - 1 - n_r + k) / k;
    c *= binom;
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i)
        for (Eigen::Index j = 0; j < x.rows(); ++j)
            if (i != j) s += std::pow((r * (x.row(i) - x.row(j)).transpose()).norm(), -2.0 * n_r);
    return c * s;
}

shaping::TransmitSet bpsk_pair()
{
    shaping::PointSet x = shaping::PointSet::Zero(2, 6);
    x(0, 0) = 1.0;
    x(1, 0) = -1.0;
    return shaping::TransmitSet(SystemConfig{3, 2, 2, 1, Scheme::GenSM, CsitMode::None}, x);
}

} // namespace

TEST_CASE("SNR grid conversion")
{
    const auto g = evaluate::SnrGrid::from_db({0.0, 10.0, 20.0});
    CHECK(g.rho[0] == Approx(1.0));
    CHECK(g.rho[1] == Approx(10.0));
    CHECK(g.rho[2] == Approx(100.0));
    CHECK(g.db()[2] == Approx(20.0));
    CHECK_THROWS(evaluate::SnrGrid::from_db({10.0, 5.0}));
}

TEST_CASE("Wilson interval")
{
    const auto zero = evaluate::wilson_interval(0, 10);
    CHECK(zero.low == 0.0);
    const double z2 = 1.959963984540054 * 1.959963984540054;
    CHECK(zero.high == Approx(z2 / (10.0 + z2)).epsilon(1e-12));
    const auto mid = evaluate::wilson_interval(50, 100);
    CHECK(mid.low + mid.high == Approx(1.0));
    CHECK(mid.low < 0.5);
    CHECK(mid.high > 0.5);
}

TEST_CASE("union bound on a two-point set")
{
    // N = 2, N_r = 2, rho = 10, d = 2:  (1/100)/2 * 3 * 2 * 2^-4
    const auto set = bpsk_pair();
    const auto id = channel::make_correlation(0.0, 3);
    CHECK(std::abs(evaluate::ser_upper_bound(set, id, 10.0, 2) - 0.001875) < 1e-12);
}

TEST_CASE("union bound matches the term-by-term oracle")
{
    for (const auto& name : obss::fixture_names()) {
        const auto set = obss::load_fixture_set(name);
        const auto corr = channel::make_correlation(0.3, 3);
        for (int n_r : {1, 2, 4})
            for (double rho : {1.0, 31.6, 1000.0}) {
                const double b = evaluate::ser_upper_bound(set, corr, rho, n_r);
                CHECK(b == Approx(bound_oracle(set.points(), corr.weight, rho, n_r)).epsilon(1e-12));
            }
    }
    shaping::PointSet dup = shaping::PointSet::Zero(2, 6);
    CHECK_THROWS_AS(evaluate::ser_upper_bound(dup, Eigen::MatrixXd::Identity(6, 6), 10.0, 2), std::domain_error);
}

TEST_CASE("fixed-channel binary SER matches the Gaussian tail")
{
    Rng rng(41);
    const auto h = channel::sample_channel(rng, channel::make_correlation(0.0, 3), 2);
    const auto set = bpsk_pair();
    const double d = shaping::min_distance(set.points(), h.real.entries);
    for (double rho : {0.5, 2.0, 5.0}) {
        Rng noise(static_cast<std::uint64_t>(rho * 100));
        const auto p = evaluate::simulate_ser_fixed(set.points(), h.real.entries, rho, 100000, noise);
        const double expect = q_function(std::sqrt(rho / 2.0) * d);
        const double se = std::sqrt(expect * (1.0 - expect) / 100000.0);
        CHECK(std::abs(p.ser - expect) <= 3.0 * se);
        CHECK(std::isnan(p.bound));
    }
}

TEST_CASE("simulated SER stays below the bound at high SNR and decreases with SNR")
{
    const auto set = obss::load_fixture_set("gensm_d0");
    const auto corr = channel::make_correlation(0.0, 3);
    const auto grid = evaluate::SnrGrid::from_db({0.0, 5.0, 10.0, 15.0, 20.0, 25.0});
    const auto curve = evaluate::simulate_curve(set, corr, 2, grid, 20000, 5);
    REQUIRE(curve.size() == 6);
    for (std::size_t k = 1; k < curve.size(); ++k) CHECK(curve[k].ser <= curve[k - 1].ser);
    const auto& last = curve.back();
    CHECK(last.ser - 3.0 * last.std_error() <= last.bound);
    CHECK(last.bound == Approx(evaluate::ser_upper_bound(set, corr, last.rho, 2)).epsilon(1e-12));
    CHECK(last.ci.low <= last.ser);
    CHECK(last.ci.high >= last.ser);
}

TEST_CASE("channel estimation error never helps")
{
    const auto set = obss::load_fixture_set("gensm_d0");
    const auto corr = channel::make_correlation(0.0, 3);
    const auto grid = evaluate::SnrGrid::from_db({5.0, 10.0, 15.0});
    const auto clean = evaluate::simulate_curve(set, corr, 2, grid, 20000, 6, 0.0);
    const auto noisy = evaluate::simulate_curve(set, corr, 2, grid, 20000, 6, 0.2);
    for (std::size_t k = 0; k < clean.size(); ++k) {
        const double se = std::hypot(clean[k].std_error(), noisy[k].std_error());
        CHECK(noisy[k].ser >= clean[k].ser - 3.0 * se);
    }
    CHECK(noisy[1].ser > clean[1].ser);
}

TEST_CASE("conventional baselines")
{
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(6, 6);
    const SystemConfig sm{3, 2, 2, 3, Scheme::GenSM, CsitMode::None};
    const auto b = evaluate::baseline_design(sm, evaluate::BaselineFlavor::BpskGenSM, id);
    CHECK(b.size() == 8);
    CHECK(b.provenance().method == "baseline");
    CHECK(shaping::min_distance(b.points(), id) == Approx(1.0).epsilon(1e-12));
    CHECK(shaping::average_power(b) == Approx(1.0).epsilon(1e-12));
    // lexicographically first TAC pair {1,2}, {1,3}
    CHECK(b.points()(0, 1) != 0.0);
    CHECK(b.points()(7, 2) != 0.0);

    const SystemConfig qsm{3, 2, 2, 4, Scheme::GenQSM, CsitMode::None};
    const auto q = evaluate::baseline_design(qsm, evaluate::BaselineFlavor::QuarterPiBpskGenQSM, id);
    CHECK(q.size() == 16);
    CHECK(shaping::min_distance(q.points(), id) == Approx(std::sqrt(0.5)).epsilon(1e-12));
    for (std::size_t i = 0; i < q.size(); ++i) {
        CHECK(tac::check_sparsity(q.vector(i), qsm));
        CHECK(q.vector(i).squaredNorm() == Approx(1.0));
    }

    SystemConfig wrong = sm;
    wrong.n_bits = 4;
    CHECK_THROWS_AS(evaluate::baseline_design(wrong, evaluate::BaselineFlavor::BpskGenSM, id), std::invalid_argument);
    CHECK_THROWS(evaluate::baseline_design(sm, evaluate::BaselineFlavor::QuarterPiBpskGenQSM, id));
    CHECK(evaluate::parse_baseline_flavor("bpsk-gensm") == evaluate::BaselineFlavor::BpskGenSM);
}

TEST_CASE("CCDF table shape")
{
    const SystemConfig c{3, 2, 2, 3, Scheme::GenSM, CsitMode::Instantaneous};
    const auto corr = channel::make_correlation(0.0, 3);
    const evaluate::Designer design = [&](const shaping::WeightMatrix& w) {
        return evaluate::baseline_design(c, evaluate::BaselineFlavor::BpskGenSM, w.entries).points();
    };
    Rng rng(7);
    const auto t = evaluate::dmin_ccdf(design, c, corr, {0.0, 0.5, 1.0, 1.5, 100.0}, 100, rng);
    REQUIRE(t.ccdf.size() == 5);
    CHECK(t.samples.size() == 100);
    CHECK(t.ccdf.front() == 1.0);
    CHECK(t.ccdf.back() == 0.0);
    for (std::size_t k = 1; k < t.ccdf.size(); ++k) CHECK(t.ccdf[k] <= t.ccdf[k - 1]);

    std::ostringstream os;
    evaluate::write_ccdf_csv(os, t);
    const std::string text = os.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
}

TEST_CASE("identical designs give identical report rows")
{
    const auto set = obss::load_fixture_set("gensm_d0");
    const auto corr = channel::make_correlation(0.0, 3);
    const auto rows = evaluate::compare_designs({{"a", set}, {"b", set}}, corr, 2, {0.0, 10.0}, 2000, 3);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].point.errors == rows[2].point.errors);
    CHECK(rows[1].point.errors == rows[3].point.errors);
    std::ostringstream os;
    evaluate::write_report_csv(os, rows);
    CHECK(os.str().rfind("design,snr_db,ser", 0) == 0);
}
