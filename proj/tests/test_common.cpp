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

#include "sigshape/common.hpp"

#include <catch_amalgamated.hpp>

#include <limits>

using namespace sigshape;

TEST_CASE("scheme and csit names round-trip")
{
    for (Scheme s : {Scheme::GenSM, Scheme::GenQSM}) CHECK(parse_scheme(to_string(s)) == s);
    for (CsitMode m : {CsitMode::None, CsitMode::Statistical, CsitMode::Instantaneous})
        CHECK(parse_csit(to_string(m)) == m);
    CHECK_THROWS_AS(parse_scheme("qsm"), std::invalid_argument);
    CHECK_THROWS_AS(parse_csit("full"), std::invalid_argument);
}

TEST_CASE("system config validation")
{
    SystemConfig c{3, 2, 2, 3, Scheme::GenSM, CsitMode::None};
    CHECK_NOTHROW(c.validate());
    CHECK(c.set_size() == 8);
    CHECK(c.real_dim() == 6);

    SystemConfig bad = c;
    bad.n_rf = 4;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.n_bits = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.n_r = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("named streams are reproducible and distinct")
{
    Rng a = make_stream(7, "channel");
    Rng b = make_stream(7, "channel");
    Rng c = make_stream(7, "noise");
    Rng d = make_stream(8, "channel");
    const auto va = a();
    CHECK(va == b());
    CHECK(va != c());
    CHECK(va != d());
}

TEST_CASE("double formatting round-trips exactly")
{
    Rng rng(3);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 20) - 10);
        CHECK(parse_double(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(parse_double(" +1.25 ") == 1.25);
    CHECK_THROWS(parse_double("1.2x"));
    CHECK_THROWS(parse_double(""));
}

TEST_CASE("binomial coefficients")
{
    CHECK(binomial(3, 2) == 3);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(7, 3) == 35);
    CHECK(binomial(3, 5) == 0);
    // Pascal's rule
    for (int n = 1; n < 25; ++n)
        for (int k = 1; k < n; ++k) CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("parse errors carry the line number")
{
    const ParseError e("bad token", 12);
    CHECK(e.line == 12);
    CHECK(std::string(e.what()).find("line 12") != std::string::npos);
}
