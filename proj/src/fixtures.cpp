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

#include "sigshape/channel.hpp"
#include "sigshape/obss.hpp"

#include <array>
#include <map>

namespace sigshape::obss {

namespace {

using C = Complex;

struct Fixture {
    Scheme scheme;
    int n_bits;
    double delta;
    std::vector<std::array<C, 3>> vectors;
};

// Transcription notes. Entries listed without an imaginary unit where one
// was evidently meant are restored: gensm_d01 x1(2) = -0.3710 - 0.4843j, genqsm_d01 x1(2) =
// -0.3369 - 0.5475j. genqsm_d0 x16(2) reads "-0.3728 0" and is taken as
// -0.3728. genqsm_d0 x14(3) carries the sign -0.6714j; with +0.6714j the
// set collapses to d_min 0.566 while every other pair sits at 1.2852.
const std::map<std::string, Fixture>& fixtures()
{
    static const std::map<std::string, Fixture> table = {
        {"gensm_d0",
         {Scheme::GenSM, 3, 0.0,
          {{C(-1.1177, -0.1533), C(0, 0), C(-0.0007, 0)},
           {C(0.1004, -0.7319), C(0, 0), C(0.0832, -0.5971)},
           {C(-0.1004, 0.7313), C(0, 0), C(0.0836, -0.5978)},
           {C(0, 0), C(0.4163, 0.4714), C(-0.6856, 0.2086)},
           {C(0, 0), C(0.6156, -0.3389), C(0.5214, 0.3777)},
           {C(0, 0), C(-0.5637, 0.5430), C(0.4065, 0.3614)},
           {C(0, 0), C(-0.4699, -0.6776), C(-0.4120, 0.2457)},
           {C(1.1178, 0.1534), C(-0.0001, -0.0004), C(0, 0)}}}},
        {"gensm_d01",
         {Scheme::GenSM, 3, 0.1,
          {{C(-0.1240, -0.8435), C(-0.3710, -0.4843), C(0, 0)},
           {C(0.8346, -0.1739), C(0.5824, 0.1816), C(0, 0)},
           {C(0.1239, 0.8434), C(0.3710, 0.4843), C(0, 0)},
           {C(0, 0), C(0.3067, -0.4391), C(0.5095, -0.7294)},
           {C(-0.3328, -0.2325), C(0, 0), C(0.6128, 0.4281)},
           {C(0, 0), C(-0.3067, 0.4391), C(-0.5095, 0.7294)},
           {C(0.3328, 0.2324), C(0, 0), C(-0.6128, -0.4281)},
           {C(-0.8346, 0.1740), C(-0.5824, -0.1816), C(0, 0)}}}},
        {"gensm_d03",
         {Scheme::GenSM, 3, 0.3,
          {{C(0, 0), C(0.1419, 0.7883), C(0.1285, 0.7472)},
           {C(0, 0), C(0.2711, -0.9099), C(0.3027, -1.0037)},
           {C(0, 0), C(-0.5012, 0.5787), C(-0.5744, 0.5369)},
           {C(-0.7199, -0.0137), C(-0.6850, -0.1235), C(0, 0)},
           {C(-0.1523, -0.6480), C(-0.2336, -0.4745), C(0, 0)},
           {C(0, 0), C(0.6269, 0.3302), C(0.6699, 0.2375)},
           {C(0.5631, -0.4223), C(0.4042, -0.3051), C(0, 0)},
           {C(-0.0535, 0.2969), C(0, 0), C(-0.0011, -0.0562)}}}},
        {"genqsm_d0",
         {Scheme::GenQSM, 4, 0.0,
          {{C(-0.2338, 0.3906), C(0.2806, -0.8627), C(0, 0)},
           {C(0.7852, -0.0556), C(-0.3070, -0.5995), C(0, 0)},
           {C(-0.4304, 0), C(-0.7608, -0.3647), C(0, -0.3581)},
           {C(0, 0), C(-0.6107, -0.0578), C(-0.0003, 0.8040)},
           {C(0, 0.0068), C(0.0017, -0.0002), C(-0.7925, 0)},
           {C(0, -0.9776), C(-0.1668, -0.1926), C(-0.0066, 0)},
           {C(0.5328, 0), C(0.8202, -0.1502), C(0, -0.3357)},
           {C(-0.0819, -0.3075), C(0.6306, 0), C(0, 0.7233)},
           {C(-0.2282, 0.5276), C(0.5738, 0.6377), C(0, 0)},
           {C(0.4247, 0), C(-0.2670, 0.3035), C(0, -0.8379)},
           {C(-1.0227, 0.1745), C(0, 0), C(-0.1326, 0.3776)},
           {C(-0.3438, -0.2904), C(-0.3953, 0.8120), C(0, 0)},
           {C(0.0112, 0), C(0, -0.0035), C(0.7889, -0.0042)},
           {C(-0.5899, -0.2664), C(0.3900, 0), C(0, -0.6714)},
           {C(0.7613, 0), C(0.0407, 0.5918), C(0, 0.3287)},
           {C(0.2101, 0.9225), C(-0.3728, 0), C(0, -0.0307)}}}},
        {"genqsm_d01",
         {Scheme::GenQSM, 4, 0.1,
          {{C(-0.3765, 0), C(-0.3369, -0.5475), C(0, -0.7490)},
           {C(-0.0084, 0), C(-0.2320, -0.7504), C(0, 0.8066)},
           {C(-0.7282, -0.1672), C(-0.6096, -0.0433), C(0, 0)},
           {C(0.1880, 0.8692), C(-0.1510, 0.5424), C(0, 0)},
           {C(0.7840, 0.1044), C(0.8328, 0), C(0, -0.1644)},
           {C(0, -0.9724), C(0.0054, -0.4107), C(-0.1058, 0)},
           {C(0.4920, -0.7041), C(0, 0), C(0.5193, 0.3054)},
           {C(-0.3073, 0.6054), C(0, 0), C(-0.1097, -0.5325)},
           {C(0.7253, 0.0536), C(0, 0.2223), C(-0.3856, 0)},
           {C(0, 0.4426), C(0.2281, 0.0567), C(0.6645, 0)},
           {C(0.2960, 0), C(0.2766, -0.2495), C(0, -0.6872)},
           {C(0.1775, 0), C(0.4132, 0.4427), C(0, 0.8821)},
           {C(-0.7016, 0), C(0, 0.4181), C(0.3013, 0.3728)},
           {C(-0.6165, -0.3602), C(0, 0), C(0.6890, -0.2347)},
           {C(0, 0.4195), C(-0.4286, 0), C(-0.6306, 0.4376)},
           {C(0.0450, -0.3236), C(0, 0), C(-0.9465, -0.2560)}}}},
        {"genqsm_d03",
         {Scheme::GenQSM, 4, 0.3,
          {{C(0.5878, -0.3085), C(0, -0.0947), C(-0.7883, 0)},
           {C(-0.9532, -0.1468), C(-0.7418, -0.1129), C(0, 0)},
           {C(0.4954, -0.6948), C(0.3057, -0.5752), C(0, 0)},
           {C(0, 0.6985), C(-0.4899, 0.5915), C(-0.5052, 0)},
           {C(0, 0), C(-0.4795, -0.4245), C(-0.6073, -0.4111)},
           {C(0, 0), C(-0.3107, 0.1851), C(-0.7693, 0.0429)},
           {C(0, -0.1242), C(0.0515, -0.1875), C(0.5202, 0)},
           {C(0.0417, 0.7919), C(0.0288, 0.6914), C(0, 0)},
           {C(0.9175, 0), C(0.4930, 0.0833), C(0, -0.0945)},
           {C(0, -0.3448), C(0.6695, -0.3860), C(0.8799, 0)},
           {C(0.4810, 0), C(0.1179, 0.2399), C(0, 0.4618)},
           {C(-0.5146, 0), C(0.0645, 0.0682), C(0, 0.8279)},
           {C(0, 0.7548), C(-0.0826, 0), C(-0.0552, -0.4427)},
           {C(-0.1837, 0), C(0.0788, -0.4790), C(0, -0.6750)},
           {C(0, 0), C(0.6779, 0.4047), C(0.8375, 0.3558)},
           {C(-0.8045, -0.3543), C(0, 0), C(0.2353, 0.0098)}}}},
    };
    return table;
}

const Fixture& find(const std::string& name)
{
    const auto& t = fixtures();
    auto it = t.find(name);
    if (it == t.end())
        throw std::invalid_argument("unknown fixture set '" + name + "'");
    return it->second;
}

} // namespace

std::vector<std::string> fixture_names()
{
    return {"gensm_d0", "gensm_d01", "gensm_d03", "genqsm_d0", "genqsm_d01", "genqsm_d03"};
}

double fixture_delta(const std::string& name) { return find(name).delta; }

shaping::TransmitSet load_fixture_set(const std::string& name)
{
    const Fixture& f = find(name);
    SystemConfig cfg{3, 2, 2, f.n_bits, f.scheme, f.delta == 0.0 ? CsitMode::None : CsitMode::Statistical};
    shaping::PointSet x(static_cast<Eigen::Index>(f.vectors.size()), 6);
    for (std::size_t i = 0; i < f.vectors.size(); ++i) {
        Eigen::VectorXcd v(3);
        v << f.vectors[i][0], f.vectors[i][1], f.vectors[i][2];
        x.row(static_cast<Eigen::Index>(i)) = channel::real_expand(v).transpose();
    }
    shaping::Provenance prov{"fixture", shaping::weight_mode_for(cfg.csit), 0, {}};
    return shaping::TransmitSet(cfg, std::move(x), prov);
}

} // namespace sigshape::obss
