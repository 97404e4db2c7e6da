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

#ifndef SIGSHAPE_SHAPING_HPP
#define SIGSHAPE_SHAPING_HPP

#include "sigshape/channel.hpp"
#include "sigshape/common.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace sigshape::shaping {

// Rows are transmit vectors in the real domain (2 N_t columns).
using PointSet = Eigen::MatrixXd;

enum class WeightMode { Identity, Statistical, Instantaneous };

std::string_view to_string(WeightMode m);
WeightMode parse_weight_mode(std::string_view text);
WeightMode weight_mode_for(CsitMode csit);

struct WeightMatrix {
    WeightMode mode = WeightMode::Identity;
    Eigen::MatrixXd entries;

    Eigen::Index cols() const { return entries.cols(); }
};

struct Provenance {
    std::string method = "manual";
    WeightMode weight = WeightMode::Identity;
    std::uint64_t seed = 0;
    std::vector<int> partition; // per-TAC point counts, empty if not applicable
};

// A designed constellation X_N. Construction enforces |X| = 2^n, the
// scheme's sparsity pattern on every vector and pairwise distinctness.
class TransmitSet {
public:
    TransmitSet(SystemConfig config, PointSet points, Provenance provenance = {});

    const SystemConfig& config() const { return config_; }
    const PointSet& points() const { return points_; }
    const Provenance& provenance() const { return provenance_; }
    std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
    Eigen::VectorXd vector(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)).transpose(); }

private:
    SystemConfig config_;
    PointSet points_;
    Provenance provenance_;
};

double average_power(const PointSet& points);
double average_power(const TransmitSet& set);

// min over unordered pairs of ||A (x_i - x_j)||. Needs at least two points.
double min_distance(const PointSet& points, const Eigen::MatrixXd& a);
double min_distance(const TransmitSet& set, const WeightMatrix& a);

// d_min^2 / P.
double cfm(const PointSet& points, const Eigen::MatrixXd& a);
double cfm(const TransmitSet& set, const WeightMatrix& a);

WeightMatrix make_weight(WeightMode mode, int n_t, const channel::CorrelationModel* corr = nullptr,
                         const channel::RealChannel* ch = nullptr);

PointSet normalize_power(const PointSet& points);
TransmitSet normalize_power(const TransmitSet& set);

// CSV with a leading "# sigshape ..." comment carrying config and
// provenance, a header x1..x{2N_t} and one vector per row. Values use the
// shortest round-trip decimal form.
void write_set_csv(std::ostream& os, const TransmitSet& set);
TransmitSet read_set_csv(std::istream& is);

} // namespace sigshape::shaping

#endif
