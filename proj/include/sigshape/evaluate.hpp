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

#ifndef SIGSHAPE_EVALUATE_HPP
#define SIGSHAPE_EVALUATE_HPP

#include "sigshape/channel.hpp"
#include "sigshape/shaping.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace sigshape::evaluate {

// Average receive SNR values, linear scale, strictly increasing.
struct SnrGrid {
    std::vector<double> rho;

    static SnrGrid from_db(const std::vector<double>& db);
    std::vector<double> db() const;
};

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::size_t errors, std::size_t trials, double z = 1.959963984540054);

struct SerPoint {
    double rho = 0.0;
    double ser = 0.0;
    std::size_t trials = 0;
    std::size_t errors = 0;
    double bound = 0.0; // NaN when no correlation model applies
    Interval ci;

    // Binomial standard error of the estimate.
    double std_error() const;
};

using SerCurve = std::vector<SerPoint>;

// Asymptotic union bound over transmit-correlated Rayleigh fading:
//   c * sum_{i != j} ||R (x_i - x_j)||^{-2 N_r},  c = rho^{-N_r} / N * C(2N_r - 1, N_r).
// Ordered pairs, so each unordered pair counts twice.
double ser_upper_bound(const shaping::PointSet& points, const Eigen::MatrixXd& r, double rho, int n_r);
double ser_upper_bound(const shaping::TransmitSet& set, const channel::CorrelationModel& corr, double rho, int n_r);

// Independent engines for channel draws, data and noise, and estimation
// error. Reusing one seed across SNR points or eta values gives paired
// (common random number) comparisons.
struct SimStreams {
    Rng channel;
    Rng noise;
    Rng estimation;

    static SimStreams from_seed(std::uint64_t seed);
};

// Monte-Carlo ML detection over fresh correlated Rayleigh draws. With
// eta > 0 the detector uses H + E, E ~ CN(0, eta/rho), while y is formed
// with the true channel.
SerPoint simulate_ser(const shaping::TransmitSet& set, const channel::CorrelationModel& corr, int n_r, double rho,
                      std::size_t trials, SimStreams& streams, double eta = 0.0);

// Same detector over one fixed real-domain channel.
SerPoint simulate_ser_fixed(const shaping::PointSet& points, const Eigen::MatrixXd& h_real, double rho, std::size_t trials,
                            Rng& rng);

SerCurve simulate_curve(const shaping::TransmitSet& set, const channel::CorrelationModel& corr, int n_r, const SnrGrid& grid,
                        std::size_t trials, std::uint64_t seed, double eta = 0.0);

// Maps a weight matrix (A = H here) to a unit-power transmit set.
using Designer = std::function<shaping::PointSet(const shaping::WeightMatrix&)>;

struct CcdfTable {
    std::vector<double> thresholds;
    std::vector<double> ccdf;
    std::vector<double> samples; // d_min per channel draw
};

CcdfTable dmin_ccdf(const Designer& designer, const SystemConfig& config, const channel::CorrelationModel& corr,
                    const std::vector<double>& thresholds, std::size_t draws, Rng& rng);

struct NamedSet {
    std::string name;
    shaping::TransmitSet set;
};

struct ReportRow {
    std::string design;
    double rho_db = 0.0;
    SerPoint point;
};

// SER curves and bounds for several designs over the same grid. Every
// design and every SNR point sees the same random streams, so identical
// sets give identical rows.
std::vector<ReportRow> compare_designs(const std::vector<NamedSet>& sets, const channel::CorrelationModel& corr, int n_r,
                                       const std::vector<double>& snr_db, std::size_t trials, std::uint64_t seed,
                                       double eta = 0.0);

enum class BaselineFlavor { BpskGenSM, QuarterPiBpskGenQSM };

BaselineFlavor parse_baseline_flavor(std::string_view text);

// Conventional mapping: a power-of-two subset of TACs carries floor(log2)
// bits (per quadrature branch for GenQSM) and every stream carries one
// binary symbol. The TAC subset is the lexicographically first one that
// maximizes d_min under the weight a.
shaping::TransmitSet baseline_design(const SystemConfig& config, BaselineFlavor flavor, const Eigen::MatrixXd& a);

void write_ser_csv(std::ostream& os, const SerCurve& curve);
void write_report_csv(std::ostream& os, const std::vector<ReportRow>& rows);
void write_ccdf_csv(std::ostream& os, const CcdfTable& table);

} // namespace sigshape::evaluate

#endif
