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

#include "sigshape/tac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

namespace sigshape::evaluate {

using Eigen::MatrixXd;
using Eigen::VectorXd;

SnrGrid SnrGrid::from_db(const std::vector<double>& db)
{
    SnrGrid g;
    for (double v : db) {
        if (!std::isfinite(v)) throw std::invalid_argument("SNR grid: non-finite value");
        g.rho.push_back(std::pow(10.0, v / 10.0));
    }
    for (std::size_t i = 1; i < g.rho.size(); ++i) {
        if (!(g.rho[i] > g.rho[i - 1])) throw std::invalid_argument("SNR grid must be strictly increasing");
    }
    return g;
}

std::vector<double> SnrGrid::db() const
{
    std::vector<double> out;
    out.reserve(rho.size());
    for (double r : rho) out.push_back(10.0 * std::log10(r));
    return out;
}

Interval wilson_interval(std::size_t errors, std::size_t trials, double z)
{
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double SerPoint::std_error() const
{
    if (trials == 0) return 0.0;
    return std::sqrt(ser * (1.0 - ser) / static_cast<double>(trials));
}

double ser_upper_bound(const shaping::PointSet& points, const MatrixXd& r, double rho, int n_r)
{
    if (!(rho > 0.0)) throw std::invalid_argument("SNR must be positive");
    if (n_r < 1) throw std::invalid_argument("N_r must be positive");
    if (r.cols() != points.cols()) throw std::invalid_argument("weight and point dimensions differ");
    const Eigen::Index n = points.rows();
    if (n < 2) return 0.0;
    const MatrixXd rx = points * r.transpose();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d2 = (rx.row(i) - rx.row(j)).squaredNorm();
            if (!(d2 > 0.0)) throw std::domain_error("zero pairwise distance: bound undefined");
            sum += 2.0 * std::pow(d2, -static_cast<double>(n_r));
        }
    }
    const double c = std::pow(rho, -static_cast<double>(n_r)) / static_cast<double>(n) *
                     static_cast<double>(binomial(2 * n_r - 1, n_r));
    return c * sum;
}

double ser_upper_bound(const shaping::TransmitSet& set, const channel::CorrelationModel& corr, double rho, int n_r)
{
    return ser_upper_bound(set.points(), corr.weight, rho, n_r);
}

namespace {

// Index of the row of `cands` nearest to y; ties resolve to the lowest index.
Eigen::Index ml_detect(const VectorXd& y, const MatrixXd& cands)
{
    Eigen::Index best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < cands.rows(); ++j) {
        const double d = (cands.row(j).transpose() - y).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

void check_trial_args(const shaping::PointSet& points, double rho, std::size_t trials)
{
    if (!(rho > 0.0)) throw std::invalid_argument("SNR must be positive");
    if (trials == 0) throw std::invalid_argument("trial count must be positive");
    if (points.rows() < 2) throw std::invalid_argument("need at least two transmit vectors");
}

SerPoint finish(double rho, std::size_t trials, std::size_t errors, double bound)
{
    SerPoint p;
    p.rho = rho;
    p.trials = trials;
    p.errors = errors;
    p.ser = static_cast<double>(errors) / static_cast<double>(trials);
    p.bound = bound;
    p.ci = wilson_interval(errors, trials);
    return p;
}

} // namespace

SimStreams SimStreams::from_seed(std::uint64_t seed)
{
    return {make_stream(seed, "channel"), make_stream(seed, "noise"), make_stream(seed, "estimation")};
}

SerPoint simulate_ser(const shaping::TransmitSet& set, const channel::CorrelationModel& corr, int n_r, double rho,
                      std::size_t trials, SimStreams& streams, double eta)
{
    const MatrixXd& x = set.points();
    check_trial_args(x, rho, trials);
    if (eta < 0.0) throw std::invalid_argument("eta must be non-negative");
    if (corr.n_t() != set.config().n_t) throw std::invalid_argument("correlation size does not match N_t");
    const double amp = std::sqrt(rho);
    std::uniform_int_distribution<Eigen::Index> pick(0, x.rows() - 1);
    std::normal_distribution<double> noise(0.0, std::sqrt(0.5));
    std::size_t errors = 0;
    VectorXd y(2 * n_r);
    for (std::size_t t = 0; t < trials; ++t) {
        const channel::ChannelSample h = channel::sample_channel(streams.channel, corr, n_r);
        const Eigen::Index sent = pick(streams.noise);
        y = amp * (h.real.entries * x.row(sent).transpose());
        for (Eigen::Index k = 0; k < y.size(); ++k) y(k) += noise(streams.noise);
        MatrixXd h_det;
        if (eta > 0.0) {
            h_det = channel::real_expand(channel::perturb_channel(h.complex, eta, rho, streams.estimation).entries);
        } else {
            h_det = h.real.entries;
        }
        const MatrixXd cands = amp * (x * h_det.transpose());
        if (ml_detect(y, cands) != sent) ++errors;
    }
    double bound = std::numeric_limits<double>::quiet_NaN();
    try {
        bound = ser_upper_bound(x, corr.weight, rho, n_r);
    } catch (const std::domain_error&) {
    }
    return finish(rho, trials, errors, bound);
}

SerPoint simulate_ser_fixed(const shaping::PointSet& points, const MatrixXd& h_real, double rho, std::size_t trials,
                            Rng& rng)
{
    check_trial_args(points, rho, trials);
    if (h_real.cols() != points.cols()) throw std::invalid_argument("channel and point dimensions differ");
    const double amp = std::sqrt(rho);
    const MatrixXd cands = amp * (points * h_real.transpose());
    std::uniform_int_distribution<Eigen::Index> pick(0, points.rows() - 1);
    std::normal_distribution<double> noise(0.0, std::sqrt(0.5));
    std::size_t errors = 0;
    VectorXd y(h_real.rows());
    for (std::size_t t = 0; t < trials; ++t) {
        const Eigen::Index sent = pick(rng);
        y = cands.row(sent).transpose();
        for (Eigen::Index k = 0; k < y.size(); ++k) y(k) += noise(rng);
        if (ml_detect(y, cands) != sent) ++errors;
    }
    return finish(rho, trials, errors, std::numeric_limits<double>::quiet_NaN());
}

SerCurve simulate_curve(const shaping::TransmitSet& set, const channel::CorrelationModel& corr, int n_r, const SnrGrid& grid,
                        std::size_t trials, std::uint64_t seed, double eta)
{
    SerCurve curve;
    for (std::size_t k = 0; k < grid.rho.size(); ++k) {
        SimStreams streams = SimStreams::from_seed(seed);
        curve.push_back(simulate_ser(set, corr, n_r, grid.rho[k], trials, streams, eta));
    }
    return curve;
}

CcdfTable dmin_ccdf(const Designer& designer, const SystemConfig& config, const channel::CorrelationModel& corr,
                    const std::vector<double>& thresholds, std::size_t draws, Rng& rng)
{
    if (draws == 0) throw std::invalid_argument("draw count must be positive");
    CcdfTable table;
    table.thresholds = thresholds;
    table.samples.reserve(draws);
    for (std::size_t d = 0; d < draws; ++d) {
        const channel::ChannelSample h = channel::sample_channel(rng, corr, config.n_r);
        const shaping::WeightMatrix w =
            shaping::make_weight(shaping::WeightMode::Instantaneous, config.n_t, nullptr, &h.real);
        const shaping::PointSet pts = shaping::normalize_power(designer(w));
        table.samples.push_back(shaping::min_distance(pts, w.entries));
    }
    for (double t : thresholds) {
        const auto above = std::count_if(table.samples.begin(), table.samples.end(), [t](double s) { return s > t; });
        table.ccdf.push_back(static_cast<double>(above) / static_cast<double>(draws));
    }
    return table;
}

std::vector<ReportRow> compare_designs(const std::vector<NamedSet>& sets, const channel::CorrelationModel& corr, int n_r,
                                       const std::vector<double>& snr_db, std::size_t trials, std::uint64_t seed,
                                       double eta)
{
    const SnrGrid grid = SnrGrid::from_db(snr_db);
    std::vector<ReportRow> rows;
    for (const NamedSet& ns : sets) {
        const SerCurve curve = simulate_curve(ns.set, corr, n_r, grid, trials, seed, eta);
        for (std::size_t k = 0; k < curve.size(); ++k) rows.push_back({ns.name, snr_db[k], curve[k]});
    }
    return rows;
}

BaselineFlavor parse_baseline_flavor(std::string_view text)
{
    if (text == "bpsk-gensm") return BaselineFlavor::BpskGenSM;
    if (text == "qpibpsk-genqsm") return BaselineFlavor::QuarterPiBpskGenQSM;
    throw std::invalid_argument("unknown baseline flavor: " + std::string(text));
}

namespace {

int floor_log2(std::uint64_t v)
{
    int m = 0;
    while ((std::uint64_t{2} << m) <= v) ++m;
    return m;
}

// Rows of the +-1 patterns over `width` streams, stream 0 most significant.
std::vector<std::vector<double>> sign_patterns(int width)
{
    std::vector<std::vector<double>> out;
    for (int b = 0; b < (1 << width); ++b) {
        std::vector<double> s(static_cast<std::size_t>(width));
        for (int r = 0; r < width; ++r) s[static_cast<std::size_t>(r)] = ((b >> (width - 1 - r)) & 1) ? 1.0 : -1.0;
        out.push_back(std::move(s));
    }
    return out;
}

// Keeps the first candidate unless a later one is better by a relative margin.
struct BestTracker {
    double value = -1.0;
    MatrixXd points;
    void offer(double v, MatrixXd&& p) {
        if (v > value * (1.0 + 1e-12) || value < 0.0) {
            value = v;
            points = std::move(p);
        }
    }
};

MatrixXd gensm_points(const std::vector<std::vector<int>>& supports, const std::vector<int>& pick, int n_t, int n_rf)
{
    const auto signs = sign_patterns(n_rf);
    const double a = 1.0 / std::sqrt(static_cast<double>(n_rf));
    MatrixXd pts = MatrixXd::Zero(static_cast<Eigen::Index>(pick.size() * signs.size()), 2 * n_t);
    Eigen::Index row = 0;
    for (int k : pick) {
        const auto& sup = supports[static_cast<std::size_t>(k)];
        for (const auto& s : signs) {
            for (int r = 0; r < n_rf; ++r) pts(row, sup[static_cast<std::size_t>(r)]) = a * s[static_cast<std::size_t>(r)];
            ++row;
        }
    }
    return pts;
}

MatrixXd genqsm_points(const std::vector<std::vector<int>>& supports, const std::vector<int>& re_pick,
                       const std::vector<int>& im_pick, int n_t, int n_rf)
{
    const auto signs = sign_patterns(n_rf);
    const double a = 1.0 / std::sqrt(2.0 * n_rf);
    MatrixXd pts = MatrixXd::Zero(static_cast<Eigen::Index>(re_pick.size() * im_pick.size() * signs.size()), 2 * n_t);
    Eigen::Index row = 0;
    for (int u : re_pick) {
        for (int v : im_pick) {
            const auto& su = supports[static_cast<std::size_t>(u)];
            const auto& sv = supports[static_cast<std::size_t>(v)];
            for (const auto& s : signs) {
                for (int r = 0; r < n_rf; ++r) {
                    pts(row, su[static_cast<std::size_t>(r)]) = a * s[static_cast<std::size_t>(r)];
                    pts(row, n_t + sv[static_cast<std::size_t>(r)]) = a * s[static_cast<std::size_t>(r)];
                }
                ++row;
            }
        }
    }
    return pts;
}

} // namespace

shaping::TransmitSet baseline_design(const SystemConfig& config, BaselineFlavor flavor, const MatrixXd& a)
{
    config.validate();
    if (a.cols() != 2 * config.n_t) throw std::invalid_argument("baseline weight must have 2N_t columns");
    const bool qsm = flavor == BaselineFlavor::QuarterPiBpskGenQSM;
    if (qsm != (config.scheme == Scheme::GenQSM)) throw std::invalid_argument("baseline flavor does not match scheme");
    const auto supports = tac::combinations(config.n_t, config.n_rf);
    const int m = floor_log2(supports.size());
    const int rate = (qsm ? 2 * m : m) + config.n_rf;
    if (rate != config.n_bits) {
        throw std::invalid_argument("conventional mapping carries " + std::to_string(rate) + " bits, requested " +
                                    std::to_string(config.n_bits));
    }
    const auto subsets = tac::combinations(static_cast<int>(supports.size()), 1 << m);
    BestTracker best;
    if (!qsm) {
        for (const auto& pick : subsets) {
            MatrixXd pts = gensm_points(supports, pick, config.n_t, config.n_rf);
            const double d = shaping::min_distance(pts, a);
            best.offer(d, std::move(pts));
        }
    } else {
        for (const auto& re_pick : subsets) {
            for (const auto& im_pick : subsets) {
                MatrixXd pts = genqsm_points(supports, re_pick, im_pick, config.n_t, config.n_rf);
                const double d = shaping::min_distance(pts, a);
                best.offer(d, std::move(pts));
            }
        }
    }
    shaping::Provenance prov;
    prov.method = "baseline";
    return shaping::TransmitSet(config, std::move(best.points), prov);
}

void write_ser_csv(std::ostream& os, const SerCurve& curve)
{
    os << "snr_db,rho,ser,errors,trials,ci_low,ci_high,bound\n";
    for (const SerPoint& p : curve) {
        os << format_double(10.0 * std::log10(p.rho)) << ',' << format_double(p.rho) << ',' << format_double(p.ser) << ','
           << p.errors << ',' << p.trials << ',' << format_double(p.ci.low) << ',' << format_double(p.ci.high) << ','
           << (std::isnan(p.bound) ? std::string("nan") : format_double(p.bound)) << '\n';
    }
}

void write_report_csv(std::ostream& os, const std::vector<ReportRow>& rows)
{
    os << "design,snr_db,ser,errors,trials,ci_low,ci_high,bound\n";
    for (const ReportRow& r : rows) {
        const SerPoint& p = r.point;
        os << r.design << ',' << format_double(r.rho_db) << ',' << format_double(p.ser) << ',' << p.errors << ','
           << p.trials << ',' << format_double(p.ci.low) << ',' << format_double(p.ci.high) << ','
           << (std::isnan(p.bound) ? std::string("nan") : format_double(p.bound)) << '\n';
    }
}

void write_ccdf_csv(std::ostream& os, const CcdfTable& table)
{
    os << "threshold,ccdf\n";
    for (std::size_t i = 0; i < table.thresholds.size(); ++i) {
        os << format_double(table.thresholds[i]) << ',' << format_double(table.ccdf[i]) << '\n';
    }
}

} // namespace sigshape::evaluate
