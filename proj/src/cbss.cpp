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

#include <cmath>
#include <limits>
#include <ostream>

namespace sigshape::cbss {

namespace {

constexpr double kDuplicateTol = 1e-9;

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n)
{
    int k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

} // namespace

std::vector<Complex> qam_constellation(int m_c)
{
    if (m_c != 4 && m_c != 16 && m_c != 64)
        throw std::invalid_argument("qam_constellation: supported orders are 4, 16 and 64");
    const int levels = m_c == 4 ? 2 : (m_c == 16 ? 4 : 8);
    const double scale = std::sqrt(2.0 * (m_c - 1) / 3.0);
    std::vector<Complex> pts;
    pts.reserve(static_cast<std::size_t>(m_c));
    for (int r = 0; r < levels; ++r)
        for (int c = 0; c < levels; ++c)
            pts.emplace_back((2 * r - levels + 1) / scale, (2 * c - levels + 1) / scale);
    return pts;
}

shaping::PointSet symbol_vectors(int n_rf, int m_c)
{
    if (n_rf < 1)
        throw std::invalid_argument("symbol_vectors: N_RF must be positive");
    const auto qam = qam_constellation(m_c);
    std::size_t total = 1;
    for (int s = 0; s < n_rf; ++s) total *= qam.size();

    shaping::PointSet out(static_cast<Eigen::Index>(total), 2 * n_rf);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (int s = n_rf - 1; s >= 0; --s) {
            const Complex sym = qam[rem % qam.size()];
            rem /= qam.size();
            out(static_cast<Eigen::Index>(idx), s) = sym.real();
            out(static_cast<Eigen::Index>(idx), n_rf + s) = sym.imag();
        }
    }
    return out;
}

Codebook build_codebook(const SystemConfig& config, const tac::TacFamily& family, int m_c)
{
    if (family.size() == 0)
        throw std::invalid_argument("build_codebook: empty TAC family");
    const auto symbols = symbol_vectors(config.n_rf, m_c);
    const Eigen::Index bound = static_cast<Eigen::Index>(family.size()) * symbols.rows();

    shaping::PointSet raw(bound, config.real_dim());
    Eigen::Index row = 0;
    for (const auto& tac : family.members)
        for (Eigen::Index c = 0; c < symbols.rows(); ++c)
            raw.row(row++) = tac::apply_tac(tac, config.n_t, symbols.row(c).transpose()).transpose();

    // Keep the first occurrence of vectors closer than the tolerance.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
        bool dup = false;
        for (Eigen::Index k : keep)
            if ((raw.row(i) - raw.row(k)).norm() <= kDuplicateTol) {
                dup = true;
                break;
            }
        if (!dup) keep.push_back(i);
    }

    Codebook cb;
    cb.m_c = m_c;
    cb.config = config;
    cb.candidates.resize(static_cast<Eigen::Index>(keep.size()), config.real_dim());
    for (std::size_t k = 0; k < keep.size(); ++k) cb.candidates.row(static_cast<Eigen::Index>(k)) = raw.row(keep[k]);
    return cb;
}

Selection progressive_select(const Codebook& cb, const shaping::WeightMatrix& a, std::size_t n)
{
    const std::size_t nc = cb.size();
    if (n < 2 || !is_power_of_two(n))
        throw std::invalid_argument("progressive_select: n must be a power of two >= 2");
    if (n > nc)
        throw InfeasibleError("progressive_select: requested " + std::to_string(n) + " vectors from a codebook of " +
                              std::to_string(nc));
    if (a.cols() != cb.candidates.cols())
        throw std::invalid_argument("progressive_select: weight matrix has wrong column count");

    // Cached squared pairwise weighted distances and per-vector powers.
    const Eigen::MatrixXd weighted = cb.candidates * a.entries.transpose();
    const Eigen::VectorXd power = cb.candidates.rowwise().squaredNorm();
    const auto nci = static_cast<Eigen::Index>(nc);
    Eigen::MatrixXd d2(nci, nci);
    for (Eigen::Index i = 0; i < nci; ++i) {
        d2(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < nci; ++j) d2(i, j) = d2(j, i) = (weighted.row(i) - weighted.row(j)).squaredNorm();
    }

    // Exhaustive initial pair.
    double best = -1.0;
    Eigen::Index bi = 0, bj = 1;
    for (Eigen::Index i = 0; i < nci; ++i)
        for (Eigen::Index j = i + 1; j < nci; ++j) {
            const double c = d2(i, j) / ((power(i) + power(j)) / 2.0);
            if (c > best) {
                best = c;
                bi = i;
                bj = j;
            }
        }

    std::vector<std::size_t> chosen{static_cast<std::size_t>(bi), static_cast<std::size_t>(bj)};
    std::vector<SelectionStep> trace{{2, chosen[1], best}};
    std::vector<char> used(nc, 0);
    used[chosen[0]] = used[chosen[1]] = 1;

    double set_min = d2(bi, bj);
    double power_sum = power(bi) + power(bj);
    Eigen::VectorXd to_set(nci);
    for (Eigen::Index c = 0; c < nci; ++c) to_set(c) = std::min(d2(c, bi), d2(c, bj));

    while (chosen.size() < n) {
        const double t_next = static_cast<double>(chosen.size() + 1);
        double best_c = -1.0;
        Eigen::Index pick = -1;
        for (Eigen::Index c = 0; c < nci; ++c) {
            if (used[static_cast<std::size_t>(c)]) continue;
            const double v = std::min(set_min, to_set(c)) / ((power_sum + power(c)) / t_next);
            if (v > best_c) {
                best_c = v;
                pick = c;
            }
        }
        used[static_cast<std::size_t>(pick)] = 1;
        chosen.push_back(static_cast<std::size_t>(pick));
        set_min = std::min(set_min, to_set(pick));
        power_sum += power(pick);
        for (Eigen::Index c = 0; c < nci; ++c) to_set(c) = std::min(to_set(c), d2(c, pick));
        trace.push_back({static_cast<int>(chosen.size()), static_cast<std::size_t>(pick), best_c});
    }

    shaping::PointSet x(static_cast<Eigen::Index>(n), cb.candidates.cols());
    for (std::size_t k = 0; k < n; ++k) x.row(static_cast<Eigen::Index>(k)) = cb.candidates.row(static_cast<Eigen::Index>(chosen[k]));

    SystemConfig cfg = cb.config;
    cfg.n_bits = log2_exact(n);
    shaping::Provenance prov{"cbss", a.mode, 0, {}};
    return Selection{shaping::TransmitSet(cfg, shaping::normalize_power(x), prov), std::move(chosen), std::move(trace)};
}

void write_trace_csv(std::ostream& os, const Selection& sel)
{
    os << "step,index,cfm\n";
    for (const auto& s : sel.trace) os << s.step << ',' << s.index << ',' << format_double(s.cfm) << '\n';
}

} // namespace sigshape::cbss
