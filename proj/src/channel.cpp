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

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace sigshape::channel {

namespace {

constexpr double kPsdFloor = -1e-10;

Complex draw_cn(Rng& rng, double variance)
{
    std::normal_distribution<double> n01(0.0, 1.0);
    const double s = std::sqrt(variance / 2.0);
    const double re = s * n01(rng);
    const double im = s * n01(rng);
    return {re, im};
}

} // namespace

CorrelationModel make_correlation(double delta, int n_t)
{
    if (!(delta >= 0.0 && delta < 1.0))
        throw std::domain_error("correlation coefficient must lie in [0, 1)");
    if (n_t < 1)
        throw std::domain_error("N_t must be positive");

    CorrelationModel m;
    m.delta = delta;
    m.r_tx.resize(n_t, n_t);
    for (int k = 0; k < n_t; ++k)
        for (int l = 0; l < n_t; ++l)
            m.r_tx(k, l) = k == l ? 1.0 : std::pow(delta, std::abs(k - l));
    m.r_sqrt = delta == 0.0 ? Eigen::MatrixXcd::Identity(n_t, n_t) : matrix_sqrt(m.r_tx);
    m.weight = real_expand(m.r_sqrt);
    return m;
}

Eigen::MatrixXcd matrix_sqrt(const Eigen::MatrixXcd& psd)
{
    if (psd.rows() != psd.cols())
        throw std::invalid_argument("matrix_sqrt: matrix must be square");
    const double scale = std::max(1.0, psd.cwiseAbs().maxCoeff());
    if ((psd - psd.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("matrix_sqrt: matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(psd);
    if (es.info() != Eigen::Success)
        throw NumericalError("matrix_sqrt: eigendecomposition failed");
    Eigen::VectorXd lambda = es.eigenvalues();
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        if (lambda(i) < kPsdFloor)
            throw NotPsdError("matrix_sqrt: eigenvalue " + std::to_string(lambda(i)) + " below zero");
        lambda(i) = std::sqrt(std::max(lambda(i), 0.0));
    }
    const Eigen::MatrixXcd& v = es.eigenvectors();
    return v * lambda.cast<Complex>().asDiagonal() * v.adjoint();
}

Eigen::MatrixXd real_expand(const Eigen::MatrixXcd& m)
{
    const Eigen::Index r = m.rows(), c = m.cols();
    Eigen::MatrixXd out(2 * r, 2 * c);
    out.topLeftCorner(r, c) = m.real();
    out.topRightCorner(r, c) = -m.imag();
    out.bottomLeftCorner(r, c) = m.imag();
    out.bottomRightCorner(r, c) = m.real();
    return out;
}

Eigen::VectorXd real_expand(const Eigen::VectorXcd& v)
{
    Eigen::VectorXd out(2 * v.size());
    out << v.real(), v.imag();
    return out;
}

Eigen::VectorXcd complex_compress(const Eigen::VectorXd& v)
{
    if (v.size() % 2 != 0)
        throw std::invalid_argument("complex_compress: odd length");
    const Eigen::Index n = v.size() / 2;
    Eigen::VectorXcd out(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = Complex(v(i), v(n + i));
    return out;
}

ChannelSample sample_channel(Rng& rng, const CorrelationModel& corr, int n_r)
{
    if (n_r < 1)
        throw std::invalid_argument("N_r must be positive");
    const int n_t = corr.n_t();
    Eigen::MatrixXcd hw(n_r, n_t);
    for (int i = 0; i < n_r; ++i)
        for (int j = 0; j < n_t; ++j) hw(i, j) = draw_cn(rng, 1.0);

    ChannelSample s;
    s.complex.entries = corr.delta == 0.0 ? hw : Eigen::MatrixXcd(hw * corr.r_sqrt);
    s.real.entries = real_expand(s.complex.entries);
    return s;
}

ComplexChannel perturb_channel(const ComplexChannel& ch, double eta, double rho, Rng& rng)
{
    if (!(rho > 0.0))
        throw std::domain_error("perturb_channel: rho must be positive");
    if (eta < 0.0)
        throw std::domain_error("perturb_channel: eta must be non-negative");
    if (eta == 0.0)
        return ch;
    ComplexChannel out = ch;
    const double var = eta / rho;
    for (Eigen::Index i = 0; i < out.entries.rows(); ++i)
        for (Eigen::Index j = 0; j < out.entries.cols(); ++j) out.entries(i, j) += draw_cn(rng, var);
    return out;
}

void write_channel_csv(std::ostream& os, const ComplexChannel& ch)
{
    const auto& m = ch.entries;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        os << (j ? "," : "") << "re" << j + 1 << ",im" << j + 1;
    os << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            os << (j ? "," : "") << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
        os << '\n';
    }
}

ComplexChannel read_channel_csv(std::istream& is)
{
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::vector<double>> rows;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                row.push_back(parse_double(cell));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), line_no);
            }
        }
        if (row.empty() || row.size() % 2 != 0)
            throw ParseError("expected an even number of columns", line_no);
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("inconsistent column count", line_no);
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw ParseError("no channel rows", line_no);

    ComplexChannel ch;
    ch.entries.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size() / 2));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size() / 2; ++j)
            ch.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex(rows[i][2 * j], rows[i][2 * j + 1]);
    return ch;
}

} // namespace sigshape::channel
