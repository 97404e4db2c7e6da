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

#include "sigshape/shaping.hpp"

#include "sigshape/tac.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace sigshape::shaping {

namespace {

constexpr double kDuplicateTol = 1e-9;

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

} // namespace

std::string_view to_string(WeightMode m)
{
    switch (m) {
    case WeightMode::Identity: return "identity";
    case WeightMode::Statistical: return "statistical";
    case WeightMode::Instantaneous: return "instantaneous";
    }
    return "identity";
}

WeightMode parse_weight_mode(std::string_view text)
{
    if (text == "identity") return WeightMode::Identity;
    if (text == "statistical") return WeightMode::Statistical;
    if (text == "instantaneous") return WeightMode::Instantaneous;
    throw std::invalid_argument("unknown weight mode '" + std::string(text) + "'");
}

WeightMode weight_mode_for(CsitMode csit)
{
    switch (csit) {
    case CsitMode::None: return WeightMode::Identity;
    case CsitMode::Statistical: return WeightMode::Statistical;
    case CsitMode::Instantaneous: return WeightMode::Instantaneous;
    }
    return WeightMode::Identity;
}

TransmitSet::TransmitSet(SystemConfig config, PointSet points, Provenance provenance)
    : config_(config), points_(std::move(points)), provenance_(std::move(provenance))
{
    config_.validate();
    if (static_cast<std::size_t>(points_.rows()) != config_.set_size())
        throw std::invalid_argument("transmit set must hold exactly 2^n = " + std::to_string(config_.set_size()) +
                                    " vectors, got " + std::to_string(points_.rows()));
    if (points_.cols() != config_.real_dim())
        throw std::invalid_argument("transmit vectors must have 2 N_t entries");
    for (Eigen::Index i = 0; i < points_.rows(); ++i) {
        if (!points_.row(i).allFinite())
            throw std::invalid_argument("transmit vector " + std::to_string(i + 1) + " is not finite");
        if (!tac::check_sparsity(points_.row(i).transpose(), config_))
            throw std::invalid_argument("transmit vector " + std::to_string(i + 1) + " violates the " +
                                        std::string(to_string(config_.scheme)) + " sparsity constraint");
    }
    for (Eigen::Index i = 0; i < points_.rows(); ++i)
        for (Eigen::Index j = i + 1; j < points_.rows(); ++j)
            if ((points_.row(i) - points_.row(j)).norm() <= kDuplicateTol)
                throw std::invalid_argument("transmit vectors " + std::to_string(i + 1) + " and " +
                                            std::to_string(j + 1) + " coincide");
}

double average_power(const PointSet& points)
{
    if (points.rows() == 0)
        throw std::domain_error("average_power: empty set");
    return points.squaredNorm() / static_cast<double>(points.rows());
}

double average_power(const TransmitSet& set) { return average_power(set.points()); }

double min_distance(const PointSet& points, const Eigen::MatrixXd& a)
{
    if (points.rows() < 2)
        throw std::domain_error("min_distance: need at least two vectors");
    if (a.cols() != points.cols())
        throw std::invalid_argument("min_distance: weight matrix has wrong column count");
    const Eigen::MatrixXd weighted = points * a.transpose();
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < weighted.rows(); ++i)
        for (Eigen::Index j = i + 1; j < weighted.rows(); ++j)
            best = std::min(best, (weighted.row(i) - weighted.row(j)).squaredNorm());
    return std::sqrt(best);
}

double min_distance(const TransmitSet& set, const WeightMatrix& a) { return min_distance(set.points(), a.entries); }

double cfm(const PointSet& points, const Eigen::MatrixXd& a)
{
    const double p = average_power(points);
    if (!(p > 0.0))
        throw std::domain_error("cfm: zero-power set");
    const double d = min_distance(points, a);
    return d * d / p;
}

double cfm(const TransmitSet& set, const WeightMatrix& a) { return cfm(set.points(), a.entries); }

WeightMatrix make_weight(WeightMode mode, int n_t, const channel::CorrelationModel* corr, const channel::RealChannel* ch)
{
    if (n_t < 1)
        throw std::invalid_argument("make_weight: N_t must be positive");
    WeightMatrix w;
    w.mode = mode;
    switch (mode) {
    case WeightMode::Identity:
        w.entries = Eigen::MatrixXd::Identity(2 * n_t, 2 * n_t);
        break;
    case WeightMode::Statistical:
        if (corr == nullptr)
            throw std::invalid_argument("make_weight: statistical mode needs a correlation model");
        if (corr->n_t() != n_t)
            throw std::invalid_argument("make_weight: correlation model has wrong N_t");
        w.entries = corr->weight;
        break;
    case WeightMode::Instantaneous:
        if (ch == nullptr)
            throw std::invalid_argument("make_weight: instantaneous mode needs a channel");
        if (ch->entries.cols() != 2 * n_t)
            throw std::invalid_argument("make_weight: channel has wrong column count");
        w.entries = ch->entries;
        break;
    }
    return w;
}

PointSet normalize_power(const PointSet& points)
{
    const double p = average_power(points);
    if (!(p > 0.0))
        throw std::domain_error("normalize_power: zero-power set");
    return points / std::sqrt(p);
}

TransmitSet normalize_power(const TransmitSet& set)
{
    return TransmitSet(set.config(), normalize_power(set.points()), set.provenance());
}

void write_set_csv(std::ostream& os, const TransmitSet& set)
{
    const auto& c = set.config();
    const auto& p = set.provenance();
    os << "# sigshape scheme=" << to_string(c.scheme) << " nt=" << c.n_t << " nr=" << c.n_r << " nrf=" << c.n_rf
       << " n=" << c.n_bits << " csit=" << to_string(c.csit) << " method=" << p.method
       << " weight=" << to_string(p.weight) << " seed=" << p.seed << " partition=";
    for (std::size_t k = 0; k < p.partition.size(); ++k) os << (k ? ";" : "") << p.partition[k];
    os << '\n';
    const auto& x = set.points();
    for (Eigen::Index j = 0; j < x.cols(); ++j) os << (j ? "," : "") << 'x' << j + 1;
    os << '\n';
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) os << (j ? "," : "") << format_double(x(i, j));
        os << '\n';
    }
}

TransmitSet read_set_csv(std::istream& is)
{
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(is, line))
        throw ParseError("empty set file", 1);
    ++line_no;
    const std::string tag = "# sigshape ";
    if (line.rfind(tag, 0) != 0)
        throw ParseError("missing '# sigshape' comment line", line_no);

    std::map<std::string, std::string> kv;
    for (const auto& tok : split(line.substr(tag.size()), ' ')) {
        if (tok.empty()) continue;
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw ParseError("malformed key=value token '" + tok + "'", line_no);
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }

    SystemConfig config;
    Provenance prov;
    try {
        config.scheme = parse_scheme(kv.at("scheme"));
        config.n_t = std::stoi(kv.at("nt"));
        config.n_r = std::stoi(kv.at("nr"));
        config.n_rf = std::stoi(kv.at("nrf"));
        config.n_bits = std::stoi(kv.at("n"));
        config.csit = parse_csit(kv.at("csit"));
        prov.method = kv.at("method");
        prov.weight = parse_weight_mode(kv.at("weight"));
        prov.seed = std::stoull(kv.at("seed"));
        for (const auto& s : split(kv.at("partition"), ';'))
            if (!s.empty()) prov.partition.push_back(std::stoi(s));
        config.validate();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad header: ") + e.what(), line_no);
    }

    if (!std::getline(is, line))
        throw ParseError("missing column header", line_no + 1);
    ++line_no;
    const auto header = split(line, ',');
    if (static_cast<int>(header.size()) != config.real_dim())
        throw ParseError("column header must list " + std::to_string(config.real_dim()) + " columns", line_no);

    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (static_cast<int>(cells.size()) != config.real_dim())
            throw ParseError("expected " + std::to_string(config.real_dim()) + " values", line_no);
        std::vector<double> row;
        for (const auto& c : cells) {
            try {
                row.push_back(parse_double(c));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), line_no);
            }
        }
        rows.push_back(std::move(row));
    }

    PointSet x(static_cast<Eigen::Index>(rows.size()), config.real_dim());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    try {
        return TransmitSet(config, std::move(x), std::move(prov));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no);
    }
}

} // namespace sigshape::shaping
