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

#include "sigshape/obss.hpp"

#include "sigshape/cbss.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <ostream>

namespace sigshape::obss {

namespace {

// Candidate comparisons treat relative differences below this as ties.
constexpr double kTieRel = 1e-6;

bool strictly_better(double candidate, double incumbent)
{
    return candidate > incumbent + kTieRel * std::max(std::abs(incumbent), 1e-300);
}

struct RunResult {
    Eigen::VectorXd q;
    double value = 0.0;
    bool converged = false;
    int iterations = 0;
    double mu_rel = 0.0;
    std::vector<double> trace;
};

// Sequential convexification for max min_{i<j} q^T Q_ij q over the ball
// q^T q <= t. Each outer iteration linearizes every pair form at the current
// iterate (a global minorant since Q_ij is PSD), approximately maximizes the
// minimum of the linear forms over the ball and rescales onto the sphere.
class EntrySolver {
public:
    explicit EntrySolver(const QcqpInstance& inst)
        : inst_(inst), t_(inst.points), b_(inst.block), radius_(std::sqrt(inst.power_budget))
    {
        for (int i = 0; i < t_; ++i)
            for (int j = i + 1; j < t_; ++j) pairs_.emplace_back(i, j);
    }

    // Pair forms f_p(q), clamped at zero, and the column-block products
    // V = R_AW * blockdiag(q_1..q_t) used by the linearizations.
    void evaluate(const Eigen::VectorXd& q, Eigen::VectorXd& f, Eigen::MatrixXd& v) const
    {
        const int d = inst_.dimension();
        v.resize(d, t_);
        for (int m = 0; m < t_; ++m) v.col(m) = inst_.r_aw.middleCols(m * b_, b_) * q.segment(m * b_, b_);
        Eigen::MatrixXd c(t_, t_);
        for (int k = 0; k < t_; ++k)
            c.row(k) = q.segment(k * b_, b_).transpose() * v.middleRows(k * b_, b_);
        f.resize(static_cast<Eigen::Index>(pairs_.size()));
        for (std::size_t p = 0; p < pairs_.size(); ++p) {
            const auto [i, j] = pairs_[p];
            f(static_cast<Eigen::Index>(p)) = std::max(0.0, c(i, i) + c(j, j) - c(i, j) - c(j, i));
        }
    }

    double objective(const Eigen::VectorXd& q) const
    {
        Eigen::VectorXd f;
        Eigen::MatrixXd v;
        evaluate(q, f, v);
        return f.minCoeff();
    }

    // Outer iterations from q until the smoothing has reached its floor and
    // one iteration gains at most tol (relative). mu_rel sets the starting
    // smoothing level, so a finished run can be resumed with a tighter tol.
    RunResult run(Eigen::VectorXd q, const SolverOptions& opts, double tol, double mu_rel = 0.05) const
    {
        RunResult res;
        const double n = q.norm();
        if (!(n > 0.0) || !q.allFinite())
            throw std::invalid_argument("solve_entry_qcqp: start point must be non-zero and finite");
        q *= radius_ / n;

        Eigen::VectorXd f;
        Eigen::MatrixXd v;
        evaluate(q, f, v);
        double tau = f.minCoeff();
        double step = -1.0;

        for (int it = 0; it < opts.max_iters; ++it) {
            Eigen::VectorXd z = maximize_linearized(q, f, v, tau, mu_rel, step, opts.inner_iters);
            const double zn = z.norm();
            if (zn > 0.0) z *= radius_ / zn;

            Eigen::VectorXd fz;
            Eigen::MatrixXd vz;
            evaluate(z, fz, vz);
            const double tau_new = fz.minCoeff();
            ++res.iterations;

            const bool improved = tau_new >= tau;
            const double gain = improved ? tau_new - tau : 0.0;
            if (improved) {
                q = std::move(z);
                f = std::move(fz);
                v = std::move(vz);
                tau = tau_new;
            }
            if (opts.record_trace) res.trace.push_back(tau);

            const bool smoothing_done = mu_rel <= 1e-4;
            if (gain <= tol * std::max(tau, 1e-300) && smoothing_done) {
                res.converged = true;
                break;
            }
            mu_rel = std::max(1e-5, mu_rel * 0.8);
        }
        res.q = std::move(q);
        res.value = tau;
        res.mu_rel = mu_rel;
        return res;
    }

private:
    // a_p^T z for every pair at linearization point with products v.
    void linear_terms(const Eigen::VectorXd& z, const Eigen::MatrixXd& v, Eigen::VectorXd& out) const
    {
        Eigen::MatrixXd s(t_, t_);
        for (int k = 0; k < t_; ++k) s.row(k) = z.segment(k * b_, b_).transpose() * v.middleRows(k * b_, b_);
        out.resize(static_cast<Eigen::Index>(pairs_.size()));
        for (std::size_t p = 0; p < pairs_.size(); ++p) {
            const auto [i, j] = pairs_[p];
            out(static_cast<Eigen::Index>(p)) = 2.0 * (s(i, i) - s(i, j) + s(j, j) - s(j, i));
        }
    }

    // Smoothed min: -mu log sum exp(-l/mu), with softmin weights.
    static double smoothed_min(const Eigen::VectorXd& l, double mu, Eigen::VectorXd* weights)
    {
        const double lo = l.minCoeff();
        Eigen::VectorXd e = (-(l.array() - lo) / mu).exp().matrix();
        const double sum = e.sum();
        if (weights) *weights = e / sum;
        return lo - mu * std::log(sum);
    }

    Eigen::VectorXd gradient(const Eigen::VectorXd& w, const Eigen::MatrixXd& v) const
    {
        Eigen::MatrixXd coef = Eigen::MatrixXd::Zero(t_, t_);
        for (std::size_t p = 0; p < pairs_.size(); ++p) {
            const auto [i, j] = pairs_[p];
            const double wp = w(static_cast<Eigen::Index>(p));
            coef(i, i) += wp;
            coef(j, j) += wp;
            coef(i, j) -= wp;
            coef(j, i) -= wp;
        }
        Eigen::VectorXd g(inst_.dimension());
        for (int k = 0; k < t_; ++k) g.segment(k * b_, b_) = 2.0 * v.middleRows(k * b_, b_) * coef.col(k);
        return g;
    }

    Eigen::VectorXd project(Eigen::VectorXd y) const
    {
        const double n = y.norm();
        if (n > radius_) y *= radius_ / n;
        return y;
    }

    // Approximately maximizes min_p (a_p^T z - f_p) over the ball by projected
    // gradient ascent with backtracking on the log-sum-exp smoothing. Returns
    // the iterate with the best unsmoothed value; q itself scores tau.
    Eigen::VectorXd maximize_linearized(const Eigen::VectorXd& q, const Eigen::VectorXd& f, const Eigen::MatrixXd& v,
                                        double tau, double mu_rel, double& step, int inner_iters) const
    {
        const double mu = std::max(mu_rel * std::abs(tau), 1e-300);
        Eigen::VectorXd best = q;
        double best_val = tau;

        Eigen::VectorXd z = q, lin, w;
        linear_terms(z, v, lin);
        lin -= f;
        double psi = smoothed_min(lin, mu, &w);

        for (int k = 0; k < inner_iters; ++k) {
            const Eigen::VectorXd g = gradient(w, v);
            const double gn = g.norm();
            if (!(gn > 0.0)) break;
            if (step <= 0.0) step = 0.1 * radius_ / gn;

            bool accepted = false;
            Eigen::VectorXd z_new, lin_new, w_new;
            double psi_new = 0.0;
            for (int bt = 0; bt < 40; ++bt) {
                z_new = project(z + step * g);
                linear_terms(z_new, v, lin_new);
                lin_new -= f;
                psi_new = smoothed_min(lin_new, mu, &w_new);
                if (psi_new >= psi + 1e-4 * g.dot(z_new - z)) {
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) break;
            step *= 1.5;

            const double moved = (z_new - z).norm();
            z = std::move(z_new);
            lin = std::move(lin_new);
            w = std::move(w_new);
            psi = psi_new;
            const double val = lin.minCoeff();
            if (val > best_val) {
                best_val = val;
                best = z;
            }
            if (moved <= 1e-13 * radius_) break;
        }
        return best;
    }

    const QcqpInstance& inst_;
    int t_;
    int b_;
    double radius_;
    std::vector<std::pair<int, int>> pairs_;
};

std::string counts_key(const std::vector<int>& counts)
{
    std::string s;
    for (int c : counts) s += std::to_string(c) + ".";
    return s;
}

// Inserts one more point for TAC k into a parent solution (t-1 points,
// TAC-major order), choosing its symbol vector from the QAM codebook to
// maximize the weighted distance to the existing points.
Eigen::VectorXd extend_parent(const QcqpInstance& child, const PartitionIndicator& parent, const Eigen::VectorXd& parent_q,
                              int k, const tac::TacFamily& family, const Eigen::MatrixXd& a, int m_c)
{
    const int b = child.block;
    int insert_at = 0;
    for (int c = 0; c <= k; ++c) insert_at += parent.counts[static_cast<std::size_t>(c)];

    // Parent points live on the unit-average-power scale.
    const int t_parent = parent.total();
    Eigen::MatrixXd parent_points(t_parent, child.n_t * 2);
    {
        const auto tacs = parent.point_tacs();
        for (int i = 0; i < t_parent; ++i)
            parent_points.row(i) = tac::apply_tac(family[static_cast<std::size_t>(tacs[static_cast<std::size_t>(i)])], child.n_t,
                                                  parent_q.segment(i * b, b))
                                       .transpose();
    }
    const Eigen::MatrixXd weighted_parent = parent_points * a.transpose();

    const auto symbols = cbss::symbol_vectors(b / 2, m_c > 0 ? m_c : 4);
    const double scale = 1.0 / std::sqrt(static_cast<double>(b / 2));
    Eigen::VectorXd best_s = symbols.row(0).transpose() * scale;
    double best_d = -1.0;
    for (Eigen::Index c = 0; c < symbols.rows(); ++c) {
        const Eigen::VectorXd s = symbols.row(c).transpose() * scale;
        const Eigen::VectorXd ax = a * tac::apply_tac(family[static_cast<std::size_t>(k)], child.n_t, s);
        double d = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < weighted_parent.rows(); ++i)
            d = std::min(d, (weighted_parent.row(i).transpose() - ax).squaredNorm());
        if (d > best_d) {
            best_d = d;
            best_s = s;
        }
    }

    Eigen::VectorXd q(child.dimension());
    q.head(insert_at * b) = parent_q.head(insert_at * b);
    q.segment(insert_at * b, b) = best_s;
    q.tail((t_parent - insert_at) * b) = parent_q.tail((t_parent - insert_at) * b);
    return q * std::sqrt(child.power_budget) / q.norm();
}

} // namespace

int PartitionIndicator::total() const
{
    int s = 0;
    for (int c : counts) s += c;
    return s;
}

std::vector<int> PartitionIndicator::point_tacs() const
{
    std::vector<int> out;
    for (std::size_t k = 0; k < counts.size(); ++k)
        for (int c = 0; c < counts[k]; ++c) out.push_back(static_cast<int>(k));
    return out;
}

double QcqpInstance::pair_form(int i, int j, const Eigen::Ref<const Eigen::VectorXd>& q) const
{
    const auto qi = q.segment(i * block, block);
    const auto qj = q.segment(j * block, block);
    const double v = qi.dot(r_aw.block(i * block, i * block, block, block) * qi) +
                     qj.dot(r_aw.block(j * block, j * block, block, block) * qj) -
                     2.0 * qi.dot(r_aw.block(i * block, j * block, block, block) * qj);
    return std::max(0.0, v);
}

Eigen::MatrixXd QcqpInstance::pair_matrix(int i, int j) const
{
    const int d = dimension();
    Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
    e.segment(i * block, block).setOnes();
    e.segment(j * block, block).array() -= 1.0;
    const Eigen::MatrixXd delta_e = e * e.transpose();
    return r_aw.cwiseProduct(delta_e.transpose());
}

shaping::PointSet QcqpInstance::points_from(const Eigen::Ref<const Eigen::VectorXd>& q) const
{
    if (q.size() != dimension())
        throw std::invalid_argument("points_from: q has wrong dimension");
    shaping::PointSet x(points, 2 * n_t);
    for (int i = 0; i < points; ++i) x.row(i) = (w.middleCols(i * block, block) * q.segment(i * block, block)).transpose();
    return x;
}

QcqpInstance build_qcqp(const PartitionIndicator& partition, const tac::TacFamily& family, const Eigen::MatrixXd& a)
{
    if (partition.counts.size() != family.size())
        throw std::invalid_argument("build_qcqp: partition does not match the TAC family");
    for (int c : partition.counts)
        if (c < 0) throw std::invalid_argument("build_qcqp: negative partition count");
    const int n_t = family.config.n_t;
    if (a.cols() != 2 * n_t)
        throw std::invalid_argument("build_qcqp: weight matrix must have 2 N_t columns");
    const int t = partition.total();
    if (t < 2)
        throw std::invalid_argument("build_qcqp: need at least two points");

    QcqpInstance inst;
    inst.points = t;
    inst.block = 2 * family.config.n_rf;
    inst.n_t = n_t;
    inst.point_tac = partition.point_tacs();
    inst.power_budget = static_cast<double>(t);
    inst.w.resize(2 * n_t, t * inst.block);
    for (int i = 0; i < t; ++i)
        inst.w.middleCols(i * inst.block, inst.block) =
            tac::selection_matrix(family[static_cast<std::size_t>(inst.point_tac[static_cast<std::size_t>(i)])], n_t);
    const Eigen::MatrixXd aw = a * inst.w;
    inst.r_aw = aw.transpose() * aw;
    return inst;
}

SolveResult solve_entry_qcqp(const QcqpInstance& inst, const SolverOptions& opts, std::span<const Eigen::VectorXd> warm_starts)
{
    if (opts.max_iters < 1 || opts.restarts < 0 || !(opts.tol > 0.0) || opts.inner_iters < 1)
        throw std::invalid_argument("solve_entry_qcqp: invalid solver options");
    if (opts.restarts == 0 && warm_starts.empty())
        throw std::invalid_argument("solve_entry_qcqp: no starting points");

    const EntrySolver solver(inst);
    const double screen_tol = std::max(opts.tol, opts.screen_tol);
    std::vector<RunResult> runs;

    for (const auto& ws : warm_starts) {
        if (ws.size() != inst.dimension())
            throw std::invalid_argument("solve_entry_qcqp: warm start has wrong dimension");
        runs.push_back(solver.run(ws, opts, screen_tol));
    }
    Rng rng(opts.seed);
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int r = 0; r < opts.restarts; ++r) {
        Eigen::VectorXd q0(inst.dimension());
        for (Eigen::Index i = 0; i < q0.size(); ++i) q0(i) = n01(rng);
        runs.push_back(solver.run(q0, opts, screen_tol));
    }

    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r)
        if (runs[r].value > runs[best].value) best = r;

    // Polish the winner to the requested tolerance.
    RunResult& win = runs[best];
    if (screen_tol > opts.tol && opts.max_iters > win.iterations) {
        SolverOptions rest = opts;
        rest.max_iters = opts.max_iters - win.iterations;
        RunResult more = solver.run(win.q, rest, opts.tol, win.mu_rel);
        if (more.value >= win.value) {
            win.q = std::move(more.q);
            win.value = more.value;
        }
        win.converged = more.converged;
        win.iterations += more.iterations;
        win.trace.insert(win.trace.end(), more.trace.begin(), more.trace.end());
    }

    SolveResult out;
    out.q = win.q;
    out.d_min_sq = win.value;
    out.converged = win.converged;
    out.iterations = win.iterations;
    out.best_run = static_cast<int>(best);
    if (opts.record_trace)
        for (auto& r : runs) out.traces.push_back(std::move(r.trace));
    return out;
}

Eigen::VectorXd codebook_start(const QcqpInstance& inst, const tac::TacFamily& family, const Eigen::MatrixXd& a, int m_c)
{
    const int b = inst.block;
    const auto symbols = cbss::symbol_vectors(b / 2, m_c);
    const double scale = 1.0 / std::sqrt(static_cast<double>(b / 2));

    // Weighted images of every codebook symbol through every TAC in use.
    std::map<int, Eigen::MatrixXd> images;
    for (int k : inst.point_tac) {
        if (images.count(k)) continue;
        Eigen::MatrixXd img(symbols.rows(), a.rows());
        for (Eigen::Index c = 0; c < symbols.rows(); ++c)
            img.row(c) = (a * tac::apply_tac(family[static_cast<std::size_t>(k)], inst.n_t, symbols.row(c).transpose() * scale)).transpose();
        images.emplace(k, std::move(img));
    }

    Eigen::VectorXd q(inst.dimension());
    Eigen::MatrixXd chosen(inst.points, a.rows());
    for (int i = 0; i < inst.points; ++i) {
        const Eigen::MatrixXd& img = images.at(inst.point_tac[static_cast<std::size_t>(i)]);
        Eigen::Index pick = 0;
        if (i > 0) {
            double best = -1.0;
            for (Eigen::Index c = 0; c < img.rows(); ++c) {
                double d = std::numeric_limits<double>::infinity();
                for (int m = 0; m < i; ++m) d = std::min(d, (chosen.row(m) - img.row(c)).squaredNorm());
                if (d > best) {
                    best = d;
                    pick = c;
                }
            }
        }
        chosen.row(i) = img.row(pick);
        q.segment(i * b, b) = symbols.row(pick).transpose() * scale;
    }
    return q * std::sqrt(inst.power_budget) / q.norm();
}

X2Result exhaustive_x2(const tac::TacFamily& family, const shaping::WeightMatrix& a, const SolverOptions& opts)
{
    if (family.size() == 0)
        throw std::invalid_argument("exhaustive_x2: empty TAC family");
    const std::size_t nf = family.size();

    std::map<std::vector<int>, SolveResult> cache;
    std::size_t evaluated = 0;
    double best_val = -1.0;
    std::pair<int, int> best_pair{0, 0};
    PartitionIndicator best_part;
    SolveResult best_sol;

    for (std::size_t k1 = 0; k1 < nf; ++k1) {
        for (std::size_t k2 = 0; k2 < nf; ++k2) {
            ++evaluated;
            PartitionIndicator part{std::vector<int>(nf, 0)};
            ++part.counts[k1];
            ++part.counts[k2];
            auto it = cache.find(part.counts);
            if (it == cache.end()) {
                const QcqpInstance inst = build_qcqp(part, family, a.entries);
                SolverOptions o = opts;
                o.seed = make_stream(opts.seed, "solver-init/" + counts_key(part.counts))();
                std::vector<Eigen::VectorXd> starts;
                if (opts.codebook_m_c > 0) starts.push_back(codebook_start(inst, family, a.entries, opts.codebook_m_c));
                it = cache.emplace(part.counts, solve_entry_qcqp(inst, o, starts)).first;
            }
            if (best_val < 0.0 || strictly_better(it->second.d_min_sq, best_val)) {
                best_val = it->second.d_min_sq;
                best_pair = {static_cast<int>(k1), static_cast<int>(k2)};
                best_part = part;
                best_sol = it->second;
            }
        }
    }

    const QcqpInstance inst = build_qcqp(best_part, family, a.entries);
    SystemConfig cfg = family.config;
    cfg.n_bits = 1;
    shaping::Provenance prov{"obss", a.mode, opts.seed, best_part.counts};
    shaping::TransmitSet set(cfg, shaping::normalize_power(inst.points_from(best_sol.q)), prov);
    return X2Result{std::move(set), best_part, best_sol.q, best_pair, evaluated};
}

DesignResult recursive_design(const SystemConfig& config, const shaping::WeightMatrix& a, const SolverOptions& opts)
{
    config.validate();
    const tac::TacFamily family = tac::enumerate_tacs(config);
    if (a.cols() != config.real_dim())
        throw std::invalid_argument("recursive_design: weight matrix must have 2 N_t columns");
    const int n = static_cast<int>(config.set_size());

    X2Result x2 = exhaustive_x2(family, a, opts);
    PartitionIndicator part = x2.partition;
    Eigen::VectorXd q = x2.q;
    std::size_t evaluated = x2.candidates_evaluated;
    bool converged = true;
    std::vector<double> dmins{shaping::min_distance(x2.set.points(), a.entries)};

    for (int t = 3; t <= n; ++t) {
        double best_val = -1.0;
        PartitionIndicator best_part;
        SolveResult best_sol;
        for (std::size_t k = 0; k < family.size(); ++k) {
            ++evaluated;
            PartitionIndicator cand = part;
            ++cand.counts[k];
            const QcqpInstance inst = build_qcqp(cand, family, a.entries);
            SolverOptions o = opts;
            o.seed = make_stream(opts.seed, "solver-init/" + counts_key(cand.counts))();
            std::vector<Eigen::VectorXd> starts;
            starts.push_back(extend_parent(inst, part, q, static_cast<int>(k), family, a.entries, opts.codebook_m_c));
            if (opts.codebook_m_c > 0) starts.push_back(codebook_start(inst, family, a.entries, opts.codebook_m_c));
            SolveResult sol = solve_entry_qcqp(inst, o, starts);
            if (best_val < 0.0 || strictly_better(sol.d_min_sq, best_val)) {
                best_val = sol.d_min_sq;
                best_part = cand;
                best_sol = std::move(sol);
            }
        }
        converged = converged && best_sol.converged;
        part = best_part;
        q = best_sol.q;
        dmins.push_back(std::sqrt(best_val));
    }

    const QcqpInstance inst = build_qcqp(part, family, a.entries);
    shaping::Provenance prov{"obss", a.mode, opts.seed, part.counts};
    shaping::TransmitSet set(config, shaping::normalize_power(inst.points_from(q)), prov);
    return DesignResult{std::move(set), part, std::move(dmins), evaluated, converged};
}

void write_trace_csv(std::ostream& os, const SolveResult& result)
{
    os << "run,iteration,tau\n";
    for (std::size_t r = 0; r < result.traces.size(); ++r)
        for (std::size_t i = 0; i < result.traces[r].size(); ++i)
            os << r << ',' << i + 1 << ',' << format_double(result.traces[r][i]) << '\n';
}

} // namespace sigshape::obss
