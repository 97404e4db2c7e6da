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

#include "sigshape/cli.hpp"

#include "sigshape/cbss.hpp"
#include "sigshape/channel.hpp"
#include "sigshape/evaluate.hpp"
#include "sigshape/obss.hpp"
#include "sigshape/shaping.hpp"
#include "sigshape/tac.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

namespace sigshape::cli {

namespace {

struct Options {
    std::string scheme = "gensm";
    int n_t = 3;
    int n_r = 2;
    int n_rf = 2;
    int n_bits = 3;
    std::string method = "obss";
    std::vector<std::string> methods{"obss", "cbss", "baseline"};
    std::string csit = "none";
    double delta = 0.0;
    int m_c = 16;
    std::vector<double> snr_db{0, 5, 10, 15, 20};
    std::size_t trials = 10000;
    std::size_t draws = 200;
    double eta = 0.0;
    std::uint64_t seed = 1;
    std::string out;
    std::string set_path;
    std::string channel_path;
    std::string trace_path;
    std::vector<double> thresholds{0, 0.25, 0.5, 0.75, 1, 1.25, 1.5, 1.75, 2, 2.25, 2.5, 2.75, 3};
    int restarts = 20;
    int max_iters = 500;
    double tol = 1e-6;
};

SystemConfig system_config(const Options& o)
{
    SystemConfig c;
    c.n_t = o.n_t;
    c.n_r = o.n_r;
    c.n_rf = o.n_rf;
    c.n_bits = o.n_bits;
    c.scheme = parse_scheme(o.scheme);
    c.csit = parse_csit(o.csit);
    c.validate();
    return c;
}

obss::SolverOptions solver_options(const Options& o)
{
    obss::SolverOptions s;
    s.restarts = o.restarts;
    s.max_iters = o.max_iters;
    s.tol = o.tol;
    s.seed = make_stream(o.seed, "solver-init")();
    return s;
}

std::string read_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

channel::ComplexChannel load_channel(const std::string& path)
{
    std::istringstream is(read_file(path));
    return channel::read_channel_csv(is);
}

// Weight for the given CSIT mode; instantaneous CSIT needs a channel.
shaping::WeightMatrix weight_for(const SystemConfig& c, const channel::CorrelationModel& corr,
                                 const channel::RealChannel* ch)
{
    const shaping::WeightMode mode = shaping::weight_mode_for(c.csit);
    if (mode == shaping::WeightMode::Instantaneous && ch == nullptr) {
        throw std::invalid_argument("instantaneous CSIT needs a channel (--channel)");
    }
    return shaping::make_weight(mode, c.n_t, &corr, ch);
}

struct Designed {
    shaping::TransmitSet set;
    std::optional<cbss::Selection> selection;
    bool converged = true;
};

Designed run_designer(const std::string& method, const SystemConfig& c, const shaping::WeightMatrix& w, const Options& o)
{
    if (method == "obss") {
        obss::DesignResult r = obss::recursive_design(c, w, solver_options(o));
        return {std::move(r.set), std::nullopt, r.converged};
    }
    if (method == "cbss") {
        const tac::TacFamily family = tac::enumerate_tacs(c);
        const cbss::Codebook cb = cbss::build_codebook(c, family, o.m_c);
        cbss::Selection sel = cbss::progressive_select(cb, w, c.set_size());
        shaping::TransmitSet set = sel.set;
        return {std::move(set), std::move(sel), true};
    }
    if (method == "baseline") {
        const evaluate::BaselineFlavor flavor = c.scheme == Scheme::GenSM ? evaluate::BaselineFlavor::BpskGenSM
                                                                          : evaluate::BaselineFlavor::QuarterPiBpskGenQSM;
        return {evaluate::baseline_design(c, flavor, w.entries), std::nullopt, true};
    }
    throw std::invalid_argument("unknown method: " + method);
}

// Per-TAC point counts. Each vector is attributed to the first TAC whose
// supports cover its non-zero entries.
std::vector<int> partition_counts(const shaping::TransmitSet& set)
{
    if (!set.provenance().partition.empty()) return set.provenance().partition;
    const tac::TacFamily family = tac::enumerate_tacs(set.config());
    const int n_t = set.config().n_t;
    std::vector<int> counts(family.size(), 0);
    for (std::size_t i = 0; i < set.size(); ++i) {
        const Eigen::VectorXd x = set.vector(i);
        for (std::size_t k = 0; k < family.size(); ++k) {
            std::vector<bool> allowed(static_cast<std::size_t>(2 * n_t), false);
            for (int a : family[k].real_support) allowed[static_cast<std::size_t>(a)] = true;
            for (int a : family[k].imag_support) allowed[static_cast<std::size_t>(n_t + a)] = true;
            bool fits = true;
            for (int e = 0; e < 2 * n_t; ++e) {
                if (x(e) != 0.0 && !allowed[static_cast<std::size_t>(e)]) fits = false;
            }
            if (fits) {
                ++counts[k];
                break;
            }
        }
    }
    return counts;
}

std::string to_text(const std::function<void(std::ostream&)>& writer)
{
    std::ostringstream os;
    writer(os);
    return os.str();
}

void require_out(const Options& o)
{
    if (o.out.empty()) throw std::invalid_argument("--out is required");
}

int cmd_design(const Options& o, std::ostream& out)
{
    require_out(o);
    SystemConfig c = system_config(o);
    const channel::CorrelationModel corr = channel::make_correlation(o.delta, c.n_t);
    std::optional<channel::RealChannel> h;
    if (c.csit == CsitMode::Instantaneous) {
        channel::ComplexChannel ch;
        if (!o.channel_path.empty()) {
            ch = load_channel(o.channel_path);
            if (ch.entries.cols() != c.n_t) throw std::invalid_argument("channel file does not match --nt");
            c.n_r = static_cast<int>(ch.entries.rows());
        } else {
            Rng rng = make_stream(o.seed, "channel");
            ch = channel::sample_channel(rng, corr, c.n_r).complex;
            write_atomic(o.out + ".channel.csv", to_text([&](std::ostream& os) { channel::write_channel_csv(os, ch); }));
        }
        h = channel::RealChannel{channel::real_expand(ch.entries)};
    }
    const shaping::WeightMatrix w = weight_for(c, corr, h ? &*h : nullptr);

    const auto t0 = std::chrono::steady_clock::now();
    Designed d = run_designer(o.method, c, w, o);
    const double runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    shaping::Provenance prov = d.set.provenance();
    prov.weight = w.mode;
    prov.seed = o.seed;
    prov.partition = partition_counts(d.set);
    const shaping::TransmitSet set(c, d.set.points(), prov);

    write_atomic(o.out, to_text([&](std::ostream& os) { shaping::write_set_csv(os, set); }));
    if (!o.trace_path.empty()) {
        if (!d.selection) throw std::invalid_argument("--trace is only available for --method cbss");
        write_atomic(o.trace_path, to_text([&](std::ostream& os) { cbss::write_trace_csv(os, *d.selection); }));
    }

    nlohmann::ordered_json summary;
    summary["method"] = o.method;
    summary["scheme"] = std::string(to_string(c.scheme));
    summary["n_bits"] = c.n_bits;
    summary["weight"] = std::string(shaping::to_string(w.mode));
    summary["seed"] = o.seed;
    summary["d_min"] = shaping::min_distance(set, w);
    summary["power"] = shaping::average_power(set);
    summary["partition"] = prov.partition;
    summary["converged"] = d.converged;
    summary["runtime_s"] = runtime;
    const std::string text = summary.dump(2) + "\n";
    write_atomic(o.out + ".summary.json", text);
    out << text;
    return kOk;
}

int cmd_evaluate(const Options& o, std::ostream& out)
{
    require_out(o);
    if (o.set_path.empty()) throw std::invalid_argument("--set is required");
    std::istringstream is(read_file(o.set_path));
    const shaping::TransmitSet set = shaping::read_set_csv(is);
    const SystemConfig& c = set.config();
    const channel::CorrelationModel corr = channel::make_correlation(o.delta, c.n_t);
    const evaluate::SnrGrid grid = evaluate::SnrGrid::from_db(o.snr_db);

    std::optional<channel::RealChannel> h;
    if (!o.channel_path.empty()) {
        const channel::ComplexChannel ch = load_channel(o.channel_path);
        if (ch.entries.cols() != c.n_t) throw std::invalid_argument("channel file does not match the set");
        h = channel::RealChannel{channel::real_expand(ch.entries)};
    }
    const shaping::WeightMatrix w = weight_for(c, corr, h ? &*h : nullptr);

    evaluate::SerCurve curve;
    if (h) {
        if (o.eta > 0.0) throw std::invalid_argument("--eta applies to fading simulation, not to a fixed --channel");
        for (double rho : grid.rho) {
            Rng rng = make_stream(o.seed, "noise");
            curve.push_back(evaluate::simulate_ser_fixed(set.points(), h->entries, rho, o.trials, rng));
        }
    } else {
        curve = evaluate::simulate_curve(set, corr, c.n_r, grid, o.trials, o.seed, o.eta);
    }
    write_atomic(o.out, to_text([&](std::ostream& os) { evaluate::write_ser_csv(os, curve); }));

    nlohmann::ordered_json summary;
    summary["d_min"] = shaping::min_distance(set, w);
    summary["power"] = shaping::average_power(set);
    out << summary.dump(2) << "\n";
    return kOk;
}

int cmd_ccdf(const Options& o, std::ostream& out, std::ostream& err)
{
    require_out(o);
    const SystemConfig c = system_config(o);
    if (c.csit != CsitMode::Instantaneous) throw std::invalid_argument("ccdf needs --csit instantaneous");
    if (o.method == "obss" && o.draws > 20) {
        err << "warning: obss over " << o.draws << " channel draws runs one full design per draw and may take hours\n";
    }
    const channel::CorrelationModel corr = channel::make_correlation(o.delta, c.n_t);
    const std::vector<double> thresholds = o.thresholds;
    const evaluate::Designer designer = [&](const shaping::WeightMatrix& w) {
        return run_designer(o.method, c, w, o).set.points();
    };
    Rng rng = make_stream(o.seed, "channel");
    const evaluate::CcdfTable table = evaluate::dmin_ccdf(designer, c, corr, thresholds, o.draws, rng);
    write_atomic(o.out, to_text([&](std::ostream& os) { evaluate::write_ccdf_csv(os, table); }));
    out << "draws=" << o.draws << " rows=" << table.thresholds.size() << "\n";
    return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out)
{
    require_out(o);
    const SystemConfig c = system_config(o);
    if (c.csit == CsitMode::Instantaneous) throw std::invalid_argument("sweep supports --csit none or statistical");
    const channel::CorrelationModel corr = channel::make_correlation(o.delta, c.n_t);
    const shaping::WeightMatrix w = weight_for(c, corr, nullptr);
    std::vector<evaluate::NamedSet> sets;
    for (const std::string& m : o.methods) {
        Designed d = run_designer(m, c, w, o);
        out << m << " d_min=" << format_double(shaping::min_distance(d.set, w)) << "\n";
        sets.push_back({m, std::move(d.set)});
    }
    if (sets.empty()) throw std::invalid_argument("--methods is empty");
    const auto rows = evaluate::compare_designs(sets, corr, c.n_r, o.snr_db, o.trials, o.seed, o.eta);
    write_atomic(o.out, to_text([&](std::ostream& os) { evaluate::write_report_csv(os, rows); }));
    return kOk;
}

void add_options(CLI::App& app, Options& o)
{
    app.add_option("--scheme", o.scheme, "gensm or genqsm")->capture_default_str();
    app.add_option("--nt", o.n_t, "transmit antennas")->capture_default_str();
    app.add_option("--nr", o.n_r, "receive antennas")->capture_default_str();
    app.add_option("--nrf", o.n_rf, "RF chains")->capture_default_str();
    app.add_option("--n", o.n_bits, "bits per channel use")->capture_default_str();
    app.add_option("--method", o.method, "obss, cbss or baseline")->capture_default_str();
    app.add_option("--methods", o.methods, "comma list of methods for sweep")->delimiter(',')->capture_default_str();
    app.add_option("--csit", o.csit, "none, statistical or instantaneous")->capture_default_str();
    app.add_option("--delta", o.delta, "transmit correlation coefficient")->capture_default_str();
    app.add_option("--mc", o.m_c, "QAM order of the CBSS codebook")->capture_default_str();
    app.add_option("--snr-db", o.snr_db, "comma list of SNR values in dB")->delimiter(',')->capture_default_str();
    app.add_option("--trials", o.trials, "Monte-Carlo trials per SNR point")->capture_default_str();
    app.add_option("--draws", o.draws, "channel draws for ccdf")->capture_default_str();
    app.add_option("--eta", o.eta, "channel estimation error level")->capture_default_str();
    app.add_option("--seed", o.seed, "master seed")->capture_default_str();
    app.add_option("--out", o.out, "output file");
    app.add_option("--set", o.set_path, "transmit set CSV to evaluate");
    app.add_option("--channel", o.channel_path, "channel CSV");
    app.add_option("--trace", o.trace_path, "CBSS selection trace CSV");
    app.add_option("--thresholds", o.thresholds, "comma list of CCDF thresholds")->delimiter(',')->capture_default_str();
    app.add_option("--restarts", o.restarts, "random restarts per OBSS solve")->capture_default_str();
    app.add_option("--max-iters", o.max_iters, "outer iterations per OBSS run")->capture_default_str();
    app.add_option("--tol", o.tol, "OBSS relative stopping tolerance")->capture_default_str();
}

} // namespace

void write_atomic(const std::string& path, const std::string& contents)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(std::random_device{}());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::invalid_argument("cannot write " + tmp.string());
        os << contents;
        os.flush();
        if (!os) throw std::invalid_argument("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::invalid_argument("cannot rename into " + path + ": " + ec.message());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Transmit-vector set design and evaluation for GenSM/GenQSM links", "sigshape"};
    app.set_config("--config", "", "key=value file; command-line flags take precedence");
    app.allow_config_extras(false);
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    add_options(app, o);
    CLI::App* design = app.add_subcommand("design", "design one transmit set");
    CLI::App* eval = app.add_subcommand("evaluate", "SER curve and bound of a stored set");
    CLI::App* ccdf = app.add_subcommand("ccdf", "d_min CCDF over instantaneous channel draws");
    CLI::App* sweep = app.add_subcommand("sweep", "design several methods and compare their SER");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (design->parsed()) return cmd_design(o, out);
        if (eval->parsed()) return cmd_evaluate(o, out);
        if (ccdf->parsed()) return cmd_ccdf(o, out, err);
        if (sweep->parsed()) return cmd_sweep(o, out);
        return kConfigError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const sigshape::ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    }
}

} // namespace sigshape::cli
