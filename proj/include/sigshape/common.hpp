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

#ifndef SIGSHAPE_COMMON_HPP
#define SIGSHAPE_COMMON_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sigshape {

using Complex = std::complex<double>;
using Rng = std::mt19937_64;

enum class Scheme { GenSM, GenQSM };
enum class CsitMode { None, Statistical, Instantaneous };

std::string_view to_string(Scheme s);
std::string_view to_string(CsitMode m);
Scheme parse_scheme(std::string_view text);
CsitMode parse_csit(std::string_view text);

// (N_t, N_r, N_RF, n) plus scheme and CSIT mode.
struct SystemConfig {
    int n_t = 0;
    int n_r = 0;
    int n_rf = 0;
    int n_bits = 0;
    Scheme scheme = Scheme::GenSM;
    CsitMode csit = CsitMode::None;

    // Number of transmit vectors, 2^n.
    std::size_t set_size() const { return std::size_t{1} << n_bits; }
    int real_dim() const { return 2 * n_t; }

    // Throws std::invalid_argument on non-positive sizes or N_RF > N_t.
    void validate() const;
};

// Base for errors the CLI maps to the "numerical failure" exit code.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotPsdError : NumericalError {
    using NumericalError::NumericalError;
};

struct InfeasibleError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    std::size_t line;
};

// Engine seeded from a master seed and a stream name; distinct names give
// statistically independent streams.
Rng make_stream(std::uint64_t seed, std::string_view name);

// Shortest representation that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text);

std::uint64_t binomial(int n, int k);

} // namespace sigshape

#endif
