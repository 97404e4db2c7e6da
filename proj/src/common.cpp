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

#include "sigshape/common.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace sigshape {

std::string_view to_string(Scheme s)
{
    return s == Scheme::GenSM ? "gensm" : "genqsm";
}

std::string_view to_string(CsitMode m)
{
    switch (m) {
    case CsitMode::None: return "none";
    case CsitMode::Statistical: return "statistical";
    case CsitMode::Instantaneous: return "instantaneous";
    }
    return "none";
}

Scheme parse_scheme(std::string_view text)
{
    if (text == "gensm") return Scheme::GenSM;
    if (text == "genqsm") return Scheme::GenQSM;
    throw std::invalid_argument("unknown scheme '" + std::string(text) + "'");
}

CsitMode parse_csit(std::string_view text)
{
    if (text == "none") return CsitMode::None;
    if (text == "statistical") return CsitMode::Statistical;
    if (text == "instantaneous") return CsitMode::Instantaneous;
    throw std::invalid_argument("unknown csit mode '" + std::string(text) + "'");
}

void SystemConfig::validate() const
{
    if (n_t < 1 || n_r < 1 || n_rf < 1)
        throw std::invalid_argument("antenna and RF-chain counts must be positive");
    if (n_rf > n_t)
        throw std::invalid_argument("N_RF must not exceed N_t");
    if (n_bits < 1 || n_bits > 20)
        throw std::invalid_argument("rate n must be in [1, 20]");
}

Rng make_stream(std::uint64_t seed, std::string_view name)
{
    // FNV-1a over the stream name
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
    return Rng(seq);
}

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{})
        throw std::runtime_error("failed to format double");
    return std::string(buf.data(), end);
}

double parse_double(std::string_view text)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
        text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    return v;
}

std::uint64_t binomial(int n, int k)
{
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

} // namespace sigshape
