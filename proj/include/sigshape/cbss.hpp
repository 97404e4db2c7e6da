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

#ifndef SIGSHAPE_CBSS_HPP
#define SIGSHAPE_CBSS_HPP

#include "sigshape/shaping.hpp"
#include "sigshape/tac.hpp"

#include <iosfwd>
#include <vector>

namespace sigshape::cbss {

// Square M-QAM (M in {4, 16, 64}) with unit average energy. Point
// (r, c) = ((2r - L + 1) + j(2c - L + 1)) / scale sits at index r*L + c.
std::vector<Complex> qam_constellation(int m_c);

// Candidate transmit vectors, TAC-major then QAM-product order.
struct Codebook {
    shaping::PointSet candidates;
    int m_c = 0;
    SystemConfig config;

    std::size_t size() const { return static_cast<std::size_t>(candidates.rows()); }
};

// Symbol vectors s (2 N_RF entries) for every N_RF-tuple of QAM symbols,
// stream 0 most significant.
shaping::PointSet symbol_vectors(int n_rf, int m_c);

Codebook build_codebook(const SystemConfig& config, const tac::TacFamily& family, int m_c);

struct SelectionStep {
    int step = 0;           // set size after this step
    std::size_t index = 0;  // codebook index added
    double cfm = 0.0;
};

struct Selection {
    shaping::TransmitSet set;           // power-normalized
    std::vector<std::size_t> indices;   // codebook indices in selection order
    std::vector<SelectionStep> trace;   // step 2 records the second index of the initial pair
};

// Exhaustive best-CFM pair, then greedy CFM-maximizing additions until n
// vectors are chosen. Ties go to the lowest codebook index.
Selection progressive_select(const Codebook& cb, const shaping::WeightMatrix& a, std::size_t n);

void write_trace_csv(std::ostream& os, const Selection& sel);

} // namespace sigshape::cbss

#endif
