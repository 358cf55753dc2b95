// SPDX-License-Identifier: Apache-2.0
//
// eemimo - distortion-aware energy-efficiency optimization for massive MIMO OFDM
// Copyright (C) 2026 The eemimo authors
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

#pragma once

#include <cstdint>
#include <random>

namespace eemimo::detail
{
    /// Reproducible stream for (seed, stream id). std::mt19937_64 and std::seed_seq are
    /// fully specified by the standard; the standard distributions are not, so uniforms
    /// are built from the raw 64-bit output.
    inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        return std::mt19937_64(seq);
    }

    /// Uniform on the open interval (0, 1) with 53 random bits.
    inline double uniform_open(std::mt19937_64 &engine)
    {
        return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
    }
}
