// SPDX-License-Identifier: Apache-2.0
//
// aperture-forge: finite-aperture linear array placement design and analysis
// Copyright (C) 2026 The aperture-forge authors
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

#ifndef APERTURE_FORGE_ERRORS_H
#define APERTURE_FORGE_ERRORS_H

#include <stdexcept>

namespace aperture_forge
{
    // Port count below the minimum of two.
    struct InvalidPortCountError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // No minimum-redundancy table entry for the requested port count.
    struct UnsupportedPortCountError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // The constraint set {p_1 = 0, p_M = W_max, gaps >= d_min} is empty or a
    // placement violates it.
    struct InfeasibleConstraintsError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // FIM element is zero (endfire angle or zero geometric variance).
    struct UnboundedCrbError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // Eigensolver input is not Hermitian.
    struct InvalidMatrixError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Placement objective undefined (degenerate geometry).
    struct UndefinedObjectiveError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // Malformed CLI flags, config files, or placement files.
    struct ConfigError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    // Output file could not be written.
    struct IoError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };
}

#endif
