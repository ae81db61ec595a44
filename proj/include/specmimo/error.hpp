// SPDX-License-Identifier: Apache-2.0
//
// specmimo: exact MIMO channel synthesis for links reflected off a smooth planar surface
// Copyright (C) 2026 The specmimo authors
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

#ifndef SPECMIMO_ERROR_HPP
#define SPECMIMO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace specmimo
{
    // Invalid input: bad geometry, bad config, violated preconditions.
    class ValidationError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A numerical validity limit was hit (e.g. the transverse-range limit of the
    // semi-elliptical contour, or a non-convergent integral).
    class GuardError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Quadrature did not reach its tolerance within the node budget.
    class ConvergenceError : public GuardError
    {
    public:
        using GuardError::GuardError;
    };
}

#endif
