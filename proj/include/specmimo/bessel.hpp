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

#ifndef SPECMIMO_BESSEL_HPP
#define SPECMIMO_BESSEL_HPP

#include "specmimo/constants.hpp"

namespace specmimo
{
    // Bessel function of the first kind, order 0, for complex argument.
    //   |z| <= 4       power series
    //   4 < |z| < 17   periodic trapezoid on (1/pi) int_0^pi cos(z cos t) dt
    //   |z| >= 17      Hankel asymptotic expansion, optimally truncated
    // Throws GuardError for |Im z| > 700 (cos/sin overflow).
    cplx bessel_j0(cplx z);

    namespace detail
    {
        cplx bessel_j0_series(cplx z);
        cplx bessel_j0_trapezoid(cplx z);
        cplx bessel_j0_hankel(cplx z);
    }
}

#endif
