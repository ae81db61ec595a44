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

#include "doctest.h"

#include "specmimo/error.hpp"
#include "specmimo/spectrum.hpp"

#include <cmath>
#include <random>

using namespace specmimo;

namespace
{
    Material concrete() { return Material::dielectric("concrete", {2.5524, 0.0}); }

    KernelContext context(const Material &m, KernelMode mode, double D0 = 15.0, bool hard = false)
    {
        KernelContext c;
        c.w = Wavenumbers::at(57.5e9, m);
        c.material = m;
        c.D0 = D0;
        c.mode = mode;
        c.hard_indicator = hard;
        return c;
    }

    // Composite Simpson on [a, b] with n (even) intervals.
    template <class F>
    cplx simpson(F &&f, double a, double b, int n)
    {
        const double h = (b - a) / n;
        cplx s = f(a) + f(b);
        for (int i = 1; i < n; ++i)
            s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
        return s * h / 3.0;
    }
}

TEST_CASE("dispersion relation at spectral points")
{
    const auto w = Wavenumbers::at(57.5e9, Material::dielectric("lossy", {2.2, 0.3}));
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> re(0.0, 4.0 * w.k1), im(-0.01 * w.k1, 0.0);
    for (int k = 0; k < 5000; ++k)
    {
        const cplx kr(re(rng), im(rng));
        const auto p = spectral_point(kr, w);
        CHECK(std::abs(p.k1z * p.k1z + kr * kr - w.k1 * w.k1) <= 1e-12 * w.k1 * w.k1);
        CHECK(std::abs(p.k2z * p.k2z + kr * kr - w.k2 * w.k2) <= 1e-12 * std::norm(w.k2));
        CHECK(p.k1z.imag() >= 0.0);
        CHECK(p.k2z.imag() >= 0.0);
    }
}

TEST_CASE("kernel linearity: Total = LosOnly + ReflectedOnly")
{
    const auto m = Material::dielectric("lossy", {2.2, 0.3});
    const auto tot = context(m, KernelMode::Total), los = context(m, KernelMode::LosOnly),
               ref = context(m, KernelMode::ReflectedOnly);
    const double k1 = tot.w.k1;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 2000; ++k)
    {
        const cplx kr(2.0 * k1 * u(rng), -0.001 * k1 * u(rng));
        const double rz = 14.0 * u(rng) - 7.0, sz = 0.1 * u(rng);
        const cplx a = wavenumber_response(kr, rz, sz, tot);
        const cplx b = wavenumber_response(kr, rz, sz, los) + wavenumber_response(kr, rz, sz, ref);
        CHECK(std::abs(a - b) <= 1e-14 * (std::abs(a) + std::abs(b)));
    }
}

TEST_CASE("absent surface: Total equals LosOnly")
{
    // n2 = 1 makes R identically zero.
    const auto vacuum = Material::dielectric("vacuum", {1.0, 0.0});
    const auto tot = context(vacuum, KernelMode::Total), los = context(vacuum, KernelMode::LosOnly);
    for (double x = 0.01; x < 3.0; x += 0.0137)
    {
        const cplx kr(x * tot.w.k1, -1.0);
        CHECK(wavenumber_response(kr, 10.0, 0.0, tot) == wavenumber_response(kr, 10.0, 0.0, los));
    }
}

TEST_CASE("image migration: reflected kernel is R times the LOS kernel at the image separation")
{
    for (const auto &m : {Material::conductor(), concrete(), Material::dielectric("lossy", {3.0, 0.7})})
    {
        const auto ref = context(m, KernelMode::ReflectedOnly), los = context(m, KernelMode::LosOnly);
        const double rz = 10.0, sz = 0.0, image_sep = 2.0 * ref.D0 - rz - sz;
        for (double x = 0.005; x < 2.5; x += 0.0173)
        {
            const cplx kr(x * ref.w.k1, -0.3);
            const cplx a = wavenumber_response(kr, rz, sz, ref);
            const cplx b = fresnel_wavenumber(kr, ref.w, m) * wavenumber_response(kr, image_sep, 0.0, los);
            CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
            if (m.perfect_conductor)
                CHECK(std::abs(a) == doctest::Approx(std::abs(wavenumber_response(kr, image_sep, 0.0, los))).epsilon(1e-12));
        }
    }
}

TEST_CASE("LOS kernel depends on |rz - sz| in both regions")
{
    const auto los = context(concrete(), KernelMode::LosOnly);
    CHECK(region_of(5.0, 0.0) == Region::Between);
    CHECK(region_of(-5.0, 0.0) == Region::Below);
    CHECK_THROWS_AS(region_of(1.0, 1.0), ValidationError);
    for (double x = 0.01; x < 2.0; x += 0.031)
    {
        const cplx kr(x * los.w.k1, -0.2);
        CHECK(std::abs(wavenumber_response(kr, -5.0, 0.0, los) - wavenumber_response(kr, 5.0, 0.0, los)) <=
              1e-13 * std::abs(wavenumber_response(kr, 5.0, 0.0, los)));
    }
}

TEST_CASE("hard indicator removes the evanescent band on the real axis")
{
    const auto hard = context(concrete(), KernelMode::Total, 15.0, true);
    const auto soft = context(concrete(), KernelMode::Total, 15.0, false);
    const double k1 = hard.w.k1;
    CHECK(wavenumber_response(cplx(1.01 * k1, 0.0), 10.0, 0.0, hard) == cplx(0.0, 0.0));
    CHECK(wavenumber_response(cplx(3.0 * k1, 0.0), 10.0, 0.0, hard) == cplx(0.0, 0.0));
    CHECK(wavenumber_response(cplx(1.01 * k1, 0.0), 0.01, 0.0, soft) != cplx(0.0, 0.0));
    CHECK(wavenumber_response(cplx(1.01 * k1, 0.0), 0.01, 0.0, hard) == cplx(0.0, 0.0));
    CHECK(wavenumber_response(cplx(0.5 * k1, 0.0), 10.0, 0.0, hard) ==
          wavenumber_response(cplx(0.5 * k1, 0.0), 10.0, 0.0, soft));
}

TEST_CASE("branch point on the real axis is rejected")
{
    const auto c = context(concrete(), KernelMode::LosOnly);
    CHECK_THROWS_AS(wavenumber_response(cplx(c.w.k1, 0.0), 10.0, 0.0, c), ValidationError);
}

TEST_CASE("engine constant and closed-form spherical wave")
{
    const auto w = Wavenumbers::at(57.5e9, concrete());
    const cplx c = engine_constant(w);
    CHECK(std::abs(c - w.k1 * w.eta1 / (4.0 * pi * I)) <= 1e-15 * std::abs(c));

    const Point3 s(0.1, -0.2, 0.3);
    for (double d : {0.5, 1.0, 3.7, 10.0})
    {
        const Point3 r = s + d * Point3(0.6, 0.0, 0.8);
        const cplx g = weyl_los_closed_form(r, s, w);
        CHECK(std::abs(g) == doctest::Approx(std::abs(c) / d).epsilon(1e-14));

        const cplx g_lambda = weyl_los_closed_form(s + (d + w.wavelength) * Point3(0.6, 0.0, 0.8), s, w);
        CHECK(std::abs(std::arg(g_lambda / g * (d + w.wavelength) / d)) < 1e-9);

        const cplx g2 = weyl_los_closed_form(s + 2.0 * d * Point3(0.6, 0.0, 0.8), s, w);
        CHECK(std::abs(g2 - 0.5 * g * std::exp(I * w.k1 * d)) <= 1e-9 * std::abs(g2));
    }
    const cplx g1 = weyl_los_closed_form(Point3(0, 0, 1), Point3(0, 0, 0), w);
    CHECK(std::abs(g1 - c * std::exp(I * w.k1)) <= 1e-14 * std::abs(g1));
    CHECK_THROWS_AS(weyl_los_closed_form(s, s, w), ValidationError);
}

TEST_CASE("surface impulse response of a conductor is a negated band-limited delta")
{
    const auto m = Material::conductor();
    const auto w = Wavenumbers::at(57.5e9, m);
    for (double kmax : {0.3 * w.k1, w.k1, 2.0 * w.k1})
    {
        CHECK(std::abs(surface_impulse_response(0.0, w, m, kmax) + kmax * kmax / (4.0 * pi)) <= 1e-12 * kmax * kmax);
        for (double rho : {1e-4, 1e-3, 4e-3, 0.01, 0.05})
        {
            const double ref = -kmax * std::cyl_bessel_j(1.0, kmax * rho) / (2.0 * pi * rho);
            CAPTURE(rho);
            CHECK(std::abs(surface_impulse_response(rho, w, m, kmax) - ref) <= 1e-9 * kmax * kmax / (4.0 * pi));
        }
    }
    CHECK(std::abs(surface_impulse_response(0.0, w, m) + w.k1 * w.k1 / (4.0 * pi)) <= 1e-12 * w.k1 * w.k1);
}

TEST_CASE("surface impulse response of a dielectric over the propagating band")
{
    const auto m = concrete();
    const auto w = Wavenumbers::at(57.5e9, m);
    // Independent oracle: kappa = k1 sin(theta) turns the integrand into a smooth
    // function of theta, integrated by Simpson's rule.
    for (double rho : {0.0, 1e-3, 0.01})
    {
        auto f = [&](double t) {
            return fresnel_angle(t, m) * std::cyl_bessel_j(0.0, w.k1 * std::sin(t) * rho) * std::sin(t) * std::cos(t);
        };
        const cplx ref = w.k1 * w.k1 / (2.0 * pi) * simpson(f, 0.0, pi / 2, 20000);
        CAPTURE(rho);
        CHECK(std::abs(surface_impulse_response(rho, w, m) - ref) <= 1e-10 * w.k1 * w.k1 / (4.0 * pi));
    }
}

TEST_CASE("surface impulse response in the low-pass limit is R(0) times a band-limited delta")
{
    const auto m = Material::dielectric("lossy", {2.5, 0.2});
    const auto w = Wavenumbers::at(57.5e9, m);
    const double kmax = 0.01 * w.k1;
    const cplx R0 = (1.0 - m.n2) / (1.0 + m.n2);
    const double peak = std::abs(R0) * kmax * kmax / (4.0 * pi);
    for (double rho = 0.0; rho < 5.0; rho += 0.0731)
    {
        const double delta = rho == 0.0 ? kmax * kmax / (4.0 * pi)
                                        : kmax * std::cyl_bessel_j(1.0, kmax * rho) / (2.0 * pi * rho);
        CHECK(std::abs(surface_impulse_response(rho, w, m, kmax) - R0 * delta) <= 1e-3 * peak);
    }
}

TEST_CASE("surface impulse response rejects a non-positive band")
{
    const auto w = Wavenumbers::at(57.5e9, concrete());
    CHECK_THROWS_AS(surface_impulse_response(0.1, w, concrete(), 0.0), ValidationError);
    CHECK_THROWS_AS(surface_impulse_response(0.1, w, concrete(), -1.0), ValidationError);
}

TEST_CASE("KernelMode names")
{
    for (auto m : {KernelMode::LosOnly, KernelMode::ReflectedOnly, KernelMode::Total})
        CHECK(kernel_mode_from_string(to_string(m)) == m);
    CHECK_THROWS_AS(kernel_mode_from_string("sideways"), ValidationError);
}
