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
#include "test_support.hpp"

#include "specmimo/error.hpp"

#include <sstream>

using namespace specmimo;
using namespace specmimo::test;

namespace
{
    Material concrete() { return Material::dielectric("concrete", {2.5524, 0.0}); }
}

TEST_CASE("1x1 on-axis LOS entry is a spherical wave")
{
    Scenario s = parallel_ulas(3.0, 0.01, KernelMode::LosOnly, concrete(), 15.0, 1);
    const auto H = build_exact(s);
    REQUIRE(H.n_rx() == 1);
    REQUIRE(H.n_tx() == 1);
    const cplx c = engine_constant(s.wavenumbers());
    CHECK(std::abs(H.entries(0, 0)) == doctest::Approx(std::abs(c) / 3.0).epsilon(1e-6));
    CHECK(rel_err(H.entries(0, 0), c * std::exp(I * s.wavenumbers().k1 * 3.0) / 3.0) <= 1e-6);
    CHECK(H.provenance == Provenance::Exact);
    CHECK(H.scenario_hash == s.hash());
}

TEST_CASE("LOS oracle: 1x1 phase and symmetric layouts")
{
    Scenario s = parallel_ulas(1.0, 0.01, KernelMode::LosOnly, concrete(), 15.0, 1);
    const auto H1 = build_los_oracle(s);
    const double k1 = s.wavenumbers().k1;
    CHECK(std::abs(std::arg(H1.entries(0, 0) / engine_constant(s.wavenumbers())) - std::remainder(k1, 2 * pi)) < 1e-9);

    s = parallel_ulas(10.0, rayleigh_spacing(10.0), KernelMode::LosOnly);
    const auto H = build_los_oracle(s).entries;
    const Eigen::Index n = H.rows();
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = 0; k < n; ++k)
        {
            CHECK(std::abs(H(m, k) - H(k, m)) <= 1e-12 * std::abs(H(m, k)));
            CHECK(std::abs(H(m, k) - H(n - 1 - k, n - 1 - m)) <= 1e-12 * std::abs(H(m, k)));
        }
    CHECK(build_los_oracle(s).provenance == Provenance::LosOracle);
}

TEST_CASE("exact LOS channel matches the oracle and is a Fourier matrix at the Rayleigh spacing")
{
    const Scenario s = parallel_ulas(10.0, rayleigh_spacing(10.0), KernelMode::LosOnly);
    const auto He = build_exact(s), Ho = build_los_oracle(s);
    CHECK(max_rel_err(He.entries, Ho.entries) <= 1e-6);
    CHECK(spread_db(normalized_eigenvalues(He)) <= 0.1);
}

TEST_CASE("exact conductor reflection matches the image oracle")
{
    const Scenario s = parallel_ulas(10.0, rayleigh_spacing(20.0), KernelMode::ReflectedOnly);
    const auto He = build_exact(s), Hi = build_image_oracle(s);
    CHECK(max_rel_err(He.entries, Hi.entries) <= 1e-6);
    CHECK(spread_db(normalized_eigenvalues(He)) <= 0.1);
    CHECK(Hi.provenance == Provenance::ImageOracle);
}

TEST_CASE("image oracle geometry and sign")
{
    Scenario s = parallel_ulas(10.0, 0.01, KernelMode::ReflectedOnly, Material::conductor(), 15.0, 1);
    const auto w = s.wavenumbers();
    const cplx h = build_image_oracle(s).entries(0, 0);
    CHECK(std::abs(h + engine_constant(w) * std::exp(I * w.k1 * 20.0) / 20.0) <= 1e-14 * std::abs(h));

    s = parallel_ulas(10.0, rayleigh_spacing(20.0), KernelMode::ReflectedOnly);
    const auto Hi = build_image_oracle(s).entries;
    const auto tx = ula_positions(s.tx), rx = ula_positions(s.rx);
    for (int m = 0; m < 8; ++m)
        for (int n = 0; n < 8; ++n)
            CHECK(Hi(m, n) == -weyl_los_closed_form(rx[m], mirror_across(tx[n], s.D0), w));

    s.material = concrete();
    CHECK_THROWS_AS(build_image_oracle(s), ValidationError);
}

TEST_CASE("paraxial baseline")
{
    Scenario s = parallel_ulas(10.0, rayleigh_spacing(20.0), KernelMode::ReflectedOnly);
    CHECK(build_paraxial(s).entries == build_image_oracle(s).entries);
    CHECK(build_paraxial(s).provenance == Provenance::Paraxial);

    const auto ev_pc = eigenvalues(build_paraxial(s).entries);
    s.material = concrete();
    const auto ev_c = eigenvalues(build_paraxial(s).entries);
    for (std::size_t i = 0; i < ev_c.size(); ++i)
        CHECK(linear_to_db(ev_pc[i] / ev_c[i]) == doctest::Approx(7.19).epsilon(0.005 / 7.19));
}

TEST_CASE("small arrays: exact and paraxial spectral efficiency agree within 1%")
{
    Scenario s = parallel_ulas(2.0, 0.0, KernelMode::ReflectedOnly, concrete(), 3.0, 2);
    s.tx.spacing = s.rx.spacing = 0.09;
    const double ref = build_image_oracle([&] {
                           Scenario c = s;
                           c.material = Material::conductor();
                           return c;
                       }())
                           .entries.squaredNorm();
    const double se_e = waterfill_capacity(reference_normalized_eigenvalues(build_exact(s).entries, ref), 1.0).capacity;
    const double se_p = waterfill_capacity(reference_normalized_eigenvalues(build_paraxial(s).entries, ref), 1.0).capacity;
    CHECK(std::abs(se_e - se_p) <= 0.01 * se_e);
}

TEST_CASE("linearity: Total = LosOnly + ReflectedOnly")
{
    Scenario s = parallel_ulas(10.0, rayleigh_spacing(10.0), KernelMode::Total, concrete());
    const auto Ht = build_exact(s).entries;
    s.mode = KernelMode::LosOnly;
    const auto Hl = build_exact(s).entries;
    s.mode = KernelMode::ReflectedOnly;
    const auto Hr = build_exact(s).entries;
    CHECK((Ht - Hl - Hr).cwiseAbs().maxCoeff() <= 1e-9 * Ht.cwiseAbs().maxCoeff());
}

TEST_CASE("space invariance under a common transverse shift")
{
    Scenario s = parallel_ulas(10.0, rayleigh_spacing(10.0), KernelMode::Total, concrete());
    const auto H = build_exact(s).entries;
    s.tx.centroid += Point3(3.25, -1.5, 0.0);
    s.rx.centroid += Point3(3.25, -1.5, 0.0);
    CHECK(max_rel_err(build_exact(s).entries, H) <= 1e-9);
}

TEST_CASE("reciprocity: swapping arrays transposes the channel")
{
    Scenario s = parallel_ulas(6.0, 0.05, KernelMode::Total, concrete(), 9.0, 4);
    s.rx.n_antennas = 3;
    s.rx.tilt = 0.2;
    s.rx.centroid = Point3(0.4, 0.1, 6.0);
    const auto H = build_exact(s).entries;
    std::swap(s.tx, s.rx);
    const auto Ht = build_exact(s).entries;
    REQUIRE(Ht.rows() == H.cols());
    CHECK(max_rel_err(Ht.transpose(), H) <= 1e-9);
}

TEST_CASE("tilted arrays at oblique incidence match both oracles")
{
    Scenario s = parallel_ulas(10.0, 0.0, KernelMode::LosOnly);
    const auto p = make_placement(Point3(1, 4, 10), 15.0);
    s.rx.centroid = p.r0;
    s.tx.tilt = s.rx.tilt = p.tilt;
    s.tx.spacing = s.rx.spacing = rayleigh_spacing(p.D) / std::cos(p.tilt);
    CHECK(max_rel_err(build_exact(s).entries, build_los_oracle(s).entries) <= 1e-6);

    s.mode = KernelMode::ReflectedOnly;
    s.tx.tilt = s.rx.tilt = -p.tilt_e;
    s.tx.spacing = s.rx.spacing = rayleigh_spacing(p.De) / std::cos(p.tilt_e);
    CHECK(max_rel_err(build_exact(s).entries, build_image_oracle(s).entries) <= 1e-6);
}

TEST_CASE("receiver below the transmitter")
{
    Scenario s = parallel_ulas(-4.0, 0.05, KernelMode::Total, Material::conductor(), 5.0, 3);
    const auto He = build_exact(s).entries;
    s.mode = KernelMode::LosOnly;
    const auto Hl = build_los_oracle(s).entries;
    s.mode = KernelMode::ReflectedOnly;
    const auto Hr = build_image_oracle(s).entries;
    CHECK(max_rel_err(He, Hl + Hr) <= 1e-6);
}

TEST_CASE("transverse guard fails the whole build and names the pair")
{
    Scenario s = parallel_ulas(10.0, 0.5, KernelMode::LosOnly, concrete(), 15.0, 2);
    s.rx.centroid = Point3(18.5, 0.0, 10.0);
    CHECK_THROWS_WITH_AS(build_exact(s), doctest::Contains("antenna pair (rx 1, tx 0)"), GuardError);
}

TEST_CASE("scenario validation")
{
    Scenario s = parallel_ulas(10.0, 0.08, KernelMode::ReflectedOnly);
    s.rx.centroid.z() = 15.0 - 0.5 * s.wavenumbers().wavelength;
    CHECK_THROWS_AS(build_exact(s), ValidationError);
    CHECK_THROWS_AS(build_paraxial(s), ValidationError);
    s.mode = KernelMode::LosOnly;
    CHECK_NOTHROW(s.validate());

    s = parallel_ulas(10.0, 0.08, KernelMode::Total);
    s.frequency_hz = 0.0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
    s = parallel_ulas(10.0, 0.08, KernelMode::Total);
    s.tx.n_antennas = 0;
    CHECK_THROWS_AS(s.validate(), ValidationError);
}

TEST_CASE("builds are deterministic across runs and thread counts")
{
    const Scenario s = parallel_ulas(10.0, rayleigh_spacing(20.0), KernelMode::Total, concrete());
    const auto a = build_exact(s, 1), b = build_exact(s, 3), c = build_exact(s, 1);
    CHECK(a.entries == b.entries);
    CHECK(a.entries == c.entries);
}

TEST_CASE("scenario hash")
{
    const Scenario s = parallel_ulas(10.0, 0.08, KernelMode::Total);
    Scenario t = s;
    CHECK(s.hash() == t.hash());
    t.rx.centroid.x() += 1e-9;
    CHECK(s.hash() != t.hash());
    t = s;
    t.contour.n_nodes *= 2;
    CHECK(s.hash() != t.hash());
    t = s;
    t.mode = KernelMode::LosOnly;
    CHECK(s.hash() != t.hash());
}

TEST_CASE("matrix CSV export round-trips exactly")
{
    const Scenario s = parallel_ulas(10.0, 0.08, KernelMode::Total, concrete(), 15.0, 3);
    const auto H = build_paraxial(s);
    std::ostringstream os;
    write_matrix_csv(os, H);
    const std::string text = os.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    std::istringstream is(text);
    CHECK(read_matrix_csv(is) == H.entries);

    CHECK(format_complex({1.0, -0.5}) == "1.0000000000000000e+00-5.0000000000000000e-01j");
    CHECK(format_complex({-0.125, 3.0}) == "-1.2500000000000000e-01+3.0000000000000000e+00j");
    std::istringstream bad("1.0+2.0j,oops\n");
    CHECK_THROWS_AS(read_matrix_csv(bad), ValidationError);
}
