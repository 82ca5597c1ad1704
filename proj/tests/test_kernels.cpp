#include <vector>

#include "doctest.h"
#include "igt/kernels.hpp"
#include "igt/rng.hpp"

using igt::cplx;
namespace kern = igt::kern;

namespace {

const std::vector<std::size_t> kSizes{0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 33, 64, 65};

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("dispatched variants match the scalar reference") {
    const auto& d = kern::ops();
    const auto& s = kern::scalar_ops();
    igt::Rng rng(12345);
    for (std::size_t n : kSizes) {
        std::vector<double> x(n), y(n);
        std::vector<cplx> z(n), c(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.normal();
            y[i] = rng.normal();
            z[i] = cplx(rng.normal(), rng.normal());
            c[i] = cplx(rng.normal(), rng.normal());
        }
        double scale = double(n) + 1.0;

        CHECK(d.dot(x.data(), y.data(), n) ==
              doctest::Approx(s.dot(x.data(), y.data(), n)).epsilon(1e-13).scale(scale));
        CHECK(d.nrm2sq(x.data(), n) ==
              doctest::Approx(s.nrm2sq(x.data(), n)).epsilon(1e-13).scale(scale));

        cplx drz = d.dotc_rz(x.data(), c.data(), n);
        cplx srz = s.dotc_rz(x.data(), c.data(), n);
        CHECK(std::abs(drz - srz) < 1e-12 * scale);

        cplx dzz = d.dotc_zz(z.data(), c.data(), n);
        cplx szz = s.dotc_zz(z.data(), c.data(), n);
        CHECK(std::abs(dzz - szz) < 1e-12 * scale);

        std::vector<double> ya = y, yb = y;
        d.axpy(1.7, x.data(), ya.data(), n);
        s.axpy(1.7, x.data(), yb.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(ya[i] == doctest::Approx(yb[i]).epsilon(1e-13));

        std::vector<cplx> za = z, zb = z;
        d.zaxpy(cplx(0.3, -1.1), c.data(), za.data(), n);
        s.zaxpy(cplx(0.3, -1.1), c.data(), zb.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(za[i] - zb[i]) < 1e-13);

        std::vector<double> ma(n), mb(n);
        d.zmod(z.data(), ma.data(), n);
        s.zmod(z.data(), mb.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(ma[i] == doctest::Approx(mb[i]).epsilon(1e-14));
    }
}

TEST_CASE("scalar reference values") {
    double x[3] = {1.0, 2.0, 3.0};
    double y[3] = {4.0, -5.0, 6.0};
    const auto& s = kern::scalar_ops();
    CHECK(s.dot(x, y, 3) == 12.0);
    CHECK(s.nrm2sq(x, 3) == 14.0);
    cplx c[2] = {{1.0, 1.0}, {0.0, -2.0}};
    // sum x[i] * conj(c[i])
    cplx r = s.dotc_rz(x, c, 2);
    CHECK(r.real() == 1.0);
    CHECK(r.imag() == 3.0);
    double m[2];
    s.zmod(c, m, 2);
    CHECK(m[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(m[1] == 2.0);
}

TEST_CASE("dispatch reports a consistent selection") {
    // both tables must be populated and callable
    double x[4] = {1, 2, 3, 4};
    CHECK(kern::nrm2sq(x, 4) == 30.0);
    (void)kern::using_avx2();
}

} // TEST_SUITE
