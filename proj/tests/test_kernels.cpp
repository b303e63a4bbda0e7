#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

// ---- kernel backend equivalence ----
//
// The scalar loops are the reference; the avx2 implementations must agree to
// within a few ulps.  Sum-shaped kernels are compared against a per-element
// libm evaluation, with the tolerance scaled by sum |terms| because heavily
// cancelling phase sums make a pure relative comparison meaningless.

namespace bk = biphoton::kernels;

namespace {

struct backend_guard {
    bk::backend saved;
    backend_guard() : saved(bk::active_backend()) {}
    ~backend_guard() { bk::set_backend(saved); }
};

std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return v;
}

} // namespace

TEST_CASE("backend dispatch resolves and can be overridden") {
    backend_guard guard;
    const bk::backend def = bk::active_backend();
    CHECK((def == bk::backend::scalar || def == bk::backend::avx2));

    bk::set_backend(bk::backend::scalar);
    CHECK(bk::active_backend() == bk::backend::scalar);
    CHECK(bk::backend_name(bk::active_backend()) == "scalar");

    if (bk::avx2_supported()) {
        bk::set_backend(bk::backend::avx2);
        CHECK(bk::active_backend() == bk::backend::avx2);
        CHECK(bk::backend_name(bk::active_backend()) == "avx2");
    } else {
        CHECK_THROWS_AS(bk::set_backend(bk::backend::avx2), biphoton::config_error);
    }
}

TEST_CASE("vexp matches libm on both backends") {
    backend_guard guard;
    std::mt19937_64 rng(20240811);
    for (double span : {30.0, 700.0}) {
        const auto x = uniform(rng, 1003, -span, span); // odd length hits the tail loop
        std::vector<double> out(x.size());

        bk::set_backend(bk::backend::scalar);
        bk::vexp(x.data(), out.data(), x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(out[i] == doctest::Approx(std::exp(x[i])).epsilon(1e-15));

        if (bk::avx2_supported()) {
            bk::set_backend(bk::backend::avx2);
            bk::vexp(x.data(), out.data(), x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                CHECK(out[i] == doctest::Approx(std::exp(x[i])).epsilon(1e-13));
        }
    }
}

TEST_CASE("vsincos matches libm and stays on the unit circle") {
    backend_guard guard;
    std::mt19937_64 rng(777);
    for (double span : {16.0, 4096.0}) {
        const auto x = uniform(rng, 1001, -span, span);
        std::vector<double> s(x.size()), c(x.size());

        for (bk::backend b : {bk::backend::scalar, bk::backend::avx2}) {
            if (b == bk::backend::avx2 && !bk::avx2_supported()) continue;
            bk::set_backend(b);
            bk::vsincos(x.data(), s.data(), c.data(), x.size());
            const double tol = span > 100.0 ? 1e-13 : 1e-14;
            for (std::size_t i = 0; i < x.size(); ++i) {
                CHECK(std::fabs(s[i] - std::sin(x[i])) <= tol);
                CHECK(std::fabs(c[i] - std::cos(x[i])) <= tol);
                CHECK(std::fabs(s[i] * s[i] + c[i] * c[i] - 1.0) <= 1e-13);
            }
        }
    }
}

namespace {

// per-element libm references for the reduction kernels
std::complex<double> ref_phase_sum(const std::vector<double>& re,
                                   const std::vector<double>& im, double phi0,
                                   double step, double* scale) {
    std::complex<double> acc = 0.0;
    double s = 0.0;
    for (std::size_t k = 0; k < re.size(); ++k) {
        const double ang = phi0 + static_cast<double>(k) * step;
        acc += std::complex<double>(re[k], im[k]) *
               std::complex<double>(std::cos(ang), -std::sin(ang));
        s += std::hypot(re[k], im[k]);
    }
    *scale = s;
    return acc;
}

} // namespace

TEST_CASE("phase_weighted_sum: both backends against direct evaluation") {
    backend_guard guard;
    std::mt19937_64 rng(31337);
    for (std::size_t n : {0u, 1u, 5u, 1024u, 2048u}) {
        const auto re = uniform(rng, n, -2.0, 2.0);
        const auto im = uniform(rng, n, -2.0, 2.0);
        const double phi0 = -1234.5678;
        const double step = 0.37718952; // phases reach ~770 rad at n=2048

        double scale = 0.0;
        const auto ref = ref_phase_sum(re, im, phi0, step, &scale);
        const double tol = 1e-13 * std::max(scale, 1.0);

        for (bk::backend b : {bk::backend::scalar, bk::backend::avx2}) {
            if (b == bk::backend::avx2 && !bk::avx2_supported()) continue;
            bk::set_backend(b);
            const auto got = bk::phase_weighted_sum(re.data(), im.data(), n, phi0, step);
            CHECK(std::abs(got - ref) <= tol);
        }
    }
}

TEST_CASE("weighted_cexp_sum and sinc variant: both backends against direct evaluation") {
    backend_guard guard;
    std::mt19937_64 rng(99);
    for (std::size_t n : {1u, 7u, 513u}) {
        const auto g = uniform(rng, n, -40.0, 0.0);
        const auto phi = uniform(rng, n, -200.0, 200.0);
        const auto w = uniform(rng, n, -1.0, 1.0);
        auto x = uniform(rng, n, -50.0, 50.0);
        // exercise the sinc small-argument branch on both sides of the switch
        if (n >= 7) {
            x[1] = 0.0;
            x[2] = 5e-7;
            x[3] = -5e-7;
            x[4] = 2e-6;
            x[5] = -2e-6;
        }

        std::complex<double> ref_plain = 0.0, ref_sinc = 0.0;
        double scale = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double m = w[k] * std::exp(g[k]);
            const std::complex<double> ph(std::cos(phi[k]), std::sin(phi[k]));
            ref_plain += m * ph;
            const double sc =
                std::fabs(x[k]) < 1e-6 ? 1.0 - x[k] * x[k] / 6.0 : std::sin(x[k]) / x[k];
            ref_sinc += m * sc * ph;
            scale += std::fabs(m);
        }
        const double tol = 1e-13 * std::max(scale, 1.0);

        for (bk::backend b : {bk::backend::scalar, bk::backend::avx2}) {
            if (b == bk::backend::avx2 && !bk::avx2_supported()) continue;
            bk::set_backend(b);
            CHECK(std::abs(bk::weighted_cexp_sum(g.data(), phi.data(), w.data(), n) -
                           ref_plain) <= tol);
            CHECK(std::abs(bk::sinc_weighted_cexp_sum(x.data(), g.data(), phi.data(),
                                                      w.data(), n) -
                           ref_sinc) <= tol);
        }
    }
}

TEST_CASE("kernel results are bitwise reproducible within a backend") {
    backend_guard guard;
    std::mt19937_64 rng(4242);
    const std::size_t n = 777;
    const auto re = uniform(rng, n, -1.0, 1.0);
    const auto im = uniform(rng, n, -1.0, 1.0);

    for (bk::backend b : {bk::backend::scalar, bk::backend::avx2}) {
        if (b == bk::backend::avx2 && !bk::avx2_supported()) continue;
        bk::set_backend(b);
        const auto a = bk::phase_weighted_sum(re.data(), im.data(), n, 0.125, 0.01);
        const auto c = bk::phase_weighted_sum(re.data(), im.data(), n, 0.125, 0.01);
        CHECK(a.real() == c.real());
        CHECK(a.imag() == c.imag());
    }
}
