#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "isospec/eigen.hpp"
#include "isospec/kernels.hpp"
#include "isospec/rng.hpp"

using namespace isospec;

namespace {

std::vector<double> random_vec(Rng& rng, size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.next_real(-2.0, 2.0);
    return v;
}

bool bits_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!bits_equal(a[i], b[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("dot matches a plain loop within roundoff") {
    Rng rng(11);
    for (size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 64u}) {
        const auto x = random_vec(rng, n);
        const auto y = random_vec(rng, n);
        double naive = 0.0;
        for (size_t i = 0; i < n; ++i) naive += x[i] * y[i];
        CHECK(kern::dot(x.data(), y.data(), n) == doctest::Approx(naive).epsilon(1e-12));
    }
}

TEST_CASE("scalar and avx2 paths are bit-identical") {
    if (!kern::avx2_supported()) return;  // nothing to compare on this machine
    Rng rng(17);
    for (size_t n : {1u, 2u, 4u, 5u, 8u, 13u, 31u, 64u, 127u}) {
        const auto x = random_vec(rng, n);
        const auto y = random_vec(rng, n);
        const double a = rng.next_real(-1.5, 1.5);
        const double c = std::cos(0.7), s = std::sin(0.7);

        CHECK(bits_equal(kern::detail::dot_scalar(x.data(), y.data(), n),
                         kern::detail::dot_avx2(x.data(), y.data(), n)));

        auto y1 = y, y2 = y;
        kern::detail::axpy_scalar(a, x.data(), y1.data(), n);
        kern::detail::axpy_avx2(a, x.data(), y2.data(), n);
        CHECK(bits_equal(y1, y2));

        auto x1 = x, x2 = x;
        y1 = y;
        y2 = y;
        kern::detail::rot_scalar(x1.data(), y1.data(), n, c, s);
        kern::detail::rot_avx2(x2.data(), y2.data(), n, c, s);
        CHECK(bits_equal(x1, x2));
        CHECK(bits_equal(y1, y2));

        x1 = x;
        x2 = x;
        kern::detail::scale_scalar(a, x1.data(), n);
        kern::detail::scale_avx2(a, x2.data(), n);
        CHECK(bits_equal(x1, x2));
    }
}

TEST_CASE("rot preserves norms") {
    Rng rng(23);
    const size_t n = 37;
    auto x = random_vec(rng, n);
    auto y = random_vec(rng, n);
    const double before = kern::nrm2sq(x.data(), n) + kern::nrm2sq(y.data(), n);
    kern::rot(x.data(), y.data(), n, std::cos(1.1), std::sin(1.1));
    const double after = kern::nrm2sq(x.data(), n) + kern::nrm2sq(y.data(), n);
    CHECK(after == doctest::Approx(before).epsilon(1e-13));
}

TEST_CASE("force_isa round-trips and dispatch honors it") {
    const kern::Isa original = kern::active_isa();
    kern::force_isa(kern::Isa::scalar);
    CHECK(kern::active_isa() == kern::Isa::scalar);
    if (kern::avx2_supported()) {
        kern::force_isa(kern::Isa::avx2);
        CHECK(kern::active_isa() == kern::Isa::avx2);
    }
    kern::force_isa(original);
}

TEST_CASE("whole eigensolver is bit-identical across isa paths") {
    if (!kern::avx2_supported()) return;

    isospec::Rng rng(131);
    isospec::Matrix m(24, 24);
    for (int i = 0; i < 24; ++i)
        for (int j = i; j < 24; ++j) m(i, j) = m(j, i) = rng.next_real(-4.0, 4.0);
    const kern::Isa original = kern::active_isa();
    kern::force_isa(kern::Isa::scalar);
    const auto scalar_basis = isospec::eig_sym(m);
    kern::force_isa(kern::Isa::avx2);
    const auto avx_basis = isospec::eig_sym(m);
    kern::force_isa(original);
    CHECK(std::memcmp(scalar_basis.values.data(), avx_basis.values.data(),
                      scalar_basis.values.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(scalar_basis.vectors.data().data(), avx_basis.vectors.data().data(),
                      scalar_basis.vectors.data().size() * sizeof(double)) == 0);
}
