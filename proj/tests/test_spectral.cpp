#include <catch2/catch_amalgamated.hpp>

#include "legw/spectral.hpp"

using namespace legw;

namespace {
ScalarField sample(int n, Real (*f)(Real, Real)) {
    ScalarField out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.at(i, j) = f(2 * M_PI * i / n, 2 * M_PI * j / n);
    return out;
}
Real max_abs_diff(const ScalarField& a, const ScalarField& b) {
    Real m = 0;
    for (size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}
}  // namespace

TEST_CASE("derivative of sin(u)") {
    const int n = 32;
    const ScalarField f = sample(n, [](Real u, Real) { return std::sin(u); });
    const ScalarField d = spectral_derivative(f, 1, 0);
    const ScalarField expect = sample(n, [](Real u, Real) { return std::cos(u); });
    CHECK(max_abs_diff(d, expect) <= 1e-12);
}

TEST_CASE("derivative of a constant vanishes") {
    const ScalarField f(32, 32, 4.25);
    for (auto [ou, ov] : {std::pair{1, 0}, {0, 1}, {2, 1}, {3, 3}})
        CHECK(max_abs_diff(spectral_derivative(f, ou, ov), ScalarField(32, 32, 0.0)) <= 1e-13);
}

TEST_CASE("mixed derivative of cos(2u+3v)") {
    const int n = 32;
    const ScalarField f = sample(n, [](Real u, Real v) { return std::cos(2 * u + 3 * v); });
    // d^2/du^2 d/dv cos(2u+3v) = (2)^2 (3) sin(2u+3v) = 12 sin(2u+3v)
    const ScalarField d = spectral_derivative(f, 2, 1);
    const ScalarField expect = sample(n, [](Real u, Real v) { return 12.0 * std::sin(2 * u + 3 * v); });
    CHECK(max_abs_diff(d, expect) <= 1e-10);
}

TEST_CASE("order cap") {
    const ScalarField f(16, 16, 1.0);
    CHECK_THROWS_AS(spectral_derivative(f, 4, 3), OrderTooHigh);
}

TEST_CASE("linearity") {
    const int n = 32;
    const ScalarField a = sample(n, [](Real u, Real v) { return std::sin(u) * std::cos(v); });
    const ScalarField b = sample(n, [](Real u, Real v) { return std::cos(3 * u + v); });
    ScalarField combo(n, n);
    for (size_t k = 0; k < combo.size(); ++k) combo[k] = 2.0 * a[k] - 0.5 * b[k];
    const ScalarField d1 = spectral_derivative(combo, 1, 1);
    const ScalarField da = spectral_derivative(a, 1, 1), db = spectral_derivative(b, 1, 1);
    ScalarField expect(n, n);
    for (size_t k = 0; k < expect.size(); ++k) expect[k] = 2.0 * da[k] - 0.5 * db[k];
    CHECK(max_abs_diff(d1, expect) <= 1e-12);
}

TEST_CASE("periodic quadrature") {
    const int n = 32;
    const ScalarField one(n, n, 1.0);
    CHECK(integrate(one, one) == Catch::Approx(4 * M_PI * M_PI).epsilon(1e-14));
    const ScalarField f = sample(n, [](Real u, Real v) { return std::cos(u) * std::cos(v); });
    CHECK(std::abs(integrate(f, one)) <= 1e-12);
}
