#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <fstream>
#include <random>
#include <sstream>

#include "sleraman/faddeeva.hpp"

using namespace sleraman;

namespace {

using CLD = std::complex<long double>;

// Independent oracle 1: Maclaurin series w(z) = sum (iz)^n / Gamma(n/2+1),
// evaluated in extended precision. Good to ~1e-16 for |z| <= 2.5.
CLD faddeeva_series(std::complex<double> zin) {
    const CLD z(zin.real(), zin.imag());
    const CLD iz = CLD(0.0L, 1.0L) * z;
    // Gamma(n/2+1) by recursion: G(n+2)/2+1) = (n/2+1) * ...
    CLD sum = 0.0L;
    CLD power = 1.0L; // (iz)^n
    long double gammaEven = 1.0L;                 // Gamma(n/2+1) for even n: (n/2)!
    long double gammaOdd = 0.88622692545275801365L; // Gamma(3/2) = sqrt(pi)/2 at n=1
    for (int n = 0; n <= 140; ++n) {
        const long double g = (n % 2 == 0) ? gammaEven : gammaOdd;
        sum += power / g;
        power *= iz;
        if (n % 2 == 0)
            gammaEven *= (n / 2 + 1);
        else
            gammaOdd *= (n / 2.0L + 1.0L);
    }
    return sum;
}

// Independent oracle 2: Laplace continued fraction, valid for large |z|, Im z > 0.
std::complex<double> faddeeva_cf(std::complex<double> z, int depth = 40) {
    const std::complex<double> i(0.0, 1.0);
    std::complex<double> cf = 0.0;
    for (int n = depth; n >= 1; --n) cf = (n / 2.0) / (z - cf);
    return i / std::sqrt(M_PI) / (z - cf);
}

} // namespace

TEST_CASE("faddeeva at the origin and on the positive imaginary axis") {
    REQUIRE(std::abs(faddeeva({0.0, 0.0}) - std::complex<double>(1.0, 0.0)) < 1e-15);
    for (double y : {0.1, 0.5, 1.0, 3.0, 10.0, 80.0}) {
        const auto w = faddeeva({0.0, y});
        REQUIRE(w.real() > 0.0);
        REQUIRE(std::abs(w.imag()) < 1e-15 * w.real());
    }
}

TEST_CASE("faddeeva w(i) matches e*erfc(1) via the series oracle") {
    const CLD oracle = faddeeva_series({0.0, 1.0});
    const auto got = faddeeva({0.0, 1.0});
    REQUIRE(std::abs(got.real() - static_cast<double>(oracle.real())) < 1e-13);
    REQUIRE(std::abs(got.imag()) < 1e-14);
    // and the closed form itself
    REQUIRE(std::abs(got.real() - 0.42758357615580700441) < 1e-13);
}

TEST_CASE("faddeeva matches the series oracle near the origin") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> radius(0.0, 2.5);
    std::uniform_real_distribution<double> angle(0.0, M_PI); // upper half
    for (int k = 0; k < 200; ++k) {
        const double r = radius(rng), th = angle(rng);
        const std::complex<double> z(r * std::cos(th), r * std::sin(th));
        const CLD ref = faddeeva_series(z);
        const auto got = faddeeva(z);
        const double denom = std::abs(std::complex<double>(static_cast<double>(ref.real()),
                                                           static_cast<double>(ref.imag())));
        REQUIRE(std::abs(got - std::complex<double>(static_cast<double>(ref.real()),
                                                    static_cast<double>(ref.imag()))) <=
                1e-12 * denom);
    }
}

TEST_CASE("faddeeva matches the continued-fraction oracle far out") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> radius(7.0, 60.0);
    std::uniform_real_distribution<double> angle(0.05, M_PI - 0.05);
    for (int k = 0; k < 200; ++k) {
        const double r = radius(rng), th = angle(rng);
        const std::complex<double> z(r * std::cos(th), r * std::sin(th));
        const auto ref = faddeeva_cf(z);
        const auto got = faddeeva(z);
        REQUIRE(std::abs(got - ref) <= 1e-12 * std::abs(ref));
    }
}

TEST_CASE("faddeeva reproduces the frozen high-precision reference table") {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/faddeeva_reference.csv");
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line); // header
    int rows = 0;
    while (std::getline(in, line)) {
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, y, wr, wi;
        ss >> x >> y >> wr >> wi;
        const auto got = faddeeva({x, y});
        const std::complex<double> ref(wr, wi);
        const double tol = (y >= 0.0 ? 1e-12 : 5e-12) * std::abs(ref);
        REQUIRE(std::abs(got - ref) <= tol);
        ++rows;
    }
    REQUIRE(rows == 32);
}

TEST_CASE("faddeeva reflection symmetry w(-conj z) = conj w(z)") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> coord(-8.0, 8.0);
    for (int k = 0; k < 400; ++k) {
        const std::complex<double> z(coord(rng), coord(rng));
        const auto a = faddeeva(std::complex<double>(-z.real(), z.imag()));
        const auto b = std::conj(faddeeva(z));
        if (!std::isfinite(a.real()) || !std::isfinite(b.real())) continue;
        REQUIRE(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("faddeeva lower half-plane follows the reflection identity") {
    for (const std::complex<double> z :
         {std::complex<double>(1.2, -0.7), std::complex<double>(-2.5, -1.1),
          std::complex<double>(0.3, -2.0), std::complex<double>(4.0, -0.2)}) {
        const auto direct = faddeeva(z);
        const auto reflected = 2.0 * std::exp(-z * z) - faddeeva(-z);
        REQUIRE(std::abs(direct - reflected) <= 1e-12 * std::abs(reflected));
    }
}
