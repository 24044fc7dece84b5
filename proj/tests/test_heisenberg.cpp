#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include "ellpencil/heisenberg.hpp"

using namespace ellpencil;

namespace {
double mnorm(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }
}

TEST_CASE("clock and shift obey the exchange relation and have order n") {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {5, 2}}) {
        HeisenbergPair H(n, k);
        const auto& a = H.clock();
        const auto& b = H.shift();
        CHECK(mnorm(b * a - H.eps(1) * a * b) <= 1e-14);
        Eigen::MatrixXcd an = Eigen::MatrixXcd::Identity(n, n);
        Eigen::MatrixXcd bn = an;
        for (int i = 0; i < n; ++i) {
            an = an * a;
            bn = bn * b;
        }
        CHECK(mnorm(an - Eigen::MatrixXcd::Identity(n, n)) <= 1e-13);
        CHECK(mnorm(bn - Eigen::MatrixXcd::Identity(n, n)) <= 1e-13);
    }
}

TEST_CASE("t(alpha,beta) matches explicit monomials and is n-periodic") {
    HeisenbergPair H(4, 3);
    Eigen::MatrixXcd apow = Eigen::MatrixXcd::Identity(4, 4);
    for (int alpha = 0; alpha < 4; ++alpha) {
        Eigen::MatrixXcd mono = apow;
        for (int beta = 0; beta < 4; ++beta) {
            CHECK(mnorm(H.t(alpha, beta) - mono) <= 1e-13);
            CHECK(mnorm(H.t(alpha + 4, beta - 8) - mono) <= 1e-13);
            mono = mono * H.shift();
        }
        apow = apow * H.clock();
    }
    CHECK(mnorm(H.t(0, 0) - Eigen::MatrixXcd::Identity(4, 4)) <= 1e-15);
}

TEST_CASE("product and commutator coefficients against raw matrix algebra") {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}, {5, 1}}) {
        HeisenbergPair H(n, k);
        for (int a1 = 0; a1 < n; ++a1)
            for (int b1 = 0; b1 < n; ++b1)
                for (int a2 = 0; a2 < n; ++a2)
                    for (int b2 = 0; b2 < n; ++b2) {
                        Eigen::MatrixXcd t1 = H.t(a1, b1), t2 = H.t(a2, b2);
                        Eigen::MatrixXcd prod_want =
                            H.eps(static_cast<long>(b1) * a2) * H.t(a1 + a2, b1 + b2);
                        CHECK(mnorm(t1 * t2 - prod_want) <= 1e-13);
                        Eigen::MatrixXcd comm_want =
                            H.bracket_coeff(a1, b1, a2, b2) * H.t(a1 + a2, b1 + b2);
                        CHECK(mnorm(t1 * t2 - t2 * t1 - comm_want) <= 1e-13);
                    }
    }
}

TEST_CASE("nonzero sectors are traceless and never bracket onto the identity") {
    HeisenbergPair H(3, 1);
    auto sectors = nonzero_sectors(3);
    REQUIRE(sectors.size() == 8);
    for (auto [a, b] : sectors) CHECK(std::abs(H.t(a, b).trace()) <= 1e-13);
    // opposite sectors commute: coefficient at sigma1 + sigma2 = 0 vanishes
    for (auto [a, b] : sectors) CHECK(std::abs(H.bracket_coeff(a, b, -a, -b)) <= 1e-14);
}

TEST_CASE("trace duality: tr(dual(s) t(s')) = n delta_{ss'}") {
    for (int n : {2, 3, 4}) {
        HeisenbergPair H(n, n == 4 ? 3 : 1);
        for (int a1 = 0; a1 < n; ++a1)
            for (int b1 = 0; b1 < n; ++b1)
                for (int a2 = 0; a2 < n; ++a2)
                    for (int b2 = 0; b2 < n; ++b2) {
                        cd tr = (H.dual(a1, b1) * H.t(a2, b2)).trace();
                        cd want = (a1 == a2 && b1 == b2) ? cd(n, 0.0) : cd(0.0, 0.0);
                        CHECK(std::abs(tr - want) <= 1e-12);
                    }
    }
}

TEST_CASE("sector matrices plus identity span all of gl_n") {
    const int n = 3;
    HeisenbergPair H(n, 1);
    auto sectors = nonzero_sectors(n);
    Eigen::MatrixXcd V(n * n, n * n);
    for (size_t c = 0; c < sectors.size(); ++c) {
        Eigen::MatrixXcd m = H.t(sectors[c].first, sectors[c].second);
        for (int i = 0; i < n * n; ++i) V(i, static_cast<int>(c)) = m(i / n, i % n);
    }
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n * n; ++i) V(i, n * n - 1) = id(i / n, i % n);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
    CHECK(svd.singularValues()(n * n - 1) > 1e-10 * svd.singularValues()(0));
}
