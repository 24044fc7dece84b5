#include "ellpencil/heisenberg.hpp"

#include <numeric>

namespace ellpencil {

HeisenbergPair::HeisenbergPair(int n, int k) : n_(n), k_(k) {
    require(n >= 2, "HeisenbergPair: level n must be >= 2");
    require(std::gcd(((k % n) + n) % n, n) == 1, "HeisenbergPair: k must be coprime to n");
    clock_ = Eigen::MatrixXcd::Zero(n, n);
    shift_ = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        clock_(i, i) = eps(i);
        shift_(i, (i + 1) % n) = cd(1.0, 0.0);
    }
}

cd HeisenbergPair::eps(long e) const {
    long r = ((e * k_) % n_ + n_) % n_;
    return std::polar(1.0, kTwoPi * static_cast<double>(r) / n_);
}

Eigen::MatrixXcd HeisenbergPair::t(int alpha, int beta) const {
    const int a = ((alpha % n_) + n_) % n_;
    const int b = ((beta % n_) + n_) % n_;
    // a^alpha b^beta has entries eps^{alpha i} at (i, i + beta mod n)
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) out(i, (i + b) % n_) = eps(static_cast<long>(a) * i);
    return out;
}

Eigen::MatrixXcd HeisenbergPair::dual(int alpha, int beta) const {
    return eps(static_cast<long>(alpha) * beta) * t(-alpha, -beta);
}

cd HeisenbergPair::bracket_coeff(int alpha1, int beta1, int alpha2, int beta2) const {
    return eps(static_cast<long>(beta1) * alpha2) - eps(static_cast<long>(beta2) * alpha1);
}

std::vector<std::pair<int, int>> nonzero_sectors(int n) {
    require(n >= 2, "nonzero_sectors: n must be >= 2");
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<size_t>(n) * n - 1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a != 0 || b != 0) out.emplace_back(a, b);
    return out;
}

}  // namespace ellpencil
