#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "ellpencil/common.hpp"

namespace ellpencil {

/// Finite clock/shift pair at level n with twist k (gcd(k, n) = 1):
///   a = diag(1, eps, ..., eps^{n-1}),   b = cyclic step,   b a = eps a b,
/// where eps = e^{2 pi i k / n}. The graded basis t_{alpha,beta} = a^alpha b^beta
/// depends on (alpha, beta) mod n only and satisfies
///   t_{s1} t_{s2} = eps^{beta1 alpha2} t_{s1+s2},
///   [t_{s1}, t_{s2}] = (eps^{beta1 alpha2} - eps^{beta2 alpha1}) t_{s1+s2}.
/// The n^2 - 1 elements with (alpha, beta) != (0, 0) are traceless and span sl_n.
class HeisenbergPair {
  public:
    explicit HeisenbergPair(int n, int k = 1);

    int n() const { return n_; }
    int k() const { return k_; }

    /// eps^e = e^{2 pi i k e / n}, exact up to rounding of one polar call.
    cd eps(long e) const;

    const Eigen::MatrixXcd& clock() const { return clock_; }
    const Eigen::MatrixXcd& shift() const { return shift_; }

    /// t_{alpha,beta} = a^alpha b^beta (any integer representatives).
    Eigen::MatrixXcd t(int alpha, int beta) const;

    /// Trace-dual element: eps^{alpha beta} t_{-alpha,-beta}, normalized so
    /// tr(dual(a,b) t(a',b')) = n when (a,b) = (a',b') mod n and 0 otherwise.
    Eigen::MatrixXcd dual(int alpha, int beta) const;

    /// Coefficient of t_{s1+s2} in [t_{s1}, t_{s2}].
    cd bracket_coeff(int alpha1, int beta1, int alpha2, int beta2) const;

  private:
    int n_;
    int k_;
    Eigen::MatrixXcd clock_, shift_;
};

/// All (alpha, beta) in [0,n)^2 except (0,0), row-major order; size n^2 - 1.
std::vector<std::pair<int, int>> nonzero_sectors(int n);

}  // namespace ellpencil
