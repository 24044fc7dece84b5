#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "ellpencil/common.hpp"
#include "ellpencil/heisenberg.hpp"
#include "ellpencil/lie.hpp"
#include "ellpencil/theta.hpp"

namespace ellpencil {

// One equivariant matrix function f(z) = s(z) t_{alpha beta} with scalar part
//   s(z) = e^{-2 pi i k beta z / n} g(z - c),   c = k alpha/(m n) + k beta tau/(m n),
// where g is an order-m section.  (alpha, beta) are kept as plain integers: shifting
// beta by n multiplies the function values by a z-independent unit, so distinct
// integer representatives of the same residue class give proportional, not equal,
// functions and callers must be explicit about which representative they mean.
struct SectorFunction {
    int alpha = 0;
    int beta = 0;
    ThetaFunction g;
    cd center{0.0, 0.0};
    double phase_rate = 0.0;  // = -k beta / n; eval multiplies by e^{2 pi i phase_rate z}

    cd eval(cd z) const;
};

// Basis of the space of matrix functions f: C -> gl_n with
//   f(z + 1) = a f(z) a^{-1},   f(z + tau) = (-1)^m e^{-2 pi i m z} b f(z) b^{-1}.
// The space splits over the n^2 - 1 nonzero clock/shift sectors; each sector
// carries an m-dimensional space of scalar parts, so dim = m (n^2 - 1).
// Basis index = sector_index * m + t with t the scalar index inside the sector.
class EquivariantBasis {
  public:
    EquivariantBasis(int n, int m, int k, cd tau);

    int n() const { return n_; }
    int m() const { return m_; }
    int k() const { return k_; }
    cd tau() const { return lat_.tau; }
    int dim() const { return static_cast<int>(elements_.size()); }
    const Lattice& lattice() const { return lat_; }
    const HeisenbergPair& pair() const { return pair_; }
    const std::vector<std::pair<int, int>>& sectors() const { return sectors_; }
    const std::vector<ThetaFunction>& scalar_space() const { return theta_basis_; }

    // index of the sector containing (alpha, beta) mod n; throws on (0, 0)
    int sector_index(int alpha, int beta) const;
    int index(int sector, int t) const { return sector * m_ + t; }
    const SectorFunction& element(int idx) const;

    // sector function for an arbitrary integer representative (alpha, beta)
    SectorFunction make(int alpha, int beta, const ThetaFunction& g) const;

    cd scalar_eval(int idx, cd z) const { return element(idx).eval(z); }
    Eigen::MatrixXcd matrix_eval(const Eigen::VectorXcd& coords, cd z) const;

    // coordinates (length m) of a scalar function known to lie in the sector of
    // (alpha, beta); the representative may be any integer lift
    Eigen::VectorXcd expand_scalar(int alpha, int beta, const std::function<cd(cd)>& f) const;

    // max relative violation of the two defining identities over a grid
    double equivariance_residual() const;

  private:
    int n_, m_, k_;
    Lattice lat_;
    HeisenbergPair pair_;
    std::vector<std::pair<int, int>> sectors_;
    std::vector<SectorFunction> elements_;
    std::vector<ThetaFunction> theta_basis_;
};

// Shared collocation data for splitting products against a section pencil:
// any order-2m sector function Z decomposes uniquely as Z = mu1 P + mu2 Q with
// P, Q order-m sector functions, provided mu1 and mu2 have no common zero.
// Per sector the 2m unknown coefficients are pinned by a square solve at 2m
// nodes and every result is re-checked on a disjoint validation grid.
class PencilSplitter {
  public:
    PencilSplitter(const EquivariantBasis& basis, const ThetaFunction& mu1,
                   const ThetaFunction& mu2, std::uint64_t seed = 11);

    const std::vector<cd>& nodes() const { return nodes_; }
    const std::vector<cd>& validation_nodes() const { return val_nodes_; }
    double condition() const { return condition_; }

    // split scalar samples known to come from the given sector; samples must be
    // taken at nodes() (and validation_nodes() appended when validating)
    void split_sector(int sector, const std::vector<cd>& node_values,
                      const std::vector<cd>& validation_values, Eigen::VectorXcd& p,
                      Eigen::VectorXcd& q, double* residual) const;

    // split a full matrix function; P and Q are coordinate vectors in the basis.
    // The validation residual is normalized by the largest sample magnitude or
    // by scale_floor, whichever is bigger, so that inputs that vanish up to
    // roundoff report a residual near machine precision instead of O(1).
    void split_matrix(const std::function<Eigen::MatrixXcd(cd)>& Z, Eigen::VectorXcd& P,
                      Eigen::VectorXcd& Q, double* residual, double scale_floor = 0.0) const;

    const EquivariantBasis& basis() const { return basis_; }
    const ThetaFunction& mu1() const { return mu1_; }
    const ThetaFunction& mu2() const { return mu2_; }

  private:
    const EquivariantBasis& basis_;
    ThetaFunction mu1_, mu2_;
    std::vector<cd> nodes_, val_nodes_;
    std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> lu_;       // one per sector
    std::vector<Eigen::VectorXd> col_scale_;                      // column equilibration
    std::vector<Eigen::MatrixXcd> val_design_;                    // validation design per sector
    double condition_ = 0.0;
};

// A compatible pair of Lie brackets on the equivariant basis coordinates.
struct PencilData {
    EquivariantBasis basis;
    ThetaFunction mu1, mu2;
    LieStructure c1, c2;
    double common_zero_margin = 0.0;   // min |mu2| over the zeros of mu1, relative
    double split_residual = 0.0;       // worst held-out reconstruction error
    double asymmetry = 0.0;            // pre-antisymmetrization defect
    double condition = 0.0;            // worst collocation condition number

    LieStructure pencil_member(cd u) const { return ellpencil::pencil_member(c1, c2, u); }
};

// Structure constants of both brackets: [f_i, f_j](z) = mu1 P + mu2 Q pointwise,
// c1 from P, c2 from Q.  Throws if mu1, mu2 share a zero (degenerate pencil).
PencilData build_pencil(int n, int m, int k, cd tau, const ThetaFunction& mu1,
                        const ThetaFunction& mu2, std::uint64_t seed = 11);

// Same, drawing random sections until the no-common-zero certificate holds.
PencilData build_pencil_random(int n, int m, int k, cd tau, std::uint64_t seed);

// Block basis attached to a regular pencil parameter u: with x_1..x_m the zeros
// of mu2 - u mu1 (lifted so their sum is an integer), the elements
//   v_{alpha beta gamma}(z) = p * e^{-2 pi i k beta z/n} prod_{d != gamma} theta(z - x_d)
//                               * theta(z - x_gamma - k alpha/n - k beta tau/n),
//   p = mu1(x_gamma) / (prod_{d != gamma} theta(x_gamma - x_d) * theta(-k alpha/n - k beta tau/n)),
// form a basis in which the bracket at u splits into m ideals.
struct SplittingBasis {
    cd u;
    std::vector<cd> roots;                   // integer-sum lift, size m
    std::vector<Eigen::VectorXcd> coords;    // index = sector * m + gamma
    double expansion_residual = 0.0;         // worst re-expansion check
};

SplittingBasis splitting_basis(const PencilData& pencil, cd u);

// coordinates of v_{alpha beta gamma} for an arbitrary integer representative
Eigen::VectorXcd splitting_vector(const PencilData& pencil, const std::vector<cd>& roots,
                                  int alpha, int beta, int gamma);

// Checks the block relations of the splitting basis under [.,.]_1 + u [.,.]_2:
// elements with different gamma commute; within a block the bracket reproduces
// the finite clock/shift relations with v_{alpha1+alpha2, beta1+beta2, gamma}
// built from the *unreduced* integer sums.
struct SplittingReport {
    double cross_block_residual = 0.0;
    double in_block_residual = 0.0;
};

SplittingReport verify_splitting(const PencilData& pencil, const SplittingBasis& sb);

// Smallest singular value (after column normalization) of the map sending an
// equivariant function to its values at m points; nonzero iff the points see
// the whole space.
double evaluation_map_min_sv(const EquivariantBasis& basis, const std::vector<cd>& points);

}  // namespace ellpencil
