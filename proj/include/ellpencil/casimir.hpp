#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "ellpencil/elliptic.hpp"
#include "ellpencil/poly.hpp"

namespace ellpencil {

// Ordered tuple of p nonzero sectors (alpha_j, beta_j) in [0,n)^2 whose
// componentwise sums vanish mod n.
using SectorTuple = std::vector<std::pair<int, int>>;

// All admissible tuples for given n and p, lexicographic order.
std::vector<SectorTuple> admissible_tuples(int n, int p);

// Closed-form count ((n^2-1)^p + (n^2-1)(-1)^p) / n^2.
long admissible_tuple_count(int n, int p);

// Integer lift of a tuple with exactly vanishing index sums: standard
// representatives with the excess (a multiple of n) subtracted from the first
// entry.  The multivariable evaluators below are quasi-periodic with the
// correct sector multipliers only for lifts whose sums are exactly zero.
std::vector<std::pair<long, long>> zero_sum_lift(const SectorTuple& tuple, int n);

// Assembles Casimir candidates of a bracket pencil from products of sector
// functions in p auxiliary variables.  For each admissible tuple the evaluator
// builds a function of (z_1, ..., z_p) that lies in the tensor product of the
// per-position sector spaces; expanding it over a tensor collocation grid
// (m nodes per variable position) and symmetrizing the resulting coefficients
// into commutative monomials produces a polynomial on the dual of the Lie
// algebra.  Summing over all tuples with exact unit-phase weights yields a
// Casimir of the pencil member at the chosen parameter u.
class CasimirAssembler {
  public:
    CasimirAssembler(const PencilData& pencil, int p, std::uint64_t seed = 23);

    int p() const { return p_; }
    const std::vector<SectorTuple>& tuples() const { return tuples_; }
    const std::vector<std::vector<cd>>& nodes() const { return nodes_; }

    // pointwise value of the tuple function attached to section g at pencil
    // parameter u; z must hold p points with z_s != z_t mod the lattice
    cd value(const SectorTuple& tuple, const ThetaFunction& g, cd u,
             const std::vector<cd>& z) const;

    // derivative-corrected top-degree variant; when degenerate_derivative is
    // set the correction uses (1 - u) mu2' instead of (mu2 - u mu1)'
    cd top_value(const SectorTuple& tuple, cd u, const std::vector<cd>& z,
                 bool degenerate_derivative = false) const;

    // tensor coefficients (size m^p, row-major, position 0 slowest) of the
    // tuple function in the per-position sector bases
    Eigen::VectorXcd expand(const SectorTuple& tuple, const ThetaFunction& g, cd u) const;
    Eigen::VectorXcd expand_top(const SectorTuple& tuple, cd u,
                                bool degenerate_derivative = false) const;

    // evaluate an expansion at arbitrary points (works on the diagonal where
    // the raw sum is an indeterminate 0/0)
    cd coefficient_value(const SectorTuple& tuple, const Eigen::VectorXcd& coef,
                         const std::vector<cd>& z) const;

    // phase-weighted commutative image of one expanded tuple
    PolyElement symmetric_image(const SectorTuple& tuple, const Eigen::VectorXcd& coef) const;

    // full candidates at a fixed parameter
    PolyElement section_at(const ThetaFunction& g, cd u) const;
    PolyElement top_at(cd u, bool degenerate_derivative = false) const;

  private:
    struct Lift {
        std::vector<long> alpha, beta;
        std::vector<cd> offset;      // k (alpha_j + beta_j tau) / n
        std::vector<int> sector;     // reduced sector index per position
        cd phase;                    // tuple weight in the final sum
    };
    Lift lift(const SectorTuple& tuple) const;
    cd value_lifted(const Lift& lf, const ThetaFunction& g, cd u,
                    const std::vector<cd>& z) const;
    cd top_value_lifted(const Lift& lf, cd u, const std::vector<cd>& z,
                        bool degenerate_derivative) const;
    Eigen::VectorXcd tensor_solve(const Lift& lf, Eigen::VectorXcd values) const;

    const PencilData& pencil_;
    int p_;
    ThetaFunction theta_;
    std::vector<SectorTuple> tuples_;
    std::vector<std::vector<cd>> nodes_;  // nodes_[position][a], p x m
    // collocation solvers indexed [position][sector]
    std::vector<std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>>> lu_;
    std::vector<std::vector<Eigen::VectorXd>> col_scale_;
};

// Polynomial family C(u) = sum_d u_coeffs[d] u^d of Casimir candidates.
struct CasimirFamily {
    int p = 0;
    std::vector<PolyElement> u_coeffs;

    double norm() const;  // largest coefficient norm
    // largest / smallest power whose coefficient exceeds rel_tol * norm();
    // -1 when the whole family vanishes at that tolerance
    int top_degree(double rel_tol = 1e-8) const;
    int valuation(double rel_tol = 1e-8) const;
    // u-degree after dividing out the valuation; families proportional to a
    // power of u count by their reduced degree
    int effective_degree(double rel_tol = 1e-8) const;
    PolyElement at(cd u) const;
};

// Family attached to an order-m section g (u-degree at most p - 1).
CasimirFamily casimir_from_section(const PencilData& pencil, const ThetaFunction& g, int p,
                                   std::uint64_t seed = 23);

// Derivative-corrected family of full u-degree p.
CasimirFamily casimir_top(const PencilData& pencil, int p, bool degenerate_derivative = false,
                          std::uint64_t seed = 23);

// The u-independent quadratic Casimir, extracted from the p = 2 family of the
// second pencil section (whose raw family is u times a constant family).
CasimirFamily casimir_quadratic(const PencilData& pencil, std::uint64_t seed = 23);

// Relative size of the family assembled from the pencil section mu2 - u mu1
// itself; exact cancellation makes this vanish, so the returned residual
// measures how sharply the evaluator resolves the kernel.
double casimir_kernel_residual(const PencilData& pencil, int p, std::uint64_t seed = 23);

// Order-m sections spanning a complement of span{mu1, mu2} (empty for m = 2).
std::vector<ThetaFunction> complement_sections(const PencilData& pencil);

struct DegreeLedgerRow {
    int p = 0;
    std::vector<int> effective_degrees;  // sorted ascending, one per family
};

// Degree profile of the full tower p = 2..n: per p one family of effective
// degree p - 2, m - 2 of degree p - 1, and one of degree p, giving the
// completeness count sum (2 deg + 1) = m (n^2 - 1).
struct DegreeLedger {
    std::vector<DegreeLedgerRow> rows;
    long gz_sum = 0;
    long expected = 0;
    double worst_kernel_residual = 0.0;
    double worst_casimir_residual = 0.0;
    bool consistent = false;
};

DegreeLedger degree_ledger(const PencilData& pencil, std::uint64_t seed = 23);

// Centrality defect of the symmetrized lift of a homogeneous quadratic
// polynomial in the enveloping algebra of c: the adjoint action on the lift is
// reduced against the degree <= 2 basis and the largest relative coefficient
// (quadratic and linear parts combined) is returned.
double enveloping_center_residual(const PolyElement& quad, const LieStructure& c);

}  // namespace ellpencil
