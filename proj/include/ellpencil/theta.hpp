#pragma once

#include <functional>

#include "ellpencil/common.hpp"

namespace ellpencil {

/// Holomorphic section of order m on the lattice <1, tau>: a function with
///   f(z + 1)   = f(z)
///   f(z + tau) = (-1)^m exp(-2*pi*i*m*z) f(z)
/// stored as a truncated Fourier series sum_r a_r e^{2 pi i r z}. The functional
/// equations force a_{r+m} = (-1)^m e^{2 pi i r tau} a_r, so the series is
/// determined by the m seed coefficients a_0..a_{m-1}; the space has dimension m.
///
/// Instances are immutable after construction; all operations are const.
class ThetaFunction {
  public:
    /// Builds the series from seed coefficients (size m) with the given
    /// truncation tolerance: terms are kept while their worst-case magnitude on
    /// the fundamental parallelogram exceeds trunc_tol * max|seed|.
    ThetaFunction(std::vector<cd> seeds, cd tau, double trunc_tol = 1e-15);

    int order() const { return order_; }
    cd tau() const { return tau_; }
    const std::vector<cd>& seeds() const { return seeds_; }
    double trunc_tol() const { return trunc_tol_; }

    /// Value of the deriv-th derivative at z.
    cd eval(cd z, int deriv = 0) const;

    /// Linear combination within a fixed order-m space (same tau, same order).
    ThetaFunction scaled(cd factor) const;
    static ThetaFunction combine(const std::vector<cd>& weights,
                                 const std::vector<ThetaFunction>& basis);

    /// Largest |a_r| of the stored series (scale reference for tolerances).
    double coeff_scale() const { return coeff_scale_; }

  private:
    int order_;
    cd tau_;
    double trunc_tol_;
    std::vector<cd> seeds_;
    std::vector<std::pair<long, cd>> coeffs_;  // (r, log a_r), sorted by Fourier index
    double coeff_scale_ = 0.0;
};

/// The canonical order-1 section: seed a_0 = 1, whose single root per lattice
/// cell sits at z = 0. Satisfies theta(-z) = -exp(-2*pi*i*z) theta(z).
ThetaFunction theta_generator(cd tau, double trunc_tol = 1e-15);

/// Basis e_0..e_{m-1} of the order-m space (e_s has seeds a_r = delta_{rs}).
std::vector<ThetaFunction> build_theta_space(int m, cd tau, double trunc_tol = 1e-15);

/// Expands an arbitrary callable known to lie in the order-m space in the
/// standard basis by collocation at m generic points.
std::vector<cd> expand_in_theta_space(const std::function<cd(cd)>& f, int m, cd tau);

/// Product of shifted generators c * prod_i theta(z - roots[i]); lies in the
/// order-m space when sum(roots) is an integer. Returned in the standard basis.
ThetaFunction theta_from_roots(const std::vector<cd>& roots, cd tau, cd scale = cd(1.0, 0.0));

/// Roots of a section in the fundamental parallelogram, with multiplicity.
struct RootSet {
    std::vector<cd> roots;                // repeated according to multiplicity
    std::vector<bool> multiplicity_flag;  // true when clustered/multiple
    long boundary_winding = 0;            // argument-principle count (must equal order)
    double root_sum_lattice_dist = 0.0;   // distance of sum(roots) to the lattice

    /// Representatives adjusted so the total sum has no tau-component (the sum
    /// is then within root_sum_lattice_dist of an integer). Order matches roots.
    std::vector<cd> integer_sum_representatives(const Lattice& lat) const;
};

/// Locates all order()-many roots: coarse 64x64 grid minima -> Newton -> dedup
/// -> per-root winding numbers for multiplicity -> boundary argument-principle
/// certificate. Throws numeric_failure if the certificate cannot be produced.
RootSet find_roots(const ThetaFunction& f, const Lattice& lat);

/// Pencil evaluation mu2 - u*mu1 as a section of the same order.
ThetaFunction pencil_section(const ThetaFunction& mu1, const ThetaFunction& mu2, cd u);

struct PencilRoots {
    RootSet roots;
    bool regular = false;  // all roots simple and pairwise separated mod lattice
    double min_separation = 0.0;
};

/// Roots of mu2 - u*mu1 with a regularity flag (pairwise distances mod the
/// lattice above `separation_tol`, no multiplicity flags).
PencilRoots pencil_roots(const ThetaFunction& mu1, const ThetaFunction& mu2, cd u,
                         const Lattice& lat, double separation_tol = 1e-4);

}  // namespace ellpencil
