#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ellpencil/common.hpp"
#include "ellpencil/poly.hpp"

namespace ellpencil {

/// Dense structure-constant tensor c^k_{ij}: the coefficient of e_k in
/// [e_i, e_j]. Antisymmetry in (i, j) is enforced by antisymmetrize(), which
/// all builders call before handing the tensor out.
class LieStructure {
  public:
    explicit LieStructure(int dim, std::string label = "");

    int dim() const { return dim_; }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    cd at(int i, int j, int k) const { return c_[idx(i, j, k)]; }
    void set(int i, int j, int k, cd v) { c_[idx(i, j, k)] = v; }
    void add(int i, int j, int k, cd v) { c_[idx(i, j, k)] += v; }

    /// Replaces c^k_{ij} by the antisymmetric part and returns the largest
    /// pre-existing asymmetry |c^k_{ij} + c^k_{ji}| (absolute).
    double antisymmetrize();

    double max_abs() const;

    /// Bracket of coordinate vectors: ([x,y])_k = sum_{ij} x_i y_j c^k_{ij}.
    Eigen::VectorXcd bracket(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;

    /// Adjoint operator (ad_x)_{kj} = sum_i x_i c^k_{ij}.
    Eigen::MatrixXcd ad(const Eigen::VectorXcd& x) const;

    LieStructure scaled(cd s) const;
    static LieStructure combine(cd w1, const LieStructure& a, cd w2, const LieStructure& b);

    const std::vector<cd>& data() const { return c_; }

  private:
    size_t idx(int i, int j, int k) const {
        return (static_cast<size_t>(i) * dim_ + j) * dim_ + k;
    }
    int dim_;
    std::string label_;
    std::vector<cd> c_;
};

/// c1 + u * c2.
LieStructure pencil_member(const LieStructure& c1, const LieStructure& c2, cd u);

/// Raw Jacobi tensor J^l_{ijk} = sum_m (c^m_{ij} c^l_{mk} + c^m_{jk} c^l_{mi}
/// + c^m_{ki} c^l_{mj}), flattened as ((i*N + j)*N + k)*N + l.
std::vector<cd> jacobi_tensor(const LieStructure& c);

/// Mixed polarization of the Jacobi tensor: J(a + u b) = J(a) + u*mixed + u^2 J(b).
std::vector<cd> mixed_jacobi_tensor(const LieStructure& a, const LieStructure& b);

/// max |J| / max(‖c‖^2, floor); zero for a Lie bracket.
double jacobiator(const LieStructure& c);

/// max |mixed| / max(‖a‖·‖b‖, floor); zero iff the whole pencil is Lie when
/// both ends are.
double compatibility_residual(const LieStructure& a, const LieStructure& b);

/// Lie-Poisson bracket {f, g} = sum_{ijk} (df/dx_i)(dg/dx_j) c^k_{ij} x_k.
PolyElement lie_poisson_bracket(const PolyElement& f, const PolyElement& g,
                                const LieStructure& c);

/// max_j ‖{f, x_j}‖ / ‖f‖ (coefficient sup norms).
double is_casimir(const PolyElement& f, const LieStructure& c);

/// Kernel of v -> ad_v: basis of linear Casimirs x -> sum v_i x_i.
std::vector<PolyElement> center_basis(const LieStructure& c);

struct KillingReport {
    Eigen::MatrixXcd killing;
    bool semisimple = false;
    double min_sv_ratio = 0.0;               // sigma_min / sigma_max of the Killing form
    std::vector<int> ideal_dims;             // ascending; empty unless semisimple
    std::vector<Eigen::MatrixXcd> ideals;    // columns span each ideal
    double ideal_closure_residual = 0.0;     // how far [ideal, algebra] leaks out
};

/// Killing form B_{ij} = tr(ad_i ad_j); if nondegenerate, splits the algebra
/// into simple ideals via the commutant of the adjoint representation.
KillingReport killing_semisimple(const LieStructure& c);

struct ROperatorReport {
    Eigen::MatrixXcd R;
    double residual = 0.0;  // relative reconstruction error of c2
    int rank = 0;           // rank of the least-squares system
    int nullity = 0;        // dim of the solution affine space (N^2 - rank)
};

/// Minimum-norm least-squares R with [x,y]_2 = [Rx,y]_1 + [x,Ry]_1 - R[x,y]_1.
ROperatorReport recover_r_operator(const LieStructure& c1, const LieStructure& c2);

}  // namespace ellpencil
