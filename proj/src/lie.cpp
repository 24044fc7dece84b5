#include "ellpencil/lie.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <numeric>

namespace ellpencil {

LieStructure::LieStructure(int dim, std::string label)
    : dim_(dim), label_(std::move(label)),
      c_(static_cast<size_t>(dim) * dim * dim, cd(0.0, 0.0)) {
    require(dim >= 1, "LieStructure: dimension must be positive");
}

double LieStructure::antisymmetrize() {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j <= i; ++j)
            for (int k = 0; k < dim_; ++k) {
                cd s = c_[idx(i, j, k)] + c_[idx(j, i, k)];
                worst = std::max(worst, std::abs(s));
                cd a = 0.5 * (c_[idx(i, j, k)] - c_[idx(j, i, k)]);
                c_[idx(i, j, k)] = a;
                c_[idx(j, i, k)] = -a;
            }
    return worst;
}

double LieStructure::max_abs() const {
    double m = 0.0;
    for (cd v : c_) m = std::max(m, std::abs(v));
    return m;
}

Eigen::VectorXcd LieStructure::bracket(const Eigen::VectorXcd& x,
                                       const Eigen::VectorXcd& y) const {
    require(x.size() == dim_ && y.size() == dim_, "LieStructure::bracket: size mismatch");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim_);
    for (int i = 0; i < dim_; ++i) {
        if (x(i) == cd(0.0, 0.0)) continue;
        for (int j = 0; j < dim_; ++j) {
            cd w = x(i) * y(j);
            if (w == cd(0.0, 0.0)) continue;
            for (int k = 0; k < dim_; ++k) out(k) += w * c_[idx(i, j, k)];
        }
    }
    return out;
}

Eigen::MatrixXcd LieStructure::ad(const Eigen::VectorXcd& x) const {
    require(x.size() == dim_, "LieStructure::ad: size mismatch");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (int i = 0; i < dim_; ++i) {
        if (x(i) == cd(0.0, 0.0)) continue;
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k) out(k, j) += x(i) * c_[idx(i, j, k)];
    }
    return out;
}

LieStructure LieStructure::scaled(cd s) const {
    LieStructure out = *this;
    for (cd& v : out.c_) v *= s;
    return out;
}

LieStructure LieStructure::combine(cd w1, const LieStructure& a, cd w2, const LieStructure& b) {
    require(a.dim_ == b.dim_, "LieStructure::combine: dimension mismatch");
    LieStructure out(a.dim_, a.label_);
    for (size_t t = 0; t < a.c_.size(); ++t) out.c_[t] = w1 * a.c_[t] + w2 * b.c_[t];
    return out;
}

LieStructure pencil_member(const LieStructure& c1, const LieStructure& c2, cd u) {
    return LieStructure::combine(cd(1.0, 0.0), c1, u, c2);
}

std::vector<cd> jacobi_tensor(const LieStructure& c) {
    const int n = c.dim();
    std::vector<cd> J(static_cast<size_t>(n) * n * n * n, cd(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    cd s(0.0, 0.0);
                    for (int m = 0; m < n; ++m)
                        s += c.at(i, j, m) * c.at(m, k, l) + c.at(j, k, m) * c.at(m, i, l) +
                             c.at(k, i, m) * c.at(m, j, l);
                    J[((static_cast<size_t>(i) * n + j) * n + k) * n + l] = s;
                }
    return J;
}

std::vector<cd> mixed_jacobi_tensor(const LieStructure& a, const LieStructure& b) {
    require(a.dim() == b.dim(), "mixed_jacobi_tensor: dimension mismatch");
    const int n = a.dim();
    std::vector<cd> J(static_cast<size_t>(n) * n * n * n, cd(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    cd s(0.0, 0.0);
                    for (int m = 0; m < n; ++m)
                        s += a.at(i, j, m) * b.at(m, k, l) + b.at(i, j, m) * a.at(m, k, l) +
                             a.at(j, k, m) * b.at(m, i, l) + b.at(j, k, m) * a.at(m, i, l) +
                             a.at(k, i, m) * b.at(m, j, l) + b.at(k, i, m) * a.at(m, j, l);
                    J[((static_cast<size_t>(i) * n + j) * n + k) * n + l] = s;
                }
    return J;
}

namespace {
double sup(const std::vector<cd>& v) {
    double m = 0.0;
    for (cd x : v) m = std::max(m, std::abs(x));
    return m;
}
}  // namespace

double jacobiator(const LieStructure& c) {
    double scale = c.max_abs();
    if (scale == 0.0) return 0.0;
    return sup(jacobi_tensor(c)) / (scale * scale);
}

double compatibility_residual(const LieStructure& a, const LieStructure& b) {
    double sa = a.max_abs(), sb = b.max_abs();
    if (sa == 0.0 || sb == 0.0) return 0.0;
    return sup(mixed_jacobi_tensor(a, b)) / (sa * sb);
}

PolyElement lie_poisson_bracket(const PolyElement& f, const PolyElement& g,
                                const LieStructure& c) {
    const int n = c.dim();
    require(f.num_vars() == n && g.num_vars() == n,
            "lie_poisson_bracket: arity must match the algebra dimension");
    std::vector<PolyElement> df, dg;
    df.reserve(static_cast<size_t>(n));
    dg.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        df.push_back(f.derivative(i));
        dg.push_back(g.derivative(i));
    }
    PolyElement out(n);
    for (int i = 0; i < n; ++i) {
        if (df[static_cast<size_t>(i)].empty()) continue;
        for (int j = 0; j < n; ++j) {
            if (dg[static_cast<size_t>(j)].empty()) continue;
            bool any = false;
            for (int k = 0; k < n; ++k)
                if (c.at(i, j, k) != cd(0.0, 0.0)) {
                    any = true;
                    break;
                }
            if (!any) continue;
            PolyElement prod = df[static_cast<size_t>(i)] * dg[static_cast<size_t>(j)];
            for (int k = 0; k < n; ++k) {
                cd w = c.at(i, j, k);
                if (w == cd(0.0, 0.0)) continue;
                for (const auto& [key, v] : prod.terms()) {
                    PolyElement::Key kk = key;
                    ensure(kk[static_cast<size_t>(k)] < 255, "lie_poisson_bracket: exponent overflow");
                    ++kk[static_cast<size_t>(k)];
                    out.add_term(kk, v * w);
                }
            }
        }
    }
    return out;
}

double is_casimir(const PolyElement& f, const LieStructure& c) {
    const int n = c.dim();
    double fs = f.norm();
    if (fs == 0.0) return 0.0;
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        PolyElement xj = PolyElement::variable(n, j);
        worst = std::max(worst, lie_poisson_bracket(f, xj, c).norm());
    }
    return worst / fs;
}

std::vector<PolyElement> center_basis(const LieStructure& c) {
    const int n = c.dim();
    Eigen::MatrixXcd M(n * n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) M(j * n + k, i) = c.at(i, j, k);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() ? sv(0) : 0.0;
    std::vector<PolyElement> out;
    for (int r = 0; r < n; ++r) {
        if (r < sv.size() && sv(r) > 1e-8 * std::max(smax, 1e-300)) continue;
        PolyElement p(n);
        for (int i = 0; i < n; ++i) {
            cd v = svd.matrixV()(i, r);
            if (std::abs(v) > 1e-12) {
                PolyElement::Key key(static_cast<size_t>(n), 0);
                key[static_cast<size_t>(i)] = 1;
                p.add_term(key, v);
            }
        }
        out.push_back(p.pruned());
    }
    return out;
}

KillingReport killing_semisimple(const LieStructure& c) {
    const int n = c.dim();
    KillingReport rep;
    std::vector<Eigen::MatrixXcd> ads;
    ads.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        ads.push_back(c.ad(Eigen::VectorXcd::Unit(n, i)));

    rep.killing = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rep.killing(i, j) = (ads[static_cast<size_t>(i)] * ads[static_cast<size_t>(j)]).trace();

    Eigen::JacobiSVD<Eigen::MatrixXcd> ksvd(rep.killing);
    double smax = ksvd.singularValues()(0);
    double smin = ksvd.singularValues()(n - 1);
    rep.min_sv_ratio = smax > 0.0 ? smin / smax : 0.0;
    rep.semisimple = smax > 0.0 && rep.min_sv_ratio > 1e-8;
    if (!rep.semisimple) return rep;

    // commutant of the adjoint representation: X with X ad_j = ad_j X for all
    // j; for a direct sum of simple ideals it is spanned by the projectors
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (int j = 0; j < n; ++j) {
        const Eigen::MatrixXcd& A = ads[static_cast<size_t>(j)];
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n * n, n * n);
        // column-major vec: vec(XA - AX) = (A^T kron I - I kron A) vec(X)
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) {
                for (int t = 0; t < n; ++t) {
                    M(r + n * s, r + n * t) += A(t, s);   // (A^T kron I)
                    M(r + n * s, t + n * s) -= A(r, t);   // (I kron A)
                }
            }
        H += M.adjoint() * M;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(H);
    double lmax = eig.eigenvalues()(n * n - 1);
    std::vector<Eigen::MatrixXcd> commutant;
    for (int r = 0; r < n * n; ++r) {
        if (eig.eigenvalues()(r) > 1e-10 * std::max(lmax, 1e-300)) continue;
        Eigen::MatrixXcd X(n, n);
        for (int col = 0; col < n; ++col) X.col(col) = eig.eigenvectors().col(r).segment(n * col, n);
        commutant.push_back(X);
    }
    ensure(!commutant.empty(), "killing_semisimple: empty commutant (identity must commute)");

    Rng rng(0x5eed1dea11ULL);
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& X : commutant) G += cd(0.3 + rng.next_double(), rng.next_double()) * X;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ges(G);
    ensure(ges.info() == Eigen::Success, "killing_semisimple: eigensolver failed");

    // cluster eigenvalues of the generic commutant element; eigenspaces = ideals
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        cd ea = ges.eigenvalues()(a), eb = ges.eigenvalues()(b);
        return ea.real() != eb.real() ? ea.real() < eb.real() : ea.imag() < eb.imag();
    });
    double esc = ges.eigenvalues().cwiseAbs().maxCoeff();
    std::vector<std::vector<int>> clusters;
    for (int oi : order) {
        if (!clusters.empty()) {
            cd prev = ges.eigenvalues()(clusters.back().back());
            if (std::abs(ges.eigenvalues()(oi) - prev) < 1e-6 * std::max(esc, 1e-300)) {
                clusters.back().push_back(oi);
                continue;
            }
        }
        clusters.push_back({oi});
    }
    for (const auto& cl : clusters) {
        Eigen::MatrixXcd ideal(n, static_cast<int>(cl.size()));
        for (size_t t = 0; t < cl.size(); ++t) ideal.col(static_cast<int>(t)) = ges.eigenvectors().col(cl[t]);
        rep.ideals.push_back(ideal);
        rep.ideal_dims.push_back(static_cast<int>(cl.size()));
    }
    std::sort(rep.ideal_dims.begin(), rep.ideal_dims.end());

    // closure certificate: bracketing an ideal with the whole algebra must not
    // leak into the complement
    double leak = 0.0;
    for (const auto& ideal : rep.ideals) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> isvd(ideal, Eigen::ComputeFullU);
        Eigen::MatrixXcd U = isvd.matrixU().leftCols(ideal.cols());
        for (int col = 0; col < ideal.cols(); ++col) {
            for (int j = 0; j < n; ++j) {
                Eigen::VectorXcd br = c.bracket(ideal.col(col), Eigen::VectorXcd::Unit(n, j));
                Eigen::VectorXcd out_of = br - U * (U.adjoint() * br);
                double denom = std::max(1e-300, ideal.col(col).norm() * c.max_abs());
                leak = std::max(leak, out_of.norm() / denom);
            }
        }
    }
    rep.ideal_closure_residual = leak;
    return rep;
}

ROperatorReport recover_r_operator(const LieStructure& c1, const LieStructure& c2) {
    require(c1.dim() == c2.dim(), "recover_r_operator: dimension mismatch");
    const int n = c1.dim();
    const int rows = n * (n - 1) / 2 * n;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(rows, n * n);
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(rows);
    int row = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int l = 0; l < n; ++l, ++row) {
                for (int s = 0; s < n; ++s) {
                    A(row, s * n + i) += c1.at(s, j, l);
                    A(row, s * n + j) += c1.at(i, s, l);
                    A(row, l * n + s) -= c1.at(i, j, s);
                }
                b(row) = c2.at(i, j, l);
            }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-10);
    Eigen::VectorXcd x = svd.solve(b);
    ROperatorReport rep;
    rep.R = Eigen::MatrixXcd(n, n);
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) rep.R(s, t) = x(s * n + t);
    rep.rank = static_cast<int>(svd.rank());
    rep.nullity = n * n - rep.rank;
    double bn = b.norm();
    rep.residual = bn > 0.0 ? (A * x - b).norm() / bn : 0.0;
    return rep;
}

}  // namespace ellpencil
