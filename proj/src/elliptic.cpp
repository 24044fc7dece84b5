#include "ellpencil/elliptic.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "ellpencil/orchestration.hpp"

namespace ellpencil {

namespace {

int reduce_mod(int v, int n) {
    int r = v % n;
    return r < 0 ? r + n : r;
}

// scalar part of v_{alpha beta gamma}: the product formula evaluated literally
std::function<cd(cd)> splitting_scalar(const PencilData& pencil, std::vector<cd> roots, int alpha,
                                       int beta, int gamma) {
    const EquivariantBasis& basis = pencil.basis;
    const int n = basis.n(), m = basis.m(), k = basis.k();
    const cd tau = basis.tau();
    require(static_cast<int>(roots.size()) == m, "splitting_vector: need one root per block");
    require(gamma >= 0 && gamma < m, "splitting_vector: block index out of range");

    cd sum(0.0, 0.0);
    for (cd r : roots) sum += r;
    require(std::abs(sum - std::round(sum.real())) < 1e-6,
            "splitting_vector: root representatives must sum to an integer");

    ThetaFunction th = theta_generator(tau);
    const cd offset =
        static_cast<double>(k) * (cd(alpha, 0.0) + cd(beta, 0.0) * tau) / static_cast<double>(n);

    cd denom = th.eval(-offset);
    for (int d = 0; d < m; ++d)
        if (d != gamma)
            denom *= th.eval(roots[static_cast<size_t>(gamma)] - roots[static_cast<size_t>(d)]);
    ensure(std::abs(denom) > 1e-12 * th.coeff_scale(),
           "splitting_vector: degenerate prefactor (coincident roots or lattice offset)");
    const cd pref = pencil.mu1.eval(roots[static_cast<size_t>(gamma)]) / denom;
    const double rate = -static_cast<double>(k) * beta / static_cast<double>(n);

    return [pref, rate, roots = std::move(roots), gamma, offset, th = std::move(th)](cd z) {
        cd v = pref * std::exp(cd(0.0, kTwoPi) * rate * z);
        for (size_t d = 0; d < roots.size(); ++d)
            v *= (static_cast<int>(d) == gamma) ? th.eval(z - roots[d] - offset)
                                                : th.eval(z - roots[d]);
        return v;
    };
}

}  // namespace

cd SectorFunction::eval(cd z) const {
    return std::exp(cd(0.0, kTwoPi) * phase_rate * z) * g.eval(z - center);
}

EquivariantBasis::EquivariantBasis(int n, int m, int k, cd tau)
    : n_(n), m_(m), k_(k), lat_(tau), pair_(n, k) {
    require(m >= 1, "EquivariantBasis: order m must be positive");
    theta_basis_ = build_theta_space(m, tau);
    sectors_ = nonzero_sectors(n);
    elements_.reserve(sectors_.size() * static_cast<size_t>(m));
    for (auto [alpha, beta] : sectors_)
        for (int t = 0; t < m; ++t) elements_.push_back(make(alpha, beta, theta_basis_[t]));
}

int EquivariantBasis::sector_index(int alpha, int beta) const {
    int a = reduce_mod(alpha, n_), b = reduce_mod(beta, n_);
    require(a != 0 || b != 0, "EquivariantBasis: (0, 0) is not a sector");
    // nonzero_sectors lists row-major over (alpha, beta) skipping (0, 0)
    return a * n_ + b - 1;
}

const SectorFunction& EquivariantBasis::element(int idx) const {
    require(idx >= 0 && idx < dim(), "EquivariantBasis: element index out of range");
    return elements_[static_cast<size_t>(idx)];
}

SectorFunction EquivariantBasis::make(int alpha, int beta, const ThetaFunction& g) const {
    require(g.order() == m_ && g.tau() == lat_.tau,
            "EquivariantBasis: scalar part has wrong order or lattice");
    sector_index(alpha, beta);  // rejects (0, 0) mod n
    cd center = (static_cast<double>(k_) * (cd(alpha, 0.0) + cd(beta, 0.0) * lat_.tau)) /
                static_cast<double>(m_ * n_);
    double rate = -static_cast<double>(k_) * static_cast<double>(beta) / static_cast<double>(n_);
    return SectorFunction{alpha, beta, g, center, rate};
}

Eigen::MatrixXcd EquivariantBasis::matrix_eval(const Eigen::VectorXcd& coords, cd z) const {
    require(coords.size() == dim(), "EquivariantBasis: coordinate vector has wrong size");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_, n_);
    for (int s = 0; s < static_cast<int>(sectors_.size()); ++s) {
        cd w(0.0, 0.0);
        for (int t = 0; t < m_; ++t) w += coords[index(s, t)] * elements_[index(s, t)].eval(z);
        if (w != cd(0.0, 0.0)) out += w * pair_.t(sectors_[s].first, sectors_[s].second);
    }
    return out;
}

Eigen::VectorXcd EquivariantBasis::expand_scalar(int alpha, int beta,
                                                 const std::function<cd(cd)>& f) const {
    const int s = sector_index(alpha, beta);
    const SectorFunction& ref = elements_[index(s, 0)];
    // strip the phase and recenter with the standard representative; the result
    // is an order-m section whenever f lies in the sector space
    auto h = [&](cd w) {
        cd z = w + ref.center;
        return std::exp(cd(0.0, -kTwoPi) * ref.phase_rate * z) * f(z);
    };
    std::vector<cd> c = expand_in_theta_space(h, m_, lat_.tau);
    Eigen::VectorXcd out(m_);
    for (int t = 0; t < m_; ++t) out[t] = c[static_cast<size_t>(t)];
    return out;
}

double EquivariantBasis::equivariance_residual() const {
    const Eigen::MatrixXcd a = pair_.clock(), b = pair_.shift();
    const Eigen::MatrixXcd ai = a.inverse(), bi = b.inverse();
    double worst = 0.0;
    for (int idx = 0; idx < dim(); ++idx) {
        const SectorFunction& e = elements_[static_cast<size_t>(idx)];
        const Eigen::MatrixXcd tm = pair_.t(e.alpha, e.beta);
        double scale = 1e-300;
        double defect = 0.0;
        for (int ix = 0; ix < 3; ++ix) {
            for (int iy = 0; iy < 3; ++iy) {
                cd z = lat_.from_coords(0.15 + 0.3 * ix, 0.15 + 0.3 * iy);
                Eigen::MatrixXcd F = e.eval(z) * tm;
                scale = std::max(scale, F.cwiseAbs().maxCoeff());
                Eigen::MatrixXcd d1 = e.eval(z + 1.0) * tm - a * F * ai;
                cd qf = std::exp(cd(0.0, -kTwoPi * m_) * z);
                if (m_ % 2 == 1) qf = -qf;
                Eigen::MatrixXcd d2 = e.eval(z + lat_.tau) * tm - qf * (b * F * bi);
                defect = std::max({defect, d1.cwiseAbs().maxCoeff(), d2.cwiseAbs().maxCoeff()});
            }
        }
        worst = std::max(worst, defect / scale);
    }
    return worst;
}

PencilSplitter::PencilSplitter(const EquivariantBasis& basis, const ThetaFunction& mu1,
                               const ThetaFunction& mu2, std::uint64_t seed)
    : basis_(basis), mu1_(mu1), mu2_(mu2) {
    const int m = basis.m();
    require(mu1.order() == m && mu2.order() == m,
            "PencilSplitter: pencil sections must have the basis order");
    require(mu1.tau() == basis.tau() && mu2.tau() == basis.tau(),
            "PencilSplitter: pencil sections live on a different lattice");
    const Lattice& lat = basis.lattice();

    // nodes must stay away from the section zeros (where one column block of the
    // design matrix degenerates) and from each other
    std::vector<cd> avoid;
    for (cd r : find_roots(mu1, lat).roots) avoid.push_back(r);
    for (cd r : find_roots(mu2, lat).roots) avoid.push_back(r);

    const int n_col = 2 * m, n_val = 4 * m;
    const double min_dist = 1e-3;
    const int n_sec = static_cast<int>(basis.sectors().size());

    for (int attempt = 0; attempt < 5; ++attempt) {
        Rng rng(seed * 0x9e3779b97f4a7c15ull + 0x1234u * static_cast<std::uint64_t>(attempt) + 1u);
        std::vector<cd> pts;
        int guard = 0;
        while (static_cast<int>(pts.size()) < n_col + n_val && guard++ < 4000) {
            cd z = lat.from_coords(0.06 + 0.88 * rng.next_double(), 0.06 + 0.88 * rng.next_double());
            bool ok = true;
            for (cd r : avoid) ok = ok && lat.dist_mod(z, r) > min_dist;
            for (cd r : pts) ok = ok && lat.dist_mod(z, r) > min_dist;
            if (ok) pts.push_back(z);
        }
        if (static_cast<int>(pts.size()) < n_col + n_val) continue;
        nodes_.assign(pts.begin(), pts.begin() + n_col);
        val_nodes_.assign(pts.begin() + n_col, pts.end());

        std::vector<cd> m1(nodes_.size()), m2(nodes_.size());
        for (size_t r = 0; r < nodes_.size(); ++r) {
            m1[r] = mu1.eval(nodes_[r]);
            m2[r] = mu2.eval(nodes_[r]);
        }

        lu_.clear();
        val_design_.clear();
        col_scale_.clear();
        condition_ = 0.0;
        bool ok = true;
        for (int s = 0; s < n_sec && ok; ++s) {
            Eigen::MatrixXcd A(n_col, n_col);
            for (int r = 0; r < n_col; ++r) {
                for (int t = 0; t < m; ++t) {
                    cd e = basis.scalar_eval(basis.index(s, t), nodes_[static_cast<size_t>(r)]);
                    A(r, t) = m1[static_cast<size_t>(r)] * e;
                    A(r, m + t) = m2[static_cast<size_t>(r)] * e;
                }
            }
            Eigen::VectorXd scale(n_col);
            for (int j = 0; j < n_col; ++j) {
                double nj = A.col(j).norm();
                if (nj <= 0.0) {
                    ok = false;
                    break;
                }
                scale[j] = 1.0 / nj;
                A.col(j) *= scale[j];
            }
            if (!ok) break;
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
            double cond = svd.singularValues()(0) / svd.singularValues()(n_col - 1);
            if (!std::isfinite(cond) || cond > 1e8) {
                ok = false;
                break;
            }
            condition_ = std::max(condition_, cond);
            col_scale_.push_back(scale);
            lu_.push_back(Eigen::PartialPivLU<Eigen::MatrixXcd>(A));

            Eigen::MatrixXcd V(n_val, n_col);
            for (int r = 0; r < n_val; ++r) {
                cd z = val_nodes_[static_cast<size_t>(r)];
                cd w1 = mu1.eval(z), w2 = mu2.eval(z);
                for (int t = 0; t < m; ++t) {
                    cd e = basis.scalar_eval(basis.index(s, t), z);
                    V(r, t) = w1 * e;
                    V(r, m + t) = w2 * e;
                }
            }
            val_design_.push_back(std::move(V));
        }
        if (ok) return;
    }
    throw numeric_failure(
        "PencilSplitter: could not find well-conditioned collocation nodes "
        "(pencil sections nearly dependent or zeros crowd the cell)");
}

void PencilSplitter::split_sector(int sector, const std::vector<cd>& node_values,
                                  const std::vector<cd>& validation_values, Eigen::VectorXcd& p,
                                  Eigen::VectorXcd& q, double* residual) const {
    const int m = basis_.m();
    const int n_col = 2 * m;
    require(sector >= 0 && sector < static_cast<int>(lu_.size()),
            "PencilSplitter: sector index out of range");
    require(static_cast<int>(node_values.size()) == n_col,
            "PencilSplitter: need one sample per collocation node");
    Eigen::VectorXcd b(n_col);
    for (int r = 0; r < n_col; ++r) b[r] = node_values[static_cast<size_t>(r)];
    Eigen::VectorXcd x = lu_[static_cast<size_t>(sector)].solve(b);
    x = col_scale_[static_cast<size_t>(sector)].asDiagonal() * x;
    p = x.head(m);
    q = x.tail(m);
    if (residual != nullptr) {
        require(validation_values.size() == val_nodes_.size(),
                "PencilSplitter: need one sample per validation node");
        Eigen::VectorXcd v(static_cast<int>(validation_values.size()));
        for (int r = 0; r < v.size(); ++r) v[r] = validation_values[static_cast<size_t>(r)];
        Eigen::VectorXcd rec = val_design_[static_cast<size_t>(sector)] * x;
        double scale = std::max({v.cwiseAbs().maxCoeff(), rec.cwiseAbs().maxCoeff(), 1e-300});
        double err = (rec - v).cwiseAbs().maxCoeff();
        *residual = std::max(*residual, err / scale);
    }
}

void PencilSplitter::split_matrix(const std::function<Eigen::MatrixXcd(cd)>& Z,
                                  Eigen::VectorXcd& P, Eigen::VectorXcd& Q, double* residual,
                                  double scale_floor) const {
    const int n = basis_.n(), m = basis_.m();
    const int n_sec = static_cast<int>(basis_.sectors().size());
    const bool validate = residual != nullptr;

    std::vector<Eigen::MatrixXcd> zc, zv;
    for (cd z : nodes_) zc.push_back(Z(z));
    if (validate)
        for (cd z : val_nodes_) zv.push_back(Z(z));

    P.resize(basis_.dim());
    Q.resize(basis_.dim());
    double id_defect = 0.0;
    for (const auto& M : zc) id_defect = std::max(id_defect, std::abs(M.trace()));

    double err = id_defect / n, scale = std::max(scale_floor, 1e-300);
    for (int s = 0; s < n_sec; ++s) {
        auto [alpha, beta] = basis_.sectors()[static_cast<size_t>(s)];
        const Eigen::MatrixXcd d = basis_.pair().dual(alpha, beta);
        std::vector<cd> vals(nodes_.size());
        for (size_t r = 0; r < nodes_.size(); ++r)
            vals[r] = (d * zc[r]).trace() / static_cast<double>(n);
        Eigen::VectorXcd p, q;
        split_sector(s, vals, {}, p, q, nullptr);
        P.segment(s * m, m) = p;
        Q.segment(s * m, m) = q;
        if (validate) {
            Eigen::VectorXcd v(static_cast<int>(val_nodes_.size()));
            for (size_t r = 0; r < val_nodes_.size(); ++r)
                v[static_cast<int>(r)] = (d * zv[r]).trace() / static_cast<double>(n);
            Eigen::VectorXcd x(2 * m);
            x << p, q;
            Eigen::VectorXcd rec = val_design_[static_cast<size_t>(s)] * x;
            err = std::max(err, (rec - v).cwiseAbs().maxCoeff());
            scale = std::max({scale, v.cwiseAbs().maxCoeff(), rec.cwiseAbs().maxCoeff()});
        }
    }
    if (validate) *residual = std::max(*residual, err / scale);
}

PencilData build_pencil(int n, int m, int k, cd tau, const ThetaFunction& mu1,
                        const ThetaFunction& mu2, std::uint64_t seed) {
    require(m >= 2,
            "build_pencil: order-1 pencils are degenerate (both sections vanish at the "
            "same single point)");
    EquivariantBasis basis(n, m, k, tau);
    const Lattice& lat = basis.lattice();
    require(mu1.order() == m && mu2.order() == m, "build_pencil: sections must have order m");
    require(mu1.tau() == tau && mu2.tau() == tau, "build_pencil: sections on the wrong lattice");

    // no-common-zero certificate, checked both ways for a two-sided margin
    double margin = 1e300;
    for (cd r : find_roots(mu1, lat).roots)
        margin = std::min(margin, std::abs(mu2.eval(r)) / mu2.coeff_scale());
    for (cd r : find_roots(mu2, lat).roots)
        margin = std::min(margin, std::abs(mu1.eval(r)) / mu1.coeff_scale());
    require(margin > 1e-6,
            "build_pencil: the two sections (nearly) share a zero; the pencil is degenerate");

    PencilSplitter splitter(basis, mu1, mu2, seed);
    const int dim = basis.dim();
    LieStructure c1(dim, "pencil-bracket-1"), c2(dim, "pencil-bracket-2");
    double split_residual = 0.0;

    auto split_pair = [&](int i, int j) {
        const SectorFunction& fi = basis.element(i);
        const SectorFunction& fj = basis.element(j);
        const Eigen::MatrixXcd ti = basis.pair().t(fi.alpha, fi.beta);
        const Eigen::MatrixXcd tj = basis.pair().t(fj.alpha, fj.beta);
        auto Z = [&](cd z) -> Eigen::MatrixXcd {
            Eigen::MatrixXcd a = fi.eval(z) * ti, b = fj.eval(z) * tj;
            return a * b - b * a;
        };
        // natural magnitude of the products feeding Z: commutators that
        // cancel to roundoff must not be judged against their own noise
        double floor = 0.0;
        for (cd z : splitter.nodes())
            floor = std::max(floor, std::abs(fi.eval(z)) * std::abs(fj.eval(z)));
        Eigen::VectorXcd P, Q;
        double res = 0.0;
        splitter.split_matrix(Z, P, Q, &res, floor);
        split_residual = std::max(split_residual, res);
        return std::make_pair(std::move(P), std::move(Q));
    };
    orchestrate_bracket_build(dim, split_pair, c1, c2);
    double asym = std::max(c1.antisymmetrize(), c2.antisymmetrize());
    double condition = splitter.condition();
    return PencilData{std::move(basis), mu1,           mu2,    std::move(c1), std::move(c2),
                      margin,           split_residual, asym,  condition};
}

PencilData build_pencil_random(int n, int m, int k, cd tau, std::uint64_t seed) {
    Rng rng(seed ^ 0xe11f00dull);
    std::string last;
    for (int attempt = 0; attempt < 10; ++attempt) {
        std::vector<cd> s1(static_cast<size_t>(m)), s2(static_cast<size_t>(m));
        for (int t = 0; t < m; ++t) {
            s1[static_cast<size_t>(t)] = rng.next_complex() + cd(0.2, 0.1);
            s2[static_cast<size_t>(t)] = rng.next_complex() - cd(0.1, 0.2);
        }
        try {
            return build_pencil(n, m, k, tau, ThetaFunction(s1, tau), ThetaFunction(s2, tau),
                                seed + static_cast<std::uint64_t>(attempt));
        } catch (const invalid_input& e) {
            last = e.what();
        } catch (const numeric_failure& e) {
            last = e.what();
        }
    }
    throw numeric_failure("build_pencil_random: no admissible section pair found: " + last);
}

Eigen::VectorXcd splitting_vector(const PencilData& pencil, const std::vector<cd>& roots,
                                  int alpha, int beta, int gamma) {
    const EquivariantBasis& basis = pencil.basis;
    const int m = basis.m();
    auto scalar = splitting_scalar(pencil, roots, alpha, beta, gamma);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(basis.dim());
    const int s = basis.sector_index(alpha, beta);
    out.segment(s * m, m) = basis.expand_scalar(alpha, beta, scalar);
    return out;
}

SplittingBasis splitting_basis(const PencilData& pencil, cd u) {
    const EquivariantBasis& basis = pencil.basis;
    const Lattice& lat = basis.lattice();
    const int m = basis.m();

    PencilRoots pr = pencil_roots(pencil.mu1, pencil.mu2, u, lat);
    require(pr.regular, "splitting_basis: u is not regular (multiple or colliding zeros)");

    SplittingBasis sb;
    sb.u = u;
    sb.roots = pr.roots.integer_sum_representatives(lat);

    const int n_sec = static_cast<int>(basis.sectors().size());
    sb.coords.resize(static_cast<size_t>(basis.dim()));
    for (int s = 0; s < n_sec; ++s) {
        auto [alpha, beta] = basis.sectors()[static_cast<size_t>(s)];
        for (int g = 0; g < m; ++g)
            sb.coords[static_cast<size_t>(basis.index(s, g))] =
                splitting_vector(pencil, sb.roots, alpha, beta, g);
    }

    // spot-check that the expansion reproduces the defining product formula
    double worst = 0.0;
    Rng rng(0xb10c5u);
    std::vector<cd> probes;
    for (int p = 0; p < 3; ++p)
        probes.push_back(lat.from_coords(0.1 + 0.8 * rng.next_double(),
                                         0.1 + 0.8 * rng.next_double()));
    for (int s = 0; s < n_sec; ++s) {
        auto [alpha, beta] = basis.sectors()[static_cast<size_t>(s)];
        for (int g = 0; g < m; ++g) {
            const Eigen::VectorXcd& v = sb.coords[static_cast<size_t>(basis.index(s, g))];
            auto direct = splitting_scalar(pencil, sb.roots, alpha, beta, g);
            double err = 0.0, scale = 1e-300;
            for (cd z : probes) {
                cd got(0.0, 0.0);
                for (int t = 0; t < m; ++t)
                    got += v[basis.index(s, t)] * basis.scalar_eval(basis.index(s, t), z);
                cd want = direct(z);
                err = std::max(err, std::abs(got - want));
                scale = std::max(scale, std::abs(want));
            }
            worst = std::max(worst, err / scale);
        }
    }
    sb.expansion_residual = worst;
    return sb;
}

SplittingReport verify_splitting(const PencilData& pencil, const SplittingBasis& sb) {
    const EquivariantBasis& basis = pencil.basis;
    const int m = basis.m();
    const int n_sec = static_cast<int>(basis.sectors().size());
    const LieStructure cu = pencil.pencil_member(sb.u);
    const double cscale = std::max(cu.max_abs(), 1e-300);

    std::map<std::tuple<int, int, int>, Eigen::VectorXcd> expected_cache;
    auto expected_vec = [&](int alpha, int beta, int gamma) -> const Eigen::VectorXcd& {
        auto key = std::make_tuple(alpha, beta, gamma);
        auto it = expected_cache.find(key);
        if (it == expected_cache.end())
            it = expected_cache.emplace(key, splitting_vector(pencil, sb.roots, alpha, beta, gamma))
                     .first;
        return it->second;
    };

    SplittingReport rep;
    for (int s1 = 0; s1 < n_sec; ++s1) {
        auto [a1, b1] = basis.sectors()[static_cast<size_t>(s1)];
        for (int s2 = 0; s2 < n_sec; ++s2) {
            auto [a2, b2] = basis.sectors()[static_cast<size_t>(s2)];
            const cd coeff = basis.pair().bracket_coeff(a1, b1, a2, b2);
            const bool sum_zero = (a1 + a2) % basis.n() == 0 && (b1 + b2) % basis.n() == 0;
            for (int g1 = 0; g1 < m; ++g1) {
                const Eigen::VectorXcd& v1 = sb.coords[static_cast<size_t>(basis.index(s1, g1))];
                for (int g2 = 0; g2 < m; ++g2) {
                    if (s1 == s2 && g1 == g2) continue;
                    const Eigen::VectorXcd& v2 =
                        sb.coords[static_cast<size_t>(basis.index(s2, g2))];
                    Eigen::VectorXcd w = cu.bracket(v1, v2);
                    double scale = cscale * v1.cwiseAbs().maxCoeff() * v2.cwiseAbs().maxCoeff();
                    scale = std::max(scale, 1e-300);
                    if (g1 != g2) {
                        rep.cross_block_residual =
                            std::max(rep.cross_block_residual, w.cwiseAbs().maxCoeff() / scale);
                    } else if (sum_zero) {
                        require(std::abs(coeff) == 0.0,
                                "verify_splitting: vanishing sector with nonzero coefficient");
                        rep.in_block_residual =
                            std::max(rep.in_block_residual, w.cwiseAbs().maxCoeff() / scale);
                    } else {
                        Eigen::VectorXcd want = coeff * expected_vec(a1 + a2, b1 + b2, g1);
                        double ws = std::max(want.cwiseAbs().maxCoeff(), scale);
                        rep.in_block_residual =
                            std::max(rep.in_block_residual, (w - want).cwiseAbs().maxCoeff() / ws);
                    }
                }
            }
        }
    }
    return rep;
}

double evaluation_map_min_sv(const EquivariantBasis& basis, const std::vector<cd>& points) {
    const int m = basis.m();
    require(static_cast<int>(points.size()) == m,
            "evaluation_map_min_sv: need exactly m evaluation points");
    double min_sv = 1e300;
    for (int s = 0; s < static_cast<int>(basis.sectors().size()); ++s) {
        Eigen::MatrixXcd B(m, m);
        for (int d = 0; d < m; ++d)
            for (int t = 0; t < m; ++t)
                B(d, t) = basis.scalar_eval(basis.index(s, t), points[static_cast<size_t>(d)]);
        for (int t = 0; t < m; ++t) {
            double nt = B.col(t).norm();
            if (nt > 0.0) B.col(t) /= nt;
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B);
        min_sv = std::min(min_sv, svd.singularValues()(m - 1));
    }
    return min_sv;
}

}  // namespace ellpencil
