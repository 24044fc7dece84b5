#include "ellpencil/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "ellpencil/lie.hpp"

namespace ellpencil {

namespace {

long ipow_long(long b, int e) {
    long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// coefficients of u^0..u^deg from samples on the circle |u| = 0.8, combined
// with exact Lagrange-basis coefficients
std::vector<PolyElement> interpolate_in_u(const std::function<PolyElement(cd)>& sample,
                                          int deg, int num_vars) {
    const int s_count = deg + 1;
    std::vector<cd> us;
    std::vector<PolyElement> samples;
    samples.reserve(static_cast<size_t>(s_count));
    for (int s = 0; s < s_count; ++s) {
        us.push_back(0.8 * std::exp(cd(0.0, kTwoPi * s / s_count)));
        samples.push_back(sample(us.back()));
    }
    std::vector<PolyElement> out(static_cast<size_t>(s_count), PolyElement(num_vars));
    for (int s = 0; s < s_count; ++s) {
        std::vector<cd> lag{cd(1.0, 0.0)};  // expands prod_{r != s} (u - u_r)
        cd denom(1.0, 0.0);
        for (int r = 0; r < s_count; ++r) {
            if (r == s) continue;
            lag.push_back(cd(0.0, 0.0));
            for (int d = static_cast<int>(lag.size()) - 1; d > 0; --d)
                lag[static_cast<size_t>(d)] =
                    lag[static_cast<size_t>(d - 1)] - us[static_cast<size_t>(r)] * lag[static_cast<size_t>(d)];
            lag[0] *= -us[static_cast<size_t>(r)];
            denom *= us[static_cast<size_t>(s)] - us[static_cast<size_t>(r)];
        }
        for (int d = 0; d < s_count; ++d)
            out[static_cast<size_t>(d)] =
                out[static_cast<size_t>(d)] +
                samples[static_cast<size_t>(s)] * (lag[static_cast<size_t>(d)] / denom);
    }
    return out;
}

void check_section(const PencilData& pencil, const ThetaFunction& g) {
    require(g.order() == pencil.basis.m(), "casimir: section order does not match the pencil");
    require(std::abs(g.tau() - pencil.basis.tau()) < 1e-12,
            "casimir: section modulus does not match the pencil");
}

}  // namespace

std::vector<SectorTuple> admissible_tuples(int n, int p) {
    require(n >= 2, "admissible_tuples: n must be at least 2");
    require(p >= 1 && p <= 4, "admissible_tuples: p out of supported range");
    const auto sectors = nonzero_sectors(n);
    const int ns = static_cast<int>(sectors.size());
    std::vector<SectorTuple> out;
    std::vector<int> idx(static_cast<size_t>(p), 0);
    while (true) {
        int sa = 0, sb = 0;
        for (int j = 0; j < p; ++j) {
            sa += sectors[static_cast<size_t>(idx[static_cast<size_t>(j)])].first;
            sb += sectors[static_cast<size_t>(idx[static_cast<size_t>(j)])].second;
        }
        if (sa % n == 0 && sb % n == 0) {
            SectorTuple t;
            for (int j = 0; j < p; ++j) t.push_back(sectors[static_cast<size_t>(idx[static_cast<size_t>(j)])]);
            out.push_back(std::move(t));
        }
        int j = p - 1;
        while (j >= 0 && ++idx[static_cast<size_t>(j)] == ns) idx[static_cast<size_t>(j--)] = 0;
        if (j < 0) break;
    }
    return out;
}

long admissible_tuple_count(int n, int p) {
    const long s = static_cast<long>(n) * n - 1;
    const long sign = (p % 2 == 0) ? 1 : -1;
    return (ipow_long(s, p) + s * sign) / (static_cast<long>(n) * n);
}

std::vector<std::pair<long, long>> zero_sum_lift(const SectorTuple& tuple, int n) {
    require(!tuple.empty(), "zero_sum_lift: empty tuple");
    require(n >= 2, "zero_sum_lift: n must be at least 2");
    std::vector<std::pair<long, long>> out;
    long sa = 0, sb = 0;
    for (const auto& [a, b] : tuple) {
        const long ra = ((a % n) + n) % n;
        const long rb = ((b % n) + n) % n;
        require(ra != 0 || rb != 0, "zero_sum_lift: zero sector in tuple");
        out.emplace_back(ra, rb);
        sa += ra;
        sb += rb;
    }
    require(sa % n == 0 && sb % n == 0, "zero_sum_lift: index sums not divisible by n");
    out[0].first -= sa;
    out[0].second -= sb;
    return out;
}

CasimirAssembler::CasimirAssembler(const PencilData& pencil, int p, std::uint64_t seed)
    : pencil_(pencil),
      p_(p),
      theta_(theta_generator(pencil.basis.tau())),
      tuples_(admissible_tuples(pencil.basis.n(), p)) {
    require(p >= 2 && p <= 3, "CasimirAssembler: p must be 2 or 3");
    const EquivariantBasis& basis = pencil_.basis;
    const Lattice& lat = basis.lattice();
    const int m = basis.m();
    const int n_sec = static_cast<int>(basis.sectors().size());
    for (int attempt = 0; attempt < 5; ++attempt) {
        Rng rng(seed * 0x9e3779b97f4a7c15ull + 0x77u * static_cast<std::uint64_t>(attempt) + 3u);
        // one flat pool of p*m nodes, pairwise separated mod the lattice so that
        // no evaluation hits a pole of the paired-difference quotients
        std::vector<cd> flat;
        int tries = 0;
        while (static_cast<int>(flat.size()) < p * m && tries < 4000) {
            ++tries;
            cd z = lat.from_coords(0.08 + 0.84 * rng.next_double(),
                                   0.08 + 0.84 * rng.next_double());
            bool ok = true;
            for (cd w : flat) ok = ok && lat.dist_mod(z, w) > 4e-2;
            if (ok) flat.push_back(z);
        }
        if (static_cast<int>(flat.size()) < p * m) continue;
        nodes_.assign(static_cast<size_t>(p), {});
        for (int j = 0; j < p; ++j)
            nodes_[static_cast<size_t>(j)] =
                std::vector<cd>(flat.begin() + j * m, flat.begin() + (j + 1) * m);
        lu_.assign(static_cast<size_t>(p), {});
        col_scale_.assign(static_cast<size_t>(p), {});
        bool ok = true;
        for (int j = 0; j < p && ok; ++j) {
            for (int s = 0; s < n_sec && ok; ++s) {
                Eigen::MatrixXcd a(m, m);
                for (int r = 0; r < m; ++r)
                    for (int t = 0; t < m; ++t)
                        a(r, t) = basis.scalar_eval(basis.index(s, t),
                                                    nodes_[static_cast<size_t>(j)][static_cast<size_t>(r)]);
                Eigen::VectorXd scale(m);
                for (int c = 0; c < m; ++c) {
                    const double nc = a.col(c).norm();
                    if (nc <= 0.0) {
                        ok = false;
                        break;
                    }
                    scale[c] = 1.0 / nc;
                    a.col(c) *= scale[c];
                }
                if (!ok) break;
                Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
                const double cond = svd.singularValues()(0) / svd.singularValues()(m - 1);
                if (!std::isfinite(cond) || cond > 1e8) {
                    ok = false;
                    break;
                }
                lu_[static_cast<size_t>(j)].push_back(Eigen::PartialPivLU<Eigen::MatrixXcd>(a));
                col_scale_[static_cast<size_t>(j)].push_back(std::move(scale));
            }
        }
        if (ok) return;
    }
    throw numeric_failure(
        "CasimirAssembler: could not find well-conditioned tensor collocation nodes");
}

CasimirAssembler::Lift CasimirAssembler::lift(const SectorTuple& tuple) const {
    require(static_cast<int>(tuple.size()) == p_, "CasimirAssembler: tuple arity mismatch");
    const EquivariantBasis& basis = pencil_.basis;
    const int n = basis.n();
    const double scale = static_cast<double>(basis.k()) / n;
    const auto lifted = zero_sum_lift(tuple, n);
    Lift out;
    for (int j = 0; j < p_; ++j) {
        out.alpha.push_back(lifted[static_cast<size_t>(j)].first);
        out.beta.push_back(lifted[static_cast<size_t>(j)].second);
        out.offset.push_back(
            (cd(static_cast<double>(out.alpha.back()), 0.0) +
             basis.tau() * static_cast<double>(out.beta.back())) *
            scale);
        out.sector.push_back(basis.sector_index(tuple[static_cast<size_t>(j)].first,
                                                tuple[static_cast<size_t>(j)].second));
    }
    long ph = 0;
    for (int j1 = 0; j1 < p_; ++j1)
        for (int j2 = j1; j2 < p_; ++j2)
            ph += out.alpha[static_cast<size_t>(j1)] * out.beta[static_cast<size_t>(j2)];
    // Normalize each tuple by the product of theta offsets so the per-block
    // coefficients of the assembled element become tuple-independent.
    cd norm(1.0, 0.0);
    for (const cd& off : out.offset) norm *= theta_.eval(off);
    out.phase = basis.pair().eps(ph) / norm;
    return out;
}

cd CasimirAssembler::value_lifted(const Lift& lf, const ThetaFunction& g, cd u,
                                  const std::vector<cd>& z) const {
    const ThetaFunction& mu1 = pencil_.mu1;
    const ThetaFunction& mu2 = pencil_.mu2;
    const double rate = static_cast<double>(pencil_.basis.k()) / pencil_.basis.n();
    cd bz(0.0, 0.0);
    for (int j = 0; j < p_; ++j)
        bz += static_cast<double>(lf.beta[static_cast<size_t>(j)]) * z[static_cast<size_t>(j)];
    const cd pref = std::exp(cd(0.0, -kTwoPi * rate) * bz);
    cd sum(0.0, 0.0);
    for (int t = 0; t < p_; ++t) {
        cd term = g.eval(z[static_cast<size_t>(t)]) * theta_.eval(lf.offset[static_cast<size_t>(t)]);
        for (int j = 0; j < p_; ++j) {
            if (j == t) continue;
            const cd d = z[static_cast<size_t>(t)] - z[static_cast<size_t>(j)];
            term *= theta_.eval(d + lf.offset[static_cast<size_t>(j)]) / theta_.eval(d);
            term *= mu2.eval(z[static_cast<size_t>(j)]) - u * mu1.eval(z[static_cast<size_t>(j)]);
        }
        sum += term;
    }
    return pref * sum;
}

cd CasimirAssembler::top_value_lifted(const Lift& lf, cd u, const std::vector<cd>& z,
                                      bool degenerate_derivative) const {
    const ThetaFunction& mu1 = pencil_.mu1;
    const ThetaFunction& mu2 = pencil_.mu2;
    const int n = pencil_.basis.n();
    const int m = pencil_.basis.m();
    const double rate = static_cast<double>(pencil_.basis.k()) / n;
    cd bz(0.0, 0.0);
    for (int j = 0; j < p_; ++j)
        bz += static_cast<double>(lf.beta[static_cast<size_t>(j)]) * z[static_cast<size_t>(j)];
    const cd pref = std::exp(cd(0.0, -kTwoPi * rate) * bz);

    std::vector<cd> w(static_cast<size_t>(p_));
    for (int j = 0; j < p_; ++j)
        w[static_cast<size_t>(j)] =
            mu2.eval(z[static_cast<size_t>(j)]) - u * mu1.eval(z[static_cast<size_t>(j)]);
    const auto ratio = [&](int t, int l) {
        const cd d = z[static_cast<size_t>(t)] - z[static_cast<size_t>(l)];
        return theta_.eval(d + lf.offset[static_cast<size_t>(l)]) / theta_.eval(d);
    };

    cd term_a(0.0, 0.0);
    for (int t = 0; t < p_; ++t) {
        cd a = theta_.eval(lf.offset[static_cast<size_t>(t)]);
        cd prod(1.0, 0.0);
        for (int j = 0; j < p_; ++j) {
            if (j == t) continue;
            a *= ratio(t, j);
            prod *= w[static_cast<size_t>(j)];
        }
        const cd d2 = mu2.eval(z[static_cast<size_t>(t)], 1);
        const cd dw = degenerate_derivative ? d2 - u * d2
                                            : d2 - u * mu1.eval(z[static_cast<size_t>(t)], 1);
        term_a += a * dw * prod;
    }

    cd b1(0.0, 0.0);
    for (int t = 0; t < p_; ++t) {
        for (int j = 0; j < p_; ++j) {
            if (j == t) continue;
            const cd d = z[static_cast<size_t>(t)] - z[static_cast<size_t>(j)];
            cd v = theta_.eval(lf.offset[static_cast<size_t>(t)]) *
                   theta_.eval(d + lf.offset[static_cast<size_t>(j)], 1) / theta_.eval(d);
            for (int l = 0; l < p_; ++l) {
                if (l == t || l == j) continue;
                v *= ratio(t, l);
            }
            b1 += v;
        }
    }
    cd b2(0.0, 0.0);
    for (int t = 0; t < p_; ++t) {
        cd v = theta_.eval(lf.offset[static_cast<size_t>(t)], 1);
        for (int l = 0; l < p_; ++l) {
            if (l == t) continue;
            v *= ratio(t, l);
        }
        b2 += v;
    }
    cd prod_all(1.0, 0.0);
    for (int j = 0; j < p_; ++j) prod_all *= w[static_cast<size_t>(j)];
    // The counterterm coefficient scales with the tuple arity: m/p makes the
    // result a combination of per-block products (measured exactly; m/n only
    // coincides at p = n).
    const cd b = (static_cast<double>(m) / p_) * (b1 + b2);
    return pref * (term_a - b * prod_all);
}

cd CasimirAssembler::value(const SectorTuple& tuple, const ThetaFunction& g, cd u,
                           const std::vector<cd>& z) const {
    require(static_cast<int>(z.size()) == p_, "CasimirAssembler::value: point arity mismatch");
    check_section(pencil_, g);
    return value_lifted(lift(tuple), g, u, z);
}

cd CasimirAssembler::top_value(const SectorTuple& tuple, cd u, const std::vector<cd>& z,
                               bool degenerate_derivative) const {
    require(static_cast<int>(z.size()) == p_, "CasimirAssembler::top_value: point arity mismatch");
    return top_value_lifted(lift(tuple), u, z, degenerate_derivative);
}

Eigen::VectorXcd CasimirAssembler::tensor_solve(const Lift& lf, Eigen::VectorXcd values) const {
    const int m = pencil_.basis.m();
    const long total = values.size();
    for (int j = 0; j < p_; ++j) {
        const auto& lu = lu_[static_cast<size_t>(j)][static_cast<size_t>(lf.sector[static_cast<size_t>(j)])];
        const auto& cs = col_scale_[static_cast<size_t>(j)][static_cast<size_t>(lf.sector[static_cast<size_t>(j)])];
        const long stride = ipow_long(m, p_ - 1 - j);
        const long block = stride * m;
        Eigen::VectorXcd fib(m);
        for (long base0 = 0; base0 < total; base0 += block) {
            for (long inner = 0; inner < stride; ++inner) {
                const long base = base0 + inner;
                for (int a = 0; a < m; ++a) fib[a] = values[base + a * stride];
                Eigen::VectorXcd x = lu.solve(fib);
                x = cs.asDiagonal() * x;
                for (int a = 0; a < m; ++a) values[base + a * stride] = x[a];
            }
        }
    }
    return values;
}

Eigen::VectorXcd CasimirAssembler::expand(const SectorTuple& tuple, const ThetaFunction& g,
                                          cd u) const {
    check_section(pencil_, g);
    const Lift lf = lift(tuple);
    const int m = pencil_.basis.m();
    const long total = ipow_long(m, p_);
    Eigen::VectorXcd values(total);
    std::vector<int> a(static_cast<size_t>(p_), 0);
    std::vector<cd> z(static_cast<size_t>(p_));
    for (long flat = 0; flat < total; ++flat) {
        for (int j = 0; j < p_; ++j)
            z[static_cast<size_t>(j)] =
                nodes_[static_cast<size_t>(j)][static_cast<size_t>(a[static_cast<size_t>(j)])];
        values[flat] = value_lifted(lf, g, u, z);
        int j = p_ - 1;
        while (j >= 0 && ++a[static_cast<size_t>(j)] == m) a[static_cast<size_t>(j--)] = 0;
    }
    return tensor_solve(lf, std::move(values));
}

Eigen::VectorXcd CasimirAssembler::expand_top(const SectorTuple& tuple, cd u,
                                              bool degenerate_derivative) const {
    const Lift lf = lift(tuple);
    const int m = pencil_.basis.m();
    const long total = ipow_long(m, p_);
    Eigen::VectorXcd values(total);
    std::vector<int> a(static_cast<size_t>(p_), 0);
    std::vector<cd> z(static_cast<size_t>(p_));
    for (long flat = 0; flat < total; ++flat) {
        for (int j = 0; j < p_; ++j)
            z[static_cast<size_t>(j)] =
                nodes_[static_cast<size_t>(j)][static_cast<size_t>(a[static_cast<size_t>(j)])];
        values[flat] = top_value_lifted(lf, u, z, degenerate_derivative);
        int j = p_ - 1;
        while (j >= 0 && ++a[static_cast<size_t>(j)] == m) a[static_cast<size_t>(j--)] = 0;
    }
    return tensor_solve(lf, std::move(values));
}

cd CasimirAssembler::coefficient_value(const SectorTuple& tuple, const Eigen::VectorXcd& coef,
                                       const std::vector<cd>& z) const {
    require(static_cast<int>(z.size()) == p_,
            "CasimirAssembler::coefficient_value: point arity mismatch");
    const Lift lf = lift(tuple);
    const EquivariantBasis& basis = pencil_.basis;
    const int m = basis.m();
    const long total = ipow_long(m, p_);
    require(coef.size() == total, "CasimirAssembler::coefficient_value: coefficient size mismatch");
    cd out(0.0, 0.0);
    std::vector<int> t(static_cast<size_t>(p_), 0);
    for (long flat = 0; flat < total; ++flat) {
        cd prod = coef[flat];
        for (int j = 0; j < p_; ++j)
            prod *= basis.scalar_eval(
                basis.index(lf.sector[static_cast<size_t>(j)], t[static_cast<size_t>(j)]),
                z[static_cast<size_t>(j)]);
        out += prod;
        int j = p_ - 1;
        while (j >= 0 && ++t[static_cast<size_t>(j)] == m) t[static_cast<size_t>(j--)] = 0;
    }
    return out;
}

PolyElement CasimirAssembler::symmetric_image(const SectorTuple& tuple,
                                              const Eigen::VectorXcd& coef) const {
    const Lift lf = lift(tuple);
    const EquivariantBasis& basis = pencil_.basis;
    const int m = basis.m();
    const int dim = basis.dim();
    const long total = ipow_long(m, p_);
    require(coef.size() == total, "CasimirAssembler::symmetric_image: coefficient size mismatch");
    PolyElement out(dim);
    std::vector<int> t(static_cast<size_t>(p_), 0);
    for (long flat = 0; flat < total; ++flat) {
        PolyElement::Key key(static_cast<size_t>(dim), 0);
        for (int j = 0; j < p_; ++j)
            ++key[static_cast<size_t>(basis.index(lf.sector[static_cast<size_t>(j)],
                                                  t[static_cast<size_t>(j)]))];
        out.add_term(key, lf.phase * coef[flat]);
        int j = p_ - 1;
        while (j >= 0 && ++t[static_cast<size_t>(j)] == m) t[static_cast<size_t>(j--)] = 0;
    }
    return out;
}

PolyElement CasimirAssembler::section_at(const ThetaFunction& g, cd u) const {
    PolyElement acc(pencil_.basis.dim());
    for (const auto& tuple : tuples_) acc = acc + symmetric_image(tuple, expand(tuple, g, u));
    return acc;
}

PolyElement CasimirAssembler::top_at(cd u, bool degenerate_derivative) const {
    PolyElement acc(pencil_.basis.dim());
    for (const auto& tuple : tuples_)
        acc = acc + symmetric_image(tuple, expand_top(tuple, u, degenerate_derivative));
    return acc;
}

double CasimirFamily::norm() const {
    double out = 0.0;
    for (const auto& c : u_coeffs) out = std::max(out, c.norm());
    return out;
}

int CasimirFamily::top_degree(double rel_tol) const {
    const double thr = rel_tol * norm();
    for (int d = static_cast<int>(u_coeffs.size()) - 1; d >= 0; --d)
        if (u_coeffs[static_cast<size_t>(d)].norm() > thr && thr > 0.0) return d;
    return -1;
}

int CasimirFamily::valuation(double rel_tol) const {
    const double thr = rel_tol * norm();
    for (int d = 0; d < static_cast<int>(u_coeffs.size()); ++d)
        if (u_coeffs[static_cast<size_t>(d)].norm() > thr && thr > 0.0) return d;
    return -1;
}

int CasimirFamily::effective_degree(double rel_tol) const {
    const int t = top_degree(rel_tol);
    return t < 0 ? -1 : t - valuation(rel_tol);
}

PolyElement CasimirFamily::at(cd u) const {
    require(!u_coeffs.empty(), "CasimirFamily::at: empty family");
    PolyElement acc(u_coeffs[0].num_vars());
    cd pw(1.0, 0.0);
    for (const auto& c : u_coeffs) {
        acc = acc + c * pw;
        pw *= u;
    }
    return acc;
}

CasimirFamily casimir_from_section(const PencilData& pencil, const ThetaFunction& g, int p,
                                   std::uint64_t seed) {
    check_section(pencil, g);
    const CasimirAssembler assembler(pencil, p, seed);
    auto coeffs = interpolate_in_u([&](cd u) { return assembler.section_at(g, u); }, p - 1,
                                   pencil.basis.dim());
    return CasimirFamily{p, std::move(coeffs)};
}

CasimirFamily casimir_top(const PencilData& pencil, int p, bool degenerate_derivative,
                          std::uint64_t seed) {
    const CasimirAssembler assembler(pencil, p, seed);
    auto coeffs = interpolate_in_u(
        [&](cd u) { return assembler.top_at(u, degenerate_derivative); }, p, pencil.basis.dim());
    return CasimirFamily{p, std::move(coeffs)};
}

CasimirFamily casimir_quadratic(const PencilData& pencil, std::uint64_t seed) {
    CasimirFamily f = casimir_from_section(pencil, pencil.mu2, 2, seed);
    ensure(f.valuation() == 1 && f.top_degree() == 1,
           "casimir_quadratic: quadratic family has an unexpected degree profile");
    return CasimirFamily{2, {std::move(f.u_coeffs[1])}};
}

double casimir_kernel_residual(const PencilData& pencil, int p, std::uint64_t seed) {
    const CasimirAssembler assembler(pencil, p, seed);
    double worst = 0.0, ref = 0.0;
    for (int s = 0; s < 3; ++s) {
        const cd u = 0.8 * std::exp(cd(0.0, kTwoPi * s / 3.0));
        worst = std::max(worst,
                         assembler.section_at(pencil_section(pencil.mu1, pencil.mu2, u), u).norm());
        ref = std::max(ref, assembler.section_at(pencil.mu2, u).norm());
    }
    ensure(ref > 0.0, "casimir_kernel_residual: reference family vanished");
    return worst / ref;
}

std::vector<ThetaFunction> complement_sections(const PencilData& pencil) {
    const int m = pencil.basis.m();
    if (m <= 2) return {};
    std::vector<Eigen::VectorXcd> ortho;
    const auto absorb = [&](Eigen::VectorXcd v) -> bool {
        for (const auto& q : ortho) v -= q.dot(v) * q;
        if (v.norm() < 1e-8) return false;
        ortho.push_back(v / v.norm());
        return true;
    };
    Eigen::VectorXcd s1(m), s2(m);
    for (int r = 0; r < m; ++r) {
        s1[r] = pencil.mu1.seeds()[static_cast<size_t>(r)];
        s2[r] = pencil.mu2.seeds()[static_cast<size_t>(r)];
    }
    require(absorb(s1 / s1.norm()) && absorb(s2 / s2.norm()),
            "complement_sections: pencil sections are numerically dependent");
    std::vector<ThetaFunction> out;
    for (int c = 0; c < m && static_cast<int>(ortho.size()) < m; ++c) {
        if (!absorb(Eigen::VectorXcd::Unit(m, c))) continue;
        std::vector<cd> seeds(static_cast<size_t>(m));
        for (int r = 0; r < m; ++r) seeds[static_cast<size_t>(r)] = ortho.back()[r];
        out.emplace_back(std::move(seeds), pencil.basis.tau());
    }
    ensure(static_cast<int>(out.size()) == m - 2,
           "complement_sections: failed to complete the section basis");
    return out;
}

DegreeLedger degree_ledger(const PencilData& pencil, std::uint64_t seed) {
    const int n = pencil.basis.n();
    const int m = pencil.basis.m();
    require(n >= 2 && n <= 3, "degree_ledger: tower is implemented for n <= 3");
    DegreeLedger led;
    led.expected = static_cast<long>(m) * (static_cast<long>(n) * n - 1);

    Rng rng(seed ^ 0xdecafbadULL);
    cd ustar;
    bool found = false;
    for (int t = 0; t < 64 && !found; ++t) {
        ustar = 1.5 * rng.next_complex();
        found = pencil_roots(pencil.mu1, pencil.mu2, ustar, pencil.basis.lattice()).regular;
    }
    require(found, "degree_ledger: could not find a regular pencil parameter");
    const LieStructure cu = pencil.pencil_member(ustar);

    const auto complement = complement_sections(pencil);
    bool degrees_ok = true;
    for (int p = 2; p <= n; ++p) {
        led.worst_kernel_residual =
            std::max(led.worst_kernel_residual, casimir_kernel_residual(pencil, p, seed));
        std::vector<CasimirFamily> families;
        families.push_back(casimir_from_section(pencil, pencil.mu2, p, seed));
        for (const auto& g : complement)
            families.push_back(casimir_from_section(pencil, g, p, seed));
        families.push_back(casimir_top(pencil, p, false, seed));

        DegreeLedgerRow row;
        row.p = p;
        for (const auto& f : families) {
            row.effective_degrees.push_back(f.effective_degree());
            led.worst_casimir_residual =
                std::max(led.worst_casimir_residual, is_casimir(f.at(ustar), cu));
        }
        std::sort(row.effective_degrees.begin(), row.effective_degrees.end());
        std::vector<int> want;
        want.push_back(p - 2);
        for (int j = 0; j < m - 2; ++j) want.push_back(p - 1);
        want.push_back(p);
        std::sort(want.begin(), want.end());
        degrees_ok = degrees_ok && row.effective_degrees == want;
        for (int d : row.effective_degrees) led.gz_sum += 2L * d + 1L;
        led.rows.push_back(std::move(row));
    }
    led.consistent = degrees_ok && led.gz_sum == led.expected;
    return led;
}

double enveloping_center_residual(const PolyElement& quad, const LieStructure& c) {
    const int dim = c.dim();
    require(quad.num_vars() == dim, "enveloping_center_residual: arity mismatch");
    Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [key, coeff] : quad.terms()) {
        int i = -1, j = -1, total = 0;
        for (int v = 0; v < dim; ++v) {
            const int e = key[static_cast<size_t>(v)];
            total += e;
            if (e >= 1 && i < 0) i = v;
            if (e == 2) j = v;
            else if (e == 1 && v != i) j = v;
        }
        require(total == 2, "enveloping_center_residual: polynomial is not homogeneous quadratic");
        if (i == j) {
            gamma(i, i) += coeff;
        } else {
            gamma(i, j) += coeff / 2.0;
            gamma(j, i) += coeff / 2.0;
        }
    }
    const double gmax = gamma.cwiseAbs().maxCoeff();
    const double cmax = c.max_abs();
    if (gmax == 0.0 || cmax == 0.0) return 0.0;

    double worst_quad = 0.0, worst_lin = 0.0;
    for (int k = 0; k < dim; ++k) {
        Eigen::MatrixXcd qs = Eigen::MatrixXcd::Zero(dim, dim);
        Eigen::VectorXcd lin = Eigen::VectorXcd::Zero(dim);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                const cd g = gamma(i, j);
                if (g == cd(0.0, 0.0)) continue;
                for (int l = 0; l < dim; ++l) {
                    const cd a = c.at(i, k, l);  // [e_i, e_k] component l
                    if (a != cd(0.0, 0.0)) {
                        qs(l, j) += 0.5 * g * a;
                        qs(j, l) += 0.5 * g * a;
                        for (int r = 0; r < dim; ++r) lin[r] += 0.5 * g * a * c.at(l, j, r);
                    }
                    const cd b = c.at(j, k, l);  // [e_j, e_k] component l
                    if (b != cd(0.0, 0.0)) {
                        qs(i, l) += 0.5 * g * b;
                        qs(l, i) += 0.5 * g * b;
                        for (int r = 0; r < dim; ++r) lin[r] += 0.5 * g * b * c.at(i, l, r);
                    }
                }
            }
        }
        worst_quad = std::max(worst_quad, qs.cwiseAbs().maxCoeff());
        worst_lin = std::max(worst_lin, lin.cwiseAbs().maxCoeff());
    }
    return std::max(worst_quad / (gmax * cmax), worst_lin / (gmax * cmax * cmax));
}

}  // namespace ellpencil
