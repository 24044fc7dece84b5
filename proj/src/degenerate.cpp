#include "ellpencil/degenerate.hpp"

#include <algorithm>
#include <map>

#include "ellpencil/exact_casimir.hpp"
#include "ellpencil/orchestration.hpp"

namespace ellpencil {
namespace {

template <class K>
bool all_zero(const std::vector<K>& v) {
    for (const K& x : v)
        if (!FieldOps<K>::is_zero(x)) return false;
    return true;
}

ExactMat<Rat> mat_mul(const ExactMat<Rat>& a, const ExactMat<Rat>& b) {
    ExactMat<Rat> out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            if (a.at(i, k) == 0) continue;
            for (int j = 0; j < b.cols; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return out;
}

// Coordinates of a traceless matrix in the basis of sl_basis_matrices.
std::vector<Rat> expand_traceless(const ExactMat<Rat>& m, int n) {
    std::vector<Rat> out;
    out.reserve(static_cast<size_t>(n) * n - 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) out.push_back(m.at(i, j));
    Rat run(0);
    for (int t = 0; t < n - 1; ++t) {
        run += m.at(t, t);
        out.push_back(run);
    }
    return out;
}

void validate_rational_section(int m, const RationalPoly& mu, const char* name) {
    require(mu.degree() >= 0, std::string(name) + ": zero section");
    require(mu.degree() <= m, std::string(name) + ": degree exceeds the order");
    require(mu.coeff(m - 1) == 0,
            std::string(name) + ": coefficient of z^{m-1} must vanish in the order-m space");
}

void validate_trig_section(int n, int m, const TrigPoly& mu, const char* name) {
    require(mu.degree() >= 0, std::string(name) + ": zero section");
    require(mu.degree() <= m, std::string(name) + ": degree exceeds the order");
    Cyc want = mu.coeff(0);
    if (m % 2) want = -want;
    require(mu.coeff(m) == want,
            std::string(name) + ": boundary tie a_m = (-1)^m a_0 violated");
    (void)n;
}

// valuation strip: f / W^{lowest nonzero power}
TrigPoly strip_units(const TrigPoly& f) {
    size_t v = 0;
    while (v < f.c.size() && FieldOps<Cyc>::is_zero(f.c[v])) ++v;
    TrigPoly out;
    out.c.assign(f.c.begin() + static_cast<long>(v), f.c.end());
    return out;
}

}  // namespace

template <class K>
bool exact_antisymmetric(const ExactLie<K>& c) {
    const int dim = c.dim();
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (!FieldOps<K>::is_zero(c.at(i, j, k) + c.at(j, i, k))) return false;
    return true;
}

template <class K>
bool exact_jacobi(const ExactLie<K>& c) {
    const int dim = c.dim();
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = j + 1; k < dim; ++k)
                for (int l = 0; l < dim; ++l) {
                    K s = FieldOps<K>::zero();
                    for (int w = 0; w < dim; ++w) {
                        if (!FieldOps<K>::is_zero(c.at(i, j, w))) s += c.at(i, j, w) * c.at(w, k, l);
                        if (!FieldOps<K>::is_zero(c.at(j, k, w))) s += c.at(j, k, w) * c.at(w, i, l);
                        if (!FieldOps<K>::is_zero(c.at(k, i, w))) s += c.at(k, i, w) * c.at(w, j, l);
                    }
                    if (!FieldOps<K>::is_zero(s)) return false;
                }
    return true;
}

template <class K>
bool exact_compatible(const ExactLie<K>& a, const ExactLie<K>& b) {
    const int dim = a.dim();
    require(b.dim() == dim, "exact_compatible: dimension mismatch");
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            for (int k = j + 1; k < dim; ++k)
                for (int l = 0; l < dim; ++l) {
                    K s = FieldOps<K>::zero();
                    for (int w = 0; w < dim; ++w) {
                        if (!FieldOps<K>::is_zero(a.at(i, j, w))) s += a.at(i, j, w) * b.at(w, k, l);
                        if (!FieldOps<K>::is_zero(b.at(i, j, w))) s += b.at(i, j, w) * a.at(w, k, l);
                        if (!FieldOps<K>::is_zero(a.at(j, k, w))) s += a.at(j, k, w) * b.at(w, i, l);
                        if (!FieldOps<K>::is_zero(b.at(j, k, w))) s += b.at(j, k, w) * a.at(w, i, l);
                        if (!FieldOps<K>::is_zero(a.at(k, i, w))) s += a.at(k, i, w) * b.at(w, j, l);
                        if (!FieldOps<K>::is_zero(b.at(k, i, w))) s += b.at(k, i, w) * a.at(w, j, l);
                    }
                    if (!FieldOps<K>::is_zero(s)) return false;
                }
    return true;
}

template <class K>
ExactLie<K> exact_pencil_member(const ExactLie<K>& a, const ExactLie<K>& b, const K& u) {
    const int dim = a.dim();
    require(b.dim() == dim, "exact_pencil_member: dimension mismatch");
    ExactLie<K> out(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) out.set(i, j, k, a.at(i, j, k) + u * b.at(i, j, k));
    return out;
}

std::vector<ExactMat<Rat>> sl_basis_matrices(int n) {
    require(n >= 2, "sl_basis_matrices: n must be at least 2");
    std::vector<ExactMat<Rat>> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            ExactMat<Rat> e(n, n);
            e.at(i, j) = 1;
            out.push_back(std::move(e));
        }
    for (int t = 0; t < n - 1; ++t) {
        ExactMat<Rat> h(n, n);
        h.at(t, t) = 1;
        h.at(t + 1, t + 1) = -1;
        out.push_back(std::move(h));
    }
    return out;
}

namespace {

// slot degrees of the order-m matrix space: the gapped pair {0, 2} at m = 2,
// the kernel-free window {0, ..., m-1} beyond
std::vector<int> rational_slot_degrees(int m) {
    std::vector<int> degs;
    if (m == 2) {
        degs = {0, 2};
    } else {
        for (int t = 0; t < m; ++t) degs.push_back(t);
    }
    return degs;
}

}  // namespace

std::pair<RationalPoly, RationalPoly> rational_decompose(int m, const RationalPoly& mu1,
                                                         const RationalPoly& mu2,
                                                         const RationalPoly& z,
                                                         const Rat& gauge_point) {
    require(m >= 2, "rational_decompose: order must be at least 2");
    const std::vector<int> degs = rational_slot_degrees(m);
    const int slots = static_cast<int>(degs.size());

    std::vector<int> target;  // product powers reachable by mu * slot
    if (m == 2) {
        require(z.degree() <= 2 * m, "rational_decompose: input degree exceeds 2m");
        require(z.coeff(2 * m - 1) == 0,
                "rational_decompose: coefficient of z^{2m-1} must vanish in the order-2m space");
        for (int b = 0; b <= 2 * m; ++b)
            if (b != 2 * m - 1) target.push_back(b);
    } else {
        require(z.degree() <= 2 * m - 1,
                "rational_decompose: input degree exceeds the window product bound 2m-1");
        for (int b = 0; b <= 2 * m - 1; ++b) target.push_back(b);
    }

    // one row per target power; the gapped model adds the gauge row
    // Q(gauge_point) = 0 to pin the constant kernel (h mu2, -h mu1)
    const int rows = static_cast<int>(target.size()) + (m == 2 ? 1 : 0);
    ExactMat<Rat> sys(rows, 2 * slots);
    std::vector<Rat> rhs(static_cast<size_t>(rows), Rat(0));
    for (size_t r = 0; r < target.size(); ++r) {
        const int b = target[r];
        for (int t = 0; t < slots; ++t) {
            sys.at(static_cast<int>(r), t) = mu1.coeff(b - degs[static_cast<size_t>(t)]);
            sys.at(static_cast<int>(r), slots + t) = mu2.coeff(b - degs[static_cast<size_t>(t)]);
        }
        rhs[r] = z.coeff(b);
    }
    if (m == 2) {
        for (int t = 0; t < slots; ++t) {
            Rat v(1);
            for (int e = 0; e < degs[static_cast<size_t>(t)]; ++e) v *= gauge_point;
            sys.at(rows - 1, slots + t) = v;
        }
    }

    bool unique = false;
    std::vector<Rat> x = exact_solve(std::move(sys), std::move(rhs), &unique);
    ensure(unique, "rational_decompose: split is not pinned (degenerate sections)");

    RationalPoly p, q;
    p.c.assign(static_cast<size_t>(m) + 1, Rat(0));
    q.c.assign(static_cast<size_t>(m) + 1, Rat(0));
    for (int t = 0; t < slots; ++t) {
        p.c[static_cast<size_t>(degs[static_cast<size_t>(t)])] = x[static_cast<size_t>(t)];
        q.c[static_cast<size_t>(degs[static_cast<size_t>(t)])] = x[static_cast<size_t>(slots + t)];
    }
    p.trim();
    q.trim();
    return {p, q};
}

RationalPencil rational_structure_constants(int n, int m, const RationalPoly& mu1,
                                            const RationalPoly& mu2, const Rat& gauge_point) {
    require(n >= 2, "rational_structure_constants: n must be at least 2");
    require(m >= 2, "rational_structure_constants: order-1 scalar spaces hold no pencil");
    validate_rational_section(m, mu1, "mu1");
    validate_rational_section(m, mu2, "mu2");
    require(!FieldOps<Rat>::is_zero(exact_resultant(mu1, mu2)),
            "rational_structure_constants: sections share a root (resultant zero)");
    if (m == 2) {
        require(mu2.eval(gauge_point) == 0,
                "rational_structure_constants: gauge point must be a zero of mu2");
        require(mu1.eval(gauge_point) != 0,
                "rational_structure_constants: mu1 must not vanish at the gauge point");
    } else {
        require(mu1.degree() == m || mu2.degree() == m,
                "rational_structure_constants: the window model needs a section of full degree");
    }

    const int nb = n * n - 1;
    const int dim = nb * m;
    const std::vector<int> degs = rational_slot_degrees(m);

    // exact structure constants of the matrix basis
    const std::vector<ExactMat<Rat>> bas = sl_basis_matrices(n);
    std::vector<std::vector<std::vector<Rat>>> kappa(
        static_cast<size_t>(nb), std::vector<std::vector<Rat>>(static_cast<size_t>(nb)));
    for (int e1 = 0; e1 < nb; ++e1)
        for (int e2 = 0; e2 < nb; ++e2) {
            ExactMat<Rat> comm = mat_mul(bas[static_cast<size_t>(e1)], bas[static_cast<size_t>(e2)]);
            ExactMat<Rat> ba = mat_mul(bas[static_cast<size_t>(e2)], bas[static_cast<size_t>(e1)]);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) comm.at(i, j) -= ba.at(i, j);
            kappa[static_cast<size_t>(e1)][static_cast<size_t>(e2)] = expand_traceless(comm, n);
        }

    // exact split of each reachable product monomial against the pencil
    std::map<int, std::pair<RationalPoly, RationalPoly>> monomial_split;
    for (int t1 : degs)
        for (int t2 : degs) {
            const int d = t1 + t2;
            if (monomial_split.count(d)) continue;
            RationalPoly zd;
            zd.c.assign(static_cast<size_t>(d) + 1, Rat(0));
            zd.c[static_cast<size_t>(d)] = 1;
            monomial_split[d] = rational_decompose(m, mu1, mu2, zd, gauge_point);
        }

    RationalPencil out{n, m, mu1, mu2, gauge_point, degs, ExactLie<Rat>(dim), ExactLie<Rat>(dim)};
    auto split_pair = [&](int i, int j) {
        const int e1 = i / m, t1 = i % m, e2 = j / m, t2 = j % m;
        const int d = degs[static_cast<size_t>(t1)] + degs[static_cast<size_t>(t2)];
        const auto& pq = monomial_split.at(d);
        std::vector<Rat> p(static_cast<size_t>(dim), Rat(0)), q(static_cast<size_t>(dim), Rat(0));
        const std::vector<Rat>& kap = kappa[static_cast<size_t>(e1)][static_cast<size_t>(e2)];
        for (int f = 0; f < nb; ++f) {
            if (kap[static_cast<size_t>(f)] == 0) continue;
            for (int t = 0; t < m; ++t) {
                const int dg = degs[static_cast<size_t>(t)];
                p[static_cast<size_t>(out.index(f, t))] = kap[static_cast<size_t>(f)] * pq.first.coeff(dg);
                q[static_cast<size_t>(out.index(f, t))] = kap[static_cast<size_t>(f)] * pq.second.coeff(dg);
            }
        }
        return std::make_pair(std::move(p), std::move(q));
    };
    orchestrate_bracket_build(dim, split_pair, out.c1, out.c2);
    return out;
}

int TrigBasis::sector_index(int alpha, int beta) const {
    int a = alpha % n, b = beta % n;
    if (a < 0) a += n;
    if (b < 0) b += n;
    require(a != 0 || b != 0, "TrigBasis: the identity sector carries no basis element");
    for (size_t s = 0; s < sectors.size(); ++s)
        if (sectors[s] == std::make_pair(a, b)) return static_cast<int>(s);
    throw invalid_input("TrigBasis: sector not found");
}

std::vector<std::pair<int, Cyc>> TrigBasis::slot_function(int sector, int j) const {
    const auto [alpha, beta0] = sectors[static_cast<size_t>(sector)];
    if (beta0 == 0 && j == 0) {
        Cyc twist = Cyc::zeta_power(n, -alpha);
        if (m % 2) twist = -twist;
        return {{0, Cyc(1)}, {m * n, twist}};
    }
    return {{beta0 + j * n, Cyc(1)}};
}

TrigBasis trig_basis(int n, int m) {
    require(n >= 2, "trig_basis: n must be at least 2");
    require(m >= 1, "trig_basis: m must be positive");
    TrigBasis out;
    out.n = n;
    out.m = m;
    for (int alpha = 0; alpha < n; ++alpha)
        for (int beta0 = 0; beta0 < n; ++beta0) {
            if (alpha == 0 && beta0 == 0) continue;
            out.sectors.emplace_back(alpha, beta0);
        }
    return out;
}

std::pair<int, std::vector<Cyc>> trig_commutator(const TrigBasis& basis, int i, int j) {
    const int n = basis.n, m = basis.m;
    const int s1 = i / m, j1 = i % m, s2 = j / m, j2 = j % m;
    const auto [a1, b1] = basis.sectors[static_cast<size_t>(s1)];
    const auto [a2, b2] = basis.sectors[static_cast<size_t>(s2)];

    // t_{a1 b1} t_{a2 b2} = zeta^{a2 b1} t_{a1+a2, b1+b2}
    const Cyc phase = Cyc::zeta_power(n, static_cast<long>(a2) * b1) -
                      Cyc::zeta_power(n, static_cast<long>(a1) * b2);
    const int ta = (a1 + a2) % n, tb = (b1 + b2) % n;
    if (ta == 0 && tb == 0) {
        ensure(phase.is_zero(), "trig_commutator: identity sector received a nonzero product");
        return {-1, {}};
    }
    const int sec = basis.sector_index(ta, tb);

    std::vector<Cyc> raw(static_cast<size_t>(2 * m) + 1);
    for (const auto& [e1, c1] : basis.slot_function(s1, j1))
        for (const auto& [e2, c2] : basis.slot_function(s2, j2)) {
            const int e = e1 + e2;
            ensure((e - tb) % n == 0, "trig_commutator: exponent leaves the sector");
            const int jj = (e - tb) / n;
            ensure(jj >= 0 && jj <= 2 * m, "trig_commutator: exponent leaves the order-2m window");
            raw[static_cast<size_t>(jj)] += c1 * c2 * phase;
        }

    // boundary tie of the order-2m target space
    if (tb == 0) {
        const Cyc twist2 = Cyc::zeta_power(n, -ta);
        ensure(raw[static_cast<size_t>(2 * m)] == twist2 * raw[0],
               "trig_commutator: commutator violates the order-2m boundary tie");
    } else {
        ensure(raw[static_cast<size_t>(2 * m)].is_zero(),
               "trig_commutator: stray top exponent outside a tied sector");
    }
    raw.pop_back();
    return {sec, std::move(raw)};
}

bool trig_graded_closure(const TrigBasis& basis) {
    try {
        for (int i = 0; i < basis.dim(); ++i)
            for (int j = i + 1; j < basis.dim(); ++j) trig_commutator(basis, i, j);
    } catch (const numeric_failure&) {
        return false;
    }
    return true;
}

TrigPencil trig_structure_constants(int n, int m, const TrigPoly& mu1, const TrigPoly& mu2) {
    require(m >= 2, "trig_structure_constants: order-1 scalar spaces hold no pencil");
    validate_trig_section(n, m, mu1, "mu1");
    validate_trig_section(n, m, mu2, "mu2");
    {
        TrigPoly f = strip_units(mu1), g = strip_units(mu2);
        const bool both_const = f.degree() == 0 && g.degree() == 0;
        require(both_const || !FieldOps<Cyc>::is_zero(exact_resultant(f, g)),
                "trig_structure_constants: sections share a zero away from w = 0");
    }

    TrigBasis basis = trig_basis(n, m);
    const int dim = basis.dim();

    // per-sector split system: columns mu1 * slot_0..m-1, mu2 * slot_0..m-1 in
    // the 2m free coordinates of the order-2m sector space
    std::vector<ExactMat<Cyc>> sys;
    for (size_t s = 0; s < basis.sectors.size(); ++s) {
        const auto [alpha, beta0] = basis.sectors[s];
        ExactMat<Cyc> ext(2 * m + 1, 2 * m);
        for (int half = 0; half < 2; ++half) {
            const TrigPoly& mu = half == 0 ? mu1 : mu2;
            for (int t = 0; t < m; ++t)
                for (const auto& [e_src, c_src] : basis.slot_function(static_cast<int>(s), t))
                    for (int r = 0; r <= m; ++r) {
                        if (FieldOps<Cyc>::is_zero(mu.coeff(r))) continue;
                        const int e = e_src + r * n;
                        const int jj = (e - beta0) / n;
                        ensure((e - beta0) % n == 0 && jj >= 0 && jj <= 2 * m,
                               "trig_structure_constants: section product leaves the sector window");
                        ext.at(jj, half * m + t) += mu.coeff(r) * c_src;
                    }
        }
        // the dropped top row must be the tie image of row zero (or vanish)
        for (int col = 0; col < 2 * m; ++col) {
            if (beta0 == 0) {
                const Cyc twist2 = Cyc::zeta_power(n, -alpha);
                ensure(ext.at(2 * m, col) == twist2 * ext.at(0, col),
                       "trig_structure_constants: section product violates the boundary tie");
            } else {
                ensure(ext.at(2 * m, col).is_zero(),
                       "trig_structure_constants: stray top exponent outside a tied sector");
            }
        }
        ExactMat<Cyc> free_rows(2 * m, 2 * m);
        for (int r = 0; r < 2 * m; ++r)
            for (int col = 0; col < 2 * m; ++col) free_rows.at(r, col) = ext.at(r, col);
        sys.push_back(std::move(free_rows));
    }

    TrigPencil out{basis, mu1, mu2, ExactLie<Cyc>(dim), ExactLie<Cyc>(dim)};
    auto split_pair = [&](int i, int j) {
        std::vector<Cyc> p(static_cast<size_t>(dim)), q(static_cast<size_t>(dim));
        auto [sec, raw] = trig_commutator(basis, i, j);
        if (sec >= 0 && !all_zero(raw)) {
            bool unique = false;
            std::vector<Cyc> x = exact_solve(sys[static_cast<size_t>(sec)], raw, &unique);
            ensure(unique, "trig_structure_constants: sector split is not unique");
            for (int t = 0; t < m; ++t) {
                p[static_cast<size_t>(basis.index(sec, t))] = x[static_cast<size_t>(t)];
                q[static_cast<size_t>(basis.index(sec, t))] = x[static_cast<size_t>(m + t)];
            }
        }
        return std::make_pair(std::move(p), std::move(q));
    };
    orchestrate_bracket_build(dim, split_pair, out.c1, out.c2);
    return out;
}

template <class K>
std::vector<std::vector<K>> exact_quadratic_casimirs(const ExactLie<K>& c1, const ExactLie<K>& c2) {
    const int dim = c1.dim();
    require(c2.dim() == dim, "exact_quadratic_casimirs: dimension mismatch");
    const int nq = dim * (dim + 1) / 2;
    auto up = [dim](int i, int j) {  // index into the upper triangle, i <= j
        return i * dim - i * (i - 1) / 2 + (j - i);
    };
    ExactMat<K> sys(2 * dim * nq, nq);
    int block = 0;
    for (const ExactLie<K>* c : {&c1, &c2}) {
        for (int k = 0; k < dim; ++k) {
            const int row0 = block * dim * nq + k * nq;
            for (int p = 0; p < dim; ++p)
                for (int q = p; q < dim; ++q) {
                    const int col = up(p, q);
                    for (int l = 0; l < dim; ++l) {
                        // {x_p x_q, x_k} = x_p {x_q, x_k} + x_q {x_p, x_k}
                        if (!FieldOps<K>::is_zero(c->at(q, k, l)))
                            sys.at(row0 + up(std::min(p, l), std::max(p, l)), col) += c->at(q, k, l);
                        if (!FieldOps<K>::is_zero(c->at(p, k, l)))
                            sys.at(row0 + up(std::min(q, l), std::max(q, l)), col) += c->at(p, k, l);
                    }
                }
        }
        ++block;
    }
    return exact_nullspace(std::move(sys));
}

template <class K>
bool exact_quadratic_central(const std::vector<K>& sym_upper, const ExactLie<K>& c) {
    const int dim = c.dim();
    require(static_cast<int>(sym_upper.size()) == dim * (dim + 1) / 2,
            "exact_quadratic_central: wrong coefficient count");
    // full symmetric matrix S~ from the upper triangle, then Sym(S~ C_k) == 0;
    // off-diagonal monomial coefficients split in half across the two mirror slots
    const K half = FieldOps<K>::inverse(K(2));
    ExactMat<K> s(dim, dim);
    {
        size_t t = 0;
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j) {
                const K v = (i == j) ? sym_upper[t] : sym_upper[t] * half;
                s.at(i, j) = v;
                s.at(j, i) = v;
                ++t;
            }
    }
    for (int k = 0; k < dim; ++k) {
        for (int i = 0; i < dim; ++i)
            for (int l = i; l < dim; ++l) {
                K acc = FieldOps<K>::zero();
                for (int j = 0; j < dim; ++j) {
                    if (!FieldOps<K>::is_zero(s.at(i, j))) acc += s.at(i, j) * c.at(j, k, l);
                    if (!FieldOps<K>::is_zero(s.at(l, j))) acc += s.at(l, j) * c.at(j, k, i);
                }
                if (!FieldOps<K>::is_zero(acc)) return false;
            }
    }
    return true;
}

namespace {

// shared tail: fold the exact ledger books and the numeric tower into the report
template <class K>
void merge_ledgers(CrossValidationReport& rep, const PencilData& elliptic,
                   const ExactCasimirLedger<K>& exact_led, std::uint64_t seed) {
    for (const ExactLedgerRow& row : exact_led.rows)
        rep.exact_degrees.insert(rep.exact_degrees.end(), row.degrees.begin(), row.degrees.end());
    std::sort(rep.exact_degrees.begin(), rep.exact_degrees.end());
    rep.exact_gz_sum = exact_led.gz_sum;
    rep.exact_chains = exact_led.chains_ok;
    rep.exact_template = exact_led.template_match;

    DegreeLedger led = degree_ledger(elliptic, seed);
    for (const DegreeLedgerRow& row : led.rows)
        rep.elliptic_degrees.insert(rep.elliptic_degrees.end(), row.effective_degrees.begin(),
                                    row.effective_degrees.end());
    std::sort(rep.elliptic_degrees.begin(), rep.elliptic_degrees.end());
    rep.elliptic_gz_sum = led.gz_sum;

    rep.degrees_match = (rep.exact_degrees == rep.elliptic_degrees);
    rep.consistent = rep.dims_match && rep.exact_jacobi1 && rep.exact_jacobi2 && rep.exact_compat &&
                     rep.degrees_match && rep.exact_chains && rep.exact_template &&
                     rep.exact_gz_sum == rep.expected && rep.elliptic_gz_sum == rep.expected &&
                     led.consistent;
}

}  // namespace

CrossValidationReport cross_validate(const PencilData& elliptic, const RationalPencil& exact_pencil,
                                     std::uint64_t seed) {
    CrossValidationReport rep;
    rep.elliptic_dim = elliptic.basis.dim();
    rep.exact_dim = exact_pencil.dim();
    rep.dims_match = (rep.elliptic_dim == rep.exact_dim);
    rep.expected = static_cast<long>(exact_pencil.m) *
                   (static_cast<long>(exact_pencil.n) * exact_pencil.n - 1);

    rep.exact_jacobi1 = exact_jacobi(exact_pencil.c1);
    rep.exact_jacobi2 = exact_jacobi(exact_pencil.c2);
    rep.exact_compat = exact_compatible(exact_pencil.c1, exact_pencil.c2);

    merge_ledgers(rep, elliptic, exact_casimir_ledger(exact_pencil), seed);
    return rep;
}

CrossValidationReport cross_validate(const PencilData& elliptic, const TrigPencil& exact_pencil,
                                     std::uint64_t seed) {
    CrossValidationReport rep;
    rep.elliptic_dim = elliptic.basis.dim();
    rep.exact_dim = exact_pencil.dim();
    rep.dims_match = (rep.elliptic_dim == rep.exact_dim);
    rep.expected = static_cast<long>(exact_pencil.basis.m) *
                   (static_cast<long>(exact_pencil.basis.n) * exact_pencil.basis.n - 1);

    rep.exact_jacobi1 = exact_jacobi(exact_pencil.c1);
    rep.exact_jacobi2 = exact_jacobi(exact_pencil.c2);
    rep.exact_compat = exact_compatible(exact_pencil.c1, exact_pencil.c2);

    merge_ledgers(rep, elliptic, exact_casimir_ledger(exact_pencil), seed);
    return rep;
}

template bool exact_antisymmetric<Rat>(const ExactLie<Rat>&);
template bool exact_antisymmetric<Cyc>(const ExactLie<Cyc>&);
template bool exact_jacobi<Rat>(const ExactLie<Rat>&);
template bool exact_jacobi<Cyc>(const ExactLie<Cyc>&);
template bool exact_compatible<Rat>(const ExactLie<Rat>&, const ExactLie<Rat>&);
template bool exact_compatible<Cyc>(const ExactLie<Cyc>&, const ExactLie<Cyc>&);
template ExactLie<Rat> exact_pencil_member<Rat>(const ExactLie<Rat>&, const ExactLie<Rat>&,
                                                const Rat&);
template ExactLie<Cyc> exact_pencil_member<Cyc>(const ExactLie<Cyc>&, const ExactLie<Cyc>&,
                                                const Cyc&);
template std::vector<std::vector<Rat>> exact_quadratic_casimirs<Rat>(const ExactLie<Rat>&,
                                                                     const ExactLie<Rat>&);
template std::vector<std::vector<Cyc>> exact_quadratic_casimirs<Cyc>(const ExactLie<Cyc>&,
                                                                     const ExactLie<Cyc>&);
template bool exact_quadratic_central<Rat>(const std::vector<Rat>&, const ExactLie<Rat>&);
template bool exact_quadratic_central<Cyc>(const std::vector<Cyc>&, const ExactLie<Cyc>&);

}  // namespace ellpencil
