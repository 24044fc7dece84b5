#include "ellpencil/exact_casimir.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "ellpencil/common.hpp"

namespace ellpencil {

namespace {

size_t simplex_size(int dim, int deg) {
    const size_t d = static_cast<size_t>(dim);
    if (deg == 1) return d;
    if (deg == 2) return d * (d + 1) / 2;
    if (deg == 3) return d * (d + 1) * (d + 2) / 6;
    throw invalid_input("ExactForm: degree must be 1, 2 or 3");
}

// visit the nonzero monomial coefficients in simplex order
template <class K, class F>
void for_each_monomial(const ExactForm<K>& f, F&& fn) {
    size_t t = 0;
    std::array<int, 3> mono{};
    if (f.deg == 1) {
        for (int i = 0; i < f.dim; ++i, ++t)
            if (!FieldOps<K>::is_zero(f.c[t])) {
                mono = {i, 0, 0};
                fn(mono, f.c[t]);
            }
    } else if (f.deg == 2) {
        for (int i = 0; i < f.dim; ++i)
            for (int j = i; j < f.dim; ++j, ++t)
                if (!FieldOps<K>::is_zero(f.c[t])) {
                    mono = {i, j, 0};
                    fn(mono, f.c[t]);
                }
    } else {
        for (int i = 0; i < f.dim; ++i)
            for (int j = i; j < f.dim; ++j)
                for (int k = j; k < f.dim; ++k, ++t)
                    if (!FieldOps<K>::is_zero(f.c[t])) {
                        mono = {i, j, k};
                        fn(mono, f.c[t]);
                    }
    }
}

}  // namespace

template <class K>
ExactForm<K>::ExactForm(int dimension, int degree)
    : dim(dimension), deg(degree), c(simplex_size(dimension, degree), FieldOps<K>::zero()) {
    require(dimension > 0, "ExactForm: dimension must be positive");
}

template <class K>
size_t ExactForm<K>::index(const int* mono) const {
    const int i = mono[0];
    if (deg == 1) return static_cast<size_t>(i);
    const int j = mono[1];
    if (deg == 2) return static_cast<size_t>(i * dim - i * (i - 1) / 2 + (j - i));
    const int k = mono[2];
    const int d = dim - i, a = j - i, b = k - i;
    const int off = dim * (dim + 1) * (dim + 2) / 6 - d * (d + 1) * (d + 2) / 6;
    return static_cast<size_t>(off + a * d - a * (a - 1) / 2 + (b - a));
}

template <class K>
bool ExactForm<K>::is_zero() const {
    for (const K& v : c)
        if (!FieldOps<K>::is_zero(v)) return false;
    return true;
}

template <class K>
ExactForm<K>& ExactForm<K>::operator+=(const ExactForm& o) {
    require(dim == o.dim && deg == o.deg, "ExactForm: shape mismatch");
    for (size_t t = 0; t < c.size(); ++t) c[t] += o.c[t];
    return *this;
}

template <class K>
ExactForm<K>& ExactForm<K>::operator-=(const ExactForm& o) {
    require(dim == o.dim && deg == o.deg, "ExactForm: shape mismatch");
    for (size_t t = 0; t < c.size(); ++t) c[t] -= o.c[t];
    return *this;
}

template <class K>
ExactForm<K>& ExactForm<K>::operator*=(const K& s) {
    for (K& v : c) v = v * s;
    return *this;
}

template <class K>
ExactForm<K> form_mul(const ExactForm<K>& a, const ExactForm<K>& b) {
    require(a.dim == b.dim, "form_mul: dimension mismatch");
    require(a.deg + b.deg <= 3, "form_mul: product degree exceeds 3");
    ExactForm<K> out(a.dim, a.deg + b.deg);
    for_each_monomial(a, [&](const std::array<int, 3>& ma, const K& va) {
        for_each_monomial(b, [&](const std::array<int, 3>& mb, const K& vb) {
            std::array<int, 3> m{};
            int t = 0;
            for (int r = 0; r < a.deg; ++r) m[t++] = ma[r];
            for (int r = 0; r < b.deg; ++r) m[t++] = mb[r];
            std::sort(m.begin(), m.begin() + t);
            out.c[out.index(m.data())] += va * vb;
        });
    });
    return out;
}

template <class K>
ExactForm<K> exact_poisson_coordinate(const ExactForm<K>& f, int a, const ExactLie<K>& c) {
    require(f.dim == c.dim(), "exact_poisson_coordinate: dimension mismatch");
    require(a >= 0 && a < f.dim, "exact_poisson_coordinate: coordinate out of range");
    ExactForm<K> out(f.dim, f.deg);
    for_each_monomial(f, [&](const std::array<int, 3>& mono, const K& v) {
        for (int r = 0; r < f.deg; ++r) {
            const int i = mono[r];
            for (int k = 0; k < f.dim; ++k) {
                const K& s = c.at(i, a, k);
                if (FieldOps<K>::is_zero(s)) continue;
                std::array<int, 3> m = mono;
                m[r] = k;
                std::sort(m.begin(), m.begin() + f.deg);
                out.c[out.index(m.data())] += v * s;
            }
        }
    });
    return out;
}

template <class K>
bool exact_is_casimir(const ExactForm<K>& f, const ExactLie<K>& c) {
    for (int a = 0; a < c.dim(); ++a)
        if (!exact_poisson_coordinate(f, a, c).is_zero()) return false;
    return true;
}

template <class K>
int ExactChainFamily<K>::degree() const {
    int d = static_cast<int>(coeff.size()) - 1;
    while (d >= 0 && coeff[static_cast<size_t>(d)].is_zero()) --d;
    return d;
}

template <class K>
void ExactChainFamily<K>::trim() {
    while (!coeff.empty() && coeff.back().is_zero()) coeff.pop_back();
}

template <class K>
bool exact_chain_ok(const ExactChainFamily<K>& fam, const ExactLie<K>& c1, const ExactLie<K>& c2) {
    const int d = fam.degree();
    if (d < 0) return false;
    for (size_t j = 0; j + 1 < fam.coeff.size(); ++j)
        if (fam.coeff[j].dim != fam.coeff.back().dim || fam.coeff[j].deg != fam.coeff.back().deg)
            return false;
    if (fam.coeff[0].dim != c1.dim() || c1.dim() != c2.dim()) return false;
    for (int a = 0; a < c1.dim(); ++a) {
        for (int j = 0; j <= d + 1; ++j) {
            ExactForm<K> cond(fam.coeff[0].dim, fam.coeff[0].deg);
            if (j <= d) cond += exact_poisson_coordinate(fam.coeff[static_cast<size_t>(j)], a, c1);
            if (j >= 1) cond += exact_poisson_coordinate(fam.coeff[static_cast<size_t>(j - 1)], a, c2);
            if (!cond.is_zero()) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// kernel route: chain spaces by exact nullspace, new generators by span growth

namespace {

// incremental reduced row span over K (rows kept sorted by pivot column)
template <class K>
class RowBasis {
  public:
    bool insert(std::vector<K> v) {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const K f = v[pivot_[r]];
            if (FieldOps<K>::is_zero(f)) continue;
            const std::vector<K>& row = rows_[r];
            for (size_t c = pivot_[r]; c < v.size(); ++c) v[c] -= f * row[c];
        }
        size_t p = 0;
        while (p < v.size() && FieldOps<K>::is_zero(v[p])) ++p;
        if (p == v.size()) return false;
        const K inv = FieldOps<K>::inverse(v[p]);
        for (size_t c = p; c < v.size(); ++c) v[c] = v[c] * inv;
        size_t pos = 0;
        while (pos < pivot_.size() && pivot_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
        pivot_.insert(pivot_.begin() + static_cast<long>(pos), p);
        return true;
    }

  private:
    std::vector<std::vector<K>> rows_;
    std::vector<size_t> pivot_;
};

// columns: coefficient vector of {monomial_q, x_a} for each quadratic monomial
template <class K>
std::vector<ExactMat<K>> poisson_columns(const ExactLie<K>& c) {
    const int dim = c.dim();
    const int nq = static_cast<int>(simplex_size(dim, 2));
    std::vector<ExactMat<K>> out(static_cast<size_t>(dim), ExactMat<K>(nq, nq));
    for (int q = 0; q < nq; ++q) {
        ExactForm<K> e(dim, 2);
        e.c[static_cast<size_t>(q)] = K(1);
        for (int a = 0; a < dim; ++a) {
            const ExactForm<K> pb = exact_poisson_coordinate(e, a, c);
            for (int r = 0; r < nq; ++r)
                if (!FieldOps<K>::is_zero(pb.c[static_cast<size_t>(r)]))
                    out[static_cast<size_t>(a)].at(r, q) = pb.c[static_cast<size_t>(r)];
        }
    }
    return out;
}

}  // namespace

template <class K>
std::vector<int> exact_quadratic_generator_degrees(const ExactLie<K>& c1, const ExactLie<K>& c2,
                                                   int dmax,
                                                   std::vector<ExactChainFamily<K>>* reps) {
    require(dmax >= 0, "exact_quadratic_generator_degrees: dmax must be non-negative");
    require(c1.dim() == c2.dim(), "exact_quadratic_generator_degrees: dimension mismatch");
    const int dim = c1.dim();
    const int nq = static_cast<int>(simplex_size(dim, 2));
    const auto p1 = poisson_columns(c1);
    const auto p2 = poisson_columns(c2);
    if (reps) reps->clear();
    std::vector<int> found;
    std::vector<std::vector<K>> prev;  // nullspace basis one degree down
    for (int d = 0; d <= dmax; ++d) {
        const int blocks = d + 1;
        ExactMat<K> sys((d + 2) * dim * nq, blocks * nq);
        for (int j = 0; j <= d + 1; ++j)
            for (int a = 0; a < dim; ++a) {
                const int r0 = (j * dim + a) * nq;
                for (int r = 0; r < nq; ++r)
                    for (int cc = 0; cc < nq; ++cc) {
                        if (j <= d) {
                            const K& v = p1[static_cast<size_t>(a)].at(r, cc);
                            if (!FieldOps<K>::is_zero(v)) sys.at(r0 + r, j * nq + cc) = v;
                        }
                        if (j >= 1) {
                            const K& v = p2[static_cast<size_t>(a)].at(r, cc);
                            if (!FieldOps<K>::is_zero(v)) sys.at(r0 + r, (j - 1) * nq + cc) += v;
                        }
                    }
            }
        std::vector<std::vector<K>> null = exact_nullspace(sys);
        RowBasis<K> span;
        const size_t width = static_cast<size_t>(blocks) * nq;
        for (const auto& v : prev) {
            std::vector<K> pad(width, FieldOps<K>::zero());
            std::copy(v.begin(), v.end(), pad.begin());  // append a zero top block
            span.insert(pad);
            std::vector<K> ups(width, FieldOps<K>::zero());
            std::copy(v.begin(), v.end(), ups.begin() + nq);  // multiply by u
            span.insert(std::move(ups));
        }
        for (const auto& v : null) {
            if (!span.insert(v)) continue;
            found.push_back(d);
            if (reps) {
                ExactChainFamily<K> fam;
                for (int j = 0; j < blocks; ++j) {
                    ExactForm<K> f(dim, 2);
                    std::copy(v.begin() + static_cast<long>(j) * nq,
                              v.begin() + static_cast<long>(j + 1) * nq, f.c.begin());
                    fam.coeff.push_back(std::move(f));
                }
                fam.trim();
                reps->push_back(std::move(fam));
            }
        }
        prev = std::move(null);
    }
    return found;
}

// ---------------------------------------------------------------------------
// trace menu route (rational pencils)

namespace {

using UPoly = RationalPoly;
using UForms = std::vector<ExactForm<Rat>>;  // coefficient of u^j
using WUForms = std::vector<UForms>;         // coefficient of w^e

UPoly upoly_const(const Rat& v) { return UPoly({v}); }

UPoly upoly_scale(const UPoly& p, const Rat& s) {
    std::vector<Rat> c = p.c;
    for (Rat& v : c) v = v * s;
    return UPoly(std::move(c));
}

UPoly upoly_compose(const UPoly& f, const UPoly& x) {
    UPoly acc;
    for (int i = f.degree(); i >= 0; --i) acc = acc * x + upoly_const(f.coeff(i));
    return acc;
}

void uf_ensure(UForms& v, size_t size, int dim, int deg) {
    while (v.size() < size) v.emplace_back(dim, deg);
}

// dst += q(u) * src
void uf_add_scaled(UForms& dst, const UForms& src, const UPoly& q, int dim, int deg) {
    if (q.degree() < 0) return;
    size_t top = 0;
    for (size_t j = 0; j < src.size(); ++j)
        if (!src[j].is_zero()) top = j + 1;
    if (top == 0) return;
    uf_ensure(dst, top + static_cast<size_t>(q.degree()), dim, deg);
    for (size_t j = 0; j < top; ++j) {
        if (src[j].is_zero()) continue;
        for (int t = 0; t <= q.degree(); ++t) {
            if (FieldOps<Rat>::is_zero(q.coeff(t))) continue;
            ExactForm<Rat> s = src[j];
            s *= q.coeff(t);
            dst[j + static_cast<size_t>(t)] += s;
        }
    }
}

void wu_accum(WUForms& dst, const WUForms& src, int dim, int deg) {
    if (dst.size() < src.size()) dst.resize(src.size());
    for (size_t e = 0; e < src.size(); ++e)
        uf_add_scaled(dst[e], src[e], upoly_const(Rat(1)), dim, deg);
}

WUForms wu_mul(const WUForms& a, const WUForms& b, int dim) {
    WUForms out;
    if (a.empty() || b.empty()) return out;
    out.resize(a.size() + b.size() - 1);
    for (size_t ea = 0; ea < a.size(); ++ea)
        for (size_t eb = 0; eb < b.size(); ++eb)
            for (size_t ja = 0; ja < a[ea].size(); ++ja) {
                if (a[ea][ja].is_zero()) continue;
                for (size_t jb = 0; jb < b[eb].size(); ++jb) {
                    if (b[eb][jb].is_zero()) continue;
                    ExactForm<Rat> p = form_mul(a[ea][ja], b[eb][jb]);
                    UForms& slot = out[ea + eb];
                    uf_ensure(slot, ja + jb + 1, dim, p.deg);
                    slot[ja + jb] += p;
                }
            }
    return out;
}

// in-place reduction modulo the monic relation w^mhat + sum_e rc[e] w^e
void wu_reduce(WUForms& f, const std::vector<UPoly>& rc, int mhat, int dim, int deg) {
    for (int w = static_cast<int>(f.size()) - 1; w >= mhat; --w) {
        UForms top = std::move(f[static_cast<size_t>(w)]);
        f.resize(static_cast<size_t>(w));
        for (int e = 0; e < mhat; ++e) {
            const UPoly neg = upoly_scale(rc[static_cast<size_t>(e)], Rat(-1));
            uf_add_scaled(f[static_cast<size_t>(w - mhat + e)], top, neg, dim, deg);
        }
    }
}

// n x n matrix of the dual-frame linear forms against the relation tails
std::vector<WUForms> menu_matrix(int n, int mhat, int dim, const std::vector<UPoly>& rc,
                                 const std::vector<ExactForm<Rat>>& xt,
                                 const std::vector<ExactMat<Rat>>& bhat) {
    const int ndir = n * n - 1;
    std::vector<WUForms> ent(static_cast<size_t>(n) * n);
    for (int a = 0; a < ndir; ++a)
        for (int s = 0; s < mhat; ++s) {
            const ExactForm<Rat>& lin = xt[static_cast<size_t>(a) * mhat + s];
            for (int k = s + 1; k <= mhat; ++k) {
                const UPoly& q = rc[static_cast<size_t>(k)];  // tail coefficient of w^(k-1-s)
                const int e = k - 1 - s;
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) {
                        const Rat& bv = bhat[static_cast<size_t>(a)].at(r, c);
                        if (FieldOps<Rat>::is_zero(bv)) continue;
                        WUForms& dst = ent[static_cast<size_t>(r) * n + c];
                        if (dst.size() <= static_cast<size_t>(e))
                            dst.resize(static_cast<size_t>(e) + 1);
                        ExactForm<Rat> scaled = lin;
                        scaled *= bv;
                        UForms scaled_u(1, scaled);
                        uf_add_scaled(dst[static_cast<size_t>(e)], scaled_u, q, dim, 1);
                    }
            }
        }
    return ent;
}

// tr(M^p) reduced modulo the relation; entries of the result index w^e, u^j
WUForms menu_trace(const std::vector<WUForms>& ent, int n, int p, const std::vector<UPoly>& rc,
                   int mhat, int dim) {
    WUForms tr;
    if (p == 2) {
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                wu_accum(tr,
                         wu_mul(ent[static_cast<size_t>(r) * n + c],
                                ent[static_cast<size_t>(c) * n + r], dim),
                         dim, 2);
    } else {
        std::vector<WUForms> sq(static_cast<size_t>(n) * n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                for (int t = 0; t < n; ++t)
                    wu_accum(sq[static_cast<size_t>(r) * n + c],
                             wu_mul(ent[static_cast<size_t>(r) * n + t],
                                    ent[static_cast<size_t>(t) * n + c], dim),
                             dim, 2);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                wu_accum(tr,
                         wu_mul(sq[static_cast<size_t>(r) * n + c],
                                ent[static_cast<size_t>(c) * n + r], dim),
                         dim, 3);
    }
    wu_reduce(tr, rc, mhat, dim, p);
    tr.resize(static_cast<size_t>(mhat));
    return tr;
}

// coefficient extraction: top w-coefficient of g(w, u) * menu modulo the relation
UForms wu_extract(const WUForms& menu, const std::vector<UPoly>& g, const std::vector<UPoly>& rc,
                  int mhat, int dim, int deg) {
    WUForms prod;
    if (!g.empty() && !menu.empty()) {
        prod.resize(menu.size() + g.size() - 1);
        for (size_t e = 0; e < menu.size(); ++e)
            for (size_t f = 0; f < g.size(); ++f)
                uf_add_scaled(prod[e + f], menu[e], g[f], dim, deg);
    }
    wu_reduce(prod, rc, mhat, dim, deg);
    if (prod.size() < static_cast<size_t>(mhat)) return {};
    return prod[static_cast<size_t>(mhat) - 1];
}

// evaluation at a rational relation root (gapped model)
UForms wu_eval(const WUForms& menu, const UPoly& zeta, int dim, int deg) {
    UForms acc;
    for (int e = static_cast<int>(menu.size()) - 1; e >= 0; --e) {
        UForms next;
        uf_add_scaled(next, acc, zeta, dim, deg);
        uf_add_scaled(next, menu[static_cast<size_t>(e)], upoly_const(Rat(1)), dim, deg);
        acc = std::move(next);
    }
    return acc;
}

// symmetric top: contraction with the power sums of the relation roots
UForms newton_top(const WUForms& menu, const std::vector<UPoly>& rc, int mhat, int dim, int deg) {
    std::vector<UPoly> esym(static_cast<size_t>(mhat) + 1);
    for (int i = 1; i <= mhat; ++i)
        esym[static_cast<size_t>(i)] =
            upoly_scale(rc[static_cast<size_t>(mhat - i)], Rat(i % 2 == 1 ? -1 : 1));
    std::vector<UPoly> ps(static_cast<size_t>(mhat));
    ps[0] = upoly_const(Rat(mhat));
    for (int k = 1; k < mhat; ++k) {
        UPoly acc = upoly_scale(esym[static_cast<size_t>(k)], Rat(k % 2 == 1 ? k : -k));
        for (int i = 1; i < k; ++i) {
            const UPoly t = esym[static_cast<size_t>(i)] * ps[static_cast<size_t>(k - i)];
            acc = (i % 2 == 1) ? acc + t : acc - t;
        }
        ps[static_cast<size_t>(k)] = acc;
    }
    UForms out;
    for (size_t e = 0; e < menu.size() && e < ps.size(); ++e)
        uf_add_scaled(out, menu[e], ps[e], dim, deg);
    return out;
}

ExactChainFamily<Rat> to_family(UForms uf) {
    ExactChainFamily<Rat> fam;
    fam.coeff = std::move(uf);
    fam.trim();
    return fam;
}

std::vector<int> template_row(int p, int m) {
    std::vector<int> v;
    v.push_back(p - 2);
    for (int i = 0; i < m - 2; ++i) v.push_back(p - 1);
    v.push_back(p);
    return v;
}

}  // namespace

ExactCasimirLedger<Rat> exact_casimir_ledger(const RationalPencil& pen) {
    const int n = pen.n, m = pen.m, dim = pen.dim(), ndir = n * n - 1;
    require(n >= 2 && n <= 3, "exact Casimir ledger: matrix size must be 2 or 3");
    require(m >= 2, "exact Casimir ledger: order must be at least 2");

    // orient the pencil so the unit section sits below full degree
    bool flip = false;
    RationalPoly nu1 = pen.mu1, nu2 = pen.mu2;
    if (nu1.degree() == m) {
        require(nu2.degree() < m,
                "exact Casimir ledger: needs one section below full degree; re-frame the pencil");
        std::swap(nu1, nu2);
        flip = true;
    }
    require(nu2.degree() == m, "exact Casimir ledger: needs one full-degree section");

    const bool gapped = (m == 2);
    const int mhat = m;
    std::vector<UPoly> rc(static_cast<size_t>(mhat) + 1);
    std::vector<ExactForm<Rat>> xt;  // dual-frame coordinate functionals per (direction, slot)
    xt.reserve(static_cast<size_t>(ndir) * mhat);
    UPoly zeta, nu2_at_root;
    if (gapped) {
        require(nu1.degree() == 0,
                "exact Casimir ledger: the gapped model needs a constant unit section");
        const Rat a = nu1.coeff(0);
        const RationalPoly z4({Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)});
        const auto split = rational_decompose(2, nu1, nu2, z4, pen.gauge_point);
        const UPoly sigma0({split.first.coeff(0), split.second.coeff(0)});
        const UPoly sigma1({split.first.coeff(2), split.second.coeff(2)});
        rc[0] = upoly_scale(sigma0, Rat(-1) / a);
        rc[1] = upoly_scale(sigma1, Rat(-1));
        rc[2] = upoly_const(Rat(1));
        // the section pair pins one rational root of the relation
        const Rat c1t = nu2.coeff(2);
        const UPoly theta({-nu2.coeff(0) / c1t, a / c1t});
        zeta = upoly_scale(theta, Rat(1) / a);
        nu2_at_root = upoly_compose(UPoly({nu2.coeff(0), nu2.coeff(2)}), theta);
        for (int a_dir = 0; a_dir < ndir; ++a_dir)
            for (int s = 0; s < mhat; ++s) {
                ExactForm<Rat> lin(dim, 1);
                lin.c[static_cast<size_t>(pen.index(a_dir, s))] = (s == 0) ? a : Rat(1);
                xt.push_back(std::move(lin));
            }
    } else {
        const Rat lambda = nu2.coeff(m);
        for (int e = 0; e < m; ++e)
            rc[static_cast<size_t>(e)] = UPoly({nu2.coeff(e) / lambda, -nu1.coeff(e) / lambda});
        rc[static_cast<size_t>(m)] = upoly_const(Rat(1));
        for (int a_dir = 0; a_dir < ndir; ++a_dir)
            for (int s = 0; s < mhat; ++s) {
                ExactForm<Rat> lin(dim, 1);
                lin.c[static_cast<size_t>(pen.index(a_dir, s))] = Rat(1);
                xt.push_back(std::move(lin));
            }
    }

    // trace-dual matrices of the direction basis
    const auto bas = sl_basis_matrices(n);
    ExactMat<Rat> gram(ndir, ndir);
    for (int e = 0; e < ndir; ++e)
        for (int f = 0; f < ndir; ++f) {
            Rat tr(0);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    tr += bas[static_cast<size_t>(e)].at(r, c) * bas[static_cast<size_t>(f)].at(c, r);
            gram.at(e, f) = tr;
        }
    std::vector<ExactMat<Rat>> bhat(static_cast<size_t>(ndir), ExactMat<Rat>(n, n));
    for (int a = 0; a < ndir; ++a) {
        std::vector<Rat> rhs(static_cast<size_t>(ndir), Rat(0));
        rhs[static_cast<size_t>(a)] = Rat(1);
        const std::vector<Rat> co = exact_solve(gram, rhs);
        for (int f = 0; f < ndir; ++f)
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    bhat[static_cast<size_t>(a)].at(r, c) +=
                        co[static_cast<size_t>(f)] * bas[static_cast<size_t>(f)].at(r, c);
    }

    struct Booked {
        int p = 0;
        ExactChainFamily<Rat> fam;
        bool menu_frame = false;  // reversed when the pencil was re-oriented
    };
    std::vector<Booked> book;

    for (int p = 2; p <= n; ++p) {
        const auto ent = menu_matrix(n, mhat, dim, rc, xt, bhat);
        const WUForms menu = menu_trace(ent, n, p, rc, mhat, dim);
        if (p == 2) {
            if (gapped) {
                book.push_back({p, to_family(wu_eval(menu, zeta, dim, p)), true});
            } else {
                // the section image degenerates at p = 2; the bottom is the
                // parameter-free common quadratic
                for (auto& q : exact_quadratic_casimirs(pen.c1, pen.c2)) {
                    ExactForm<Rat> f(dim, 2);
                    f.c = std::move(q);
                    ExactChainFamily<Rat> fam;
                    fam.coeff.push_back(std::move(f));
                    book.push_back({p, std::move(fam), false});
                }
            }
        } else {
            if (gapped) {
                UForms val = wu_eval(menu, zeta, dim, p);
                UForms scaled;
                uf_add_scaled(scaled, val, nu2_at_root, dim, p);
                book.push_back({p, to_family(std::move(scaled)), true});
            } else {
                std::vector<UPoly> g;
                for (int e = 0; e <= nu2.degree(); ++e) g.push_back(upoly_const(nu2.coeff(e)));
                book.push_back({p, to_family(wu_extract(menu, g, rc, mhat, dim, p)), true});
            }
        }
        if (!gapped)
            for (int e = 0; e + 2 < m; ++e) {
                std::vector<UPoly> g(static_cast<size_t>(e) + 1);
                g[static_cast<size_t>(e)] = upoly_const(Rat(1));
                book.push_back({p, to_family(wu_extract(menu, g, rc, mhat, dim, p)), true});
            }
        book.push_back({p, to_family(newton_top(menu, rc, mhat, dim, p)), true});
    }

    // a family of the re-oriented pencil reverses into one of the original
    if (flip)
        for (auto& b : book)
            if (b.menu_frame) {
                b.fam.trim();
                std::reverse(b.fam.coeff.begin(), b.fam.coeff.end());
                b.fam.trim();
            }

    ExactCasimirLedger<Rat> led;
    led.chains_ok = true;
    led.template_match = true;
    for (int p = 2; p <= n; ++p) {
        ExactLedgerRow row;
        row.p = p;
        for (auto& b : book)
            if (b.p == p) row.degrees.push_back(b.fam.degree());
        std::sort(row.degrees.begin(), row.degrees.end());
        led.template_match = led.template_match && (row.degrees == template_row(p, m));
        led.rows.push_back(std::move(row));
    }
    for (auto& b : book) {
        led.chains_ok = led.chains_ok && exact_chain_ok(b.fam, pen.c1, pen.c2);
        led.gz_sum += 2L * b.fam.degree() + 1;
        led.families.push_back(std::move(b.fam));
    }
    if (n == 2) {
        led.kernel_checked = true;
        led.kernel_degrees = exact_quadratic_generator_degrees(pen.c1, pen.c2, 2);
        led.kernel_match = (led.kernel_degrees == led.rows[0].degrees);
    }
    return led;
}

ExactCasimirLedger<Cyc> exact_casimir_ledger(const TrigPencil& pen) {
    require(pen.basis.n == 2, "exact Casimir ledger: the trigonometric route needs matrix size 2");
    const int m = pen.basis.m;
    ExactCasimirLedger<Cyc> led;
    std::vector<ExactChainFamily<Cyc>> reps;
    led.kernel_degrees = exact_quadratic_generator_degrees(pen.c1, pen.c2, 2, &reps);
    led.kernel_checked = true;
    ExactLedgerRow row;
    row.p = 2;
    row.degrees = led.kernel_degrees;
    led.template_match = (row.degrees == template_row(2, m));
    led.rows.push_back(std::move(row));
    led.kernel_match = true;
    led.chains_ok = !reps.empty();
    for (auto& fam : reps) {
        led.chains_ok = led.chains_ok && exact_chain_ok(fam, pen.c1, pen.c2);
        led.gz_sum += 2L * fam.degree() + 1;
        led.families.push_back(std::move(fam));
    }
    return led;
}

// ---------------------------------------------------------------------------

template struct ExactForm<Rat>;
template struct ExactForm<Cyc>;
template ExactForm<Rat> form_mul(const ExactForm<Rat>&, const ExactForm<Rat>&);
template ExactForm<Cyc> form_mul(const ExactForm<Cyc>&, const ExactForm<Cyc>&);
template ExactForm<Rat> exact_poisson_coordinate(const ExactForm<Rat>&, int, const ExactLie<Rat>&);
template ExactForm<Cyc> exact_poisson_coordinate(const ExactForm<Cyc>&, int, const ExactLie<Cyc>&);
template bool exact_is_casimir(const ExactForm<Rat>&, const ExactLie<Rat>&);
template bool exact_is_casimir(const ExactForm<Cyc>&, const ExactLie<Cyc>&);
template struct ExactChainFamily<Rat>;
template struct ExactChainFamily<Cyc>;
template bool exact_chain_ok(const ExactChainFamily<Rat>&, const ExactLie<Rat>&,
                             const ExactLie<Rat>&);
template bool exact_chain_ok(const ExactChainFamily<Cyc>&, const ExactLie<Cyc>&,
                             const ExactLie<Cyc>&);
template std::vector<int> exact_quadratic_generator_degrees(const ExactLie<Rat>&,
                                                            const ExactLie<Rat>&, int,
                                                            std::vector<ExactChainFamily<Rat>>*);
template std::vector<int> exact_quadratic_generator_degrees(const ExactLie<Cyc>&,
                                                            const ExactLie<Cyc>&, int,
                                                            std::vector<ExactChainFamily<Cyc>>*);

}  // namespace ellpencil
