#pragma once

// Exact arithmetic kernel: rationals, cyclotomic field elements, dense exact
// linear algebra, and polynomials over either field.

#include <complex>
#include <gmpxx.h>
#include <optional>
#include <string>
#include <vector>

#include "ellpencil/common.hpp"

namespace ellpencil {

using Rat = mpq_class;

// Field of the n-th roots of unity over the rationals, coordinates in the
// power basis 1, z, ..., z^{phi(n)-1} modulo the n-th cyclotomic polynomial.
struct CycloField {
    int n = 1;
    int degree = 1;
    std::vector<Rat> min_poly;                      // monic, size degree+1
    std::vector<std::vector<Rat>> power_reduction;  // z^e for e in [0, 2*degree-1)
    std::vector<std::vector<Rat>> root_powers;      // zeta^e for e in [0, n)

    static const CycloField& of(int n);
};

class Cyc {
public:
    Cyc() = default;
    Cyc(const Rat& r);
    Cyc(long v);
    Cyc(const CycloField& field, std::vector<Rat> coords);

    static Cyc zeta_power(int n, long e);

    bool is_zero() const;
    const CycloField* field() const { return field_; }

    Cyc operator-() const;
    Cyc operator+(const Cyc& o) const;
    Cyc operator-(const Cyc& o) const;
    Cyc operator*(const Cyc& o) const;
    Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
    Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
    Cyc& operator*=(const Cyc& o) { return *this = *this * o; }
    bool operator==(const Cyc& o) const;
    bool operator!=(const Cyc& o) const { return !(*this == o); }

    Cyc inverse() const;
    std::complex<double> to_complex() const;
    std::string str() const;

private:
    const CycloField* field_ = nullptr;  // nullptr: plain rational value
    std::vector<Rat> c_;                 // empty: zero; else coordinates

    void promote(const CycloField& field);
    void trim();
};

template <class K>
struct FieldOps;

template <>
struct FieldOps<Rat> {
    static bool is_zero(const Rat& a) { return a == 0; }
    static Rat inverse(const Rat& a) { return Rat(1) / a; }
    static Rat zero() { return Rat(0); }
};

template <>
struct FieldOps<Cyc> {
    static bool is_zero(const Cyc& a) { return a.is_zero(); }
    static Cyc inverse(const Cyc& a) { return a.inverse(); }
    static Cyc zero() { return Cyc(); }
};

// Dense matrix over an exact field.
template <class K>
struct ExactMat {
    int rows = 0, cols = 0;
    std::vector<K> a;

    ExactMat() = default;
    ExactMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, FieldOps<K>::zero()) {}
    K& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const K& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

// In-place fraction-based Gauss-Jordan; returns rank and records pivot columns.
template <class K>
int row_reduce(ExactMat<K>& m, std::vector<int>* pivot_cols = nullptr) {
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int pr = -1;
        for (int r = rank; r < m.rows; ++r)
            if (!FieldOps<K>::is_zero(m.at(r, c))) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        if (pr != rank)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(rank, j));
        const K inv = FieldOps<K>::inverse(m.at(rank, c));
        for (int j = c; j < m.cols; ++j) m.at(rank, j) = m.at(rank, j) * inv;
        for (int r = 0; r < m.rows; ++r) {
            if (r == rank || FieldOps<K>::is_zero(m.at(r, c))) continue;
            const K f = m.at(r, c);
            for (int j = c; j < m.cols; ++j)
                m.at(r, j) = m.at(r, j) - f * m.at(rank, j);
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++rank;
    }
    return rank;
}

template <class K>
int exact_rank(ExactMat<K> m) {
    return row_reduce(m);
}

template <class K>
int exact_nullity(const ExactMat<K>& m) {
    return m.cols - exact_rank(m);
}

// Nullspace basis, one column vector per free column.
template <class K>
std::vector<std::vector<K>> exact_nullspace(ExactMat<K> m) {
    std::vector<int> piv;
    row_reduce(m, &piv);
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
    for (int c : piv) is_pivot[static_cast<size_t>(c)] = true;
    std::vector<std::vector<K>> basis;
    for (int fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[static_cast<size_t>(fc)]) continue;
        std::vector<K> v(static_cast<size_t>(m.cols), FieldOps<K>::zero());
        v[static_cast<size_t>(fc)] = K(1);
        for (size_t pi = 0; pi < piv.size(); ++pi)
            v[static_cast<size_t>(piv[pi])] = -m.at(static_cast<int>(pi), fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves m x = b exactly; throws on inconsistency, fills *unique.
template <class K>
std::vector<K> exact_solve(ExactMat<K> m, std::vector<K> b, bool* unique = nullptr) {
    require(static_cast<int>(b.size()) == m.rows, "exact_solve: size mismatch");
    ExactMat<K> aug(m.rows, m.cols + 1);
    for (int r = 0; r < m.rows; ++r) {
        for (int c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols) = b[static_cast<size_t>(r)];
    }
    std::vector<int> piv;
    const int rank = row_reduce(aug, &piv);
    for (size_t pi = 0; pi < piv.size(); ++pi)
        if (piv[pi] == m.cols)
            throw invalid_input("exact_solve: inconsistent linear system");
    std::vector<K> x(static_cast<size_t>(m.cols), FieldOps<K>::zero());
    for (size_t pi = 0; pi < piv.size(); ++pi)
        x[static_cast<size_t>(piv[pi])] = aug.at(static_cast<int>(pi), m.cols);
    if (unique) *unique = (rank == m.cols);
    return x;
}

// Dense polynomial over an exact field, coefficient of degree i at index i.
template <class K>
struct ExactPoly {
    std::vector<K> c;

    ExactPoly() = default;
    explicit ExactPoly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && FieldOps<K>::is_zero(c.back())) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    K coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c.size())) return FieldOps<K>::zero();
        return c[static_cast<size_t>(i)];
    }
    K eval(const K& x) const {
        K acc = FieldOps<K>::zero();
        for (int i = degree(); i >= 0; --i) acc = acc * x + c[static_cast<size_t>(i)];
        return acc;
    }
    ExactPoly operator*(const ExactPoly& o) const {
        if (c.empty() || o.c.empty()) return {};
        ExactPoly out;
        out.c.assign(c.size() + o.c.size() - 1, FieldOps<K>::zero());
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) out.c[i + j] += c[i] * o.c[j];
        out.trim();
        return out;
    }
    ExactPoly operator+(const ExactPoly& o) const {
        ExactPoly out;
        out.c.assign(std::max(c.size(), o.c.size()), FieldOps<K>::zero());
        for (size_t i = 0; i < c.size(); ++i) out.c[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) out.c[i] += o.c[i];
        out.trim();
        return out;
    }
    ExactPoly operator-(const ExactPoly& o) const {
        ExactPoly out;
        out.c.assign(std::max(c.size(), o.c.size()), FieldOps<K>::zero());
        for (size_t i = 0; i < c.size(); ++i) out.c[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) out.c[i] -= o.c[i];
        out.trim();
        return out;
    }
    bool operator==(const ExactPoly& o) const {
        const int d = std::max(degree(), o.degree());
        for (int i = 0; i <= d; ++i)
            if (!FieldOps<K>::is_zero(coeff(i) - o.coeff(i))) return false;
        return true;
    }
    bool operator!=(const ExactPoly& o) const { return !(*this == o); }
};

using RationalPoly = ExactPoly<Rat>;
using TrigPoly = ExactPoly<Cyc>;

// Resultant via the Sylvester matrix (degree-0 edge cases handled directly).
template <class K>
K exact_resultant(const ExactPoly<K>& f, const ExactPoly<K>& g) {
    const int df = f.degree(), dg = g.degree();
    require(df >= 0 && dg >= 0, "exact_resultant: zero polynomial");
    auto power = [](K base, int e) {
        K acc = K(1);
        for (int i = 0; i < e; ++i) acc = acc * base;
        return acc;
    };
    if (df == 0) return power(f.coeff(0), dg);
    if (dg == 0) return power(g.coeff(0), df);
    const int size = df + dg;
    ExactMat<K> syl(size, size);
    for (int r = 0; r < dg; ++r)
        for (int i = 0; i <= df; ++i) syl.at(r, r + i) = f.coeff(df - i);
    for (int r = 0; r < df; ++r)
        for (int i = 0; i <= dg; ++i) syl.at(dg + r, r + i) = g.coeff(dg - i);
    // determinant by elimination, tracking row swaps and pivot products
    K det = K(1);
    for (int c = 0; c < size; ++c) {
        int pr = -1;
        for (int r = c; r < size; ++r)
            if (!FieldOps<K>::is_zero(syl.at(r, c))) {
                pr = r;
                break;
            }
        if (pr < 0) return FieldOps<K>::zero();
        if (pr != c) {
            for (int j = 0; j < size; ++j) std::swap(syl.at(pr, j), syl.at(c, j));
            det = -det;
        }
        det = det * syl.at(c, c);
        const K inv = FieldOps<K>::inverse(syl.at(c, c));
        for (int r = c + 1; r < size; ++r) {
            if (FieldOps<K>::is_zero(syl.at(r, c))) continue;
            const K fct = syl.at(r, c) * inv;
            for (int j = c; j < size; ++j) syl.at(r, j) = syl.at(r, j) - fct * syl.at(c, j);
        }
    }
    return det;
}

std::string rat_str(const Rat& r);

}  // namespace ellpencil
