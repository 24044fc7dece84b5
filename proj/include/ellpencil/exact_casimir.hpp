#pragma once

// Exact Casimir layer for the degenerate pencils.  Two independent routes:
//
//  * exact_gz_ledger: the degree structure of the pencil of Poisson matrices
//    P1 + u P2 sampled at a generic rational point, read off as Kronecker
//    minimal column indices from exact block-Toeplitz nullities.  For a
//    Kronecker-type pencil the weighted count sum (2 e_r + 1) equals the
//    space dimension m (n^2 - 1), matching the floating-point degree ledger.
//
//  * exact_casimir_ledger: explicit polynomial Casimir families
//    C(x, u) = sum_j f_j(x) u^j of c1 + u c2, built in closed form from the
//    quotient-algebra trace menu (rational case) or the exact chain kernel
//    (trigonometric case), certified coefficient by coefficient against the
//    structure constants, and booked by effective u-degree (degree minus
//    valuation, as in the floating-point tower).

#include <cstdint>
#include <vector>

#include "ellpencil/degenerate.hpp"
#include "ellpencil/exact.hpp"

namespace ellpencil {

// Homogeneous polynomial of degree 1, 2 or 3 in dim variables, stored as
// monomial coefficients on the sorted index simplex i <= j (<= k) in
// lexicographic order; the degree-2 layout matches the flattened upper
// triangle of exact_quadratic_casimirs.
template <class K>
struct ExactForm {
    int dim = 0;
    int deg = 0;
    std::vector<K> c;

    ExactForm() = default;
    ExactForm(int dimension, int degree);

    size_t index(const int* mono) const;  // mono: sorted list of deg indices
    bool is_zero() const;

    ExactForm& operator+=(const ExactForm& o);
    ExactForm& operator-=(const ExactForm& o);
    ExactForm& operator*=(const K& s);
};

template <class K>
ExactForm<K> form_mul(const ExactForm<K>& a, const ExactForm<K>& b);  // deg sum <= 3

// Poisson bracket {f, x_a} of a form with a coordinate, with respect to the
// linear Poisson structure {x_i, x_j} = sum_k c(i,j,k) x_k.
template <class K>
ExactForm<K> exact_poisson_coordinate(const ExactForm<K>& f, int a, const ExactLie<K>& c);

template <class K>
bool exact_is_casimir(const ExactForm<K>& f, const ExactLie<K>& c);

// Polynomial family in the pencil parameter: coeff[j] multiplies u^j.
template <class K>
struct ExactChainFamily {
    std::vector<ExactForm<K>> coeff;

    int degree() const;     // honest u-degree after dropping zero leading forms
    int valuation() const;  // index of the lowest nonzero coefficient
    int effective_degree() const;  // degree minus valuation
    void trim();
};

// Certificate that the family is a Casimir of c1 + u c2 for every u: the
// chain conditions {f_0,.}_1 = 0, {f_j,.}_1 + {f_{j-1},.}_2 = 0, {f_d,.}_2 = 0.
template <class K>
bool exact_chain_ok(const ExactChainFamily<K>& fam, const ExactLie<K>& c1, const ExactLie<K>& c2);

// Degrees of a minimal generating set of the module of quadratic chains over
// K[u], computed from exact kernel dimensions: a chain of degree d is new
// when it lies outside the span of padded (u-multiplied or embedded) chains
// of degree d-1.  Returns the sorted degree multiset and optionally one
// representative family per generator.  Note these are module generators;
// the canonical tower families may sit at higher degrees inside the module.
// Cost grows with dim^2 per column, so this route is reserved for n = 2.
template <class K>
std::vector<int> exact_quadratic_generator_degrees(const ExactLie<K>& c1, const ExactLie<K>& c2,
                                                   int dmax,
                                                   std::vector<ExactChainFamily<K>>* reps = nullptr);

// Kronecker minimal column indices of the Poisson-matrix pencil at a generic
// sample point.  complete certifies that the indices account for the whole
// space (sum (2 e_r + 1) == dim, i.e. no Jordan part at the sample point).
struct ExactGz {
    std::vector<int> indices;  // sorted minimal column indices
    long gz_sum = 0;           // sum of (2 e_r + 1)
    int corank = 0;            // kernel dimension of P1 + u P2 at generic u
    bool complete = false;
};

template <class K>
ExactGz exact_gz_ledger(const ExactLie<K>& c1, const ExactLie<K>& c2, std::uint64_t seed = 11);

struct ExactLedgerRow {
    int p = 0;                 // trace power (form degree of the families)
    std::vector<int> degrees;  // sorted effective u-degrees booked at this power
};

template <class K>
struct ExactCasimirLedger {
    std::vector<ExactChainFamily<K>> families;
    std::vector<ExactLedgerRow> rows;
    long gz_sum = 0;               // sum of (2 deg + 1) over all families
    bool chains_ok = false;        // every family certified against c1, c2
    bool template_match = false;   // row degrees equal {p-2, (m-2) x (p-1), p}
};

// Rational ledger: families from the quotient-algebra trace menu
// tr((sum_a x~_a B^_a h_s(w))^p) mod r_u(w): the bottom from the section
// image of mu2, the middle entries from coefficient extraction, the top from
// the Newton power sums of r_u.  Requires n <= 3 and, for the gapped m = 2
// model, a constant mu1.
ExactCasimirLedger<Rat> exact_casimir_ledger(const RationalPencil& pen);

// Trigonometric ledger: the chain kernel is the constructor (n = 2 only).
ExactCasimirLedger<Cyc> exact_casimir_ledger(const TrigPencil& pen);

}  // namespace ellpencil
