#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "ellpencil/casimir.hpp"
#include "ellpencil/degenerate.hpp"
#include "ellpencil/elliptic.hpp"
#include "ellpencil/exact_casimir.hpp"

using namespace ellpencil;

namespace {

RationalPoly rp(std::initializer_list<long> coeffs) {
    std::vector<Rat> c;
    for (long v : coeffs) c.emplace_back(v);
    return RationalPoly(std::move(c));
}

TrigPoly wp(std::initializer_list<long> coeffs) {
    std::vector<Cyc> c;
    for (long v : coeffs) c.emplace_back(v);
    return TrigPoly(std::move(c));
}

RationalPoly monomial(int d) {
    std::vector<Rat> c(static_cast<size_t>(d) + 1, Rat(0));
    c.back() = 1;
    return RationalPoly(std::move(c));
}

struct QTerm {
    int i, j;
    Rat v;
};

ExactForm<Rat> qform(int dim, std::initializer_list<QTerm> terms) {
    ExactForm<Rat> f(dim, 2);
    for (const QTerm& t : terms) {
        int mono[2] = {t.i, t.j};
        f.c[f.index(mono)] = t.v;
    }
    return f;
}

// truncated current-algebra pair: mu1 = 1, mu2 = z^2 on the gapped slots {0, 2}
const RationalPencil& takiff22() {
    static const RationalPencil pd = rational_structure_constants(2, 2, rp({1}), rp({0, 0, 1}));
    return pd;
}

const RationalPencil& rational23() {
    static const RationalPencil pd =
        rational_structure_constants(2, 3, rp({1, 1}), rp({0, 0, 0, 1}));
    return pd;
}

const RationalPencil& rational32() {
    static const RationalPencil pd = rational_structure_constants(3, 2, rp({1}), rp({0, 0, 1}));
    return pd;
}

const RationalPencil& rational33() {
    static const RationalPencil pd =
        rational_structure_constants(3, 3, rp({1, 1}), rp({0, 1, 0, 1}));
    return pd;
}

const TrigPencil& trig22() {
    static const TrigPencil pd = trig_structure_constants(2, 2, wp({1, 0, 1}), wp({0, 1}));
    return pd;
}

}  // namespace

TEST_CASE("cyclotomic arithmetic: root relations, inverses, field mixing") {
    // vanishing sums of roots of unity
    CHECK(Cyc::zeta_power(4, 1) * Cyc::zeta_power(4, 1) == Cyc(-1));
    CHECK((Cyc(1) + Cyc::zeta_power(3, 1) + Cyc::zeta_power(3, 2)).is_zero());
    Cyc s;
    for (int e = 0; e < 5; ++e) s += Cyc::zeta_power(5, e);
    CHECK(s.is_zero());
    CHECK(Cyc::zeta_power(6, 3) == Cyc(-1));
    CHECK(Cyc::zeta_power(8, 1) * Cyc::zeta_power(8, -1) == Cyc(1));

    // norm-style product collapses to a rational
    Cyc z3 = Cyc::zeta_power(3, 1);
    CHECK((Cyc(2) + z3) * (Cyc(2) + z3 * z3) == Cyc(3));

    // inverse in a degree-4 field
    Cyc v = Cyc(1) + Cyc::zeta_power(5, 1);
    CHECK(v * v.inverse() == Cyc(1));
    CHECK(Cyc(Rat(2, 3)) * Cyc(Rat(3, 2)) == Cyc(1));

    // numeric embedding
    const auto z7 = Cyc::zeta_power(7, 1).to_complex();
    CHECK(std::abs(z7 - std::polar(1.0, 2.0 * kPi / 7.0)) <= 1e-14);

    // elements of different cyclotomic fields do not mix
    CHECK_THROWS_AS(Cyc::zeta_power(3, 1) + Cyc::zeta_power(4, 1), invalid_input);
}

TEST_CASE("exact linear algebra: rank, nullspace, solve, resultant") {
    ExactMat<Rat> m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 2;
    m.at(1, 1) = 4;
    CHECK(exact_rank(m) == 1);
    auto ns = exact_nullspace(m);
    REQUIRE(ns.size() == 1);
    CHECK(m.at(0, 0) * ns[0][0] + m.at(0, 1) * ns[0][1] == 0);
    CHECK(ns[0][1] == 1);

    // consistent overdetermined solve
    ExactMat<Rat> a(3, 2);
    a.at(0, 0) = 1;
    a.at(1, 1) = 1;
    a.at(2, 0) = 1;
    a.at(2, 1) = 1;
    bool unique = false;
    auto x = exact_solve(a, {Rat(2), Rat(5), Rat(7)}, &unique);
    CHECK(unique);
    CHECK(x[0] == 2);
    CHECK(x[1] == 5);
    CHECK_THROWS_AS(exact_solve(a, {Rat(2), Rat(5), Rat(8)}), invalid_input);

    // resultants against product-of-root-differences oracles
    CHECK(exact_resultant(rp({1, 1, 0, 1}), rp({2})) == 8);  // g const: g0^{deg f}
    CHECK(exact_resultant(rp({-2, 1}), rp({-5, 1})) == -3);  // lc^1 * g(2)
    CHECK(exact_resultant(rp({1, 0, 1}), rp({-1, 0, 1})) == 4);
    CHECK(exact_resultant(rp({-1, 0, 1}), rp({-1, 1})) == 0);  // shared root 1

    TrigPoly f, g;
    f.c = {-Cyc::zeta_power(4, 1), Cyc(1)};
    g.c = {Cyc::zeta_power(4, 1), Cyc(1)};
    CHECK(exact_resultant(f, g) == Cyc(2) * Cyc::zeta_power(4, 1));

    // polynomial ring sanity
    CHECK((rp({1, 1}) * rp({1, -1})).coeff(2) == -1);
    CHECK(rp({1, 1}) * rp({1, -1}) + rp({-1}) == rp({0, 0, -1}) * rp({1}));
    CHECK(rp({-8, 0, 1}).eval(Rat(3)) == 1);
}

TEST_CASE("order-2 split with gauge: hand values and (f, 0) triviality") {
    const RationalPoly mu1 = rp({1, 0, 1}), mu2 = rp({0, 0, 1});

    // hand-solved monomial splits for mu1 = 1 + z^2, mu2 = z^2, gauge at 0
    auto [p0, q0] = rational_decompose(2, mu1, mu2, rp({1}), Rat(0));
    CHECK(p0 == rp({1, 0, -1}));
    CHECK(q0 == rp({0, 0, 1}));
    auto [p2, q2] = rational_decompose(2, mu1, mu2, monomial(2), Rat(0));
    CHECK(p2 == rp({0, 0, 1}));
    CHECK(q2 == rp({0, 0, -1}));
    auto [p4, q4] = rational_decompose(2, mu1, mu2, monomial(4), Rat(0));
    CHECK(p4.degree() == -1);
    CHECK(q4 == rp({0, 0, 1}));

    // Z = mu1 f recovers (f, 0) exactly
    const RationalPoly f = rp({3, 0, -7});
    auto [pf, qf] = rational_decompose(2, mu1, mu2, mu1 * f, Rat(0));
    CHECK(pf == f);
    CHECK(qf.degree() == -1);

    // unique window split at order 3, no gauge involved
    auto [p1, q1] = rational_decompose(3, rp({1, 1}), rp({0, 0, 0, 1}), monomial(2), Rat(0));
    CHECK(rp({1, 1}) * p1 + rp({0, 0, 0, 1}) * q1 == monomial(2));
    const RationalPoly w = rp({2, -1, 5});
    auto [pw, qw] = rational_decompose(3, rp({1, 1}), rp({0, 0, 0, 1}),
                                       rp({0, 0, 0, 1}) * w, Rat(0));
    CHECK(pw.degree() == -1);
    CHECK(qw == w);
}

TEST_CASE("gapped slots cannot close beyond order 2: z^2 has no split") {
    // at order 3 the gapped degrees {0, 1, 3} leave z^2 = [z B1, z B2] without
    // a pencil split for any admissible section pair; this is why higher
    // orders use the window slots
    const RationalPoly mu1 = rp({1, 1, 0, 1}), mu2 = rp({0, -1, 0, 1});
    CHECK(exact_resultant(mu1, mu2) != 0);
    const std::vector<int> gapped = {0, 1, 3};
    ExactMat<Rat> sys(7, 6);
    for (int b = 0; b <= 6; ++b)
        for (int t = 0; t < 3; ++t) {
            sys.at(b, t) = mu1.coeff(b - gapped[static_cast<size_t>(t)]);
            sys.at(b, 3 + t) = mu2.coeff(b - gapped[static_cast<size_t>(t)]);
        }
    std::vector<Rat> rhs(7, Rat(0));
    rhs[2] = 1;
    CHECK_THROWS_AS(exact_solve(sys, rhs), invalid_input);
}

TEST_CASE("truncated current-algebra pair: hand oracle entries") {
    const RationalPencil& pd = takiff22();
    CHECK(pd.dim() == 6);
    CHECK(pd.degrees == std::vector<int>{0, 2});

    // matrix direction order for n = 2: E01, E10, H
    // [E01 1, E10 1] = H 1 lands in the first bracket
    CHECK(pd.c1.at(0, 2, 4) == 1);
    CHECK(pd.c2.at(0, 2, 4) == 0);
    // [H 1, E01 1] = 2 E01
    CHECK(pd.c1.at(4, 0, 0) == 2);
    // [E01 1, E10 z^2] = H z^2 via the first bracket
    CHECK(pd.c1.at(0, 3, 5) == 1);
    CHECK(pd.c2.at(0, 3, 5) == 0);
    // [E01 z^2, E10 z^2] = H z^4 = mu2 * (H z^2): second bracket only
    CHECK(pd.c1.at(1, 3, 5) == 0);
    CHECK(pd.c2.at(1, 3, 5) == 1);

    CHECK(exact_antisymmetric(pd.c1));
    CHECK(exact_antisymmetric(pd.c2));
    CHECK(exact_jacobi(pd.c1));
    CHECK(exact_jacobi(pd.c2));
    CHECK(exact_compatible(pd.c1, pd.c2));

    // rescaling [H 1, E01 1] = 2 E01 to 3 E01 breaks the Jacobi identity:
    // the (H, E01, E10) cycle picks up a net H term
    ExactLie<Rat> bad = pd.c1;
    bad.set(4, 0, 0, Rat(3));
    bad.set(0, 4, 0, Rat(-3));
    CHECK(exact_antisymmetric(bad));
    CHECK_FALSE(exact_jacobi(bad));
}

TEST_CASE("rational pencils close exactly across orders and ranks") {
    struct Case {
        const RationalPencil& pd;
        int dim;
    };
    for (const Case& c : {Case{takiff22(), 6}, Case{rational23(), 9}, Case{rational32(), 16},
                          Case{rational33(), 24}}) {
        CAPTURE(c.dim);
        CHECK(c.pd.dim() == c.dim);
        CHECK(exact_antisymmetric(c.pd.c1));
        CHECK(exact_antisymmetric(c.pd.c2));
        CHECK(exact_jacobi(c.pd.c1));
        CHECK(exact_jacobi(c.pd.c2));
        CHECK(exact_compatible(c.pd.c1, c.pd.c2));
    }

    // any pencil member is again a Lie bracket
    ExactLie<Rat> mem = exact_pencil_member(rational23().c1, rational23().c2, Rat(7, 3));
    CHECK(exact_jacobi(mem));
}

TEST_CASE("rational preconditions: bad sections are rejected") {
    CHECK_THROWS_AS(rational_structure_constants(2, 1, rp({1}), rp({0, 1})), invalid_input);
    // z^{m-1} coefficient must vanish
    CHECK_THROWS_AS(rational_structure_constants(2, 2, rp({1}), rp({0, 1})), invalid_input);
    // shared root at z = -1
    CHECK_THROWS_AS(rational_structure_constants(2, 3, rp({1, 1}), rp({0, -1, 0, 1})),
                    invalid_input);
    // gauge point must be a zero of mu2 but not of mu1
    CHECK_THROWS_AS(rational_structure_constants(2, 2, rp({1}), rp({0, 0, 1}), Rat(1)),
                    invalid_input);
    CHECK_THROWS_AS(rational_structure_constants(2, 2, rp({0, 0, 1}), rp({-1, 0, 1})),
                    invalid_input);
    // window model needs one section of full degree
    CHECK_THROWS_AS(rational_structure_constants(2, 3, rp({1}), rp({0, 1})), invalid_input);
}

TEST_CASE("trig sectors: windows, boundary ties, graded closure") {
    TrigBasis b22 = trig_basis(2, 2);
    CHECK(b22.dim() == 6);
    REQUIRE(b22.sectors.size() == 3);
    CHECK(b22.sectors[0] == std::make_pair(0, 1));
    CHECK(b22.sectors[1] == std::make_pair(1, 0));
    CHECK(b22.sectors[2] == std::make_pair(1, 1));

    // tied slot of the (1, 0) sector pairs exponents 0 and mn with twist -1
    auto tied = b22.slot_function(1, 0);
    REQUIRE(tied.size() == 2);
    CHECK(tied[0] == std::make_pair(0, Cyc(1)));
    CHECK(tied[1] == std::make_pair(4, Cyc(-1)));
    auto plain = b22.slot_function(0, 1);
    REQUIRE(plain.size() == 1);
    CHECK(plain[0] == std::make_pair(3, Cyc(1)));

    // [w b, w ab] = -2 w^2 a lands one window step into the (1, 0) sector
    auto [sec, raw] = trig_commutator(b22, b22.index(0, 0), b22.index(2, 0));
    CHECK(sec == 1);
    REQUIRE(raw.size() == 4);
    CHECK(raw[0].is_zero());
    CHECK(raw[1] == Cyc(-2));
    CHECK(raw[2].is_zero());
    CHECK(raw[3].is_zero());

    // the order-1 space of dimension n^2 - 1 = 3 closes exactly under grading
    TrigBasis b21 = trig_basis(2, 1);
    CHECK(b21.dim() == 3);
    CHECK(trig_graded_closure(b21));
    auto [sec1, raw1] = trig_commutator(b21, b21.index(0, 0), b21.index(2, 0));
    CHECK(sec1 == 1);
    REQUIRE(raw1.size() == 2);
    CHECK(raw1[0].is_zero());
    CHECK(raw1[1] == Cyc(-2));

    CHECK(trig_graded_closure(trig_basis(3, 2)));
    CHECK(trig_graded_closure(trig_basis(2, 3)));
}

TEST_CASE("trig pencil: exact identities and a hand-solved sector split") {
    const TrigPencil& pd = trig22();
    CHECK(pd.dim() == 6);
    CHECK(exact_antisymmetric(pd.c1));
    CHECK(exact_antisymmetric(pd.c2));
    CHECK(exact_jacobi(pd.c1));
    CHECK(exact_jacobi(pd.c2));
    CHECK(exact_compatible(pd.c1, pd.c2));

    // [w b, w ab] = -2 w^2 a = mu1 (-w^2 a) + mu2 (-(1 - w^4) a) by hand
    CHECK(pd.c1.at(0, 4, 3) == Cyc(-1));
    CHECK(pd.c2.at(0, 4, 2) == Cyc(-1));
    CHECK(pd.c1.at(0, 4, 2).is_zero());
    CHECK(pd.c2.at(0, 4, 3).is_zero());
    // [w b, (1 - w^4) a] = -2 w ab + 2 w^5 ab splits as mu1 (-2 w ab) + mu2 (4 w^3 ab)
    CHECK(pd.c1.at(0, 2, 4) == Cyc(-2));
    CHECK(pd.c2.at(0, 2, 5) == Cyc(4));

    ExactLie<Cyc> mem = exact_pencil_member(pd.c1, pd.c2, Cyc(Rat(5, 3)));
    CHECK(exact_jacobi(mem));
}

TEST_CASE("trig preconditions: ties and common zeros are enforced") {
    CHECK_THROWS_AS(trig_structure_constants(2, 1, wp({1, -1}), wp({2, -2})), invalid_input);
    // broken boundary tie
    CHECK_THROWS_AS(trig_structure_constants(2, 2, wp({1, 1}), wp({0, 1})), invalid_input);
    // both sections proportional to (1 - w)^2: common zero away from w = 0
    CHECK_THROWS_AS(trig_structure_constants(2, 2, wp({1, -2, 1}), wp({2, -4, 2})),
                    invalid_input);
}

TEST_CASE("exact quadratic forms: simplex products and coordinate brackets") {
    // product of two linear forms lands on the flattened upper triangle
    ExactForm<Rat> l1(6, 1), l2(6, 1);
    l1.c[0] = 1;
    l1.c[4] = 2;  // x0 + 2 x4
    l2.c[2] = 1;
    l2.c[4] = -1;  // x2 - x4
    ExactForm<Rat> prod = form_mul(l1, l2);
    ExactForm<Rat> expect =
        qform(6, {{0, 2, Rat(1)}, {0, 4, Rat(-1)}, {2, 4, Rat(2)}, {4, 4, Rat(-2)}});
    prod -= expect;
    CHECK(prod.is_zero());

    // {x0 x2, x0} = x0 {x2, x0} = -x0 x4 on the truncated pair
    const RationalPencil& pd = takiff22();
    ExactForm<Rat> f = qform(6, {{0, 2, Rat(1)}});
    ExactForm<Rat> br = exact_poisson_coordinate(f, 0, pd.c1);
    br -= qform(6, {{0, 4, Rat(-1)}});
    CHECK(br.is_zero());

    // the flat layout agrees with the flattened quadratic-Casimir solver
    auto fams = exact_quadratic_casimirs(pd.c1, pd.c2);
    REQUIRE(!fams.empty());
    ExactForm<Rat> cas(6, 2);
    cas.c = fams[0];
    CHECK(exact_is_casimir(cas, pd.c1));
    CHECK(exact_is_casimir(cas, pd.c2));
    CHECK_FALSE(exact_is_casimir(f, pd.c1));
}

TEST_CASE("exact Casimir ledger: books, chain certificates, and degree template") {
    struct Case {
        const RationalPencil& pd;
        std::vector<std::vector<int>> rows;
        long sum;
    };
    for (const Case& c : {Case{takiff22(), {{0, 2}}, 6}, Case{rational23(), {{0, 1, 2}}, 9},
                          Case{rational32(), {{0, 2}, {1, 3}}, 16},
                          Case{rational33(), {{0, 1, 2}, {1, 2, 3}}, 24}}) {
        CAPTURE(c.sum);
        ExactCasimirLedger<Rat> led = exact_casimir_ledger(c.pd);
        REQUIRE(led.rows.size() == c.rows.size());
        for (size_t r = 0; r < led.rows.size(); ++r) {
            CHECK(led.rows[r].p == static_cast<int>(r) + 2);
            CHECK(led.rows[r].degrees == c.rows[r]);
        }
        CHECK(led.gz_sum == c.sum);
        CHECK(led.chains_ok);
        CHECK(led.template_match);
        if (c.pd.n == 2) {
            CHECK(led.kernel_checked);
            CHECK(led.kernel_match);
        } else {
            CHECK_FALSE(led.kernel_checked);
        }
    }
}

TEST_CASE("truncated pair ledger: hand-solved family coefficients") {
    // invariants of g[z]/z^2: the flat copy sits in coordinates {0, 2, 4},
    // the nilpotent copy in {1, 3, 5}; write C(X) = 2 x0 x2 + x4^2 / 2,
    // C(Y) = 2 x1 x3 + x5^2 / 2, B(X, Y) = 2 x0 x3 + 2 x1 x2 + x4 x5
    ExactCasimirLedger<Rat> led = exact_casimir_ledger(takiff22());
    REQUIRE(led.families.size() == 2);

    // bottom family: C(Y), independent of the pencil parameter
    const ExactChainFamily<Rat>& bottom = led.families.front();
    REQUIRE(bottom.degree() == 0);
    ExactForm<Rat> b0 = bottom.coeff[0];
    b0 -= qform(6, {{1, 3, Rat(2)}, {5, 5, Rat(1, 2)}});
    CHECK(b0.is_zero());

    // top family: u^2 C(X) - u B(X, Y) + 2 C(Y)
    const ExactChainFamily<Rat>& top = led.families.back();
    REQUIRE(top.degree() == 2);
    ExactForm<Rat> t2 = top.coeff[2];
    t2 -= qform(6, {{0, 2, Rat(2)}, {4, 4, Rat(1, 2)}});
    CHECK(t2.is_zero());
    ExactForm<Rat> t1 = top.coeff[1];
    t1 -= qform(6, {{0, 3, Rat(-2)}, {1, 2, Rat(-2)}, {4, 5, Rat(-1)}});
    CHECK(t1.is_zero());
    ExactForm<Rat> t0 = top.coeff[0];
    t0 -= qform(6, {{1, 3, Rat(4)}, {5, 5, Rat(1)}});
    CHECK(t0.is_zero());
}

TEST_CASE("chain kernel: generator booking and a broken chain") {
    // independent route: new chain generators by exact nullspace dimensions
    std::vector<ExactChainFamily<Rat>> reps;
    std::vector<int> degs =
        exact_quadratic_generator_degrees(takiff22().c1, takiff22().c2, 2, &reps);
    CHECK(degs == std::vector<int>{0, 2});
    REQUIRE(reps.size() == 2);
    for (const auto& fam : reps) CHECK(exact_chain_ok(fam, takiff22().c1, takiff22().c2));

    // mutating one coefficient voids the certificate
    ExactChainFamily<Rat> broken = reps[0];
    broken.coeff[0].c[0] += 1;
    CHECK_FALSE(exact_chain_ok(broken, takiff22().c1, takiff22().c2));
}

TEST_CASE("ledger re-frames a pencil whose first section has full degree") {
    RationalPencil flipped = rational_structure_constants(2, 3, rp({0, 0, 0, 1}), rp({1, 1}));
    ExactCasimirLedger<Rat> led = exact_casimir_ledger(flipped);
    REQUIRE(led.rows.size() == 1);
    CHECK(led.rows[0].degrees == std::vector<int>{0, 1, 2});
    CHECK(led.gz_sum == 9);
    CHECK(led.chains_ok);
    CHECK(led.template_match);
    CHECK(led.kernel_match);
}

TEST_CASE("trigonometric ledger: kernel route books the quadratic tower") {
    ExactCasimirLedger<Cyc> led = exact_casimir_ledger(trig22());
    REQUIRE(led.rows.size() == 1);
    CHECK(led.rows[0].p == 2);
    CHECK(led.rows[0].degrees == std::vector<int>{0, 2});
    CHECK(led.gz_sum == 6);
    CHECK(led.chains_ok);
    CHECK(led.template_match);
    CHECK(led.kernel_checked);
    CHECK(led.kernel_match);
}

TEST_CASE("exact quadratic invariants: u-independent and central for both brackets") {
    for (const RationalPencil* pd : {&takiff22(), &rational23()}) {
        CAPTURE(pd->m);
        auto fams = exact_quadratic_casimirs(pd->c1, pd->c2);
        CHECK(!fams.empty());
        for (const auto& f : fams) {
            CHECK(exact_quadratic_central(f, pd->c1));
            CHECK(exact_quadratic_central(f, pd->c2));
        }
        // centrality for every pencil member follows from joint centrality
        ExactLie<Rat> mem = exact_pencil_member(pd->c1, pd->c2, Rat(-4, 5));
        CHECK(exact_quadratic_central(fams[0], mem));
    }

    auto tfams = exact_quadratic_casimirs(trig22().c1, trig22().c2);
    CHECK(!tfams.empty());
    for (const auto& f : tfams) {
        CHECK(exact_quadratic_central(f, trig22().c1));
        CHECK(exact_quadratic_central(f, trig22().c2));
    }

    // negative control: generators of the truncated pair are not central
    std::vector<Rat> x1(21, Rat(0));
    x1[1] = 1;  // x_0 x_1 is not a Casimir
    CHECK_FALSE(exact_quadratic_central(x1, takiff22().c1));
}

TEST_CASE("cross validation: exact degenerations mirror the elliptic ledgers") {
    cd tau(0.0, 1.0);
    ThetaFunction mu1({cd(1.0, 0.0), cd(0.3, 0.2)}, tau);
    ThetaFunction mu2({cd(-0.2, 0.4), cd(1.0, -0.1)}, tau);
    PencilData e22 = build_pencil(2, 2, 1, tau, mu1, mu2, 7);

    CrossValidationReport rep = cross_validate(e22, takiff22());
    CHECK(rep.dims_match);
    CHECK(rep.exact_jacobi1);
    CHECK(rep.exact_jacobi2);
    CHECK(rep.exact_compat);
    CHECK(rep.exact_degrees == std::vector<int>{0, 2});
    CHECK(rep.elliptic_degrees == std::vector<int>{0, 2});
    CHECK(rep.exact_chains);
    CHECK(rep.exact_template);
    CHECK(rep.exact_gz_sum == 6);
    CHECK(rep.elliptic_gz_sum == 6);
    CHECK(rep.expected == 6);
    CHECK(rep.consistent);

    CrossValidationReport trep = cross_validate(e22, trig22());
    CHECK(trep.dims_match);
    CHECK(trep.exact_degrees == std::vector<int>{0, 2});
    CHECK(trep.degrees_match);
    CHECK(trep.exact_gz_sum == 6);
    CHECK(trep.consistent);

    PencilData e23 = build_pencil_random(2, 3, 1, tau, 5);
    CrossValidationReport rep23 = cross_validate(e23, rational23());
    CHECK(rep23.dims_match);
    CHECK(rep23.exact_degrees == std::vector<int>{0, 1, 2});
    CHECK(rep23.degrees_match);
    CHECK(rep23.exact_gz_sum == 9);
    CHECK(rep23.consistent);
}
