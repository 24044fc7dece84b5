#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

#include "ellpencil/casimir.hpp"
#include "ellpencil/lie.hpp"

using namespace ellpencil;

namespace {

const PencilData& pencil22() {
    static const PencilData pd = [] {
        cd tau(0.0, 1.0);
        ThetaFunction mu1({cd(1.0, 0.0), cd(0.3, 0.2)}, tau);
        ThetaFunction mu2({cd(-0.2, 0.4), cd(1.0, -0.1)}, tau);
        return build_pencil(2, 2, 1, tau, mu1, mu2, 7);
    }();
    return pd;
}

const PencilData& pencil23() {
    static const PencilData pd = build_pencil_random(2, 3, 1, cd(0.0, 1.0), 5);
    return pd;
}

const PencilData& pencil32() {
    static const PencilData pd = build_pencil_random(3, 2, 1, cd(0.1, 1.0), 42);
    return pd;
}

std::vector<cd> regular_params(const PencilData& pd, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cd> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        REQUIRE(++guard < 200);
        cd u = 1.5 * rng.next_complex();
        if (pencil_roots(pd.mu1, pd.mu2, u, pd.basis.lattice()).regular) out.push_back(u);
    }
    return out;
}

}  // namespace

TEST_CASE("admissible tuple enumeration matches a brute-force oracle") {
    struct Case {
        int n, p;
        long count;
    };
    for (Case c : {Case{2, 2, 3}, Case{2, 3, 6}, Case{3, 2, 8}, Case{3, 3, 56}}) {
        CAPTURE(c.n);
        CAPTURE(c.p);
        const auto tuples = admissible_tuples(c.n, c.p);
        CHECK(static_cast<long>(tuples.size()) == c.count);
        CHECK(admissible_tuple_count(c.n, c.p) == c.count);

        // independent enumeration with explicit nested loops
        std::vector<SectorTuple> brute;
        for (int a1 = 0; a1 < c.n; ++a1)
            for (int b1 = 0; b1 < c.n; ++b1) {
                if (a1 == 0 && b1 == 0) continue;
                for (int a2 = 0; a2 < c.n; ++a2)
                    for (int b2 = 0; b2 < c.n; ++b2) {
                        if (a2 == 0 && b2 == 0) continue;
                        if (c.p == 2) {
                            if ((a1 + a2) % c.n == 0 && (b1 + b2) % c.n == 0)
                                brute.push_back({{a1, b1}, {a2, b2}});
                            continue;
                        }
                        for (int a3 = 0; a3 < c.n; ++a3)
                            for (int b3 = 0; b3 < c.n; ++b3) {
                                if (a3 == 0 && b3 == 0) continue;
                                if ((a1 + a2 + a3) % c.n == 0 && (b1 + b2 + b3) % c.n == 0)
                                    brute.push_back({{a1, b1}, {a2, b2}, {a3, b3}});
                            }
                    }
            }
        CHECK(brute == tuples);

        for (const auto& t : tuples) {
            const auto lf = zero_sum_lift(t, c.n);
            long sa = 0, sb = 0;
            for (size_t j = 0; j < lf.size(); ++j) {
                sa += lf[j].first;
                sb += lf[j].second;
                CHECK((lf[j].first - t[j].first) % c.n == 0);
                CHECK((lf[j].second - t[j].second) % c.n == 0);
            }
            CHECK(sa == 0);
            CHECK(sb == 0);
        }
    }
}

TEST_CASE("tensor expansion reproduces pointwise values and is node independent") {
    const PencilData& pd = pencil22();
    const Lattice& lat = pd.basis.lattice();
    const CasimirAssembler a(pd, 2, 23);
    const CasimirAssembler b(pd, 2, 99);
    const cd u(0.3, 0.2);

    for (const auto& tuple : a.tuples()) {
        const Eigen::VectorXcd coef = a.expand(tuple, pd.mu2, u);
        Rng rng(0x5151u);
        double err = 0.0, scale = 0.0;
        for (int probe = 0; probe < 4; ++probe) {
            cd z1 = lat.from_coords(0.1 + 0.8 * rng.next_double(), 0.1 + 0.8 * rng.next_double());
            cd z2 = lat.from_coords(0.1 + 0.8 * rng.next_double(), 0.1 + 0.8 * rng.next_double());
            if (lat.dist_mod(z1, z2) < 5e-2) {
                --probe;
                continue;
            }
            const cd want = a.value(tuple, pd.mu2, u, {z1, z2});
            const cd got = a.coefficient_value(tuple, coef, {z1, z2});
            err = std::max(err, std::abs(got - want));
            scale = std::max(scale, std::abs(want));
        }
        CHECK(err <= 1e-9 * scale);
    }

    const PolyElement pa = a.section_at(pd.mu2, u);
    const PolyElement pb = b.section_at(pd.mu2, u);
    CHECK((pa - pb).norm() <= 1e-9 * pa.norm());
    const PolyElement ta = a.top_at(u);
    const PolyElement tb = b.top_at(u);
    CHECK((ta - tb).norm() <= 1e-9 * ta.norm());
}

TEST_CASE("assembly is linear in the section") {
    const PencilData& pd = pencil22();
    const CasimirAssembler a(pd, 2, 23);
    const cd tau = pd.basis.tau();
    const ThetaFunction g2({cd(0.7, 0.1), cd(-0.3, 0.5)}, tau);
    const cd lam(0.6, -1.1);
    const cd u(-0.4, 0.7);

    const ThetaFunction mix = ThetaFunction::combine({cd(1.0, 0.0), lam}, {pd.mu2, g2});
    const PolyElement lhs = a.section_at(mix, u);
    const PolyElement rhs = a.section_at(pd.mu2, u) + a.section_at(g2, u) * lam;
    CHECK((lhs - rhs).norm() <= 1e-10 * std::max(lhs.norm(), rhs.norm()));
}

TEST_CASE("the pencil section itself assembles to zero") {
    CHECK(casimir_kernel_residual(pencil22(), 2) < 1e-10);
    CHECK(casimir_kernel_residual(pencil23(), 2) < 1e-10);
    CHECK(casimir_kernel_residual(pencil32(), 2) < 1e-10);
    CHECK(casimir_kernel_residual(pencil32(), 3) < 1e-10);
}

TEST_CASE("second-section family reduces to the u-independent quadratic Casimir") {
    int which = 0;
    for (const PencilData* pd : {&pencil22(), &pencil23()}) {
        CAPTURE(which++);
        const CasimirFamily f = casimir_from_section(*pd, pd->mu2, 2);
        CHECK(f.valuation() == 1);
        CHECK(f.top_degree() == 1);
        CHECK(f.effective_degree() == 0);

        const CasimirFamily c2 = casimir_quadratic(*pd);
        REQUIRE(c2.u_coeffs.size() == 1);
        CHECK(c2.u_coeffs[0].degree() == 2);
        CHECK(is_casimir(c2.u_coeffs[0], pd->c1) < 1e-8);
        CHECK(is_casimir(c2.u_coeffs[0], pd->c2) < 1e-8);
        for (cd u : regular_params(*pd, 2, 0xbeefu))
            CHECK(is_casimir(c2.u_coeffs[0], pd->pencil_member(u)) < 1e-8);
    }
}

TEST_CASE("generic sections produce first-degree Casimir families") {
    CHECK(complement_sections(pencil22()).empty());

    const PencilData& pd = pencil23();
    const auto comp = complement_sections(pd);
    REQUIRE(comp.size() == 1);
    const CasimirFamily f = casimir_from_section(pd, comp[0], 2);
    CHECK(f.valuation() == 0);
    CHECK(f.top_degree() == 1);
    CHECK(f.effective_degree() == 1);
    for (cd u : regular_params(pd, 3, 0xabcdu))
        CHECK(is_casimir(f.at(u), pd.pencil_member(u)) < 1e-7);
}

TEST_CASE("derivative-corrected family reaches full degree with Casimir ends") {
    const PencilData& pd = pencil22();
    const CasimirFamily h = casimir_top(pd, 2);
    CHECK(h.valuation() == 0);
    CHECK(h.top_degree() == 2);
    CHECK(h.effective_degree() == 2);
    for (cd u : regular_params(pd, 3, 0xfeedu))
        CHECK(is_casimir(h.at(u), pd.pencil_member(u)) < 1e-6);
    CHECK(is_casimir(h.u_coeffs[0], pd.c1) < 1e-6);
    CHECK(is_casimir(h.u_coeffs[2], pd.c2) < 1e-6);

    // the flattened derivative factor breaks the construction
    const CasimirFamily bad = casimir_top(pd, 2, true);
    const cd u0 = regular_params(pd, 1, 0x7777u)[0];
    CHECK(is_casimir(bad.at(u0), pd.pencil_member(u0)) > 1e-3);
}

TEST_CASE("tuple functions vanish when two variables sit on distinct pencil zeros") {
    const PencilData& pd = pencil22();
    const Lattice& lat = pd.basis.lattice();
    const CasimirAssembler a(pd, 2, 23);
    const cd u = regular_params(pd, 1, 0x3131u)[0];
    const auto pr = pencil_roots(pd.mu1, pd.mu2, u, lat);
    REQUIRE(pr.regular);
    const std::vector<cd>& x = pr.roots.roots;
    REQUIRE(x.size() == 2);
    REQUIRE(lat.dist_mod(x[0], x[1]) > 1e-2);

    for (const auto& tuple : a.tuples()) {
        double scale = 0.0;
        Rng rng(0x9u);
        for (int probe = 0; probe < 3; ++probe) {
            cd z1 = lat.from_coords(0.1 + 0.8 * rng.next_double(), 0.1 + 0.8 * rng.next_double());
            cd z2 = lat.from_coords(0.1 + 0.8 * rng.next_double(), 0.1 + 0.8 * rng.next_double());
            if (lat.dist_mod(z1, z2) < 5e-2) {
                --probe;
                continue;
            }
            scale = std::max(scale, std::abs(a.value(tuple, pd.mu2, u, {z1, z2})));
        }
        CHECK(std::abs(a.value(tuple, pd.mu2, u, {x[0], x[1]})) <= 1e-8 * scale);
        CHECK(std::abs(a.value(tuple, pd.mu2, u, {x[1], x[0]})) <= 1e-8 * scale);
    }

    // three variables: pinning any two distinct zeros kills every summand
    const PencilData& pd3 = pencil32();
    const Lattice& lat3 = pd3.basis.lattice();
    const CasimirAssembler a3(pd3, 3, 23);
    const cd u3 = regular_params(pd3, 1, 0x3232u)[0];
    const auto pr3 = pencil_roots(pd3.mu1, pd3.mu2, u3, lat3);
    REQUIRE(pr3.regular);
    const std::vector<cd>& y = pr3.roots.roots;
    const auto& tuple3 = a3.tuples().front();
    const cd zfree = lat3.from_coords(0.27, 0.61);
    double scale3 = std::abs(a3.value(tuple3, pd3.mu2, u3,
                                      {zfree, lat3.from_coords(0.55, 0.22), lat3.from_coords(0.81, 0.74)}));
    CHECK(std::abs(a3.value(tuple3, pd3.mu2, u3, {y[0], zfree, y[1]})) <= 1e-8 * scale3);
}

TEST_CASE("expanded tuple functions agree on the diagonal at pencil zeros") {
    // Diagonal values isolate one block coefficient per pencil zero; after
    // dividing out the product of theta offsets they must match across tuples.
    for (const PencilData* pd : {&pencil22(), &pencil32()}) {
        CAPTURE(pd->basis.n());
        const CasimirAssembler a(*pd, 2, 23);
        const ThetaFunction theta = theta_generator(pd->basis.tau());
        const cd u = regular_params(*pd, 1, 0x4242u)[0];
        const auto pr = pencil_roots(pd->mu1, pd->mu2, u, pd->basis.lattice());
        REQUIRE(pr.regular);
        const double scale_off =
            static_cast<double>(pd->basis.k()) / pd->basis.n();
        for (cd xg : pr.roots.roots) {
            std::vector<cd> vals;
            for (const auto& tuple : a.tuples()) {
                const Eigen::VectorXcd coef = a.expand(tuple, pd->mu2, u);
                cd norm(1.0, 0.0);
                for (const auto& [al, be] : zero_sum_lift(tuple, pd->basis.n()))
                    norm *= theta.eval(
                        (cd(static_cast<double>(al), 0.0) +
                         pd->basis.tau() * static_cast<double>(be)) *
                        scale_off);
                vals.push_back(a.coefficient_value(tuple, coef, {xg, xg}) / norm);
            }
            double scale = 0.0;
            for (cd v : vals) scale = std::max(scale, std::abs(v));
            CHECK(scale > 0.0);
            for (cd v : vals) CHECK(std::abs(v - vals[0]) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("phase-weighted symmetric monomials are central for the finite clock-shift algebra") {
    // Finite-dimensional oracle for the tuple phase convention: the same
    // weighted sum over admissible tuples, applied to plain clock/shift
    // generators, must produce Poisson-central polynomials.
    for (int n : {2, 3}) {
        CAPTURE(n);
        const HeisenbergPair pair(n, 1);
        const auto sectors = nonzero_sectors(n);
        const int dim = static_cast<int>(sectors.size());
        const auto sidx = [&](int a, int b) {
            const int ra = ((a % n) + n) % n, rb = ((b % n) + n) % n;
            for (int s = 0; s < dim; ++s)
                if (sectors[static_cast<size_t>(s)].first == ra &&
                    sectors[static_cast<size_t>(s)].second == rb)
                    return s;
            throw invalid_input("sector lookup failed");
        };
        LieStructure fin(dim, "clockshift");
        for (int s1 = 0; s1 < dim; ++s1)
            for (int s2 = 0; s2 < dim; ++s2) {
                const auto& a = sectors[static_cast<size_t>(s1)];
                const auto& b = sectors[static_cast<size_t>(s2)];
                if ((a.first + b.first) % n == 0 && (a.second + b.second) % n == 0)
                    continue;
                fin.add(s1, s2, sidx(a.first + b.first, a.second + b.second),
                        pair.bracket_coeff(a.first, a.second, b.first, b.second));
            }
        CHECK(jacobiator(fin) < 1e-12);
        for (int p = 2; p <= n; ++p) {
            CAPTURE(p);
            PolyElement cas(dim);
            for (const auto& tuple : admissible_tuples(n, p)) {
                long ph = 0;
                for (size_t j1 = 0; j1 < tuple.size(); ++j1)
                    for (size_t j2 = j1; j2 < tuple.size(); ++j2)
                        ph += static_cast<long>(tuple[j1].first) * tuple[j2].second;
                PolyElement::Key key(static_cast<size_t>(dim), 0);
                for (const auto& s : tuple)
                    ++key[static_cast<size_t>(sidx(s.first, s.second))];
                cas.add_term(key, pair.eps(ph));
            }
            CHECK(is_casimir(cas, fin) < 1e-12);
        }
    }
}

TEST_CASE("summed evaluator is regular near coincident arguments") {
    const PencilData& pd = pencil22();
    const Lattice& lat = pd.basis.lattice();
    const CasimirAssembler a(pd, 2, 23);
    const cd u(0.45, -0.35);
    const cd z1 = lat.from_coords(0.31, 0.41);
    const cd dir = std::exp(cd(0.0, 0.62));

    for (const auto& tuple : a.tuples()) {
        const Eigen::VectorXcd coef = a.expand(tuple, pd.mu2, u);
        const cd fd = a.coefficient_value(tuple, coef, {z1, z1});
        const cd f3 = a.value(tuple, pd.mu2, u, {z1, z1 + 1e-3 * dir});
        const cd f4 = a.value(tuple, pd.mu2, u, {z1, z1 + 1e-4 * dir});
        const double scale = std::max({std::abs(fd), std::abs(f3), std::abs(f4)});
        CHECK(is_finite(f3));
        CHECK(is_finite(f4));
        // no pole: values stay bounded and converge to the holomorphic limit
        CHECK(std::abs(f4) <= 3.0 * std::max(std::abs(f3), 1e-6 * scale));
        CHECK(std::abs(f4 - fd) <= 0.5 * std::abs(f3 - fd) + 1e-10 * scale);

        const cd h3 = a.top_value(tuple, u, {z1, z1 + 1e-3 * dir});
        const cd h4 = a.top_value(tuple, u, {z1, z1 + 1e-4 * dir});
        CHECK(is_finite(h3));
        CHECK(is_finite(h4));
        CHECK(std::abs(h4) <= 3.0 * std::max(std::abs(h3), 1e-6 * std::abs(h3)));
    }
}

TEST_CASE("degree ledger matches the tower profile") {
    const DegreeLedger l22 = degree_ledger(pencil22());
    CHECK(l22.consistent);
    CHECK(l22.gz_sum == 6);
    REQUIRE(l22.rows.size() == 1);
    CHECK(l22.rows[0].effective_degrees == std::vector<int>{0, 2});
    CHECK(l22.worst_kernel_residual < 1e-10);
    CHECK(l22.worst_casimir_residual < 1e-6);

    const DegreeLedger l23 = degree_ledger(pencil23());
    CHECK(l23.consistent);
    CHECK(l23.gz_sum == 9);
    REQUIRE(l23.rows.size() == 1);
    CHECK(l23.rows[0].effective_degrees == std::vector<int>{0, 1, 2});
    CHECK(l23.worst_kernel_residual < 1e-10);
    CHECK(l23.worst_casimir_residual < 1e-6);

    const DegreeLedger l32 = degree_ledger(pencil32());
    CHECK(l32.consistent);
    CHECK(l32.gz_sum == 16);
    REQUIRE(l32.rows.size() == 2);
    CHECK(l32.rows[0].effective_degrees == std::vector<int>{0, 2});
    CHECK(l32.rows[1].effective_degrees == std::vector<int>{1, 3});
    CHECK(l32.worst_kernel_residual < 1e-10);
    CHECK(l32.worst_casimir_residual < 1e-6);
}

TEST_CASE("symmetrized quadratic Casimir is central in the enveloping algebra") {
    const PencilData& pd = pencil22();
    const PolyElement c2 = casimir_quadratic(pd).u_coeffs[0];
    CHECK(enveloping_center_residual(c2, pd.c1) < 1e-8);
    CHECK(enveloping_center_residual(c2, pd.c2) < 1e-8);
    CHECK(enveloping_center_residual(c2, pd.pencil_member(cd(0.7, -0.3))) < 1e-8);

    const PencilData& pd3 = pencil32();
    const PolyElement c23 = casimir_quadratic(pd3).u_coeffs[0];
    CHECK(enveloping_center_residual(c23, pd3.c1) < 1e-8);
    CHECK(enveloping_center_residual(c23, pd3.c2) < 1e-8);
}
