#include "ellpencil/theta.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <map>

namespace ellpencil {

namespace {

cd expi(double phase_times_2pi) {
    return std::exp(cd(0.0, kTwoPi * phase_times_2pi));
}

// recurrence factor a_{s + j m} / a_s = (-1)^{m j} e^{2 pi i tau (j s + m j (j-1)/2)}
cd chain_factor(int m, long s, long j, cd tau) {
    double e = static_cast<double>(j) * static_cast<double>(s) +
               static_cast<double>(m) * static_cast<double>(j) * static_cast<double>(j - 1) / 2.0;
    cd f = std::exp(cd(0.0, kTwoPi) * tau * e);
    if ((m * j) % 2 != 0) f = -f;
    return f;
}

}  // namespace

ThetaFunction::ThetaFunction(std::vector<cd> seeds, cd tau, double trunc_tol)
    : order_(static_cast<int>(seeds.size())), tau_(tau), trunc_tol_(trunc_tol), seeds_(std::move(seeds)) {
    require(order_ >= 1, "ThetaFunction: at least one seed coefficient required");
    require(tau.imag() > 1e-12, "ThetaFunction: Im(tau) must be positive");
    require(trunc_tol > 0.0 && trunc_tol < 1e-3, "ThetaFunction: trunc_tol out of range");

    double seed_scale = 0.0;
    for (cd s : seeds_) {
        require(is_finite(s), "ThetaFunction: non-finite seed coefficient");
        seed_scale = std::max(seed_scale, std::abs(s));
    }

    // worst-case |e^{2 pi i r z}| over one fundamental strip (plus margin);
    // eval() reduces any argument into this strip with the exact
    // quasi-periodicity factor, so no wider coverage is needed
    const double im_tau = tau.imag();
    const double im_lo = -0.05 * im_tau - 0.1;
    const double im_hi = 1.05 * im_tau + 0.1;
    auto z_factor = [&](long r) {
        double rr = static_cast<double>(r);
        return std::exp(kTwoPi * std::max(-rr * im_lo, -rr * im_hi));
    };

    const double cutoff = trunc_tol_ * (seed_scale > 0.0 ? seed_scale : 1.0);
    std::map<long, cd> acc;
    for (long s = 0; s < order_; ++s) {
        if (seeds_[s] == cd(0.0, 0.0)) continue;
        for (int dir : {+1, -1}) {
            long budget = 100000;
            for (long j = (dir > 0 ? 0 : -1);; j += dir) {
                ensure(budget-- > 0, "ThetaFunction: truncation budget exceeded (tau too degenerate)");
                cd a = seeds_[s] * chain_factor(order_, s, j, tau_);
                long r = s + j * static_cast<long>(order_);
                double bound = std::abs(a) * z_factor(r);
                if (bound < cutoff && std::abs(j) >= 2) break;
                acc[r] += a;
            }
        }
    }
    coeffs_.reserve(acc.size());
    for (const auto& [r, a] : acc) {
        coeff_scale_ = std::max(coeff_scale_, std::abs(a));
        if (a == cd(0.0, 0.0)) continue;  // destructive cancellation between chains
        // terms are evaluated as exp(log a + 2 pi i r z): immune to overflow of
        // the bare exponential factor at strongly negative r and large Im z
        coeffs_.emplace_back(r, std::log(a));
    }
}

cd ThetaFunction::eval(cd z, int deriv) const {
    require(deriv >= 0 && deriv <= 4, "ThetaFunction::eval: derivative order out of range");
    require(is_finite(z), "ThetaFunction::eval: non-finite argument");

    // reduce z = w + p + q tau with w in the unit cell; the series is summed at w
    // and the exact quasi-periodicity factor restores the value at z:
    //   f(w + p + q tau) = (-1)^{m q} e^{-2 pi i m q w - pi i m q (q-1) tau} f(w)
    const double qf = std::floor(z.imag() / tau_.imag());
    require(std::abs(qf) < 1e9, "ThetaFunction::eval: argument too far from the fundamental domain");
    const long q = static_cast<long>(qf);
    cd w = z - tau_ * qf;
    w -= std::floor(w.real());

    cd sums[5];
    const cd izz = cd(0.0, kTwoPi) * w;
    for (const auto& [r, log_a] : coeffs_) {
        cd term = std::exp(log_a + izz * static_cast<double>(r));
        sums[0] += term;
        const cd fac = cd(0.0, kTwoPi) * static_cast<double>(r);
        for (int d = 1; d <= deriv; ++d) {
            term *= fac;
            sums[d] += term;
        }
    }

    cd out = sums[deriv];
    if (q != 0) {
        const double mq = static_cast<double>(order_) * static_cast<double>(q);
        const cd mu = cd(0.0, -kTwoPi) * mq;  // log-derivative of the factor
        const cd expo = cd(0.0, kPi) * (mq - mq * static_cast<double>(q - 1) * tau_) + mu * w;
        // Leibniz rule: f^{(d)}(z) = factor(w) * sum_j C(d,j) mu^j f^{(d-j)}(w)
        static const double binom[5][5] = {
            {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0}, {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
        cd acc(0.0, 0.0), mu_pow(1.0, 0.0);
        for (int j = 0; j <= deriv; ++j) {
            acc += binom[deriv][j] * mu_pow * sums[deriv - j];
            mu_pow *= mu;
        }
        out = std::exp(expo) * acc;
    }
    ensure(is_finite(out), "ThetaFunction::eval: overflow in quasi-periodic continuation");
    return out;
}

ThetaFunction ThetaFunction::scaled(cd factor) const {
    std::vector<cd> s = seeds_;
    for (cd& v : s) v *= factor;
    return ThetaFunction(std::move(s), tau_, trunc_tol_);
}

ThetaFunction ThetaFunction::combine(const std::vector<cd>& weights,
                                     const std::vector<ThetaFunction>& basis) {
    require(!basis.empty() && weights.size() == basis.size(),
            "ThetaFunction::combine: weights/basis size mismatch");
    const int m = basis.front().order();
    const cd tau = basis.front().tau();
    double tol = basis.front().trunc_tol();
    std::vector<cd> seeds(static_cast<size_t>(m), cd(0.0, 0.0));
    for (size_t i = 0; i < basis.size(); ++i) {
        require(basis[i].order() == m && basis[i].tau() == tau,
                "ThetaFunction::combine: mixed orders or lattices");
        tol = std::min(tol, basis[i].trunc_tol());
        for (int s = 0; s < m; ++s) seeds[s] += weights[i] * basis[i].seeds()[s];
    }
    return ThetaFunction(std::move(seeds), tau, tol);
}

ThetaFunction theta_generator(cd tau, double trunc_tol) {
    return ThetaFunction({cd(1.0, 0.0)}, tau, trunc_tol);
}

std::vector<ThetaFunction> build_theta_space(int m, cd tau, double trunc_tol) {
    require(m >= 1, "build_theta_space: order must be >= 1");
    std::vector<ThetaFunction> basis;
    basis.reserve(static_cast<size_t>(m));
    for (int s = 0; s < m; ++s) {
        std::vector<cd> seeds(static_cast<size_t>(m), cd(0.0, 0.0));
        seeds[static_cast<size_t>(s)] = cd(1.0, 0.0);
        basis.emplace_back(std::move(seeds), tau, trunc_tol);
    }
    return basis;
}

std::vector<cd> expand_in_theta_space(const std::function<cd(cd)>& f, int m, cd tau) {
    const Lattice lat(tau);
    const auto basis = build_theta_space(m, tau);
    for (std::uint64_t attempt = 0; attempt < 5; ++attempt) {
        // over-determined collocation (3m nodes) plus a disjoint validation set
        const int n_nodes = 3 * m;
        std::vector<cd> nodes, probes;
        for (int r = 0; r < n_nodes; ++r) {
            auto [x, y] = halton2(17 + attempt * 307 + static_cast<std::uint64_t>(r));
            nodes.push_back(lat.anchor + lat.from_coords(0.08 + 0.84 * x, 0.08 + 0.84 * y));
        }
        for (int r = 0; r < 2 * m; ++r) {
            auto [x, y] = halton2(1009 + attempt * 307 + static_cast<std::uint64_t>(r));
            probes.push_back(lat.anchor + lat.from_coords(0.08 + 0.84 * x, 0.08 + 0.84 * y));
        }
        Eigen::MatrixXcd M(n_nodes, m);
        Eigen::VectorXcd rhs(n_nodes);
        for (int r = 0; r < n_nodes; ++r) {
            for (int s = 0; s < m; ++s) M(r, s) = basis[static_cast<size_t>(s)].eval(nodes[static_cast<size_t>(r)]);
            rhs(r) = f(nodes[static_cast<size_t>(r)]);
        }
        Eigen::VectorXcd c = M.colPivHouseholderQr().solve(rhs);
        if (!c.allFinite()) continue;
        ThetaFunction cand = ThetaFunction::combine(
            std::vector<cd>(c.data(), c.data() + m), basis);
        double scale = 0.0, err = 0.0;
        for (cd p : probes) {
            cd want = f(p);
            scale = std::max(scale, std::abs(want));
            err = std::max(err, std::abs(cand.eval(p) - want));
        }
        if (err <= 1e-10 * std::max(scale, 1e-300)) {
            return std::vector<cd>(c.data(), c.data() + m);
        }
    }
    throw numeric_failure("expand_in_theta_space: collocation did not validate (function not in the space?)");
}

ThetaFunction theta_from_roots(const std::vector<cd>& roots, cd tau, cd scale) {
    require(!roots.empty(), "theta_from_roots: need at least one root");
    cd sum(0.0, 0.0);
    for (cd r : roots) sum += r;
    ensure(std::abs(sum - std::round(sum.real())) < 1e-6,
           "theta_from_roots: root sum must be an integer for the product to close up");
    const ThetaFunction th = theta_generator(tau);
    const int m = static_cast<int>(roots.size());
    auto f = [&](cd z) {
        cd v = scale;
        for (cd r : roots) v *= th.eval(z - r);
        return v;
    };
    auto coeffs = expand_in_theta_space(f, m, tau);
    return ThetaFunction::combine(coeffs, build_theta_space(m, tau));
}

namespace {

// trapezoid winding number of f' / f along the segment [a, b]
cd log_derivative_integral(const ThetaFunction& f, cd a, cd b, int samples) {
    cd sum(0.0, 0.0);
    const cd dz = (b - a) / static_cast<double>(samples);
    for (int i = 0; i <= samples; ++i) {
        cd z = a + dz * static_cast<double>(i);
        cd val = f.eval(z);
        cd der = f.eval(z, 1);
        cd g = der / val;
        double w = (i == 0 || i == samples) ? 0.5 : 1.0;
        sum += w * g;
    }
    return sum * dz;
}

double boundary_min_abs(const ThetaFunction& f, const std::vector<cd>& corners, int per_edge) {
    double lo = std::numeric_limits<double>::infinity();
    for (size_t e = 0; e < corners.size(); ++e) {
        cd a = corners[e], b = corners[(e + 1) % corners.size()];
        for (int i = 0; i < per_edge; ++i) {
            cd z = a + (b - a) * (static_cast<double>(i) / per_edge);
            lo = std::min(lo, std::abs(f.eval(z)));
        }
    }
    return lo;
}

}  // namespace

RootSet find_roots(const ThetaFunction& f, const Lattice& lat) {
    const int m = f.order();
    const int n_grid = 64;
    ensure(f.coeff_scale() > 0.0, "find_roots: zero section has no isolated roots");

    // coarse magnitude landscape on a padded grid (pad catches minima at edges)
    const int pad = 3;
    const int full = n_grid + 2 * pad;
    std::vector<double> mag(static_cast<size_t>(full * full));
    std::vector<cd> zs(static_cast<size_t>(full * full));
    double scale = 0.0;
    for (int iy = 0; iy < full; ++iy) {
        for (int ix = 0; ix < full; ++ix) {
            double x = (ix - pad + 0.5) / n_grid;
            double y = (iy - pad + 0.5) / n_grid;
            cd z = lat.anchor + lat.from_coords(x, y);
            cd v = f.eval(z);
            zs[static_cast<size_t>(iy * full + ix)] = z;
            mag[static_cast<size_t>(iy * full + ix)] = std::abs(v);
            scale = std::max(scale, std::abs(v));
        }
    }
    ensure(scale > 0.0, "find_roots: section vanished on the whole grid");

    std::vector<cd> starts;
    for (int iy = 1; iy + 1 < full; ++iy) {
        for (int ix = 1; ix + 1 < full; ++ix) {
            double c = mag[static_cast<size_t>(iy * full + ix)];
            bool minimal = true;
            for (int dy = -1; dy <= 1 && minimal; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    if (mag[static_cast<size_t>((iy + dy) * full + ix + dx)] < c) {
                        minimal = false;
                        break;
                    }
                }
            if (minimal && c < 0.5 * scale) starts.push_back(zs[static_cast<size_t>(iy * full + ix)]);
        }
    }

    // Newton refinement
    std::vector<cd> found;
    for (cd z : starts) {
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
            cd val = f.eval(z);
            if (std::abs(val) < 1e-12 * scale) {
                ok = true;
                break;
            }
            cd der = f.eval(z, 1);
            if (std::abs(der) == 0.0 || !is_finite(z)) break;
            cd step = val / der;
            z -= step;
            if (std::abs(step) < 1e-14) {
                ok = std::abs(f.eval(z)) < 1e-9 * scale;
                break;
            }
        }
        if (!ok) continue;
        z = lat.reduce(z);
        bool dup = false;
        for (cd w : found)
            if (lat.dist_mod(z, w) < 1e-6) {
                dup = true;
                break;
            }
        if (!dup) found.push_back(z);
    }
    ensure(!found.empty(), "find_roots: no roots located (grid too coarse or section degenerate)");

    // per-root winding (multiplicity), with radii kept clear of the neighbours
    std::vector<int> mult(found.size(), 0);
    for (size_t i = 0; i < found.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < found.size(); ++j)
            if (j != i) nearest = std::min(nearest, lat.dist_mod(found[i], found[j]));
        double radius = std::min(2e-4, 0.45 * nearest);
        for (int samples : {128, 512, 2048}) {
            cd acc(0.0, 0.0);
            bool bad = false;
            for (int k = 0; k <= samples; ++k) {
                cd z = found[i] + radius * expi(static_cast<double>(k) / samples);
                cd val = f.eval(z);
                if (std::abs(val) < 1e-13 * scale) {
                    bad = true;
                    break;
                }
                cd der = f.eval(z, 1);
                double w = (k == 0 || k == samples) ? 0.5 : 1.0;
                acc += w * (der / val) *
                       (radius * expi(static_cast<double>(k) / samples) * cd(0.0, kTwoPi) /
                        static_cast<double>(samples));
            }
            if (bad) {
                radius *= 0.5;
                continue;
            }
            double winding = (acc / cd(0.0, kTwoPi)).real();
            if (std::abs(winding - std::round(winding)) < 0.1 && std::round(winding) >= 1.0) {
                mult[i] = static_cast<int>(std::lround(winding));
                break;
            }
        }
        ensure(mult[i] >= 1, "find_roots: winding certificate failed at a root");
    }

    int total = 0;
    for (int k : mult) total += k;
    ensure(total == m, "find_roots: multiplicity total " + std::to_string(total) +
                           " does not match the order " + std::to_string(m));

    // boundary argument principle, retried with shifted anchors if a root sits
    // too close to the contour
    long boundary = -1;
    for (cd shift : {cd(0.0, 0.0), cd(0.0171, 0.0093), cd(-0.0143, 0.0221), cd(0.0327, -0.0119),
                     cd(-0.0251, -0.0187)}) {
        cd a0 = lat.anchor + shift;
        std::vector<cd> corners{a0, a0 + cd(1.0, 0.0), a0 + cd(1.0, 0.0) + lat.tau, a0 + lat.tau};
        if (boundary_min_abs(f, corners, 128) < 1e-7 * scale) continue;
        cd acc(0.0, 0.0);
        for (size_t e = 0; e < corners.size(); ++e)
            acc += log_derivative_integral(f, corners[e], corners[(e + 1) % 4], 512);
        double winding = (acc / cd(0.0, kTwoPi)).real();
        if (std::abs(winding - std::round(winding)) < 0.05) {
            boundary = std::lround(winding);
            break;
        }
    }
    ensure(boundary == m, "find_roots: boundary winding " + std::to_string(boundary) +
                              " does not certify the expected " + std::to_string(m) + " roots");

    RootSet out;
    out.boundary_winding = boundary;
    for (size_t i = 0; i < found.size(); ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < found.size(); ++j)
            if (j != i) nearest = std::min(nearest, lat.dist_mod(found[i], found[j]));
        bool flagged = mult[i] > 1 || nearest < 1e-4;
        for (int k = 0; k < mult[i]; ++k) {
            out.roots.push_back(found[i]);
            out.multiplicity_flag.push_back(flagged);
        }
    }
    cd sum(0.0, 0.0);
    for (cd r : out.roots) sum += r;
    auto [p, q] = lat.nearest_point(sum);
    out.root_sum_lattice_dist = std::abs(sum - (cd(static_cast<double>(p), 0.0) +
                                                static_cast<double>(q) * lat.tau));
    return out;
}

std::vector<cd> RootSet::integer_sum_representatives(const Lattice& lat) const {
    std::vector<cd> reps = roots;
    if (reps.empty()) return reps;
    cd sum(0.0, 0.0);
    for (cd r : reps) sum += r;
    auto [p, q] = lat.nearest_point(sum);
    (void)p;  // integer component is harmless; only the tau part must go
    reps.back() -= static_cast<double>(q) * lat.tau;
    return reps;
}

ThetaFunction pencil_section(const ThetaFunction& mu1, const ThetaFunction& mu2, cd u) {
    require(mu1.order() == mu2.order() && mu1.tau() == mu2.tau(),
            "pencil_section: sections live in different spaces");
    std::vector<cd> seeds(mu2.seeds());
    for (int s = 0; s < mu1.order(); ++s) seeds[static_cast<size_t>(s)] -= u * mu1.seeds()[static_cast<size_t>(s)];
    return ThetaFunction(std::move(seeds), mu1.tau(), std::min(mu1.trunc_tol(), mu2.trunc_tol()));
}

PencilRoots pencil_roots(const ThetaFunction& mu1, const ThetaFunction& mu2, cd u,
                         const Lattice& lat, double separation_tol) {
    PencilRoots out;
    out.roots = find_roots(pencil_section(mu1, mu2, u), lat);
    double min_sep = std::numeric_limits<double>::infinity();
    bool multiple = false;
    const auto& r = out.roots.roots;
    for (size_t i = 0; i < r.size(); ++i) {
        if (out.roots.multiplicity_flag[i]) multiple = true;
        for (size_t j = i + 1; j < r.size(); ++j)
            min_sep = std::min(min_sep, lat.dist_mod(r[i], r[j]));
    }
    if (r.size() <= 1) min_sep = std::numeric_limits<double>::infinity();
    out.min_separation = min_sep;
    out.regular = !multiple && min_sep > separation_tol;
    return out;
}

}  // namespace ellpencil
