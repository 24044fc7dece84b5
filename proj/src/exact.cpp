#include "ellpencil/exact.hpp"

#include <map>
#include <memory>
#include <sstream>

namespace ellpencil {
namespace {

using Vec = std::vector<Rat>;

void trim_poly(Vec& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division, remainder must vanish.
Vec poly_div_exact(Vec num, const Vec& den) {
    require(!den.empty(), "poly_div_exact: zero divisor");
    Vec q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
    const Rat lead_inv = Rat(1) / den.back();
    for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
        Rat f = num[static_cast<size_t>(i)] * lead_inv;
        if (f == 0) continue;
        q[static_cast<size_t>(i) - den.size() + 1] = f;
        for (size_t j = 0; j < den.size(); ++j)
            num[static_cast<size_t>(i) - den.size() + 1 + j] -= f * den[j];
    }
    trim_poly(num);
    require(num.empty(), "poly_div_exact: nonzero remainder");
    return q;
}

// n-th cyclotomic polynomial: divide x^n - 1 by all lower cyclotomic factors.
Vec cyclotomic_poly(int n) {
    Vec p(static_cast<size_t>(n) + 1, Rat(0));
    p[0] = Rat(-1);
    p[static_cast<size_t>(n)] = Rat(1);
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = poly_div_exact(std::move(p), cyclotomic_poly(d));
    return p;
}

// Reduce a polynomial modulo the monic min_poly of the field.
Vec reduce_mod(Vec p, const CycloField& f) {
    const int d = f.degree;
    for (int i = static_cast<int>(p.size()) - 1; i >= d; --i) {
        Rat c = p[static_cast<size_t>(i)];
        if (c == 0) continue;
        p[static_cast<size_t>(i)] = 0;
        for (int j = 0; j < d; ++j)
            p[static_cast<size_t>(i - d + j)] -= c * f.min_poly[static_cast<size_t>(j)];
    }
    p.resize(static_cast<size_t>(d), Rat(0));
    return p;
}

// Extended Euclid over Q[x]: returns u with u*a == 1 (mod m), a nonzero mod m.
Vec poly_mod_inverse(Vec a, Vec m) {
    trim_poly(a);
    require(!a.empty(), "poly_mod_inverse: zero element");
    Vec r0 = std::move(m), r1 = std::move(a);
    Vec s0{}, s1{Rat(1)};
    while (true) {
        trim_poly(r1);
        require(!r1.empty(), "poly_mod_inverse: element not invertible");
        if (r1.size() == 1) {
            Vec out = s1;
            const Rat inv = Rat(1) / r1[0];
            for (Rat& c : out) c *= inv;
            return out;
        }
        // r0 = q*r1 + rem
        Vec rem = r0, q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, Rat(0));
        const Rat lead_inv = Rat(1) / r1.back();
        for (int i = static_cast<int>(rem.size()) - 1; i >= static_cast<int>(r1.size()) - 1; --i) {
            Rat f = rem[static_cast<size_t>(i)] * lead_inv;
            if (f == 0) continue;
            q[static_cast<size_t>(i) - r1.size() + 1] = f;
            for (size_t j = 0; j < r1.size(); ++j)
                rem[static_cast<size_t>(i) - r1.size() + 1 + j] -= f * r1[j];
        }
        trim_poly(rem);
        // s_next = s0 - q*s1
        Vec s_next = s0;
        s_next.resize(std::max(s_next.size(), q.size() + s1.size()), Rat(0));
        for (size_t i = 0; i < q.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) s_next[i + j] -= q[i] * s1[j];
        trim_poly(s_next);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s_next);
    }
}

std::map<int, std::unique_ptr<CycloField>>& field_registry() {
    static std::map<int, std::unique_ptr<CycloField>> reg;
    return reg;
}

}  // namespace

const CycloField& CycloField::of(int n) {
    require(n >= 1, "CycloField: n must be positive");
    auto& reg = field_registry();
    auto it = reg.find(n);
    if (it != reg.end()) return *it->second;

    auto f = std::make_unique<CycloField>();
    f->n = n;
    f->min_poly = cyclotomic_poly(n);
    f->degree = static_cast<int>(f->min_poly.size()) - 1;

    f->power_reduction.resize(static_cast<size_t>(2 * f->degree - 1));
    for (int e = 0; e < 2 * f->degree - 1; ++e) {
        Vec p(static_cast<size_t>(e) + 1, Rat(0));
        p[static_cast<size_t>(e)] = 1;
        f->power_reduction[static_cast<size_t>(e)] = reduce_mod(std::move(p), *f);
    }
    f->root_powers.resize(static_cast<size_t>(n));
    for (int e = 0; e < n; ++e) {
        Vec p(static_cast<size_t>(e) + 1, Rat(0));
        p[static_cast<size_t>(e)] = 1;
        f->root_powers[static_cast<size_t>(e)] = reduce_mod(std::move(p), *f);
    }

    auto [pos, ok] = reg.emplace(n, std::move(f));
    require(ok, "CycloField: registry insert failed");
    return *pos->second;
}

Cyc::Cyc(const Rat& r) {
    if (r != 0) c_ = {r};
}

Cyc::Cyc(long v) {
    if (v != 0) c_ = {Rat(v)};
}

Cyc::Cyc(const CycloField& field, std::vector<Rat> coords) : field_(&field), c_(std::move(coords)) {
    require(static_cast<int>(c_.size()) <= field.degree, "Cyc: coordinate vector too long");
    c_.resize(static_cast<size_t>(field.degree), Rat(0));
    trim();
}

Cyc Cyc::zeta_power(int n, long e) {
    const CycloField& f = CycloField::of(n);
    long r = e % n;
    if (r < 0) r += n;
    return Cyc(f, f.root_powers[static_cast<size_t>(r)]);
}

bool Cyc::is_zero() const { return c_.empty(); }

void Cyc::trim() {
    bool all = true;
    for (const Rat& x : c_)
        if (x != 0) {
            all = false;
            break;
        }
    if (all) {
        c_.clear();
        field_ = nullptr;
    } else if (field_ == nullptr) {
        c_.resize(1);
    }
}

void Cyc::promote(const CycloField& field) {
    if (field_ == &field) return;
    require(field_ == nullptr, "Cyc: mixing elements of different cyclotomic fields");
    Rat v = c_.empty() ? Rat(0) : c_[0];
    field_ = &field;
    c_.assign(static_cast<size_t>(field.degree), Rat(0));
    if (v != 0) c_[0] = v;
}

Cyc Cyc::operator-() const {
    Cyc out = *this;
    for (Rat& x : out.c_) x = -x;
    return out;
}

Cyc Cyc::operator+(const Cyc& o) const {
    Cyc a = *this, b = o;
    if (a.field_ == nullptr && b.field_ != nullptr) a.promote(*b.field_);
    if (b.field_ == nullptr && a.field_ != nullptr) b.promote(*a.field_);
    require(a.field_ == b.field_, "Cyc: mixing elements of different cyclotomic fields");
    if (a.c_.empty()) return b;
    if (b.c_.empty()) return a;
    for (size_t i = 0; i < b.c_.size(); ++i) a.c_[i] += b.c_[i];
    a.trim();
    return a;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
    if (c_.empty() || o.c_.empty()) return {};
    Cyc a = *this, b = o;
    if (a.field_ == nullptr && b.field_ != nullptr) a.promote(*b.field_);
    if (b.field_ == nullptr && a.field_ != nullptr) b.promote(*a.field_);
    require(a.field_ == b.field_, "Cyc: mixing elements of different cyclotomic fields");
    if (a.field_ == nullptr) return Cyc(a.c_[0] * b.c_[0]);

    const CycloField& f = *a.field_;
    const int d = f.degree;
    std::vector<Rat> conv(static_cast<size_t>(2 * d - 1), Rat(0));
    for (int i = 0; i < d; ++i) {
        if (a.c_[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (b.c_[static_cast<size_t>(j)] == 0) continue;
            conv[static_cast<size_t>(i + j)] += a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
        }
    }
    std::vector<Rat> out(static_cast<size_t>(d), Rat(0));
    for (int e = 0; e < 2 * d - 1; ++e) {
        if (conv[static_cast<size_t>(e)] == 0) continue;
        const Vec& red = f.power_reduction[static_cast<size_t>(e)];
        for (int j = 0; j < d; ++j) out[static_cast<size_t>(j)] += conv[static_cast<size_t>(e)] * red[static_cast<size_t>(j)];
    }
    return Cyc(f, std::move(out));
}

bool Cyc::operator==(const Cyc& o) const { return (*this - o).is_zero(); }

Cyc Cyc::inverse() const {
    require(!c_.empty(), "Cyc: inverse of zero");
    if (field_ == nullptr) return Cyc(Rat(1) / c_[0]);
    Vec u = poly_mod_inverse(c_, field_->min_poly);
    u.resize(static_cast<size_t>(field_->degree), Rat(0));
    return Cyc(*field_, std::move(u));
}

std::complex<double> Cyc::to_complex() const {
    if (c_.empty()) return {0.0, 0.0};
    if (field_ == nullptr) return {c_[0].get_d(), 0.0};
    const double ang = kTwoPi / field_->n;
    std::complex<double> acc{0.0, 0.0};
    for (size_t i = 0; i < c_.size(); ++i)
        acc += c_[i].get_d() * std::polar(1.0, ang * static_cast<double>(i));
    return acc;
}

std::string Cyc::str() const {
    if (c_.empty()) return "0";
    if (field_ == nullptr) return rat_str(c_[0]);
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ",";
        os << rat_str(c_[i]);
    }
    os << "]";
    return os.str();
}

std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace ellpencil
