#include "ellpencil/poly.hpp"

#include <algorithm>

namespace ellpencil {

PolyElement PolyElement::variable(int num_vars, int i) {
    require(i >= 0 && i < num_vars, "PolyElement::variable: index out of range");
    PolyElement p(num_vars);
    Key k(static_cast<size_t>(num_vars), 0);
    k[static_cast<size_t>(i)] = 1;
    p.terms_[k] = cd(1.0, 0.0);
    return p;
}

PolyElement PolyElement::constant(int num_vars, cd v) {
    PolyElement p(num_vars);
    if (v != cd(0.0, 0.0)) p.terms_[Key(static_cast<size_t>(num_vars), 0)] = v;
    return p;
}

void PolyElement::add_term(const Key& exponents, cd coeff) {
    require(static_cast<int>(exponents.size()) == num_vars_,
            "PolyElement::add_term: exponent arity mismatch");
    auto it = terms_.find(exponents);
    if (it == terms_.end()) {
        if (coeff != cd(0.0, 0.0)) terms_[exponents] = coeff;
        return;
    }
    it->second += coeff;
    if (it->second == cd(0.0, 0.0)) terms_.erase(it);
}

PolyElement PolyElement::operator+(const PolyElement& o) const {
    require(num_vars_ == o.num_vars_, "PolyElement: mixed arities");
    PolyElement out = *this;
    for (const auto& [k, v] : o.terms_) out.add_term(k, v);
    return out;
}

PolyElement PolyElement::operator-(const PolyElement& o) const {
    require(num_vars_ == o.num_vars_, "PolyElement: mixed arities");
    PolyElement out = *this;
    for (const auto& [k, v] : o.terms_) out.add_term(k, -v);
    return out;
}

PolyElement PolyElement::operator*(const PolyElement& o) const {
    require(num_vars_ == o.num_vars_, "PolyElement: mixed arities");
    PolyElement out(num_vars_);
    for (const auto& [ka, va] : terms_) {
        for (const auto& [kb, vb] : o.terms_) {
            Key k(static_cast<size_t>(num_vars_));
            for (int i = 0; i < num_vars_; ++i) {
                int e = ka[static_cast<size_t>(i)] + kb[static_cast<size_t>(i)];
                ensure(e <= 255, "PolyElement: exponent overflow");
                k[static_cast<size_t>(i)] = static_cast<std::uint8_t>(e);
            }
            out.add_term(k, va * vb);
        }
    }
    return out;
}

PolyElement PolyElement::operator*(cd s) const {
    PolyElement out(num_vars_);
    if (s == cd(0.0, 0.0)) return out;
    for (const auto& [k, v] : terms_) out.terms_[k] = v * s;
    return out;
}

PolyElement PolyElement::derivative(int var) const {
    require(var >= 0 && var < num_vars_, "PolyElement::derivative: index out of range");
    PolyElement out(num_vars_);
    for (const auto& [k, v] : terms_) {
        int e = k[static_cast<size_t>(var)];
        if (e == 0) continue;
        Key kk = k;
        kk[static_cast<size_t>(var)] = static_cast<std::uint8_t>(e - 1);
        out.add_term(kk, v * static_cast<double>(e));
    }
    return out;
}

cd PolyElement::eval(const std::vector<cd>& x) const {
    require(static_cast<int>(x.size()) == num_vars_, "PolyElement::eval: arity mismatch");
    cd total(0.0, 0.0);
    for (const auto& [k, v] : terms_) {
        cd t = v;
        for (int i = 0; i < num_vars_; ++i)
            for (int e = 0; e < k[static_cast<size_t>(i)]; ++e) t *= x[static_cast<size_t>(i)];
        total += t;
    }
    return total;
}

double PolyElement::norm() const {
    double m = 0.0;
    for (const auto& [k, v] : terms_) m = std::max(m, std::abs(v));
    return m;
}

int PolyElement::degree() const {
    int d = 0;
    for (const auto& [k, v] : terms_) {
        int s = 0;
        for (auto e : k) s += e;
        d = std::max(d, s);
    }
    return d;
}

PolyElement PolyElement::pruned(double rel_tol) const {
    const double cut = rel_tol * norm();
    PolyElement out(num_vars_);
    for (const auto& [k, v] : terms_)
        if (std::abs(v) > cut) out.terms_[k] = v;
    return out;
}

}  // namespace ellpencil
