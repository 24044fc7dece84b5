#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ellpencil/common.hpp"

namespace ellpencil {

/// Sparse multivariate polynomial over ComplexScalar with one exponent byte per
/// variable (lexicographic key order). Zero coefficients are never stored.
class PolyElement {
  public:
    using Key = std::vector<std::uint8_t>;

    explicit PolyElement(int num_vars) : num_vars_(num_vars) {
        require(num_vars >= 0, "PolyElement: negative variable count");
    }

    static PolyElement variable(int num_vars, int i);
    static PolyElement constant(int num_vars, cd v);

    int num_vars() const { return num_vars_; }
    const std::map<Key, cd>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add_term(const Key& exponents, cd coeff);

    PolyElement operator+(const PolyElement& o) const;
    PolyElement operator-(const PolyElement& o) const;
    PolyElement operator*(const PolyElement& o) const;
    PolyElement operator*(cd s) const;

    PolyElement derivative(int var) const;
    cd eval(const std::vector<cd>& x) const;

    /// Largest coefficient magnitude (0 for the zero polynomial).
    double norm() const;
    int degree() const;

    /// Copy with coefficients below rel_tol * norm() removed.
    PolyElement pruned(double rel_tol = 1e-14) const;

  private:
    int num_vars_;
    std::map<Key, cd> terms_;
};

}  // namespace ellpencil
