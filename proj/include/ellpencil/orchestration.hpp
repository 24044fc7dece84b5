#pragma once

// Shared bracket-assembly loop used by every pencil builder (floating-point
// and exact): for each basis pair i < j the supplied splitter returns the two
// pencil halves of [f_i, f_j] as coordinate vectors, and the loop writes them
// into the structure tensors antisymmetrically.

namespace ellpencil {

template <class Tensor, class SplitPair>
void orchestrate_bracket_build(int dim, SplitPair&& split_pair, Tensor& c1, Tensor& c2) {
    for (int i = 0; i < dim; ++i) {
        for (int j = i + 1; j < dim; ++j) {
            auto pq = split_pair(i, j);
            for (int k = 0; k < dim; ++k) {
                auto pv = pq.first[k];
                auto qv = pq.second[k];
                c1.set(i, j, k, pv);
                c1.set(j, i, k, -pv);
                c2.set(i, j, k, qv);
                c2.set(j, i, k, -qv);
            }
        }
    }
}

}  // namespace ellpencil
