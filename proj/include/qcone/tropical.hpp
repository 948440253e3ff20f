#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qcone/ext_int.hpp"

namespace qcone {

// Square min-plus matrix. The diagonal is an ordinary entry here; the
// quasicone layer decides what it means.
class ExtMatrix {
public:
    ExtMatrix() = default;
    explicit ExtMatrix(std::size_t dim, ExtInt fill = ExtInt::pos_inf())
        : dim_(dim), e_(dim * dim, fill) {}

    // I': zero diagonal, +inf elsewhere (neutral element of the min-plus product)
    static ExtMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    ExtInt& at(std::size_t i, std::size_t j) { return e_[i * dim_ + j]; }
    ExtInt at(std::size_t i, std::size_t j) const { return e_[i * dim_ + j]; }
    const std::vector<ExtInt>& data() const { return e_; }

    friend bool operator==(const ExtMatrix&, const ExtMatrix&) = default;

    std::string to_string() const;

private:
    std::size_t dim_ = 0;
    std::vector<ExtInt> e_;
};

ExtMatrix minplus_product(const ExtMatrix& a, const ExtMatrix& b);
ExtMatrix elementwise_min(const ExtMatrix& a, const ExtMatrix& b);
ExtMatrix elementwise_max(const ExtMatrix& a, const ExtMatrix& b);

struct ClosureStats {
    std::size_t passes = 0;    // products evaluated until nothing moved
    bool floored = false;      // a negative cycle pushed entries to -inf
};

// Least fixpoint of A <- A (.) (A (+) I'). Entries sitting on a negative
// cycle are floored at -inf.
ExtMatrix closure(const ExtMatrix& a, ClosureStats* stats = nullptr);

bool is_idempotent(const ExtMatrix& a);

// Block sums: off-diagonal blocks +inf (box_plus) or +inf above / -inf
// below (box_bslash).
ExtMatrix box_plus(const ExtMatrix& a, const ExtMatrix& b);
ExtMatrix box_bslash(const ExtMatrix& a, const ExtMatrix& b);

// n^box_{-alpha_k} (negative = true) or its transpose: dimension n+1,
// split after the first k indices, -inf in the lower-left block.
ExtMatrix n_square(int n, int k, bool negative);

}  // namespace qcone
