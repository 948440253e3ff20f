#include "qcone/tropical.hpp"

#include <cassert>
#include <sstream>
#include <stdexcept>

namespace qcone {

namespace {

void require_same_dim(const ExtMatrix& a, const ExtMatrix& b, const char* what) {
    if (a.dim() != b.dim())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

ExtMatrix ExtMatrix::identity(std::size_t dim) {
    ExtMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 0;
    return m;
}

std::string ExtMatrix::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) os << (j ? " " : "") << at(i, j);
        os << '\n';
    }
    return os.str();
}

ExtMatrix minplus_product(const ExtMatrix& a, const ExtMatrix& b) {
    require_same_dim(a, b, "minplus_product");
    const std::size_t n = a.dim();
    ExtMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const ExtInt aik = a.at(i, k);
            if (aik.is_pos_inf()) continue;
            for (std::size_t j = 0; j < n; ++j) c.at(i, j) = min(c.at(i, j), aik + b.at(k, j));
        }
    return c;
}

ExtMatrix elementwise_min(const ExtMatrix& a, const ExtMatrix& b) {
    require_same_dim(a, b, "elementwise_min");
    ExtMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c.at(i, j) = min(a.at(i, j), b.at(i, j));
    return c;
}

ExtMatrix elementwise_max(const ExtMatrix& a, const ExtMatrix& b) {
    require_same_dim(a, b, "elementwise_max");
    ExtMatrix c(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) c.at(i, j) = max(a.at(i, j), b.at(i, j));
    return c;
}

ExtMatrix closure(const ExtMatrix& a, ClosureStats* stats) {
    const std::size_t n = a.dim();
    const ExtMatrix id = ExtMatrix::identity(n);
    ExtMatrix cur = a;
    ClosureStats st;

    // Without negative cycles squaring settles after ~log2(n)+1 products, so
    // n passes is generous. Anything still moving afterwards lies on a
    // negative cycle and goes to -inf; a few more passes spread the -inf.
    const std::size_t plain_limit = n + 1;
    const std::size_t hard_limit = 4 * n + 4;
    for (;;) {
        ExtMatrix next = minplus_product(cur, elementwise_min(cur, id));
        ++st.passes;
        if (next == cur) break;
        if (st.passes >= plain_limit) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (next.at(i, j) != cur.at(i, j)) next.at(i, j) = ExtInt::neg_inf();
            st.floored = true;
        }
        cur = std::move(next);
        if (st.passes > hard_limit) throw std::logic_error("closure: no fixpoint");
    }
    if (stats) *stats = st;
    return cur;
}

bool is_idempotent(const ExtMatrix& a) {
    return minplus_product(a, elementwise_min(a, ExtMatrix::identity(a.dim()))) == a;
}

namespace {

ExtMatrix block_sum(const ExtMatrix& a, const ExtMatrix& b, ExtInt lower_left) {
    const std::size_t na = a.dim(), nb = b.dim(), n = na + nb;
    ExtMatrix c(n);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) c.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) c.at(na + i, na + j) = b.at(i, j);
    for (std::size_t i = na; i < n; ++i)
        for (std::size_t j = 0; j < na; ++j) c.at(i, j) = lower_left;
    return c;
}

}  // namespace

ExtMatrix box_plus(const ExtMatrix& a, const ExtMatrix& b) {
    return block_sum(a, b, ExtInt::pos_inf());
}

ExtMatrix box_bslash(const ExtMatrix& a, const ExtMatrix& b) {
    return block_sum(a, b, ExtInt::neg_inf());
}

ExtMatrix n_square(int n, int k, bool negative) {
    if (n < 1 || k < 1 || k > n) throw std::invalid_argument("n_square: need 1 <= k <= n");
    ExtMatrix m = box_bslash(ExtMatrix(static_cast<std::size_t>(k)),
                             ExtMatrix(static_cast<std::size_t>(n + 1 - k)));
    if (negative) return m;
    ExtMatrix t(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) t.at(i, j) = m.at(j, i);
    return t;
}

}  // namespace qcone
