#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qcone/ext_int.hpp"
#include "qcone/root_system.hpp"
#include "qcone/tropical.hpp"

namespace qcone {

// (n+1)x(n+1) exponent matrix of a subalgebra of A_n^(1) plus the scalar
// omega = lowest power of t with h (x) t^omega inside. Diagonal is unused and
// kept at +inf.
class QuasiconeMatrix {
public:
    QuasiconeMatrix() = default;
    explicit QuasiconeMatrix(int n, ExtInt fill = ExtInt::pos_inf(), ExtInt heisenberg = 1);

    int rank() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(n_ + 1); }

    ExtInt at(int p, int q) const { return m_.at(static_cast<std::size_t>(p), static_cast<std::size_t>(q)); }
    void set(int p, int q, ExtInt v);
    ExtInt at(SignedRoot r) const { return at(r.row(), r.col()); }

    ExtInt heisenberg() const { return omega_; }
    void set_heisenberg(ExtInt w) { omega_ = w; }

    const ExtMatrix& matrix() const { return m_; }
    bool all_finite() const;

    // row-major off-diagonal entries, the sort key used by normalize
    std::vector<ExtInt> off_diagonal() const;

    friend bool operator==(const QuasiconeMatrix&, const QuasiconeMatrix&) = default;

    // whitespace-separated rows, '*' on the diagonal
    std::string to_text() const;
    static QuasiconeMatrix from_text(const std::string& text, ExtInt heisenberg = 1);

private:
    int n_ = 0;
    ExtMatrix m_;
    ExtInt omega_ = 1;
};

struct Violation {
    enum class Kind { triangle, pair, heisenberg, infinite };
    Kind kind;
    int p = -1, q = -1, r = -1;
    std::string message;
};

std::vector<Violation> validate(const QuasiconeMatrix& c);
inline bool is_valid(const QuasiconeMatrix& c) { return validate(c).empty(); }

using GapVector = std::vector<ExtInt>;

// (c_nu + c_-nu) over I_n in increasing nu
GapVector gap(const QuasiconeMatrix& c);
// sum of (g - 2)_+; throws on a +inf gap component
std::int64_t defect(const QuasiconeMatrix& c);
// all gap components in {1,2}
bool is_gvm_complete(const QuasiconeMatrix& c);
bool is_monotone(const GapVector& g);
// superdiagonal all 1 and monotone gap
bool is_normal(const QuasiconeMatrix& c);
// some pair sum or omega dropped below 1
bool is_degenerate(const QuasiconeMatrix& c);

// c_nu = l(nu), c_-nu = a_nu - l(nu); a must be non-increasing
QuasiconeMatrix gamma(int n, const std::vector<std::int64_t>& a);

struct OrderRelation {
    bool equal = false;
    bool le_i = false;   // same positive part, negatives below
    bool le_ii = false;  // same gap, negatives below
    bool le() const { return le_i || le_ii; }
};
OrderRelation compare(const QuasiconeMatrix& c, const QuasiconeMatrix& d);

// closure of the entrywise min (subalgebra generated by the union)
QuasiconeMatrix lattice_join(const QuasiconeMatrix& c, const QuasiconeMatrix& d);
// entrywise max (intersection)
QuasiconeMatrix lattice_meet(const QuasiconeMatrix& c, const QuasiconeMatrix& d);

// Tropical closure over the off-diagonal entries together with omega.
// Pair sums feed omega and a negative omega floors everything it reaches.
QuasiconeMatrix close(const QuasiconeMatrix& c);

// c_pq + u_p - u_q
QuasiconeMatrix translate_action(const QuasiconeMatrix& c, const std::vector<std::int64_t>& u);
// c'_{p,q} = c_{sigma^-1(p), sigma^-1(q)}; sigma[i] is the image of i
QuasiconeMatrix permute_action(const QuasiconeMatrix& c, const std::vector<int>& sigma);

// Canonical representative of the orbit under permutations and translations.
// Throws std::invalid_argument on infinite entries or when no monotone
// candidate exists.
QuasiconeMatrix normalize(const QuasiconeMatrix& c);

struct EnumerationOptions {
    int rank = 2;
    int bound = 4;
    bool raw = false;  // every normal matrix instead of one per orbit
};

// Deterministic stream; the callback returns false to stop early.
void enumerate_normal(const EnumerationOptions& opt,
                      const std::function<bool(const QuasiconeMatrix&)>& sink);
std::vector<QuasiconeMatrix> enumerate_normal(int n, int bound, bool raw = false);

}  // namespace qcone
