#include "qcone/root_system.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace qcone {

RootIndex::RootIndex(std::uint32_t nu) : nu_(nu) {
    if (nu == 0) throw std::invalid_argument("RootIndex: zero is not a root");
    const std::uint32_t low = nu & (~nu + 1);
    const std::uint32_t shifted = nu + low;  // contiguous block -> single bit (or 0 on overflow)
    if ((shifted & (shifted - 1)) != 0)
        throw std::invalid_argument("RootIndex: " + std::to_string(nu) + " is not of the form 2^b - 2^a");
}

RootIndex RootIndex::from_positions(int a, int b) {
    if (a < 0 || b <= a || b > 30) throw std::invalid_argument("RootIndex: need 0 <= a < b");
    return RootIndex((1u << b) - (1u << a));
}

int RootIndex::a() const { return std::countr_zero(nu_); }
int RootIndex::b() const { return a() + length(); }
int RootIndex::length() const { return std::popcount(nu_); }

std::vector<RootIndex> admissible_indices(int n) {
    std::vector<RootIndex> out;
    for (int b = 1; b <= n; ++b)
        for (int a = 0; a < b; ++a) out.push_back(RootIndex::from_positions(a, b));
    std::sort(out.begin(), out.end());
    return out;
}

SignedRoot SignedRoot::from_signed(std::int64_t signed_nu) {
    if (signed_nu == 0) throw std::invalid_argument("SignedRoot: zero index");
    const bool neg = signed_nu < 0;
    const std::int64_t mag = neg ? -signed_nu : signed_nu;
    if (mag > 0x7fffffff) throw std::invalid_argument("SignedRoot: index out of range");
    return {RootIndex(static_cast<std::uint32_t>(mag)), neg};
}

SignedRoot SignedRoot::from_position(int p, int q) {
    if (p == q) throw std::invalid_argument("SignedRoot: diagonal position");
    if (p < q) return {RootIndex::from_positions(p, q), false};
    return {RootIndex::from_positions(q, p), true};
}

std::vector<std::int64_t> SignedRoot::simple_coordinates(int n) const {
    std::vector<std::int64_t> m(static_cast<std::size_t>(n), 0);
    if (index.b() > n) throw std::invalid_argument("SignedRoot: index exceeds rank");
    for (int i = index.a(); i < index.b(); ++i) m[static_cast<std::size_t>(i)] = negative ? -1 : 1;
    return m;
}

AffineRoot AffineRoot::operator-() const {
    AffineRoot r;
    if (classical) r.classical = -*classical;
    r.delta = -delta;
    return r;
}

std::optional<AffineRoot> add_roots(const AffineRoot& x, const AffineRoot& y) {
    AffineRoot s;
    s.delta = x.delta + y.delta;
    if (!x.classical) {
        s.classical = y.classical;
        return s;
    }
    if (!y.classical) {
        s.classical = x.classical;
        return s;
    }
    // work in eps coordinates: root (p,q) is eps_p - eps_q
    const int p1 = x.classical->row(), q1 = x.classical->col();
    const int p2 = y.classical->row(), q2 = y.classical->col();
    if (p1 == q2 && q1 == p2) return s;  // cancels
    if (q1 == p2) {
        s.classical = SignedRoot::from_position(p1, q2);
        return s;
    }
    if (q2 == p1) {
        s.classical = SignedRoot::from_position(p2, q1);
        return s;
    }
    return std::nullopt;
}

std::vector<AffineRoot> root_window(int n, int window) {
    std::vector<AffineRoot> out;
    for (int k = -window; k <= window; ++k) {
        if (k != 0) out.push_back({std::nullopt, k});
        for (const auto& idx : admissible_indices(n)) {
            out.push_back({SignedRoot{idx, false}, k});
            out.push_back({SignedRoot{idx, true}, k});
        }
    }
    return out;
}

Rational Weight::central_charge() const {
    Rational s = 0;
    for (const auto& v : coroot_values) s += v;
    return s;
}

Rational pairing(const Weight& lambda, const AffineRoot& beta) {
    Rational v = Rational(beta.delta) * lambda.central_charge();
    if (beta.classical) {
        const auto m = beta.classical->simple_coordinates(lambda.rank());
        for (std::size_t i = 0; i < m.size(); ++i)
            v += Rational(m[i]) * lambda.coroot_values[i + 1];
    }
    return v;
}

Sign classify(const Weight& lambda, const AffineRoot& beta) {
    const Rational v = pairing(lambda, beta);
    if (v > 0) return Sign::positive;
    if (v < 0) return Sign::negative;
    return Sign::zero;
}

bool positive_member(const Weight& l1, const Weight& l2, const AffineRoot& beta) {
    const Sign s = classify(l1, beta);
    return s == Sign::positive || (s == Sign::zero && classify(l2, beta) == Sign::positive);
}

bool parabolic_member(const Weight& l1, const Weight& l2, const Weight& l3,
                      const AffineRoot& beta) {
    const Sign s = classify(l1, beta);
    if (s == Sign::positive) return true;
    if (s != Sign::zero) return false;
    return classify(l2, beta) == Sign::positive || classify(l3, beta) == Sign::positive;
}

Weight zero_weight(int n) {
    if (n < 1) throw std::invalid_argument("weight: rank must be >= 1");
    return Weight{std::vector<Rational>(static_cast<std::size_t>(n + 1), Rational(0)), 0};
}

Weight fundamental_weight(int n, int i) {
    Weight w = zero_weight(n);
    if (i < 0 || i > n) throw std::invalid_argument("fundamental_weight: index out of range");
    w.coroot_values[static_cast<std::size_t>(i)] = 1;
    return w;
}

Weight lambda_set(int n, const std::vector<int>& X, int sign) {
    Weight w = zero_weight(n);
    for (int i : X) {
        if (i < 0 || i > n) throw std::invalid_argument("lambda_set: index out of range");
        w.coroot_values[static_cast<std::size_t>(i)] += sign;
    }
    return w;
}

Weight phi_X(int n, const std::vector<int>& X) {
    Weight w = zero_weight(n);
    std::vector<bool> in_x(static_cast<std::size_t>(n + 1), false);
    for (int i : X) {
        if (i < 1 || i > n) throw std::invalid_argument("phi_X: X must be a subset of {1..n}");
        in_x[static_cast<std::size_t>(i)] = true;
    }
    int outside = 0;
    for (int i = 1; i <= n; ++i)
        if (!in_x[static_cast<std::size_t>(i)]) {
            w.coroot_values[static_cast<std::size_t>(i)] = 1;
            ++outside;
        }
    if (outside == 0) {  // X is everything: lambda of the full classical basis
        for (int i = 1; i <= n; ++i) w.coroot_values[static_cast<std::size_t>(i)] = 1;
        return w;
    }
    w.coroot_values[0] = -outside;  // marks are all 1
    return w;
}

namespace {

// affine Cartan matrix of A_n^(1), n >= 2; for n = 1 the off-diagonal entries are -2
std::int64_t cartan(int n, int i, int j) {
    if (i == j) return 2;
    if (n == 1) return -2;
    const int d = std::abs(i - j);
    return (d == 1 || d == n) ? -1 : 0;
}

}  // namespace

Weight translate(const std::vector<std::int64_t>& m, const Weight& lambda) {
    const int n = lambda.rank();
    if (static_cast<int>(m.size()) != n) throw std::invalid_argument("translate: coordinate length must equal rank");
    const Rational c = lambda.central_charge();
    Rational lam_alpha = 0;  // (lambda, alpha)
    for (int j = 1; j <= n; ++j) lam_alpha += Rational(m[j - 1]) * lambda.coroot_values[j];
    Rational alpha_sq = 0;   // (alpha, alpha)
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) alpha_sq += Rational(m[i - 1] * m[j - 1] * cartan(n, i, j));

    Weight out = lambda;
    // alpha evaluated on alpha_i^v is sum_j m_j a_{ij}
    for (int i = 0; i <= n; ++i) {
        Rational v = 0;
        for (int j = 1; j <= n; ++j) v += Rational(m[j - 1] * cartan(n, i, j));
        out.coroot_values[i] += c * v;
    }
    out.d_value -= lam_alpha + Rational(1, 2) * alpha_sq * c;
    return out;
}

}  // namespace qcone
