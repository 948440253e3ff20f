#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/rational.hpp>

namespace qcone {

using Rational = boost::rational<std::int64_t>;

// Exponential index of a positive classical root: alpha_i -> 2^(i-1), so
// alpha_{a+1}+...+alpha_b has nu = 2^b - 2^a and sits at matrix position (a,b).
class RootIndex {
public:
    RootIndex() = default;
    explicit RootIndex(std::uint32_t nu);  // throws unless nu is a contiguous bit block
    static RootIndex from_positions(int a, int b);

    std::uint32_t nu() const { return nu_; }
    int a() const;
    int b() const;
    int length() const;  // popcount = b - a

    // nu is in I_n
    bool admissible(int n) const { return b() <= n; }

    friend bool operator==(RootIndex, RootIndex) = default;
    friend auto operator<=>(RootIndex, RootIndex) = default;

private:
    std::uint32_t nu_ = 1;
};

// I_n in increasing order
std::vector<RootIndex> admissible_indices(int n);

// Classical root with a sign. Positive roots live above the diagonal.
struct SignedRoot {
    RootIndex index;
    bool negative = false;

    static SignedRoot from_signed(std::int64_t signed_nu);  // +3, -12, ...
    static SignedRoot from_position(int p, int q);          // eps_p - eps_q

    std::int64_t signed_nu() const { return negative ? -std::int64_t(index.nu()) : index.nu(); }
    int row() const { return negative ? index.b() : index.a(); }
    int col() const { return negative ? index.a() : index.b(); }
    SignedRoot operator-() const { return {index, !negative}; }

    // coefficients on alpha_1..alpha_n
    std::vector<std::int64_t> simple_coordinates(int n) const;

    friend bool operator==(SignedRoot, SignedRoot) = default;
};

// classical part (or zero) plus k*delta
struct AffineRoot {
    std::optional<SignedRoot> classical;
    std::int64_t delta = 0;

    bool is_root() const { return classical.has_value() || delta != 0; }
    bool is_real() const { return classical.has_value(); }
    bool is_imaginary() const { return !classical && delta != 0; }
    AffineRoot operator-() const;

    friend bool operator==(const AffineRoot&, const AffineRoot&) = default;
};

// Sum of affine roots when the classical parts add to a root or zero.
std::optional<AffineRoot> add_roots(const AffineRoot& x, const AffineRoot& y);

// All real and imaginary roots of A_n^(1) with |delta coefficient| <= window.
std::vector<AffineRoot> root_window(int n, int window);

// Values on the coroots alpha_0^v .. alpha_n^v, plus lambda(d).
struct Weight {
    std::vector<Rational> coroot_values;
    Rational d_value = 0;

    int rank() const { return static_cast<int>(coroot_values.size()) - 1; }
    Rational central_charge() const;  // all marks are 1 in type A

    friend bool operator==(const Weight&, const Weight&) = default;
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

Rational pairing(const Weight& lambda, const AffineRoot& beta);
Sign classify(const Weight& lambda, const AffineRoot& beta);
bool positive_member(const Weight& l1, const Weight& l2, const AffineRoot& beta);
bool parabolic_member(const Weight& l1, const Weight& l2, const Weight& l3,
                      const AffineRoot& beta);

Weight zero_weight(int n);
Weight fundamental_weight(int n, int i);  // omega_{alpha_i}, i = 0..n
// lambda_{+-X} = +- sum of omega over X, X a subset of {1..n} (0 allowed for alpha_0)
Weight lambda_set(int n, const std::vector<int>& X, int sign = +1);
// hyperplane defining weight phi_X for X a subset of {1..n}
Weight phi_X(int n, const std::vector<int>& X);

// t_alpha(lambda) for alpha = sum m_i alpha_i (i = 1..n)
Weight translate(const std::vector<std::int64_t>& alpha_simple_coords, const Weight& lambda);

}  // namespace qcone
