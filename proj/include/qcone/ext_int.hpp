#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qcone {

// Integer or +-infinity. Read as the exponent tail set Z_{>=v}:
// +inf is the empty set, -inf is all of Z.
class ExtInt {
public:
    constexpr ExtInt() = default;
    constexpr ExtInt(std::int64_t v) : kind_(Kind::finite), v_(v) {}  // NOLINT: implicit on purpose

    static constexpr ExtInt pos_inf() { return ExtInt(Kind::pos_inf); }
    static constexpr ExtInt neg_inf() { return ExtInt(Kind::neg_inf); }

    constexpr bool is_finite() const { return kind_ == Kind::finite; }
    constexpr bool is_pos_inf() const { return kind_ == Kind::pos_inf; }
    constexpr bool is_neg_inf() const { return kind_ == Kind::neg_inf; }

    // throws std::domain_error on an infinite value
    std::int64_t value() const;

    // empty set absorbs: +inf + anything = +inf, even against -inf
    friend constexpr ExtInt operator+(ExtInt a, ExtInt b) {
        if (a.is_pos_inf() || b.is_pos_inf()) return pos_inf();
        if (a.is_neg_inf() || b.is_neg_inf()) return neg_inf();
        return ExtInt(a.v_ + b.v_);
    }
    friend constexpr ExtInt operator-(ExtInt a, std::int64_t k) { return a + ExtInt(-k); }
    friend constexpr ExtInt operator-(ExtInt a) {
        if (a.is_pos_inf()) return neg_inf();
        if (a.is_neg_inf()) return pos_inf();
        return ExtInt(-a.v_);
    }

    friend constexpr bool operator==(ExtInt, ExtInt) = default;
    friend constexpr std::strong_ordering operator<=>(ExtInt a, ExtInt b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        return a.v_ <=> b.v_;
    }

    // "inf", "-inf" or a decimal integer
    std::string to_string() const;
    static ExtInt parse(std::string_view text);

private:
    enum class Kind : std::uint8_t { neg_inf = 0, finite = 1, pos_inf = 2 };
    constexpr explicit ExtInt(Kind k) : kind_(k), v_(0) {}

    Kind kind_ = Kind::finite;
    std::int64_t v_ = 0;
};

inline ExtInt min(ExtInt a, ExtInt b) { return b < a ? b : a; }
inline ExtInt max(ExtInt a, ExtInt b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, ExtInt x);

}  // namespace qcone
