#include "qcone/ext_int.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

namespace qcone {

std::int64_t ExtInt::value() const {
    if (!is_finite()) throw std::domain_error("ExtInt: value() on infinite entry");
    return v_;
}

std::string ExtInt::to_string() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    return std::to_string(v_);
}

ExtInt ExtInt::parse(std::string_view text) {
    if (text == "inf" || text == "+inf") return pos_inf();
    if (text == "-inf") return neg_inf();
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw std::invalid_argument("ExtInt: cannot parse '" + std::string(text) + "'");
    return ExtInt(v);
}

std::ostream& operator<<(std::ostream& os, ExtInt x) { return os << x.to_string(); }

}  // namespace qcone
