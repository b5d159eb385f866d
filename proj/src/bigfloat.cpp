#include "bhset/bigfloat.hpp"

#include <cstdlib>

namespace bhset {

std::string BigFloat::to_decimal(size_t sig_digits) const {
    if (is_zero()) return "0";
    if (sig_digits < 2) sig_digits = 2;

    mpfr_exp_t exp = 0;
    char* raw = mpfr_get_str(nullptr, &exp, 10, sig_digits, v_, MPFR_RNDN);
    std::string digits(raw);
    mpfr_free_str(raw);

    std::string sign;
    if (!digits.empty() && digits[0] == '-') {
        sign = "-";
        digits.erase(digits.begin());
    }
    // digits encodes 0.d1d2... * 10^exp. Trim trailing zeros for display.
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::string out;
    if (exp > 0 && exp <= 21) {
        if (static_cast<size_t>(exp) >= digits.size()) {
            out = digits + std::string(exp - digits.size(), '0');
        } else {
            out = digits.substr(0, exp) + "." + digits.substr(exp);
        }
    } else if (exp <= 0 && exp > -6) {
        out = "0." + std::string(-exp, '0') + digits;
    } else {
        out = digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(static_cast<long>(exp - 1));
    }
    return sign + out;
}

}  // namespace bhset
