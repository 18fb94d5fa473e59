#include "polar/identity_text.hpp"

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "polar/errors.hpp"

namespace polar {

namespace {

// U+2212 minus sign, matching the typeset identities.
constexpr const char* kMinus = "−";

std::string arg_list(std::uint32_t n) {
    std::ostringstream os;
    for (std::uint32_t i = 1; i <= n; ++i) {
        if (i > 1) {
            os << ",";
        }
        os << "x" << i;
    }
    return os.str();
}

// "x0+"-prefixed sum of the selected arguments, e.g. "x1+x3".
std::string subset_arg(std::uint64_t mask, std::uint32_t n, bool with_base) {
    std::ostringstream os;
    bool first = true;
    if (with_base) {
        os << "x0";
        first = false;
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) {
            if (!first) {
                os << "+";
            }
            os << "x" << (i + 1);
            first = false;
        }
    }
    if (first) {
        os << "0";
    }
    return os.str();
}

// Signed combination for a sign pattern, e.g. "x1−x2+x3".
std::string signed_arg(std::uint64_t eps, std::uint32_t n) {
    std::ostringstream os;
    for (std::uint32_t i = 0; i < n; ++i) {
        const bool flip = (eps & (std::uint64_t{1} << i)) != 0;
        if (i == 0) {
            if (flip) {
                os << kMinus;
            }
        } else {
            os << (flip ? kMinus : "+");
        }
        os << "x" << (i + 1);
    }
    return os.str();
}

void append_term(std::ostringstream& os, bool& first, bool positive, const std::string& arg) {
    if (first) {
        if (!positive) {
            os << kMinus;
        }
        first = false;
    } else {
        os << " " << (positive ? "+" : kMinus) << " ";
    }
    os << "ũ(" << arg << ")";
}

}  // namespace

std::string expand_style_name(ExpandStyle style) {
    switch (style) {
        case ExpandStyle::subset: return "subset";
        case ExpandStyle::offset: return "offset";
        case ExpandStyle::sign_flip: return "signed";
    }
    throw std::logic_error("unreachable style");
}

ExpandStyle parse_expand_style(const std::string& name) {
    if (name == "subset") return ExpandStyle::subset;
    if (name == "offset") return ExpandStyle::offset;
    if (name == "signed") return ExpandStyle::sign_flip;
    throw ParseError("unknown style \"" + name + "\" (expected subset|offset|signed)");
}

std::string expand_identity(std::uint32_t n, ExpandStyle style) {
    if (n < 1 || n > 8) {
        throw std::invalid_argument("expand_identity needs 1 <= n <= 8");
    }
    std::ostringstream os;
    bool first = true;
    switch (style) {
        case ExpandStyle::subset: {
            os << n << "! u(" << arg_list(n) << ") = ";
            for (std::uint32_t k = n; k >= 1; --k) {
                const bool positive = (n - k) % 2 == 0;
                for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
                    if (static_cast<std::uint32_t>(std::popcount(mask)) == k) {
                        append_term(os, first, positive, subset_arg(mask, n, false));
                    }
                }
            }
            break;
        }
        case ExpandStyle::offset: {
            os << n << "! u(" << arg_list(n) << ") = ";
            for (std::uint32_t k = n + 1; k >= 1; --k) {
                const bool positive = (n - (k - 1)) % 2 == 0;
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
                    if (static_cast<std::uint32_t>(std::popcount(mask)) == k - 1) {
                        append_term(os, first, positive, subset_arg(mask, n, true));
                    }
                }
            }
            break;
        }
        case ExpandStyle::sign_flip: {
            os << "2^" << n << " " << n << "! u(" << arg_list(n) << ") = ";
            for (std::uint32_t w = 0; w <= n; ++w) {
                const bool positive = w % 2 == 0;
                for (std::uint64_t eps = 0; eps < (std::uint64_t{1} << n); ++eps) {
                    if (static_cast<std::uint32_t>(std::popcount(eps)) == w) {
                        append_term(os, first, positive, signed_arg(eps, n));
                    }
                }
            }
            break;
        }
    }
    return os.str();
}

}  // namespace polar
