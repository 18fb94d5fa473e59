#ifndef POLAR_IDENTITY_TEXT_HPP
#define POLAR_IDENTITY_TEXT_HPP

#include <cstdint>
#include <string>

namespace polar {

enum class ExpandStyle {
    subset,     // n! u = alternating sum over nonempty subset sums
    offset,     // same with every argument shifted by a base point x0
    sign_flip,  // 2^n n! u = alternating sum over +-1 sign patterns
};

std::string expand_style_name(ExpandStyle style);
ExpandStyle parse_expand_style(const std::string& name);

// The chosen identity for symbolic arguments x1..xn, one line. Terms are
// grouped (larger subsets first; lighter sign patterns first) and ordered
// deterministically within each group by ascending mask.
std::string expand_identity(std::uint32_t n, ExpandStyle style);

}  // namespace polar

#endif
