#ifndef POLAR_INCLEXCL_HPP
#define POLAR_INCLEXCL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "polar/polarize.hpp"

namespace polar {

// A finite universe of labeled elements with n >= 1 distinguished subsets,
// held as dense membership bitsets.
class SetSystem {
public:
    SetSystem(std::vector<std::string> universe,
              const std::vector<std::vector<std::string>>& subsets);

    std::size_t universe_size() const { return universe_.size(); }
    std::uint32_t subset_count() const { return static_cast<std::uint32_t>(membership_.size()); }
    const std::vector<std::string>& universe() const { return universe_; }

    bool member(std::uint32_t subset, std::size_t element) const;

private:
    std::vector<std::string> universe_;
    std::vector<std::vector<bool>> membership_;  // [subset][element]
};

// |A_1' ∩ ... ∩ A_n'|: elements of the universe lying in no subset, by
// direct membership scan.
std::int64_t complement_intersection_count(const SetSystem& s);

// The alternating sum over all 2^n index subsets of the sizes of the
// corresponding intersections (the empty index set contributes |A|).
std::int64_t inclusion_exclusion(const SetSystem& s);

// Pointwise identity between the product of the complement indicators and
// the signed sum of indicator products, checked at every universe element.
bool verify_indicator_identity(const SetSystem& s);

// Term list of the signed indicator expansion: every mask with sign
// (-1)^popcount.
std::vector<SignedMask> indicator_terms(std::uint32_t n);

// The shift-operator expansion and the indicator expansion name the same
// terms: mapping each shift mask to its complement must carry one signed
// term list exactly onto the other.
bool shift_terms_match_indicator(std::uint32_t n);

}  // namespace polar

#endif
