#include "polar/inclexcl.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace polar {

SetSystem::SetSystem(std::vector<std::string> universe,
                     const std::vector<std::vector<std::string>>& subsets)
    : universe_(std::move(universe)) {
    if (subsets.empty()) {
        throw ParseError("a set system needs at least one subset");
    }
    std::map<std::string, std::size_t> id;
    for (std::size_t i = 0; i < universe_.size(); ++i) {
        if (!id.emplace(universe_[i], i).second) {
            throw ParseError("duplicate universe element \"" + universe_[i] + "\"");
        }
    }
    membership_.reserve(subsets.size());
    for (const auto& subset : subsets) {
        std::vector<bool> row(universe_.size(), false);
        for (const std::string& label : subset) {
            const auto it = id.find(label);
            if (it == id.end()) {
                throw ParseError("subset element \"" + label + "\" is not in the universe");
            }
            row[it->second] = true;
        }
        membership_.push_back(std::move(row));
    }
}

bool SetSystem::member(std::uint32_t subset, std::size_t element) const {
    if (subset >= membership_.size() || element >= universe_.size()) {
        throw IndexOutOfRange("set-system membership query out of range");
    }
    return membership_[subset][element];
}

std::int64_t complement_intersection_count(const SetSystem& s) {
    std::int64_t count = 0;
    for (std::size_t x = 0; x < s.universe_size(); ++x) {
        bool in_any = false;
        for (std::uint32_t i = 0; i < s.subset_count(); ++i) {
            if (s.member(i, x)) {
                in_any = true;
                break;
            }
        }
        if (!in_any) {
            ++count;
        }
    }
    return count;
}

std::int64_t inclusion_exclusion(const SetSystem& s) {
    const std::uint32_t n = s.subset_count();
    if (n > 63) {
        throw std::invalid_argument("alternating sum bounded at 63 subsets");
    }
    std::int64_t total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        // Size of the intersection of the selected subsets (the whole
        // universe for the empty selection).
        std::int64_t size = 0;
        for (std::size_t x = 0; x < s.universe_size(); ++x) {
            bool in_all = true;
            for (std::uint32_t i = 0; i < n; ++i) {
                if ((mask & (std::uint64_t{1} << i)) && !s.member(i, x)) {
                    in_all = false;
                    break;
                }
            }
            if (in_all) {
                ++size;
            }
        }
        total += (std::popcount(mask) % 2 == 0) ? size : -size;
    }
    return total;
}

bool verify_indicator_identity(const SetSystem& s) {
    const std::uint32_t n = s.subset_count();
    if (n > 63) {
        throw std::invalid_argument("indicator expansion bounded at 63 subsets");
    }
    for (std::size_t x = 0; x < s.universe_size(); ++x) {
        std::int64_t lhs = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            lhs *= s.member(i, x) ? 0 : 1;
        }
        std::int64_t rhs = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::int64_t prod = 1;
            for (std::uint32_t i = 0; i < n; ++i) {
                if ((mask & (std::uint64_t{1} << i)) && !s.member(i, x)) {
                    prod = 0;
                    break;
                }
            }
            rhs += (std::popcount(mask) % 2 == 0) ? prod : -prod;
        }
        if (lhs != rhs) {
            return false;
        }
    }
    return true;
}

std::vector<SignedMask> indicator_terms(std::uint32_t n) {
    if (n < 1 || n > 63) {
        throw std::invalid_argument("indicator_terms needs 1 <= n <= 63");
    }
    std::vector<SignedMask> out;
    out.reserve(std::size_t{1} << n);
    for (SubsetMask mask = 0; mask < (SubsetMask{1} << n); ++mask) {
        out.push_back(SignedMask{mask, std::popcount(mask) % 2 == 0 ? +1 : -1});
    }
    return out;
}

bool shift_terms_match_indicator(std::uint32_t n) {
    const SubsetMask all = (SubsetMask{1} << n) - 1;
    std::vector<SignedMask> mapped;
    for (const SignedMask& t : shift_expand(n)) {
        mapped.push_back(SignedMask{all & ~t.mask, t.sign});
    }
    std::vector<SignedMask> expected = indicator_terms(n);
    const auto less = [](const SignedMask& a, const SignedMask& b) {
        return a.mask != b.mask ? a.mask < b.mask : a.sign < b.sign;
    };
    std::sort(mapped.begin(), mapped.end(), less);
    std::sort(expected.begin(), expected.end(), less);
    return mapped == expected;
}

}  // namespace polar
