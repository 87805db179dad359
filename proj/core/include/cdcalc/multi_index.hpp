#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

#include "cdcalc/rational.hpp"

namespace cdcalc {

/// Multi-index σ = i₁…i_r over independent variables, kept sorted since total
/// derivatives commute. Indices are 0-based internally.
class MultiIndex {
public:
    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> entries);
    explicit MultiIndex(std::vector<int> entries);

    std::size_t order() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::span<const int> entries() const noexcept { return entries_; }

    /// Number of occurrences of index i.
    int count(int i) const;

    MultiIndex with(int i) const;
    MultiIndex operator+(const MultiIndex& other) const;
    /// Removes one occurrence of each index of `other`; `other` must be contained in *this.
    MultiIndex operator-(const MultiIndex& other) const;
    bool contains(const MultiIndex& other) const;

    bool operator==(const MultiIndex&) const = default;
    /// Degree first, then lexicographic.
    std::strong_ordering operator<=>(const MultiIndex& other) const;

private:
    std::vector<int> entries_;
};

/// All multi-indices of exact order r over n variables, ascending.
std::vector<MultiIndex> multi_indices_of_order(int n, int r);
/// All multi-indices with order ≤ r, ascending (degree, then lex).
std::vector<MultiIndex> multi_indices_up_to(int n, int r);

/// Calls f(sub, multiplicity) for every sub-multiset of σ, where multiplicity is
/// the product of binomials C(σ_i, sub_i) from the Leibniz rule.
void for_each_submultiset(const MultiIndex& sigma,
                          const std::function<void(const MultiIndex&, const Integer&)>& f);

/// Strictly increasing index tuples of length q over n variables, lexicographic.
std::vector<std::vector<int>> increasing_tuples(int n, int q);

/// Sign of the permutation sorting `seq` (0 if it has a repeated entry).
int permutation_sign(std::span<const int> seq);

}  // namespace cdcalc
