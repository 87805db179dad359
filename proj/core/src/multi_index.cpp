#include "cdcalc/multi_index.hpp"

#include <algorithm>
#include <cassert>

namespace cdcalc {

MultiIndex::MultiIndex(std::initializer_list<int> entries) : entries_(entries)
{
    std::sort(entries_.begin(), entries_.end());
}

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries))
{
    std::sort(entries_.begin(), entries_.end());
}

int MultiIndex::count(int i) const
{
    return static_cast<int>(std::count(entries_.begin(), entries_.end(), i));
}

MultiIndex MultiIndex::with(int i) const
{
    MultiIndex r = *this;
    r.entries_.insert(std::upper_bound(r.entries_.begin(), r.entries_.end(), i), i);
    return r;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const
{
    MultiIndex r;
    r.entries_.reserve(order() + other.order());
    std::merge(entries_.begin(), entries_.end(), other.entries_.begin(), other.entries_.end(),
               std::back_inserter(r.entries_));
    return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const
{
    assert(contains(other));
    MultiIndex r;
    std::set_difference(entries_.begin(), entries_.end(), other.entries_.begin(), other.entries_.end(),
                        std::back_inserter(r.entries_));
    return r;
}

bool MultiIndex::contains(const MultiIndex& other) const
{
    return std::includes(entries_.begin(), entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const
{
    if (auto c = order() <=> other.order(); c != 0)
        return c;
    return entries_ <=> other.entries_;
}

namespace {

void gen_order(int n, int r, int start, std::vector<int>& cur, std::vector<MultiIndex>& out)
{
    if (static_cast<int>(cur.size()) == r) {
        out.emplace_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        gen_order(n, r, i, cur, out);
        cur.pop_back();
    }
}

void gen_tuples(int n, int q, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == q) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i < n; ++i) {
        cur.push_back(i);
        gen_tuples(n, q, i + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_order(int n, int r)
{
    std::vector<MultiIndex> out;
    if (r < 0)
        return out;
    std::vector<int> cur;
    gen_order(n, r, 0, cur, out);
    return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int r)
{
    std::vector<MultiIndex> out;
    for (int d = 0; d <= r; ++d) {
        auto level = multi_indices_of_order(n, d);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

void for_each_submultiset(const MultiIndex& sigma,
                          const std::function<void(const MultiIndex&, const Integer&)>& f)
{
    // distinct indices with their counts
    std::vector<std::pair<int, int>> groups;
    for (int i : sigma.entries()) {
        if (!groups.empty() && groups.back().first == i)
            ++groups.back().second;
        else
            groups.emplace_back(i, 1);
    }
    std::vector<int> take(groups.size(), 0);
    while (true) {
        std::vector<int> entries;
        Integer mult = 1;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            entries.insert(entries.end(), take[g], groups[g].first);
            mult *= binomial(groups[g].second, take[g]);
        }
        f(MultiIndex(std::move(entries)), mult);
        std::size_t g = 0;
        while (g < groups.size() && take[g] == groups[g].second)
            take[g++] = 0;
        if (g == groups.size())
            return;
        ++take[g];
    }
}

std::vector<std::vector<int>> increasing_tuples(int n, int q)
{
    std::vector<std::vector<int>> out;
    if (q < 0 || q > n)
        return out;
    std::vector<int> cur;
    gen_tuples(n, q, 0, cur, out);
    return out;
}

int permutation_sign(std::span<const int> seq)
{
    int sign = 1;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            if (seq[i] == seq[j])
                return 0;
            if (seq[i] > seq[j])
                sign = -sign;
        }
    return sign;
}

}  // namespace cdcalc
