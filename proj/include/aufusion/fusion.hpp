#pragma once

// The fusion semiring of the free unitary quantum group: finite
// N-combinations of simples (words) with the product
//
//     r_x r_y = sum over x = a g, y = g* b of r_{ab}.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <aufusion/word.hpp>

namespace aufusion
{

using Multiplicity = std::uint64_t;

namespace detail
{
inline Multiplicity checked_add(Multiplicity a, Multiplicity b)
{
    Multiplicity r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("fusion multiplicity overflow in addition");
    }
    return r;
}

inline Multiplicity checked_mul(Multiplicity a, Multiplicity b)
{
    Multiplicity r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("fusion multiplicity overflow in multiplication");
    }
    return r;
}
} // namespace detail

// Sparse multiset over words. Zero multiplicities are never stored; terms
// iterate in shortlex order.
class Element
{
public:
    using container_type = std::map<Word, Multiplicity>;
    using const_iterator = container_type::const_iterator;

    Element() = default;

    explicit Element(const Word &w, Multiplicity m = 1)
    {
        add(w, m);
    }

    Element(std::initializer_list<std::pair<const Word, Multiplicity>> terms)
    {
        for (const auto &[w, m] : terms) {
            add(w, m);
        }
    }

    static Element unit()
    {
        return Element(unit_word);
    }

    void add(const Word &w, Multiplicity m)
    {
        if (m == 0) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(w, m);
        if (!inserted) {
            it->second = detail::checked_add(it->second, m);
        }
    }

    Element &operator+=(const Element &other)
    {
        for (const auto &[w, m] : other.m_terms) {
            add(w, m);
        }
        return *this;
    }

    Multiplicity multiplicity(const Word &w) const
    {
        const auto it = m_terms.find(w);
        return it == m_terms.end() ? 0 : it->second;
    }

    bool contains(const Word &w) const
    {
        return m_terms.contains(w);
    }

    std::size_t size() const noexcept { return m_terms.size(); }
    bool empty() const noexcept { return m_terms.empty(); }
    const_iterator begin() const noexcept { return m_terms.begin(); }
    const_iterator end() const noexcept { return m_terms.end(); }
    const container_type &terms() const noexcept { return m_terms; }

    // The single (word, multiplicity) pair when size() == 1.
    const std::pair<const Word, Multiplicity> &only_term() const
    {
        if (m_terms.size() != 1) {
            throw std::logic_error("element is not a single term");
        }
        return *m_terms.begin();
    }

    friend bool operator==(const Element &, const Element &) = default;

private:
    container_type m_terms;
};

// Cuts k for which the length-k suffix of x is dual to the length-k prefix
// of y. They always form the interval [0, K] with K the longest common prefix
// of involute(x) and y.
inline std::size_t max_cut(const Word &x, const Word &y) noexcept
{
    return common_prefix_length(involute(x), y);
}

inline std::vector<std::size_t> valid_cuts(const Word &x, const Word &y)
{
    const std::size_t top = max_cut(x, y);
    std::vector<std::size_t> cuts(top + 1);
    for (std::size_t k = 0; k <= top; ++k) {
        cuts[k] = k;
    }
    return cuts;
}

// The term a b selected by cut k of x = a g, y = g* b.
inline Word cut_term(const Word &x, const Word &y, std::size_t k)
{
    return concat(x.prefix(x.size() - k), y.suffix(y.size() - k));
}

// Calls f(term) for each term of r_x r_y with length at most max_len.
// Term lengths |x| + |y| - 2k are pairwise distinct, so each term is emitted
// exactly once.
template <typename F>
inline void for_each_term(const Word &x, const Word &y, std::size_t max_len, F &&f)
{
    const std::size_t top = max_cut(x, y);
    const std::size_t total = x.size() + y.size();
    std::size_t k = 0;
    if (total > max_len) {
        k = (total - max_len + 1) / 2;
    }
    for (; k <= top; ++k) {
        f(cut_term(x, y, k));
    }
}

inline Element mul_simple(const Word &x, const Word &y)
{
    Element out;
    const std::size_t top = max_cut(x, y);
    for (std::size_t k = 0; k <= top; ++k) {
        out.add(cut_term(x, y, k), 1);
    }
    return out;
}

inline Element mul(const Element &a, const Element &b)
{
    Element out;
    for (const auto &[x, mx] : a) {
        for (const auto &[y, my] : b) {
            const auto weight = detail::checked_mul(mx, my);
            const std::size_t top = max_cut(x, y);
            for (std::size_t k = 0; k <= top; ++k) {
                out.add(cut_term(x, y, k), weight);
            }
        }
    }
    return out;
}

inline Element dual(const Element &a)
{
    Element out;
    for (const auto &[w, m] : a) {
        out.add(involute(w), m);
    }
    return out;
}

// Left fold of mul.
inline Element mul_many(std::span<const Element> factors)
{
    if (factors.empty()) {
        throw std::invalid_argument("mul_many needs at least one factor");
    }
    Element acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        acc = mul(acc, factors[i]);
    }
    return acc;
}

inline Element mul_many(std::initializer_list<Element> factors)
{
    return mul_many(std::span<const Element>(factors.begin(), factors.size()));
}

inline Multiplicity trivial_multiplicity(const Element &a)
{
    return a.multiplicity(unit_word);
}

// Compact text form, e.g. {"01":1,"e":1}, keys in shortlex order.
inline std::string format_element(const Element &a)
{
    std::string out = "{";
    bool first = true;
    for (const auto &[w, m] : a) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += '"';
        out += format_word(w);
        out += "\":";
        out += std::to_string(m);
    }
    out += '}';
    return out;
}

} // namespace aufusion
