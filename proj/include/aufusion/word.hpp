#pragma once

// Binary words: elements of the free monoid on the fundamental generator
// ('0') and its dual ('1'). Each word indexes one simple comodule.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aufusion
{

enum class Symbol : std::uint8_t { Zero = 0, One = 1 };

constexpr Symbol flip(Symbol s) noexcept
{
    return s == Symbol::Zero ? Symbol::One : Symbol::Zero;
}

namespace detail
{
constexpr std::uint64_t low_mask(std::size_t k) noexcept
{
    return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
}
} // namespace detail

// A word is stored packed: symbol i sits at bit (size-1-i), so that for two
// words of equal length the integer order of the packed bits coincides with
// the lexicographic order with '0' < '1'.
class Word
{
public:
    static constexpr std::size_t max_length = 64;

    constexpr Word() noexcept = default;

    Word(std::initializer_list<Symbol> symbols)
    {
        for (auto s : symbols) {
            push_back(s);
        }
    }

    static constexpr Word from_bits(std::uint64_t bits, std::size_t length)
    {
        if (length > max_length) {
            throw std::length_error("word longer than " + std::to_string(max_length) + " symbols");
        }
        Word w;
        w.m_bits = bits & detail::low_mask(length);
        w.m_size = static_cast<std::uint8_t>(length);
        return w;
    }

    // n copies of a symbol
    static constexpr Word repeat(Symbol s, std::size_t n)
    {
        return from_bits(s == Symbol::One ? ~std::uint64_t{0} : 0, n);
    }

    constexpr std::size_t size() const noexcept { return m_size; }
    constexpr bool empty() const noexcept { return m_size == 0; }
    constexpr std::uint64_t bits() const noexcept { return m_bits; }

    constexpr Symbol operator[](std::size_t i) const noexcept
    {
        return static_cast<Symbol>((m_bits >> (m_size - 1 - i)) & 1u);
    }

    constexpr void push_back(Symbol s)
    {
        if (m_size == max_length) {
            throw std::length_error("word longer than " + std::to_string(max_length) + " symbols");
        }
        m_bits = (m_bits << 1) | static_cast<std::uint64_t>(s);
        ++m_size;
    }

    constexpr Word prefix(std::size_t k) const noexcept
    {
        Word w;
        w.m_bits = k == 0 ? 0 : m_bits >> (m_size - k);
        w.m_size = static_cast<std::uint8_t>(k);
        return w;
    }

    constexpr Word suffix(std::size_t k) const noexcept
    {
        Word w;
        w.m_bits = m_bits & detail::low_mask(k);
        w.m_size = static_cast<std::uint8_t>(k);
        return w;
    }

    constexpr std::size_t count(Symbol s) const noexcept
    {
        const auto ones = static_cast<std::size_t>(std::popcount(m_bits));
        return s == Symbol::One ? ones : m_size - ones;
    }

    // Position in the shortlex enumeration: e, 0, 1, 00, 01, ...
    // Only meaningful for words shorter than 64 symbols.
    constexpr std::uint64_t shortlex_index() const noexcept
    {
        return detail::low_mask(m_size) + m_bits;
    }

    friend constexpr bool operator==(const Word &, const Word &) noexcept = default;

    // Shortlex: length first, then lexicographic.
    friend constexpr std::strong_ordering operator<=>(const Word &a, const Word &b) noexcept
    {
        if (auto c = a.m_size <=> b.m_size; c != 0) {
            return c;
        }
        return a.m_bits <=> b.m_bits;
    }

private:
    std::uint64_t m_bits = 0;
    std::uint8_t m_size = 0;
};

inline const Word unit_word{};

inline Word concat(const Word &x, const Word &y)
{
    if (x.size() + y.size() > Word::max_length) {
        throw std::length_error("concatenation exceeds " + std::to_string(Word::max_length) + " symbols");
    }
    if (x.empty()) {
        return y;
    }
    return Word::from_bits((x.bits() << y.size()) | y.bits(), x.size() + y.size());
}

// Reverse the word and swap 0 <-> 1.
constexpr Word involute(const Word &w) noexcept
{
    std::uint64_t in = w.bits();
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        out = (out << 1) | (in & 1u);
        in >>= 1;
    }
    return Word::from_bits(~out, w.size());
}

// Symbol-wise complement without reversal.
constexpr Word flip(const Word &w) noexcept
{
    return Word::from_bits(~w.bits(), w.size());
}

constexpr long degree(const Word &w) noexcept
{
    return static_cast<long>(w.count(Symbol::Zero)) - static_cast<long>(w.count(Symbol::One));
}

constexpr bool is_balanced(const Word &w) noexcept
{
    return degree(w) == 0;
}

struct RunStats {
    std::size_t leading_run = 0;
    std::size_t max_anywhere_run = 0;

    friend constexpr bool operator==(const RunStats &, const RunStats &) noexcept = default;
};

constexpr RunStats runs_of(const Word &w, Symbol s) noexcept
{
    RunStats r;
    std::size_t current = 0;
    bool leading = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == s) {
            ++current;
            r.max_anywhere_run = std::max(r.max_anywhere_run, current);
        } else {
            if (leading) {
                r.leading_run = current;
                leading = false;
            }
            current = 0;
        }
    }
    if (leading) {
        r.leading_run = current;
    }
    return r;
}

constexpr RunStats zero_runs(const Word &w) noexcept
{
    return runs_of(w, Symbol::Zero);
}

constexpr RunStats one_runs(const Word &w) noexcept
{
    return runs_of(w, Symbol::One);
}

// Length of the longest common prefix.
constexpr std::size_t common_prefix_length(const Word &a, const Word &b) noexcept
{
    const std::size_t n = std::min(a.size(), b.size());
    if (n == 0) {
        return 0;
    }
    const std::uint64_t diff = a.prefix(n).bits() ^ b.prefix(n).bits();
    if (diff == 0) {
        return n;
    }
    // highest differing bit among the low n bits
    const auto lead = static_cast<std::size_t>(std::countl_zero(diff)) - (64 - n);
    return lead;
}

inline std::string format_word(const Word &w)
{
    if (w.empty()) {
        return "e";
    }
    std::string out;
    out.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        out.push_back(w[i] == Symbol::Zero ? '0' : '1');
    }
    return out;
}

inline Word parse_word(std::string_view text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty word token (use \"e\" for the unit)");
    }
    if (text == "e") {
        return {};
    }
    if (text.size() > Word::max_length) {
        throw std::invalid_argument("word \"" + std::string(text) + "\" longer than "
                                    + std::to_string(Word::max_length) + " symbols");
    }
    Word w;
    for (char c : text) {
        if (c == '0') {
            w.push_back(Symbol::Zero);
        } else if (c == '1') {
            w.push_back(Symbol::One);
        } else {
            throw std::invalid_argument("invalid character '" + std::string(1, c) + "' in word \""
                                        + std::string(text) + "\"");
        }
    }
    return w;
}

// Comma-separated list of words. An empty string is the empty list.
inline std::vector<Word> parse_word_list(std::string_view text)
{
    std::vector<Word> out;
    if (text.empty()) {
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_word(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

inline std::ostream &operator<<(std::ostream &os, const Word &w)
{
    return os << format_word(w);
}

} // namespace aufusion

template <>
struct std::hash<aufusion::Word> {
    std::size_t operator()(const aufusion::Word &w) const noexcept
    {
        // splitmix64 finalizer over (bits, size)
        std::uint64_t z = w.bits() + 0x9e3779b97f4a7c15ull * (w.size() + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return static_cast<std::size_t>(z ^ (z >> 31));
    }
};
