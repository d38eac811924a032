#pragma once

// Length-bounded saturation of sub-semirings of the fusion semiring,
// three-valued membership and derivation witnesses.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <aufusion/certificate.hpp>
#include <aufusion/fusion.hpp>
#include <aufusion/word.hpp>

namespace aufusion
{

struct ClosureConfig {
    // Longest word retained during saturation.
    std::size_t work_len = 12;
    // Longest word reported on.
    std::size_t report_len = 6;
    bool require_dual_closure = true;
    // 0 = run to the fixpoint.
    std::size_t max_rounds = 0;

    static ClosureConfig for_report_len(std::size_t report_len)
    {
        ClosureConfig c;
        c.report_len = report_len;
        c.work_len = 2 * report_len;
        return c;
    }

    void validate() const
    {
        if (report_len > work_len) {
            throw std::invalid_argument("report_len (" + std::to_string(report_len) + ") exceeds work_len ("
                                        + std::to_string(work_len) + ")");
        }
        if (work_len > 40) {
            throw std::invalid_argument("work_len above 40 is not supported");
        }
    }

    friend bool operator==(const ClosureConfig &, const ClosureConfig &) = default;
};

// Execution knobs that never influence results.
struct ExecutionPolicy {
    unsigned threads = 1;
};

struct ClosureStats {
    std::size_t rounds = 0;
    std::uint64_t products = 0;
    std::uint64_t adjoint_products = 0;

    friend bool operator==(const ClosureStats &, const ClosureStats &) = default;
};

struct Derivation {
    enum class Kind : std::uint8_t { unit, generator, product, adjoint };
    Kind kind = Kind::unit;
    // product: factor member ids; adjoint: `left` is the inner member id
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    Word conjugator;
    AdSide side = AdSide::left;

    static Derivation generator()
    {
        Derivation d;
        d.kind = Kind::generator;
        return d;
    }

    static Derivation product(std::uint32_t left, std::uint32_t right)
    {
        Derivation d;
        d.kind = Kind::product;
        d.left = left;
        d.right = right;
        return d;
    }

    static Derivation adjoint(std::uint32_t inner, const Word &conjugator, AdSide side)
    {
        Derivation d;
        d.kind = Kind::adjoint;
        d.left = inner;
        d.conjugator = conjugator;
        d.side = side;
        return d;
    }
};

class ClosureResult
{
public:
    // Effective generator set (dual-closed when the config asks for it), shortlex.
    const std::vector<Word> &generators() const noexcept { return m_generators; }
    // All retained members, shortlex.
    const std::vector<Word> &members() const noexcept { return m_members; }
    const ClosureConfig &config() const noexcept { return m_config; }
    const ClosureStats &stats() const noexcept { return m_stats; }
    bool saturated() const noexcept { return m_saturated; }
    // True when adjoint steps took part in the saturation.
    bool uses_adjoint_steps() const noexcept { return m_adjoint; }

    bool contains(const Word &w) const { return m_ids.contains(w); }

    std::optional<std::uint32_t> id_of(const Word &w) const
    {
        const auto it = m_ids.find(w);
        if (it == m_ids.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    // Members in discovery order, indexed by id.
    const std::vector<Word> &discovery_order() const noexcept { return m_order; }
    const Derivation &derivation(std::uint32_t id) const { return m_derivations.at(id); }

    // Members of length at most n, shortlex.
    std::vector<Word> members_up_to(std::size_t n) const
    {
        std::vector<Word> out;
        for (const auto &w : m_members) {
            if (w.size() > n) {
                break;
            }
            out.push_back(w);
        }
        return out;
    }

private:
    friend struct detail_access;

    std::vector<Word> m_generators;
    std::vector<Word> m_members;
    std::vector<Word> m_order;
    std::vector<Derivation> m_derivations;
    std::unordered_map<Word, std::uint32_t> m_ids;
    ClosureConfig m_config;
    ClosureStats m_stats;
    bool m_saturated = true;
    bool m_adjoint = false;
};

struct detail_access {
    static auto &generators(ClosureResult &r) { return r.m_generators; }
    static auto &members(ClosureResult &r) { return r.m_members; }
    static auto &order(ClosureResult &r) { return r.m_order; }
    static auto &derivations(ClosureResult &r) { return r.m_derivations; }
    static auto &ids(ClosureResult &r) { return r.m_ids; }
    static auto &config(ClosureResult &r) { return r.m_config; }
    static auto &stats(ClosureResult &r) { return r.m_stats; }
    static auto &saturated(ClosureResult &r) { return r.m_saturated; }
    static auto &adjoint(ClosureResult &r) { return r.m_adjoint; }
};

namespace detail
{

// Membership table for words up to the work length. Dense for short work
// lengths, hashed otherwise.
class WordTable
{
public:
    explicit WordTable(std::size_t work_len) : m_dense(work_len <= 20)
    {
        if (m_dense) {
            m_slots.assign(static_cast<std::size_t>(detail::low_mask(work_len + 1)), -1);
        }
    }

    bool contains(const Word &w) const
    {
        if (m_dense) {
            const auto i = w.shortlex_index();
            return i < m_slots.size() && m_slots[i] >= 0;
        }
        return m_hashed.contains(w);
    }

    void insert(const Word &w, std::uint32_t id)
    {
        if (m_dense) {
            m_slots[w.shortlex_index()] = static_cast<std::int64_t>(id);
        } else {
            m_hashed.emplace(w, id);
        }
    }

private:
    bool m_dense;
    std::vector<std::int64_t> m_slots;
    std::unordered_map<Word, std::uint32_t> m_hashed;
};

// Discovery priority: breadth-first by total length of the inputs, then
// products before adjoint steps, then shortlex on the inputs.
struct CandidateKey {
    std::size_t cost = 0;
    std::uint8_t kind = 0;
    Word first;
    Word second;
    std::uint8_t side = 0;

    friend auto operator<=>(const CandidateKey &, const CandidateKey &) = default;
};

struct Candidate {
    CandidateKey key;
    Derivation derivation;
};

// Result of y x y* (left) or y* x y (right) when it is a single simple.
inline std::optional<Word> single_conjugate(const Word &y, const Word &x, AdSide side)
{
    const Word outer = side == AdSide::left ? y : involute(y);
    const Word closing = involute(outer);
    if (max_cut(outer, x) != 0) {
        return std::nullopt;
    }
    const Word t = concat(outer, x);
    if (max_cut(t, closing) != 0) {
        return std::nullopt;
    }
    return concat(t, closing);
}

struct SaturationInput {
    std::vector<Word> generators;
    ClosureConfig config;
    // Terms outside the ambient are discarded. Empty = everything.
    std::function<bool(const Word &)> ambient;
    // Conjugators for adjoint steps, sorted by length. Empty = plain closure.
    std::vector<Word> conjugators;
    bool adjoint = false;
};

using CandidateMap = std::unordered_map<Word, Candidate>;

inline void offer(CandidateMap &best, const Word &t, Candidate &&c)
{
    auto [it, inserted] = best.try_emplace(t, c);
    if (!inserted && c.key < it->second.key) {
        it->second = std::move(c);
    }
}

template <typename Body>
inline void parallel_for(std::size_t begin, std::size_t end, unsigned threads, Body &&body)
{
    if (threads <= 1 || end - begin < 2) {
        for (std::size_t i = begin; i < end; ++i) {
            body(0u, i);
        }
        return;
    }
    std::atomic<std::size_t> next{begin};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = next++; i < end; i = next++) {
                body(t, i);
            }
        });
    }
}

inline ClosureResult saturate(const SaturationInput &in, const ExecutionPolicy &policy)
{
    const auto &config = in.config;
    config.validate();
    const std::size_t work_len = config.work_len;
    const unsigned threads = std::max(1u, policy.threads);

    ClosureResult result;
    auto &order = detail_access::order(result);
    auto &derivations = detail_access::derivations(result);
    auto &ids = detail_access::ids(result);
    auto &stats = detail_access::stats(result);
    detail_access::config(result) = config;
    detail_access::adjoint(result) = in.adjoint;

    std::vector<Word> gens = in.generators;
    for (const auto &g : in.generators) {
        if (g.size() > work_len) {
            throw std::invalid_argument("generator " + format_word(g) + " longer than work_len "
                                        + std::to_string(work_len));
        }
        if (config.require_dual_closure) {
            gens.push_back(involute(g));
        }
    }
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    detail_access::generators(result) = gens;

    WordTable table(work_len);
    auto admit = [&](const Word &w, const Derivation &d) {
        const auto id = static_cast<std::uint32_t>(order.size());
        order.push_back(w);
        derivations.push_back(d);
        ids.emplace(w, id);
        table.insert(w, id);
    };

    admit(unit_word, Derivation{});
    for (const auto &g : gens) {
        if (!g.empty()) {
            admit(g, Derivation::generator());
        }
    }

    std::size_t frontier = 0;
    while (frontier < order.size()) {
        if (config.max_rounds != 0 && stats.rounds == config.max_rounds) {
            detail_access::saturated(result) = false;
            break;
        }
        ++stats.rounds;
        const std::size_t known = order.size();

        std::vector<CandidateMap> local(threads);
        std::vector<ClosureStats> local_stats(threads);

        parallel_for(0, known, threads, [&](unsigned t, std::size_t i) {
            const Word &x = order[i];
            const std::size_t j0 = i < frontier ? frontier : 0;
            for (std::size_t j = j0; j < known; ++j) {
                const Word &y = order[j];
                ++local_stats[t].products;
                for_each_term(x, y, work_len, [&](const Word &term) {
                    if (table.contains(term) || (in.ambient && !in.ambient(term))) {
                        return;
                    }
                    offer(local[t], term,
                          Candidate{CandidateKey{x.size() + y.size(), 0, x, y, 0},
                                    Derivation::product(static_cast<std::uint32_t>(i),
                                                        static_cast<std::uint32_t>(j))});
                });
            }
        });

        if (in.adjoint) {
            parallel_for(frontier, known, threads, [&](unsigned t, std::size_t i) {
                const Word &x = order[i];
                for (const auto &y : in.conjugators) {
                    if (x.size() + 2 * y.size() > work_len) {
                        break;
                    }
                    for (auto side : {AdSide::left, AdSide::right}) {
                        ++local_stats[t].adjoint_products;
                        const auto z = single_conjugate(y, x, side);
                        if (!z || table.contains(*z) || (in.ambient && !in.ambient(*z))) {
                            continue;
                        }
                        const auto d = Derivation::adjoint(static_cast<std::uint32_t>(i), y, side);
                        offer(local[t], *z,
                              Candidate{CandidateKey{x.size() + 2 * y.size(), 1, x, y,
                                                     static_cast<std::uint8_t>(side)},
                                        d});
                    }
                }
            });
        }

        std::map<Word, Candidate> merged;
        for (unsigned t = 0; t < threads; ++t) {
            stats.products += local_stats[t].products;
            stats.adjoint_products += local_stats[t].adjoint_products;
            for (auto &[w, c] : local[t]) {
                auto [it, inserted] = merged.try_emplace(w, c);
                if (!inserted && c.key < it->second.key) {
                    it->second = std::move(c);
                }
            }
        }

        frontier = known;
        for (const auto &[w, c] : merged) {
            admit(w, c.derivation);
        }
    }

    auto members = order;
    std::sort(members.begin(), members.end());
    detail_access::members(result) = std::move(members);
    return result;
}

} // namespace detail

// Sub-semiring generated by `gens`, truncated at config.work_len.
inline ClosureResult generate(const std::vector<Word> &gens, const ClosureConfig &config = {},
                              const ExecutionPolicy &policy = {})
{
    detail::SaturationInput in;
    in.generators = gens;
    in.config = config;
    return detail::saturate(in, policy);
}

// ---------------------------------------------------------------------------
// Membership

enum class MembershipStatus { present, absent_certified, absent_within_bound };
enum class AbsenceReason { none, run_bound, degree };

struct Membership {
    MembershipStatus status = MembershipStatus::absent_within_bound;
    AbsenceReason reason = AbsenceReason::none;

    friend bool operator==(const Membership &, const Membership &) = default;
};

inline const char *to_string(MembershipStatus s) noexcept
{
    switch (s) {
    case MembershipStatus::present:
        return "present";
    case MembershipStatus::absent_certified:
        return "absent-certified";
    case MembershipStatus::absent_within_bound:
        return "absent-within-bound";
    }
    return "?";
}

inline const char *to_string(AbsenceReason r) noexcept
{
    switch (r) {
    case AbsenceReason::none:
        return "none";
    case AbsenceReason::run_bound:
        return "run-bound";
    case AbsenceReason::degree:
        return "degree";
    }
    return "?";
}

// Positive generator of the subgroup of Z spanned by generator degrees
// (0 when every generator is balanced).
inline long degree_modulus(const std::vector<Word> &gens)
{
    long g = 0;
    for (const auto &w : gens) {
        g = std::gcd(g, degree(w));
    }
    return g < 0 ? -g : g;
}

inline bool degree_attainable(const std::vector<Word> &gens, const Word &w)
{
    const long m = degree_modulus(gens);
    return m == 0 ? degree(w) == 0 : degree(w) % m == 0;
}

// Largest contiguous run of `s` anywhere in any generator.
inline std::size_t max_generator_run(const std::vector<Word> &gens, Symbol s)
{
    std::size_t best = 0;
    for (const auto &g : gens) {
        best = std::max(best, runs_of(g, s).max_anywhere_run);
    }
    return best;
}

// Whether the leading-run bound is a valid absence certificate for this
// closure: plain fusion generation from balanced generators.
inline bool run_bound_applies(const ClosureResult &r)
{
    return !r.uses_adjoint_steps()
           && std::all_of(r.generators().begin(), r.generators().end(), [](const Word &g) { return is_balanced(g); });
}

inline bool violates_run_bound(const std::vector<Word> &gens, const Word &w)
{
    return zero_runs(w).leading_run > max_generator_run(gens, Symbol::Zero)
           || one_runs(w).leading_run > max_generator_run(gens, Symbol::One);
}

inline Membership member(const ClosureResult &r, const Word &w)
{
    if (w.size() <= r.config().work_len && r.contains(w)) {
        return {MembershipStatus::present, AbsenceReason::none};
    }
    if (run_bound_applies(r) && violates_run_bound(r.generators(), w)) {
        return {MembershipStatus::absent_certified, AbsenceReason::run_bound};
    }
    if (!degree_attainable(r.generators(), w)) {
        return {MembershipStatus::absent_certified, AbsenceReason::degree};
    }
    return {MembershipStatus::absent_within_bound, AbsenceReason::none};
}

// ---------------------------------------------------------------------------
// Witnesses

inline CertificatePtr witness(const ClosureResult &r, const Word &w)
{
    const auto id = r.id_of(w);
    if (!id) {
        return nullptr;
    }
    std::unordered_map<std::uint32_t, CertificatePtr> built;
    // Ids of a derivation's inputs are always smaller than its own id, so an
    // explicit stack in increasing-id order suffices.
    std::vector<std::uint32_t> stack{*id};
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> needed;
    while (!stack.empty()) {
        const auto cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur).second) {
            continue;
        }
        needed.push_back(cur);
        const auto &d = r.derivation(cur);
        if (d.kind == Derivation::Kind::product) {
            stack.push_back(d.left);
            stack.push_back(d.right);
        } else if (d.kind == Derivation::Kind::adjoint) {
            stack.push_back(d.left);
        }
    }
    std::sort(needed.begin(), needed.end());
    const auto &order = r.discovery_order();
    for (const auto cur : needed) {
        const auto &d = r.derivation(cur);
        switch (d.kind) {
        case Derivation::Kind::unit:
            built[cur] = make_unit();
            break;
        case Derivation::Kind::generator:
            built[cur] = make_generator(order[cur]);
            break;
        case Derivation::Kind::product:
            built[cur] = make_product(built.at(d.left), built.at(d.right), order[cur]);
            break;
        case Derivation::Kind::adjoint:
            built[cur] = make_adjoint(d.conjugator, d.side, built.at(d.left), order[cur]);
            break;
        }
    }
    return built.at(*id);
}

// ---------------------------------------------------------------------------
// Enumeration

enum class WordFilter { all, balanced };

inline std::vector<Word> enumerate_words(WordFilter filter, std::size_t max_len)
{
    if (max_len >= Word::max_length) {
        throw std::invalid_argument("enumeration length too large");
    }
    std::vector<Word> out;
    for (std::size_t n = 0; n <= max_len; ++n) {
        if (filter == WordFilter::balanced && n % 2 != 0) {
            continue;
        }
        const std::uint64_t count = std::uint64_t{1} << n;
        for (std::uint64_t bits = 0; bits < count; ++bits) {
            const auto w = Word::from_bits(bits, n);
            if (filter == WordFilter::all || is_balanced(w)) {
                out.push_back(w);
            }
        }
    }
    return out;
}

} // namespace aufusion
