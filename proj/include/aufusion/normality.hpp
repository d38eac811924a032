#pragma once

// Fusion-level surrogate of ad-invariance: closures that, besides fusion
// products, absorb every conjugate y x y* (or y* x y) that is a single
// simple. Simplicity checks sweep every nontrivial seed and ask whether its
// ad-closure exhausts the ambient up to the report length.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <aufusion/certificate.hpp>
#include <aufusion/closure.hpp>
#include <aufusion/fusion.hpp>
#include <aufusion/word.hpp>

namespace aufusion
{

// Where simples, conjugators and targets live.
class Ambient
{
public:
    enum class Kind { full_au, projective_pu, generated };

    // Every word: the simples of A_u(Q).
    static Ambient full()
    {
        return Ambient(Kind::full_au);
    }

    // Balanced words: the simples of the projective quotient P_u(Q).
    static Ambient projective()
    {
        return Ambient(Kind::projective_pu);
    }

    // Members of the plain closure of `gens`.
    static Ambient generated(const std::vector<Word> &gens, const ClosureConfig &config,
                             const ExecutionPolicy &policy = {})
    {
        Ambient a(Kind::generated);
        a.m_closure = std::make_shared<const ClosureResult>(generate(gens, config, policy));
        a.m_seed_gens = gens;
        std::sort(a.m_seed_gens.begin(), a.m_seed_gens.end());
        a.m_seed_gens.erase(std::unique(a.m_seed_gens.begin(), a.m_seed_gens.end()), a.m_seed_gens.end());
        return a;
    }

    Kind kind() const noexcept { return m_kind; }

    bool contains(const Word &w) const
    {
        switch (m_kind) {
        case Kind::full_au:
            return true;
        case Kind::projective_pu:
            return is_balanced(w);
        case Kind::generated:
            return m_closure->contains(w);
        }
        return false;
    }

    // Ambient simples of length at most n, shortlex.
    std::vector<Word> simples_up_to(std::size_t n) const
    {
        switch (m_kind) {
        case Kind::full_au:
            return enumerate_words(WordFilter::all, n);
        case Kind::projective_pu:
            return enumerate_words(WordFilter::balanced, n);
        case Kind::generated:
            return m_closure->members_up_to(n);
        }
        return {};
    }

    // "au", "pu" or "gen:w1,w2,..."
    std::string descriptor() const
    {
        switch (m_kind) {
        case Kind::full_au:
            return "au";
        case Kind::projective_pu:
            return "pu";
        case Kind::generated: {
            std::string out = "gen:";
            for (std::size_t i = 0; i < m_seed_gens.size(); ++i) {
                out += (i ? "," : "") + format_word(m_seed_gens[i]);
            }
            return out;
        }
        }
        return "?";
    }

    // Only for Kind::generated.
    const ClosureResult *closure() const noexcept { return m_closure.get(); }

private:
    explicit Ambient(Kind k) : m_kind(k) {}

    Kind m_kind;
    std::vector<Word> m_seed_gens;
    std::shared_ptr<const ClosureResult> m_closure;
};

struct AdConfig {
    ClosureConfig closure;
    // Longest conjugator.
    std::size_t ad_len = 8;
    // Longest seed in simplicity sweeps.
    std::size_t seed_len = 6;
    // Number of seeds (in shortlex order) whose report records embed a
    // certificate for their longest derived target.
    std::size_t certificate_sample = 8;

    void validate() const
    {
        closure.validate();
        if (ad_len > closure.work_len) {
            throw std::invalid_argument("ad_len (" + std::to_string(ad_len) + ") exceeds work_len ("
                                        + std::to_string(closure.work_len) + ")");
        }
        if (seed_len > closure.work_len) {
            throw std::invalid_argument("seed_len (" + std::to_string(seed_len) + ") exceeds work_len ("
                                        + std::to_string(closure.work_len) + ")");
        }
    }
};

struct AdCandidate {
    Word conjugator;
    AdSide side = AdSide::left;
    Word result;

    friend bool operator==(const AdCandidate &, const AdCandidate &) = default;
};

// Conjugations of x by ambient simples y with 1 <= |y| <= ad_len whose
// result is a single simple of multiplicity one.
inline std::vector<AdCandidate> ad_candidates(const Word &x, const Ambient &ambient, std::size_t ad_len)
{
    std::vector<AdCandidate> out;
    for (const auto &y : ambient.simples_up_to(ad_len)) {
        if (y.empty()) {
            continue;
        }
        for (auto side : {AdSide::left, AdSide::right}) {
            if (const auto z = detail::single_conjugate(y, x, side)) {
                out.push_back({y, side, *z});
            }
        }
    }
    return out;
}

inline ClosureResult ad_closure(const std::vector<Word> &seeds, const Ambient &ambient, const AdConfig &config,
                                const ExecutionPolicy &policy = {})
{
    config.validate();
    for (const auto &s : seeds) {
        if (s.size() > config.closure.work_len) {
            throw std::invalid_argument("seed " + format_word(s) + " longer than work_len");
        }
        if (!ambient.contains(s)) {
            throw std::invalid_argument("seed " + format_word(s) + " is not a simple of ambient "
                                        + ambient.descriptor());
        }
    }
    detail::SaturationInput in;
    in.generators = seeds;
    in.config = config.closure;
    in.adjoint = true;
    if (ambient.kind() != Ambient::Kind::full_au) {
        in.ambient = [&ambient](const Word &w) { return ambient.contains(w); };
    }
    for (const auto &y : ambient.simples_up_to(config.ad_len)) {
        if (!y.empty()) {
            in.conjugators.push_back(y);
        }
    }
    return detail::saturate(in, policy);
}

// ---------------------------------------------------------------------------
// Simplicity sweeps

enum class Verdict { pass, fail, inconclusive };

inline const char *to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::pass:
        return "pass";
    case Verdict::fail:
        return "fail";
    case Verdict::inconclusive:
        return "inconclusive";
    }
    return "?";
}

struct SeedRecord {
    Word seed;
    Verdict verdict = Verdict::pass;
    std::vector<Word> missing;
    std::size_t members = 0;
    ClosureStats stats;
    std::optional<std::size_t> certificate_index;
};

struct SampledCertificate {
    Word seed;
    Word target;
    std::vector<Word> generators;
    CertificatePtr certificate;
};

struct SimplicityReport {
    std::string check;
    std::string ambient;
    AdConfig config;
    std::size_t target_count = 0;
    std::vector<SeedRecord> records;
    std::vector<SampledCertificate> certificates;
    Verdict overall = Verdict::pass;
};

namespace detail
{

inline Verdict merge_verdicts(const std::vector<SeedRecord> &records)
{
    bool any_fail = false;
    bool any_inconclusive = false;
    for (const auto &r : records) {
        any_fail |= r.verdict == Verdict::fail;
        any_inconclusive |= r.verdict == Verdict::inconclusive;
    }
    return any_fail ? Verdict::fail : any_inconclusive ? Verdict::inconclusive : Verdict::pass;
}

// Ad-closes every seed and compares against the target list. A missing
// target is a genuine failure only when its absence is certified.
inline SimplicityReport sweep(std::string check, const Ambient &ambient, const std::vector<Word> &seeds,
                              const std::vector<Word> &targets, const AdConfig &config,
                              const ExecutionPolicy &policy)
{
    config.validate();
    SimplicityReport report;
    report.check = std::move(check);
    report.ambient = ambient.descriptor();
    report.config = config;
    report.target_count = targets.size();
    report.records.resize(seeds.size());
    std::vector<CertificatePtr> certs(seeds.size());
    std::vector<Word> cert_targets(seeds.size());
    std::vector<std::vector<Word>> cert_gens(seeds.size());

    parallel_for(0, seeds.size(), std::max(1u, policy.threads), [&](unsigned, std::size_t i) {
        const auto closure = ad_closure({seeds[i]}, ambient, config);
        auto &rec = report.records[i];
        rec.seed = seeds[i];
        rec.members = closure.members().size();
        rec.stats = closure.stats();
        bool certified = true;
        for (const auto &t : targets) {
            if (closure.contains(t)) {
                continue;
            }
            rec.missing.push_back(t);
            if (member(closure, t).status != MembershipStatus::absent_certified) {
                certified = false;
            }
        }
        rec.verdict = rec.missing.empty() ? Verdict::pass : certified ? Verdict::fail : Verdict::inconclusive;
        if (i < config.certificate_sample) {
            for (auto it = targets.rbegin(); it != targets.rend(); ++it) {
                if (closure.contains(*it)) {
                    cert_targets[i] = *it;
                    certs[i] = witness(closure, *it);
                    cert_gens[i] = closure.generators();
                    break;
                }
            }
        }
    });

    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (certs[i]) {
            report.records[i].certificate_index = report.certificates.size();
            report.certificates.push_back({seeds[i], cert_targets[i], cert_gens[i], certs[i]});
        }
    }
    report.overall = merge_verdicts(report.records);
    return report;
}

} // namespace detail

// Every nontrivial ambient simple of length <= seed_len must ad-generate
// every ambient simple of length <= report_len.
inline SimplicityReport check_simplicity(const Ambient &ambient, const AdConfig &config,
                                         const ExecutionPolicy &policy = {})
{
    auto seeds = ambient.simples_up_to(config.seed_len);
    seeds.erase(std::remove(seeds.begin(), seeds.end(), unit_word), seeds.end());
    const auto targets = ambient.simples_up_to(config.closure.report_len);
    return detail::sweep("simplicity", ambient, seeds, targets, config, policy);
}

// Every nonempty word of length <= seed_len must ad-generate, inside A_u(Q),
// every balanced word of length <= report_len.
inline SimplicityReport check_circle_corollary(const AdConfig &config, const ExecutionPolicy &policy = {})
{
    auto seeds = enumerate_words(WordFilter::all, config.seed_len);
    seeds.erase(std::remove(seeds.begin(), seeds.end(), unit_word), seeds.end());
    const auto targets = enumerate_words(WordFilter::balanced, config.closure.report_len);
    return detail::sweep("circle-corollary", Ambient::full(), seeds, targets, config, policy);
}

// Simples w of length <= max_len with r_w r_{w*} = r_e exactly.
inline std::vector<Word> find_invertibles(std::size_t max_len)
{
    std::vector<Word> out;
    for (const auto &w : enumerate_words(WordFilter::all, max_len)) {
        if (mul_simple(w, involute(w)) == Element::unit()) {
            out.push_back(w);
        }
    }
    return out;
}

} // namespace aufusion
