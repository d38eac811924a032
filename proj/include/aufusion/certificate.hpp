#pragma once

// Derivation certificates and their independent replay.
//
// A certificate is a tree whose leaves are the unit or a generator, and whose
// inner nodes are either a selected term of a fusion product of two derived
// simples, or a single-simple conjugation c x c* (left) / c* x c (right).

#include <memory>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include <aufusion/fusion.hpp>
#include <aufusion/word.hpp>

namespace aufusion
{

struct Certificate;
using CertificatePtr = std::shared_ptr<const Certificate>;

enum class AdSide { left, right };

inline const char *to_string(AdSide s) noexcept
{
    return s == AdSide::left ? "left" : "right";
}

struct UnitLeaf {
};

struct GeneratorLeaf {
    Word word;
};

struct ProductTerm {
    CertificatePtr left;
    CertificatePtr right;
    Word term;
};

struct AdStep {
    Word conjugator;
    AdSide side = AdSide::left;
    CertificatePtr inner;
    Word result;
};

struct Certificate {
    std::variant<UnitLeaf, GeneratorLeaf, ProductTerm, AdStep> node;
};

inline Word derived_word(const Certificate &c)
{
    struct visitor {
        Word operator()(const UnitLeaf &) const { return unit_word; }
        Word operator()(const GeneratorLeaf &g) const { return g.word; }
        Word operator()(const ProductTerm &p) const { return p.term; }
        Word operator()(const AdStep &a) const { return a.result; }
    };
    return std::visit(visitor{}, c.node);
}

inline CertificatePtr make_unit()
{
    return std::make_shared<const Certificate>(Certificate{UnitLeaf{}});
}

inline CertificatePtr make_generator(const Word &w)
{
    return std::make_shared<const Certificate>(Certificate{GeneratorLeaf{w}});
}

inline CertificatePtr make_product(CertificatePtr left, CertificatePtr right, const Word &term)
{
    return std::make_shared<const Certificate>(Certificate{ProductTerm{std::move(left), std::move(right), term}});
}

inline CertificatePtr make_adjoint(const Word &conjugator, AdSide side, CertificatePtr inner, const Word &result)
{
    return std::make_shared<const Certificate>(Certificate{AdStep{conjugator, side, std::move(inner), result}});
}

// Number of nodes in the tree as serialized (shared subtrees counted once
// per occurrence).
inline std::size_t tree_size(const Certificate &c)
{
    struct visitor {
        std::size_t operator()(const UnitLeaf &) const { return 1; }
        std::size_t operator()(const GeneratorLeaf &) const { return 1; }
        std::size_t operator()(const ProductTerm &p) const
        {
            return 1 + (p.left ? tree_size(*p.left) : 0) + (p.right ? tree_size(*p.right) : 0);
        }
        std::size_t operator()(const AdStep &a) const { return 1 + (a.inner ? tree_size(*a.inner) : 0); }
    };
    return std::visit(visitor{}, c.node);
}

struct Verification {
    bool ok = true;
    // Path to the first offending node, e.g. "root.left.inner", plus reason.
    std::string diagnostic;

    explicit operator bool() const noexcept { return ok; }
};

namespace detail
{
class CertificateChecker
{
public:
    explicit CertificateChecker(const std::vector<Word> &generators)
        : m_generators(generators.begin(), generators.end())
    {
    }

    Verification check(const Certificate &root)
    {
        Verification v;
        if (!visit(root, "root", v)) {
            v.ok = false;
        }
        return v;
    }

private:
    bool fail(Verification &v, const std::string &path, const std::string &why) const
    {
        v.ok = false;
        v.diagnostic = path + ": " + why;
        return false;
    }

    bool visit(const Certificate &c, const std::string &path, Verification &v)
    {
        if (m_verified.contains(&c)) {
            return true;
        }
        bool ok = false;
        if (std::holds_alternative<UnitLeaf>(c.node)) {
            ok = true;
        } else if (const auto *g = std::get_if<GeneratorLeaf>(&c.node)) {
            if (!m_generators.contains(g->word)) {
                return fail(v, path, "leaf " + format_word(g->word) + " is not a generator");
            }
            ok = true;
        } else if (const auto *p = std::get_if<ProductTerm>(&c.node)) {
            if (!p->left || !p->right) {
                return fail(v, path, "product node with a missing factor");
            }
            if (!visit(*p->left, path + ".left", v) || !visit(*p->right, path + ".right", v)) {
                return false;
            }
            const auto product = mul_simple(derived_word(*p->left), derived_word(*p->right));
            if (product.multiplicity(p->term) == 0) {
                return fail(v, path,
                            "term " + format_word(p->term) + " does not occur in "
                                + format_word(derived_word(*p->left)) + " * "
                                + format_word(derived_word(*p->right)));
            }
            ok = true;
        } else if (const auto *a = std::get_if<AdStep>(&c.node)) {
            if (!a->inner) {
                return fail(v, path, "adjoint node with a missing inner certificate");
            }
            if (!visit(*a->inner, path + ".inner", v)) {
                return false;
            }
            const Element x(derived_word(*a->inner));
            const Element conj(a->conjugator);
            const Element conj_dual(involute(a->conjugator));
            const auto triple = a->side == AdSide::left ? mul_many({conj, x, conj_dual})
                                                        : mul_many({conj_dual, x, conj});
            if (triple != Element(a->result)) {
                return fail(v, path, "conjugate is " + format_element(triple) + ", not the single simple "
                                         + format_word(a->result));
            }
            ok = true;
        }
        if (ok) {
            m_verified.insert(&c);
        }
        return ok;
    }

    std::unordered_set<Word> m_generators;
    std::unordered_set<const Certificate *> m_verified;
};
} // namespace detail

// Replays every node against the fusion rule. Leaves must be the unit or a
// member of `generators`.
inline Verification verify_certificate(const Certificate &cert, const std::vector<Word> &generators)
{
    return detail::CertificateChecker(generators).check(cert);
}

} // namespace aufusion
