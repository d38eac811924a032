#pragma once

// JSON forms of elements, certificates, closures and reports. Object keys
// are emitted in a fixed order and word-keyed collections in shortlex order,
// so identical inputs give byte-identical output.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include <aufusion/certificate.hpp>
#include <aufusion/closure.hpp>
#include <aufusion/fusion.hpp>
#include <aufusion/normality.hpp>
#include <aufusion/word.hpp>

namespace aufusion
{

using json = nlohmann::ordered_json;

inline constexpr const char *certificate_format = "aufusion-certificate";

inline json words_to_json(const std::vector<Word> &words)
{
    json out = json::array();
    for (const auto &w : words) {
        out.push_back(format_word(w));
    }
    return out;
}

inline json element_to_json(const Element &a)
{
    json out = json::object();
    for (const auto &[w, m] : a) {
        out[format_word(w)] = m;
    }
    return out;
}

inline Element element_from_json(const json &j)
{
    if (!j.is_object()) {
        throw std::invalid_argument("element must be a JSON object");
    }
    Element out;
    for (const auto &[key, value] : j.items()) {
        if (!value.is_number_unsigned()) {
            throw std::invalid_argument("multiplicity of " + key + " is not a nonnegative integer");
        }
        out.add(parse_word(key), value.get<Multiplicity>());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Certificates

inline json certificate_to_json(const Certificate &c)
{
    struct visitor {
        json operator()(const UnitLeaf &) const { return json{{"kind", "unit"}}; }
        json operator()(const GeneratorLeaf &g) const { return json{{"kind", "gen"}, {"word", format_word(g.word)}}; }
        json operator()(const ProductTerm &p) const
        {
            return json{{"kind", "prod"},
                        {"term", format_word(p.term)},
                        {"left", p.left ? certificate_to_json(*p.left) : json(nullptr)},
                        {"right", p.right ? certificate_to_json(*p.right) : json(nullptr)}};
        }
        json operator()(const AdStep &a) const
        {
            return json{{"kind", "ad"},
                        {"conjugator", format_word(a.conjugator)},
                        {"side", to_string(a.side)},
                        {"result", format_word(a.result)},
                        {"inner", a.inner ? certificate_to_json(*a.inner) : json(nullptr)}};
        }
    };
    return std::visit(visitor{}, c.node);
}

namespace detail
{
inline Word word_field(const json &j, const char *key, const std::string &path)
{
    if (!j.contains(key) || !j.at(key).is_string()) {
        throw std::invalid_argument(path + ": missing string field \"" + key + "\"");
    }
    try {
        return parse_word(j.at(key).get<std::string>());
    } catch (const std::invalid_argument &e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

inline CertificatePtr certificate_from_json(const json &j, const std::string &path)
{
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
        throw std::invalid_argument(path + ": node is not an object with a \"kind\"");
    }
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "unit") {
        return make_unit();
    }
    if (kind == "gen") {
        return make_generator(word_field(j, "word", path));
    }
    if (kind == "prod") {
        if (!j.contains("left") || !j.contains("right")) {
            throw std::invalid_argument(path + ": product node needs \"left\" and \"right\"");
        }
        return make_product(certificate_from_json(j.at("left"), path + ".left"),
                            certificate_from_json(j.at("right"), path + ".right"), word_field(j, "term", path));
    }
    if (kind == "ad") {
        if (!j.contains("inner")) {
            throw std::invalid_argument(path + ": adjoint node needs \"inner\"");
        }
        AdSide side = AdSide::left;
        if (j.contains("side")) {
            const auto s = j.at("side").is_string() ? j.at("side").get<std::string>() : std::string{};
            if (s == "right") {
                side = AdSide::right;
            } else if (s != "left") {
                throw std::invalid_argument(path + ": side must be \"left\" or \"right\"");
            }
        }
        return make_adjoint(word_field(j, "conjugator", path), side,
                            certificate_from_json(j.at("inner"), path + ".inner"), word_field(j, "result", path));
    }
    throw std::invalid_argument(path + ": unknown node kind \"" + kind + "\"");
}
} // namespace detail

// Throws std::invalid_argument naming the path of the malformed node.
inline CertificatePtr certificate_from_json(const json &j)
{
    return detail::certificate_from_json(j, "root");
}

// Self-contained certificate file: the generator set, the claimed word and
// the derivation tree.
struct CertificateFile {
    std::vector<Word> generators;
    Word claim;
    CertificatePtr certificate;
};

inline json certificate_file_to_json(const CertificateFile &f)
{
    return json{{"format", certificate_format},
                {"version", 1},
                {"generators", words_to_json(f.generators)},
                {"claim", format_word(f.claim)},
                {"certificate", certificate_to_json(*f.certificate)}};
}

inline CertificateFile certificate_file_from_json(const json &j)
{
    if (!j.is_object() || j.value("format", std::string{}) != certificate_format) {
        throw std::invalid_argument("not an " + std::string(certificate_format) + " document");
    }
    CertificateFile f;
    if (!j.contains("generators") || !j.at("generators").is_array()) {
        throw std::invalid_argument("missing \"generators\" array");
    }
    for (const auto &g : j.at("generators")) {
        if (!g.is_string()) {
            throw std::invalid_argument("generator entries must be strings");
        }
        f.generators.push_back(parse_word(g.get<std::string>()));
    }
    f.claim = detail::word_field(j, "claim", "document");
    if (!j.contains("certificate")) {
        throw std::invalid_argument("missing \"certificate\"");
    }
    f.certificate = certificate_from_json(j.at("certificate"));
    return f;
}

// Valid iff the tree replays and derives the claimed word.
inline Verification verify_certificate_file(const CertificateFile &f)
{
    auto v = verify_certificate(*f.certificate, f.generators);
    if (v && derived_word(*f.certificate) != f.claim) {
        v.ok = false;
        v.diagnostic = "root: derives " + format_word(derived_word(*f.certificate)) + ", claim is "
                       + format_word(f.claim);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Closures and reports

inline json config_to_json(const ClosureConfig &c)
{
    return json{{"work_len", c.work_len},
                {"report_len", c.report_len},
                {"require_dual_closure", c.require_dual_closure},
                {"max_rounds", c.max_rounds}};
}

inline json config_to_json(const AdConfig &c)
{
    return json{{"closure", config_to_json(c.closure)},
                {"ad_len", c.ad_len},
                {"seed_len", c.seed_len},
                {"certificate_sample", c.certificate_sample}};
}

inline json stats_to_json(const ClosureStats &s)
{
    return json{{"rounds", s.rounds}, {"products", s.products}, {"adjoint_products", s.adjoint_products}};
}

inline json membership_to_json(const Word &w, const Membership &m)
{
    json out{{"word", format_word(w)}, {"status", to_string(m.status)}};
    if (m.reason != AbsenceReason::none) {
        out["reason"] = to_string(m.reason);
    }
    return out;
}

inline json closure_to_json(const ClosureResult &r)
{
    return json{{"generators", words_to_json(r.generators())},
                {"config", config_to_json(r.config())},
                {"adjoint_steps", r.uses_adjoint_steps()},
                {"saturated", r.saturated()},
                {"member_count", r.members().size()},
                {"members", words_to_json(r.members())},
                {"stats", stats_to_json(r.stats())}};
}

inline json report_to_json(const SimplicityReport &r)
{
    json records = json::array();
    for (const auto &rec : r.records) {
        records.push_back(json{{"seed", format_word(rec.seed)},
                               {"verdict", to_string(rec.verdict)},
                               {"missing", words_to_json(rec.missing)},
                               {"members", rec.members},
                               {"stats", stats_to_json(rec.stats)},
                               {"certificate_index", rec.certificate_index ? json(*rec.certificate_index)
                                                                           : json(nullptr)}});
    }
    json certs = json::array();
    for (const auto &c : r.certificates) {
        certs.push_back(json{{"seed", format_word(c.seed)},
                             {"target", format_word(c.target)},
                             {"document", certificate_file_to_json({c.generators, c.target, c.certificate})}});
    }
    return json{{"check", r.check},
                {"ambient", r.ambient},
                {"config", config_to_json(r.config)},
                {"seed_count", r.records.size()},
                {"target_count", r.target_count},
                {"verdict", to_string(r.overall)},
                {"records", records},
                {"certificates", certs}};
}

} // namespace aufusion
