#pragma once

// Command-line front end. Exit codes: 0 success/pass, 1 check failed,
// 2 usage error, 3 inconclusive within bounds.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <aufusion/closure.hpp>
#include <aufusion/fusion.hpp>
#include <aufusion/normality.hpp>
#include <aufusion/serialize.hpp>
#include <aufusion/word.hpp>

namespace aufusion::cli
{

inline constexpr const char *tool_name = "aufusion";
inline constexpr const char *tool_version = "1.0.0";

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2, inconclusive = 3 };

inline int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::pass:
        return ok;
    case Verdict::fail:
        return check_failed;
    case Verdict::inconclusive:
        return inconclusive;
    }
    return check_failed;
}

namespace detail
{

struct Output {
    bool json_mode = false;
    bool timing = false;
    unsigned threads = 1;
    std::string out_path;
};

struct ClosureFlags {
    std::size_t work_len = 12;
    std::size_t report_len = 6;
    std::size_t max_rounds = 0;
    bool no_dual = false;

    ClosureConfig config() const
    {
        ClosureConfig c;
        c.work_len = work_len;
        c.report_len = report_len;
        c.max_rounds = max_rounds;
        c.require_dual_closure = !no_dual;
        return c;
    }
};

struct AdFlags {
    ClosureFlags closure;
    std::size_t ad_len = 8;
    std::size_t seed_len = 6;
    std::size_t cert_sample = 8;

    AdConfig config() const
    {
        AdConfig c;
        c.closure = closure.config();
        c.ad_len = ad_len;
        c.seed_len = seed_len;
        c.certificate_sample = cert_sample;
        return c;
    }
};

inline void add_output_flags(CLI::App *sub, Output &o)
{
    sub->add_flag("--json", o.json_mode, "Emit the JSON report envelope");
    sub->add_flag("--timing", o.timing, "Add wall-clock timing to the JSON envelope");
    sub->add_option("--threads", o.threads, "Worker threads (never changes output)")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out_path, "Write the report to this file instead of stdout");
}

inline void add_closure_flags(CLI::App *sub, ClosureFlags &f)
{
    sub->add_option("--work-len", f.work_len, "Longest word retained during saturation")->capture_default_str();
    sub->add_option("--report-len", f.report_len, "Longest word reported on")->capture_default_str();
    sub->add_option("--max-rounds", f.max_rounds, "Stop after this many rounds (0 = fixpoint)")
        ->capture_default_str();
    sub->add_flag("--no-dual-closure", f.no_dual, "Do not add duals of the generators");
}

inline void add_ad_flags(CLI::App *sub, AdFlags &f)
{
    add_closure_flags(sub, f.closure);
    sub->add_option("--ad-len", f.ad_len, "Longest conjugator")->capture_default_str();
    sub->add_option("--seed-len", f.seed_len, "Longest seed in sweeps")->capture_default_str();
    sub->add_option("--cert-sample", f.cert_sample, "Seeds whose records embed a certificate")
        ->capture_default_str();
}

inline Ambient parse_ambient(const std::string &text, const ClosureConfig &config, const ExecutionPolicy &policy)
{
    if (text == "au") {
        return Ambient::full();
    }
    if (text == "pu") {
        return Ambient::projective();
    }
    if (text.rfind("gen:", 0) == 0) {
        return Ambient::generated(parse_word_list(text.substr(4)), config, policy);
    }
    throw std::invalid_argument("ambient must be au, pu or gen:w1,w2,...");
}

// Invocation echo without the execution-only flags, so that reports do not
// depend on --threads, --out or --timing.
inline json invocation_echo(const std::vector<std::string> &args)
{
    json out = json::array();
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto &a = args[i];
        if (a == "--threads" || a == "--out") {
            ++i;
            continue;
        }
        if (a.rfind("--threads=", 0) == 0 || a.rfind("--out=", 0) == 0 || a == "--timing") {
            continue;
        }
        out.push_back(a);
    }
    return out;
}

class Runner
{
public:
    Runner(std::vector<std::string> args, std::ostream &out, std::ostream &err)
        : m_args(std::move(args)), m_out(out), m_err(err)
    {
    }

    int run();

private:
    // Writes either the text body or the JSON envelope around `payload`.
    int emit(const std::string &text, const json &payload, int code);

    std::vector<Word> parse_words(const std::vector<std::string> &tokens) const
    {
        std::vector<Word> out;
        for (const auto &t : tokens) {
            out.push_back(parse_word(t));
        }
        return out;
    }

    std::vector<std::string> m_args;
    std::ostream &m_out;
    std::ostream &m_err;
    Output m_output;
    std::string m_subcommand;
    std::chrono::steady_clock::time_point m_start = std::chrono::steady_clock::now();
};

inline int Runner::emit(const std::string &text, const json &payload, int code)
{
    std::string body;
    if (m_output.json_mode) {
        json doc{{"tool", tool_name},
                 {"version", tool_version},
                 {"invocation", json{{"subcommand", m_subcommand}, {"args", invocation_echo(m_args)}}},
                 {"exit_code", code},
                 {"result", payload}};
        if (m_output.timing) {
            const auto elapsed = std::chrono::steady_clock::now() - m_start;
            doc["timing"] = json{{"elapsed_ms", std::chrono::duration<double, std::milli>(elapsed).count()}};
        }
        body = doc.dump(2) + "\n";
    } else {
        body = text;
    }
    if (m_output.out_path.empty()) {
        m_out << body;
    } else {
        std::ofstream file(m_output.out_path, std::ios::binary);
        if (!file) {
            m_err << "error: cannot write " << m_output.out_path << "\n";
            return usage_error;
        }
        file << body;
    }
    return code;
}

inline std::string membership_line(const Word &w, const Membership &m)
{
    std::string line = format_word(w) + ": " + to_string(m.status);
    if (m.reason != AbsenceReason::none) {
        line += std::string(" (") + to_string(m.reason) + ")";
    }
    return line + "\n";
}

inline std::string report_text(const SimplicityReport &r)
{
    std::ostringstream os;
    os << r.check << " ambient=" << r.ambient << " seeds=" << r.records.size() << " targets=" << r.target_count
       << "\n";
    for (const auto &rec : r.records) {
        os << "  " << format_word(rec.seed) << ": " << to_string(rec.verdict) << " (" << rec.members
           << " members)";
        if (!rec.missing.empty()) {
            os << " missing";
            for (const auto &m : rec.missing) {
                os << ' ' << format_word(m);
            }
        }
        os << "\n";
    }
    std::size_t verified = 0;
    for (const auto &c : r.certificates) {
        verified += verify_certificate(*c.certificate, c.generators) ? 1 : 0;
    }
    os << "certificates: " << verified << "/" << r.certificates.size() << " verified\n";
    os << "verdict: " << to_string(r.overall) << "\n";
    return os.str();
}

inline int Runner::run()
{
    CLI::App app{"Fusion-semiring calculus of the free unitary quantum groups", tool_name};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    // mul
    std::vector<std::string> mul_words;
    auto *mul_cmd = app.add_subcommand("mul", "Fusion product of simples");
    mul_cmd->add_option("words", mul_words, "Words to multiply, left to right")->required();
    add_output_flags(mul_cmd, m_output);

    // dual / degree
    std::string single_word;
    auto *dual_cmd = app.add_subcommand("dual", "Dual (involute) of a word");
    dual_cmd->add_option("word", single_word)->required();
    add_output_flags(dual_cmd, m_output);
    auto *degree_cmd = app.add_subcommand("degree", "Number of 0s minus number of 1s");
    degree_cmd->add_option("word", single_word)->required();
    add_output_flags(degree_cmd, m_output);

    // enumerate
    bool enum_all = false;
    bool enum_balanced = false;
    std::size_t max_len = 0;
    auto *enum_cmd = app.add_subcommand("enumerate", "List words in shortlex order");
    auto *all_flag = enum_cmd->add_flag("--all", enum_all, "All words");
    auto *bal_flag = enum_cmd->add_flag("--balanced", enum_balanced, "Balanced words only");
    all_flag->excludes(bal_flag);
    enum_cmd->add_option("--max-len", max_len)->required();
    add_output_flags(enum_cmd, m_output);

    // closure
    std::string gens_text;
    std::vector<std::string> member_words;
    std::vector<std::string> witness_words;
    bool list_members = false;
    ClosureFlags closure_flags;
    auto *closure_cmd = app.add_subcommand("closure", "Sub-semiring generated by a set of simples");
    closure_cmd->add_option("--gens", gens_text, "Comma-separated generators")->required();
    closure_cmd->add_option("--member", member_words, "Membership query");
    closure_cmd->add_option("--witness", witness_words, "Emit a derivation certificate");
    closure_cmd->add_flag("--members", list_members, "List every retained member");
    add_closure_flags(closure_cmd, closure_flags);
    add_output_flags(closure_cmd, m_output);

    // ad-closure
    std::string seeds_text;
    std::string ambient_text = "pu";
    AdFlags ad_flags;
    auto *ad_cmd = app.add_subcommand("ad-closure", "Closure under fusion products and single-simple conjugation");
    ad_cmd->add_option("--seeds", seeds_text, "Comma-separated seeds")->required();
    ad_cmd->add_option("--ambient", ambient_text, "au, pu or gen:w1,w2,...")->capture_default_str();
    ad_cmd->add_option("--member", member_words, "Membership query");
    ad_cmd->add_option("--witness", witness_words, "Emit a derivation certificate");
    ad_cmd->add_flag("--members", list_members, "List every retained member");
    add_ad_flags(ad_cmd, ad_flags);
    add_output_flags(ad_cmd, m_output);

    // check-simple / check-circle
    auto *simple_cmd = app.add_subcommand("check-simple", "Every nontrivial seed ad-generates the ambient");
    simple_cmd->add_option("--ambient", ambient_text, "au, pu or gen:w1,w2,...")->capture_default_str();
    add_ad_flags(simple_cmd, ad_flags);
    add_output_flags(simple_cmd, m_output);
    auto *circle_cmd
        = app.add_subcommand("check-circle", "Every nonempty seed ad-generates all balanced words inside A_u(Q)");
    add_ad_flags(circle_cmd, ad_flags);
    add_output_flags(circle_cmd, m_output);

    // invertibles
    auto *inv_cmd = app.add_subcommand("invertibles", "Simples whose product with their dual is the unit");
    inv_cmd->add_option("--max-len", max_len)->required();
    add_output_flags(inv_cmd, m_output);

    // verify-cert
    std::string cert_path;
    auto *verify_cmd = app.add_subcommand("verify-cert", "Replay a certificate file");
    verify_cmd->add_option("file", cert_path)->required();
    add_output_flags(verify_cmd, m_output);

    try {
        std::vector<std::string> reversed(m_args.rbegin(), m_args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, m_out, m_err);
        return ok;
    } catch (const CLI::CallForVersion &e) {
        app.exit(e, m_out, m_err);
        return ok;
    } catch (const CLI::ParseError &e) {
        app.exit(e, m_out, m_err);
        return usage_error;
    }

    m_subcommand = app.get_subcommands().front()->get_name();
    const ExecutionPolicy policy{m_output.threads};

    try {
        if (mul_cmd->parsed()) {
            std::vector<Element> factors;
            for (const auto &w : parse_words(mul_words)) {
                factors.emplace_back(w);
            }
            const auto product = mul_many(factors);
            return emit(format_element(product) + "\n",
                        json{{"factors", mul_words}, {"product", element_to_json(product)}}, ok);
        }
        if (dual_cmd->parsed()) {
            const auto w = parse_word(single_word);
            return emit(format_word(involute(w)) + "\n",
                        json{{"word", format_word(w)}, {"dual", format_word(involute(w))}}, ok);
        }
        if (degree_cmd->parsed()) {
            const auto w = parse_word(single_word);
            return emit(std::to_string(degree(w)) + "\n", json{{"word", format_word(w)}, {"degree", degree(w)}},
                        ok);
        }
        if (enum_cmd->parsed()) {
            if (!enum_all && !enum_balanced) {
                throw std::invalid_argument("enumerate needs --all or --balanced");
            }
            if (max_len > 24) {
                throw std::invalid_argument("--max-len above 24 is not supported");
            }
            const auto filter = enum_all ? WordFilter::all : WordFilter::balanced;
            const auto words = enumerate_words(filter, max_len);
            std::string text;
            for (const auto &w : words) {
                text += format_word(w) + "\n";
            }
            return emit(text,
                        json{{"filter", enum_all ? "all" : "balanced"},
                             {"max_len", max_len},
                             {"count", words.size()},
                             {"words", words_to_json(words)}},
                        ok);
        }
        if (closure_cmd->parsed() || ad_cmd->parsed()) {
            std::optional<ClosureResult> closure;
            std::string ambient_name;
            if (closure_cmd->parsed()) {
                closure = generate(parse_word_list(gens_text), closure_flags.config(), policy);
            } else {
                const auto config = ad_flags.config();
                config.validate();
                const auto ambient = parse_ambient(ambient_text, config.closure, policy);
                ambient_name = ambient.descriptor();
                closure = ad_closure(parse_word_list(seeds_text), ambient, config, policy);
            }
            const auto &r = *closure;
            std::ostringstream text;
            json payload = closure_to_json(r);
            if (!ambient_name.empty()) {
                payload["ambient"] = ambient_name;
            }
            if (!list_members) {
                payload.erase("members");
                payload["reported_members"] = words_to_json(r.members_up_to(r.config().report_len));
            }
            json queries = json::array();
            for (const auto &token : member_words) {
                const auto w = parse_word(token);
                const auto m = member(r, w);
                queries.push_back(membership_to_json(w, m));
                text << membership_line(w, m);
            }
            payload["queries"] = queries;
            json witnesses = json::array();
            for (const auto &token : witness_words) {
                const auto w = parse_word(token);
                const auto cert = witness(r, w);
                if (!cert) {
                    witnesses.push_back(json{{"claim", format_word(w)}, {"document", nullptr}});
                    text << format_word(w) << ": no witness (not a member)\n";
                    continue;
                }
                const auto doc = certificate_file_to_json({r.generators(), w, cert});
                witnesses.push_back(json{{"claim", format_word(w)}, {"document", doc}});
                text << doc.dump(2) << "\n";
            }
            payload["witnesses"] = witnesses;
            if (member_words.empty() && witness_words.empty()) {
                text << "members: " << r.members().size() << (r.saturated() ? " (saturated" : " (not saturated")
                     << ", " << r.stats().rounds << " rounds)\n";
                for (const auto &w : list_members ? r.members() : r.members_up_to(r.config().report_len)) {
                    text << format_word(w) << "\n";
                }
            }
            return emit(text.str(), payload, ok);
        }
        if (simple_cmd->parsed() || circle_cmd->parsed()) {
            const auto config = ad_flags.config();
            config.validate();
            SimplicityReport report;
            if (simple_cmd->parsed()) {
                const auto ambient = parse_ambient(ambient_text, config.closure, policy);
                report = check_simplicity(ambient, config, policy);
            } else {
                report = check_circle_corollary(config, policy);
            }
            return emit(report_text(report), report_to_json(report), exit_code(report.overall));
        }
        if (inv_cmd->parsed()) {
            if (max_len > 24) {
                throw std::invalid_argument("--max-len above 24 is not supported");
            }
            const auto found = find_invertibles(max_len);
            std::string text;
            for (const auto &w : found) {
                text += format_word(w) + "\n";
            }
            return emit(text, json{{"max_len", max_len}, {"invertibles", words_to_json(found)}}, ok);
        }
        if (verify_cmd->parsed()) {
            std::ifstream file(cert_path);
            if (!file) {
                throw std::invalid_argument("cannot read " + cert_path);
            }
            json doc;
            try {
                doc = json::parse(file);
            } catch (const json::parse_error &e) {
                throw std::invalid_argument(cert_path + " is not JSON: " + e.what());
            }
            Verification v;
            std::string claim;
            try {
                const auto f = certificate_file_from_json(doc);
                claim = format_word(f.claim);
                v = verify_certificate_file(f);
            } catch (const std::invalid_argument &e) {
                v.ok = false;
                v.diagnostic = e.what();
            }
            const int code = v ? ok : check_failed;
            const std::string text
                = v ? "valid: " + claim + "\n" : "invalid: " + v.diagnostic + "\n";
            json payload{{"file", cert_path}, {"valid", v.ok}};
            if (!claim.empty()) {
                payload["claim"] = claim;
            }
            if (!v) {
                payload["diagnostic"] = v.diagnostic;
            }
            return emit(text, payload, code);
        }
    } catch (const std::exception &e) {
        m_err << "error: " << e.what() << "\n";
        return usage_error;
    }
    return usage_error;
}

} // namespace detail

inline int run(const std::vector<std::string> &args, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    return detail::Runner(args, out, err).run();
}

} // namespace aufusion::cli
