// Command line front end: one subcommand per library operation, JSON on
// stdout for single queries, CSV for sweeps, diagnostics on stderr.

#include <charconv>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsurv/config.hpp"
#include "bsurv/critical.hpp"
#include "bsurv/holes.hpp"
#include "bsurv/survivor.hpp"

using json = nlohmann::ordered_json;
using namespace bsurv;

namespace {

// Directed rounding for display: the printed pair always contains the
// rational enclosure.
double down(const Rat& v) {
    double d = v.convert_to<double>();
    while (std::isfinite(d) && Rat(d) > v)
        d = std::nextafter(d, -std::numeric_limits<double>::infinity());
    return d;
}

double up(const Rat& v) {
    double d = v.convert_to<double>();
    while (std::isfinite(d) && Rat(d) < v)
        d = std::nextafter(d, std::numeric_limits<double>::infinity());
    return d;
}

json enc(const ValueEnclosure& v) { return json::array({down(v.lo), up(v.hi)}); }
json enc(const Beta& b) { return json::array({down(b.lo), up(b.hi)}); }
json enc(const Rat& r) { return json::array({down(r), up(r)}); }

std::string dstr(double v) {
    char buf[40];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

json config_echo(const Config& c) {
    json j;
    j["eps"] = rat_string(c.eps);
    j["depth"] = c.depth;
    j["cap"] = c.cap;
    j["nmax"] = c.nmax;
    j["horizon"] = c.horizon;
    j["format"] = c.format;
    return j;
}

void emit(json j, const Config& c) {
    j["config"] = config_echo(c);
    std::cout << j.dump() << "\n";
}

// pre:per with an optional seq: prefix, digits only.
PeriodicSeq parse_seq_arg(std::string text) {
    if (text.rfind("seq:", 0) == 0) text = text.substr(4);
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw parse_error("expected <pre>:<per> digit strings: " + text, 0);
    Word pre = parse_word(text.substr(0, colon));
    Word per = parse_word(text.substr(colon + 1));
    if (per.empty()) throw domain_error("periodic part must not be empty: " + text);
    return PeriodicSeq(pre, per);
}

// decimal | p/q | seq:<pre>:<per>, the last meaning the base where the given
// sequence expands 1.
Beta parse_beta(const std::string& text, const Rat& eps) {
    if (text.rfind("seq:", 0) == 0) return alpha_inverse(parse_seq_arg(text), eps);
    Rat r = parse_rational(text);
    if (r <= 1) throw domain_error("base must exceed 1: " + text);
    return beta_from_rational(r);
}

const char* verdict_str(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        default: return "undecided";
    }
}

const char* relation_str(const ValueEnclosure& v) {
    if (v.hi <= 1) return v.hi == 1 && v.exact ? "==1" : "<=1";
    if (v.lo >= 1) return ">=1";
    return "straddles 1";
}

void add_common(CLI::App* sc, Config& cfg, std::string& eps_text, std::string& config_sink) {
    sc->add_option("--eps", eps_text, "target enclosure width, rational or decimal");
    sc->add_option("--depth", cfg.depth, "renormalization descent depth");
    sc->add_option("--cap", cfg.cap, "longest carrier word considered");
    sc->add_option("--nmax", cfg.nmax, "word lengths fed to the entropy engine");
    sc->add_option("--horizon", cfg.horizon, "orbit steps for membership checks");
    sc->add_option("--format", cfg.format, "json or csv");
    sc->add_option("--config", config_sink, "key=value file with the options above");
}

}  // namespace

int main(int argc, char** argv) {
    Config cfg;
    std::string config_sink;
    try {
        // the config file is applied first so that explicit flags win
        for (int i = 1; i < argc; ++i) {
            std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc)
                cfg = load_config_file(argv[i + 1], cfg);
            else if (arg.rfind("--config=", 0) == 0)
                cfg = load_config_file(arg.substr(9), cfg);
        }
        std::string eps_text = rat_string(cfg.eps);

        CLI::App app{"certified enclosures for beta-transformations with a hole"};
        app.require_subcommand(1);
        auto finish = [&]() {
            cfg.eps = parse_rational(eps_text);
            validate(cfg);
        };

        int level = 0;
        CLI::App* farey = app.add_subcommand("farey", "ordered word family at one level");
        farey->add_option("--level", level, "recursion level")->required();
        add_common(farey, cfg, eps_text, config_sink);
        farey->callback([&]() {
            finish();
            std::string out;
            for (const Word& w : farey_level(level)) {
                if (!out.empty()) out += ' ';
                out += word_string(w);
            }
            std::cout << out << "\n";
        });

        std::string word_arg;
        CLI::App* word = app.add_subcommand("word", "combinatorial facts about one word");
        word->add_option("--w", word_arg, "digit string")->required();
        add_common(word, cfg, eps_text, config_sink);
        word->callback([&]() {
            finish();
            Word w = parse_word(word_arg);
            json j;
            j["word"] = word_string(w);
            j["lyndon"] = is_lyndon(w);
            j["farey"] = is_farey(w);
            j["extended_farey"] = is_extended_farey(w);
            j["largest_rotation"] = word_string(largest_cyclic(w));
            j["smallest_rotation"] = word_string(smallest_cyclic(w));
            j["theta"] = word_string(theta(w));
            emit(j, cfg);
        });

        std::string sub_s, sub_r, sub_parse;
        CLI::App* sub = app.add_subcommand("sub", "substitution action on a word");
        sub->add_option("--s", sub_s, "substitution word")->required();
        sub->add_option("--r", sub_r, "binary argument word")->required();
        sub->add_option("--parse", sub_parse, "invert: factor this word over the blocks");
        add_common(sub, cfg, eps_text, config_sink);
        sub->callback([&]() {
            finish();
            Word s = parse_word(sub_s), r = parse_word(sub_r);
            json j;
            j["s"] = word_string(s);
            j["r"] = word_string(r);
            j["phi"] = word_string(phi_apply(s, r));
            j["bullet"] = word_string(bullet(s, r));
            if (!sub_parse.empty()) j["parsed"] = word_string(phi_parse(s, parse_word(sub_parse)));
            emit(j, cfg);
        });

        std::string beta_arg, t_arg, seq_arg;
        std::size_t digit_count = 0;
        CLI::App* alpha = app.add_subcommand("alpha", "quasi-greedy expansion of 1");
        alpha->add_option("--beta", beta_arg, "base")->required();
        alpha->add_option("--n", digit_count, "digits to emit (default nmax)");
        add_common(alpha, cfg, eps_text, config_sink);
        alpha->callback([&]() {
            finish();
            Beta b = parse_beta(beta_arg, cfg.eps);
            std::size_t n = digit_count ? digit_count : cfg.nmax;
            DigitStreamResult d = alpha_digits(b, n);
            json j;
            j["beta"] = enc(b);
            j["digits"] = word_string(d.digits);
            j["undecided_at"] = d.undecided ? json(*d.undecided) : json(nullptr);
            if (auto s = alpha_seq(b)) {
                j["pre"] = word_string(s->pre);
                j["per"] = word_string(s->per);
            }
            emit(j, cfg);
        });

        CLI::App* pi = app.add_subcommand("pi", "value of a digit sequence at a base");
        pi->add_option("--seq", seq_arg, "seq:<pre>:<per>")->required();
        pi->add_option("--beta", beta_arg, "base")->required();
        add_common(pi, cfg, eps_text, config_sink);
        pi->callback([&]() {
            finish();
            Beta b = parse_beta(beta_arg, cfg.eps);
            PeriodicSeq s = parse_seq_arg(seq_arg);
            ValueEnclosure v = eval_pi(s, b);
            json j;
            j["beta"] = enc(b);
            j["seq"] = seq_string(s);
            j["value"] = enc(v);
            j["exact"] = v.exact;
            emit(j, cfg);
        });

        CLI::App* cls = app.add_subcommand("classify", "region of the base in the decomposition");
        cls->add_option("--beta", beta_arg, "base")->required();
        add_common(cls, cfg, eps_text, config_sink);
        cls->callback([&]() {
            finish();
            Beta b = parse_beta(beta_arg, cfg.eps);
            Classification c = classify(b, cfg.depth, cfg.cap);
            json j;
            j["verdict"] = region_name(c.kind);
            json coding = json::array();
            for (const Word& f : c.factors) coding.push_back(word_string(f));
            j["coding"] = coding;
            json certs = json::array();
            if (!c.product.empty()) {
                EndpointSeqs es = endpoint_seqs(c.product);
                for (const PeriodicSeq& s : {es.left, es.star, es.right}) {
                    ValueEnclosure v = eval_pi(s, b);
                    certs.push_back(
                        {{"seq", seq_string(s)}, {"value_at_beta", enc(v)}, {"relation", relation_str(v)}});
                }
            }
            j["certificates"] = certs;
            j["boundary_flag"] = c.kind == RegionKind::right_edge;
            j["candidate"] = c.candidate;
            emit(j, cfg);
        });

        CLI::App* tauc = app.add_subcommand("tau", "critical hole size at one base");
        tauc->add_option("--beta", beta_arg, "base")->required();
        add_common(tauc, cfg, eps_text, config_sink);
        tauc->callback([&]() {
            finish();
            Beta b = parse_beta(beta_arg, cfg.eps);
            TauResult r = tau(b, cfg.depth, cfg.cap, cfg.eps);
            json j;
            j["value_lo"] = down(r.value.lo);
            j["value_hi"] = up(r.value.hi);
            j["case"] = r.case_name();
            j["S"] = word_string(r.cls.product);
            j["certified_lo"] = down(r.certified.lo);
            j["certified_hi"] = up(r.certified.hi);
            j["seq"] = r.seq ? json(seq_string(*r.seq)) : json(nullptr);
            emit(j, cfg);
        });

        std::string from_arg, to_arg, step_arg;
        std::size_t jobs = 1;
        CLI::App* stair = app.add_subcommand("staircase", "critical value sweep over a base grid");
        stair->add_option("--from", from_arg, "grid start")->required();
        stair->add_option("--to", to_arg, "grid end")->required();
        stair->add_option("--step", step_arg, "grid step")->required();
        stair->add_option("--jobs", jobs, "worker threads");
        add_common(stair, cfg, eps_text, config_sink);
        stair->callback([&]() {
            finish();
            if (jobs == 0) throw domain_error("jobs must be positive");
            auto rows = staircase(parse_rational(from_arg), parse_rational(to_arg),
                                  parse_rational(step_arg), cfg.depth, cfg.cap, cfg.eps, jobs);
            std::string out = "# bsurv-csv v1\nbeta,tau_lo,tau_hi,case,S\n";
            for (const StaircaseRow& r : rows) {
                out += dstr(r.beta.convert_to<double>());
                out += ',';
                out += dstr(down(r.res.value.lo));
                out += ',';
                out += dstr(up(r.res.value.hi));
                out += ',';
                out += r.res.case_name();
                out += ',';
                out += word_string(r.res.cls.product);
                out += '\n';
            }
            std::cout << out;
        });

        CLI::App* dim = app.add_subcommand("dim", "dimension of the survivor set");
        dim->add_option("--beta", beta_arg, "base")->required();
        dim->add_option("--t", t_arg, "hole size, rational")->required();
        add_common(dim, cfg, eps_text, config_sink);
        dim->callback([&]() {
            finish();
            Beta b = parse_beta(beta_arg, cfg.eps);
            Rat t = parse_rational(t_arg);
            DimOptions opt;
            opt.nmax = cfg.nmax;
            DimensionResult d = dim_survivor(b, t, opt);
            json j;
            j["beta"] = enc(b);
            j["t"] = enc(t);
            j["entropy"] = json::array({d.entropy.lo, d.entropy.hi});
            j["dim_lo"] = d.lo;
            j["dim_hi"] = d.hi;
            j["method"] = d.entropy.method;
            j["exact_mode"] = d.exact_mode;
            emit(j, cfg);
        });

        CLI::App* ebeta = app.add_subcommand("ebeta", "does the orbit of t stay above t");
        ebeta->add_option("--beta", beta_arg, "base")->required();
        ebeta->add_option("--t", t_arg, "point to test, rational")->required();
        add_common(ebeta, cfg, eps_text, config_sink);
        ebeta->callback([&]() {
            finish();
            Beta b = parse_beta(beta_arg, cfg.eps);
            Rat t = parse_rational(t_arg);
            OrbitCheck oc = bifurcation_member(b, t, cfg.horizon);
            json j;
            j["beta"] = enc(b);
            j["t"] = enc(t);
            j["verdict"] = verdict_str(oc.verdict);
            j["witness"] = oc.witness;
            emit(j, cfg);
        });

        std::size_t iso_count = 3;
        CLI::App* iso = app.add_subcommand("isolated", "isolated bifurcation points at one base");
        iso->add_option("--beta", beta_arg, "base")->required();
        iso->add_option("--count", iso_count, "points wanted");
        add_common(iso, cfg, eps_text, config_sink);
        iso->callback([&]() {
            finish();
            Beta b = parse_beta(beta_arg, cfg.eps);
            json pts = json::array();
            for (const IsolatedPoint& p : isolated_construction(b, iso_count)) {
                pts.push_back({{"word", word_string(p.word)},
                               {"t", enc(p.t)},
                               {"certified", p.certified}});
            }
            json j;
            j["beta"] = enc(b);
            j["points"] = pts;
            emit(j, cfg);
        });

        int kl_m = 1;
        CLI::App* kl = app.add_subcommand("kl", "smallest base with a unique expansion of 1");
        kl->add_option("--m", kl_m, "alphabet parameter")->required();
        add_common(kl, cfg, eps_text, config_sink);
        kl->callback([&]() {
            finish();
            KLResult r = komornik_loreti(kl_m, cfg.eps);
            Word prefix;
            for (std::size_t i = 1; i <= 16; ++i) prefix.push_back(kl_alpha_digit(kl_m, i));
            json j;
            j["m"] = r.m;
            j["beta"] = enc(r.beta);
            j["tau"] = enc(r.tau_value);
            j["alpha_prefix"] = word_string(prefix);
            emit(j, cfg);
        });

        int hole_k = 2;
        std::string a_arg, b_arg;
        CLI::App* holes = app.add_subcommand("holes", "times-k map with translated holes");
        holes->add_option("--k", hole_k, "integer slope")->required();
        holes->add_option("--a", a_arg, "left hole endpoint, rational")->required();
        holes->add_option("--b", b_arg, "right hole endpoint, rational")->required();
        add_common(holes, cfg, eps_text, config_sink);
        holes->callback([&]() {
            finish();
            HoleSystem h = hole_system(hole_k, parse_rational(a_arg), parse_rational(b_arg));
            DimOptions opt;
            opt.nmax = cfg.nmax;
            HoleReport rep = hole_report(h, cfg.eps, opt);
            json j;
            j["beta"] = enc(rep.bridge.beta);
            j["t"] = enc(rep.bridge.t);
            j["dim_omega"] = json::array({rep.omega_lo, rep.omega_hi});
            j["dim_sigma"] = json::array({rep.sigma_lo, rep.sigma_hi});
            j["dim_survivor"] = json::array({rep.bridge.dim.lo, rep.bridge.dim.hi});
            j["agree"] = rep.agree;
            j["degenerate"] = h.degenerate();
            j["countable"] = rep.bridge.countable;
            j["greedy_adjusted"] = rep.bridge.greedy_adjusted;
            emit(j, cfg);
        });

        std::string s_arg;
        CLI::App* ends = app.add_subcommand("endpoints", "carrier interval roots of a word");
        ends->add_option("--s", s_arg, "word")->required();
        add_common(ends, cfg, eps_text, config_sink);
        ends->callback([&]() {
            finish();
            IntervalTriple tr = interval_triple(parse_word(s_arg), cfg.eps);
            json j;
            j["s"] = word_string(tr.word);
            j["beta_l"] = enc(tr.left);
            j["beta_star"] = enc(tr.star);
            j["beta_r"] = enc(tr.right);
            emit(j, cfg);
        });

        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            return app.exit(e);
        } catch (const CLI::ParseError& e) {
            std::cerr << e.what() << "\n";
            std::cerr << app.help();
            return 64;
        }
        return 0;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const precision_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
