#include "commands.hpp"

#include "sparse/json_io.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

namespace sparsec {

using namespace sparse;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kInput = 2, kCap = 3, kVerification = 4 };

struct Globals {
    std::optional<std::uint64_t> precision;
    std::optional<std::size_t> state_cap;
    std::size_t component_cap = kDefaultComponentCap;
    unsigned jobs = 1;
    std::string format = "json";
    bool timing = false;
};

struct Options {
    std::vector<std::string> dfao;
    std::string word;
    std::optional<std::uint64_t> n;
    std::size_t max_len = 10;
    std::string equation, seed;
    std::uint32_t degree = 1;
    std::uint64_t agreement = 16;
    std::string op, a, b, at = "0", bound = "64";
    std::size_t digits = 6;
    std::string series, hi;
    std::int64_t depth = 8;
    std::uint32_t d = 1;
    std::string form, coeff = "1", cert, target, quasi;
    std::vector<std::string> alpha;
};

std::string sha256_hex(const std::string& data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

Json big_json(const BigInt& x) {
    if (x <= std::numeric_limits<std::int64_t>::max() && x >= std::numeric_limits<std::int64_t>::min()) return x.convert_to<std::int64_t>();
    return x.str();
}

Json window_json(const Window& w) {
    Json j;
    j["hi"] = w.hi ? rational_to_json(*w.hi) : Json();
    j["depth"] = w.depth;
    return j;
}

class Report {
   public:
    explicit Report(const std::string& command) {
        body_["command"] = command;
        body_["inputs"] = Json::object();
    }

    Json read(const std::string& role, const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string text = buf.str();
        std::string key = role;
        for (int k = 1; body_["inputs"].contains(key); ++k) key = role + "." + std::to_string(k);
        body_["inputs"][key] = {{"file", std::filesystem::path(path).filename().string()}, {"sha256", sha256_hex(text)}};
        try {
            return parse_json_text(text);
        } catch (const InputError& e) {
            throw InputError(path + ": " + e.what());
        }
    }

    Json& operator[](const char* key) { return body_[key]; }

    /// Records a named check; a failing check makes the exit code 4.
    void check(Json c, bool ok) {
        c["ok"] = ok;
        checks_.push_back(std::move(c));
        if (!ok) status_ = kVerification;
    }

    int status() const { return status_; }

    /// The finished report; checks come after the results.
    Json& body() {
        if (!checks_.empty()) body_["checks"] = checks_;
        return body_;
    }

   private:
    Json body_;
    Json checks_ = Json::array();
    int status_ = kOk;
};

std::string form_text(const SimpleSparseForm& f) {
    std::string out;
    for (std::size_t i = 0; i < f.fixed.size(); ++i) {
        out += to_text(f.fixed[i]);
        if (i < f.cycles.size()) out += "(" + to_text(f.cycles[i]) + ")*";
    }
    return out.empty() ? "ε" : out;
}

Json component_json(const SimpleSparseForm& f) {
    Json j;
    j["text"] = form_text(f);
    j["form"] = form_to_json(f);
    j["closed_form"] = closed_form_to_json(closed_form(f));
    return j;
}

Json witness_json(const PumpWitness& w) {
    return {{"prefix", to_text(w.prefix)}, {"first", to_text(w.first)}, {"second", to_text(w.second)}, {"suffix", to_text(w.suffix)}};
}

AnalysisOptions analysis_options(const Globals& g) {
    AnalysisOptions a;
    a.component_cap = g.component_cap;
    if (g.state_cap) a.state_cap = *g.state_cap;
    return a;
}

std::uint32_t base_of(const Dfao& m) {
    const std::uint32_t k = digit_base(m);
    if (k < 2) throw InputError("automaton alphabet is not a digit alphabet");
    return k;
}

// ---------------------------------------------------------------------------

void cmd_run(const Globals&, const Options& o, Report& r) {
    const Dfao m = dfao_from_json(r.read("dfao", o.dfao.at(0)));
    const std::uint32_t k = base_of(m);
    Word w;
    if (o.n) {
        w = encode_nat(BigInt(*o.n), k);
    } else {
        try {
            w = parse_word(o.word, k);
        } catch (const PreconditionError& e) {
            throw InputError(std::string("word: ") + e.what());
        }
    }
    for (Symbol s : w) {
        if (m.symbol_index(s) < 0) throw InputError("symbol " + symbol_text(s) + " is not in the automaton alphabet");
    }
    r["word"] = to_text(w);
    r["direction"] = m.direction == Direction::Lsd ? "lsd" : "msd";
    r["output"] = m.run(w);
}

void cmd_census(const Globals&, const Options& o, Report& r) {
    const Dfao m = dfao_from_json(r.read("dfao", o.dfao.at(0)));
    const auto by_length = census_by_length(support_of(m), o.max_len);
    Json rows = Json::array();
    BigInt total = 0;
    for (std::size_t n = 0; n <= o.max_len; ++n) {
        total += by_length[n];
        rows.push_back({{"n", n}, {"f_L", big_json(total)}});
    }
    r["language"] = "words with nonzero output";
    r["census"] = rows;
    r.check({{"check", "census_by_length"}, {"max_length", o.max_len}}, true);
}

Json classify_language(const Dfao& m, const Globals& g) {
    const AnalysisOptions opts = analysis_options(g);
    const Acceptor canon = canonical_language(support_of(m), opts.state_cap);
    const GrowthReport growth = classify_growth(canon, 20, opts);
    Json j;
    j["verdict"] = growth.sparse ? "Sparse" : "NonSparse";
    j["route"] = "language";
    j["growth"] = {{"check", "census_fit"}, {"degree", growth.degree}, {"alpha", growth.alpha}, {"beta", growth.beta}};
    if (growth.sparse) {
        Json comps = Json::array();
        for (const auto& f : decompose(canon, opts)) {
            Json c = component_json(f);
            if (f.radix_position()) c["well_ordered"] = is_well_ordered(f).well_ordered;
            comps.push_back(c);
        }
        j["components"] = comps;
    } else if (growth.witness) {
        j["witness"] = witness_json(*growth.witness);
    }
    return j;
}

Json classification_json(const SeriesClassification& c) {
    Json j;
    j["verdict"] = c.sparse ? "Sparse" : "NonSparse";
    j["route"] = c.empirical ? "empirical" : "automaton";
    if (c.empirical) j["kernel"] = {{"precision", c.precision}, {"min_agreement", c.min_agreement}};
    j["support_states"] = c.support.num_states();
    j["growth"] = {{"check", "census_fit"}, {"alpha", c.alpha}, {"beta", c.beta}};
    if (c.sparse) {
        Json comps = Json::array();
        for (const auto& comp : c.components) {
            Json x = component_json(comp.form);
            x["value"] = field_element_to_json(comp.value);
            comps.push_back(x);
        }
        j["components"] = comps;
        j["certificate"] = certificate_to_json(c.certificate);
        j["replay"] = {{"check", "certificate_replay_vs_coefficients"},
                       {"precision", c.replay_precision},
                       {"ok", c.replay_check.ok},
                       {"mismatch", c.replay_check.mismatch ? rational_to_json(*c.replay_check.mismatch) : Json()}};
    } else if (c.witness) {
        j["witness"] = witness_json(*c.witness);
    }
    return j;
}

void cmd_classify(const Globals& g, const Options& o, Report& r) {
    ClassifyOptions opts;
    opts.analysis = analysis_options(g);
    opts.empirical.min_agreement = o.agreement;
    if (g.state_cap) opts.empirical.state_cap = *g.state_cap;

    Json results = Json::array();
    auto record = [&](const Json& item) {
        results.push_back(item);
        if (item.contains("replay")) r.check(item["replay"], item["replay"]["ok"].get<bool>());
    };
    if (!o.equation.empty()) {
        if (!o.dfao.empty()) throw InputError("give either --equation or --dfao");
        const AlgebraicEquation eq = equation_from_json(r.read("equation", o.equation));
        const auto seed = o.seed.empty() ? std::vector<FieldElement>{} : seed_from_json(r.read("seed", o.seed), *eq.field);
        opts.empirical.precision = g.precision.value_or(4096);
        record(classification_json(classify_series(SeriesSource::from_equation(eq, seed), opts)));
    } else {
        if (o.dfao.empty()) throw InputError("classify needs --equation or --dfao");
        opts.replay_precision = g.precision.value_or(1024);
        std::vector<Dfao> machines;
        for (const auto& path : o.dfao) machines.push_back(dfao_from_json(r.read("dfao", path)));
        std::vector<Json> out(machines.size());
        std::vector<std::exception_ptr> errors(machines.size());
        auto work = [&](std::size_t i) {
            try {
                const Dfao& m = machines[i];
                if (has_radix_symbol(m)) {
                    out[i] = classify_language(m, g);
                } else {
                    out[i] = classification_json(classify_series(SeriesSource::from_dfao(m, GaloisField::get(base_of(m), o.degree)), opts));
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        };
        const unsigned jobs = std::max(1u, std::min<unsigned>(g.jobs, unsigned(machines.size())));
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < machines.size(); i += jobs) work(i);
            });
        }
        for (auto& th : pool) th.join();
        for (std::size_t i = 0; i < machines.size(); ++i) {
            if (errors[i]) std::rethrow_exception(errors[i]);
            record(out[i]);
        }
    }
    r["results"] = results;
}

void cmd_decompose(const Globals& g, const Options& o, Report& r) {
    const Dfao m = dfao_from_json(r.read("dfao", o.dfao.at(0)));
    const AnalysisOptions opts = analysis_options(g);
    const Acceptor canon = canonical_language(support_of(m), opts.state_cap);
    const auto forms = decompose(canon, opts);
    Json comps = Json::array();
    Acceptor cover = literal({}, canon.alphabet);
    for (const auto& f : forms) {
        comps.push_back(component_json(f));
        cover = unite(cover, form_acceptor(f, canon.alphabet));
    }
    r["components"] = comps;
    r.check({{"check", "components_cover_language"}}, equivalent(cover, canon));
}

SpSet read_sp_set(Report& r, const std::string& role, const std::string& path) {
    const Json j = r.read(role, path);
    if (j.contains("acceptor")) return sp_set_from_json(j);
    const Dfao m = dfao_from_json(j);
    return has_radix_symbol(m) ? SpSet::from_acceptor(m, digit_base(m)) : SpSet::from_naturals(m, base_of(m));
}

std::vector<Rational> cut(const std::set<Rational>& xs, const Rational& bound, std::size_t digits, std::uint32_t p) {
    std::vector<Rational> out;
    for (const auto& x : xs) {
        if (x >= 0 && x <= bound && p_power_exponent_of_den(x, p) <= int(digits)) out.push_back(x);
    }
    return out;
}

Json values_json(const std::vector<Rational>& xs) {
    Json j = Json::array();
    for (const auto& x : xs) j.push_back(rational_to_json(x));
    return j;
}

void cmd_spset(const Globals& g, const Options& o, Report& r) {
    const std::size_t cap = g.state_cap.value_or(kDefaultStateCap);
    const SpSet a = read_sp_set(r, "a", o.a);
    const std::uint32_t p = a.p;
    const Rational bound = parse_rational(o.bound);
    const Rational at = parse_rational(o.at);
    const std::size_t extra = 9;  // source windows reach further so images landing inside the window are all seen
    std::set<Rational> direct;
    std::vector<std::pair<std::string, SpSet>> results;

    if (o.op == "union" || o.op == "sum") {
        if (o.b.empty()) throw InputError(o.op + " needs --b");
        const SpSet b = read_sp_set(r, "b", o.b);
        if (o.op == "union") {
            results.emplace_back("union", sp_union(a, b));
            for (const auto& x : a.window(bound, o.digits)) direct.insert(x);
            for (const auto& x : b.window(bound, o.digits)) direct.insert(x);
        } else {
            results.emplace_back("sum", minkowski_sum(a, b, cap));
            const auto xs = a.window(bound, o.digits + extra), ys = b.window(bound, o.digits + extra);
            for (const auto& x : xs) {
                for (const auto& y : ys) direct.insert(x + y);
            }
        }
    } else if (o.op == "split") {
        auto [lo, hi] = split(a, at);
        results.emplace_back("below", lo);
        results.emplace_back("above", hi);
    } else if (o.op == "spread-up") {
        results.emplace_back("spread_up", spread_up(a, at, cap));
        for (const auto& x : a.window(bound, o.digits + extra)) {
            for (Rational y = x; y <= bound; y = (y - at) * p + at) direct.insert(y);
        }
    } else if (o.op == "spread-down") {
        results.emplace_back("spread_down", spread_down(a, at, cap));
        for (const auto& x : a.window(bound, o.digits)) {
            Rational y = x;
            for (std::size_t n = 1; n <= o.digits + extra; ++n) {
                y = (y - at) / p + at;
                direct.insert(y);
            }
        }
    } else {
        throw InputError("unknown spset operation \"" + o.op + "\" (union, sum, split, spread-up, spread-down)");
    }

    Json sets = Json::object();
    for (const auto& [name, s] : results) {
        Json j = sp_set_to_json(s);
        j["window"] = values_json(s.window(bound, o.digits));
        sets[name] = j;
    }
    r["results"] = sets;
    Json c = {{"check", "window_enumeration"}, {"bound", rational_to_json(bound)}, {"fraction_digits", o.digits}};
    bool ok = true;
    if (o.op == "split") {
        std::vector<Rational> below, above;
        for (const auto& x : a.window(bound, o.digits)) {
            if (x < at) below.push_back(x);
            if (x > at) above.push_back(x);
        }
        ok = results[0].second.window(bound, o.digits) == below && results[1].second.window(bound, o.digits) == above;
    } else {
        ok = results[0].second.window(bound, o.digits) == cut(direct, bound, o.digits, p);
    }
    c["members"] = results[0].second.window(bound, o.digits).size();
    r.check(c, ok);
}

Window window_from(const Options& o) {
    if (o.hi.empty()) throw InputError("--hi is required for generalized series");
    return Window::below(parse_rational(o.hi), o.depth);
}

void cmd_as_solve(const Globals&, const Options& o, Report& r) {
    const GenSeries f = gen_series_from_json(r.read("series", o.series));
    const Window w = window_from(o);
    Json sols = Json::array();
    for (const auto& g : solve_artin_schreier(f, w)) {
        sols.push_back(gen_series_to_json(g));
        const GenSeries res = artin_schreier_residual(g, f);
        const bool ok = res.window.covers(w) && res.restricted(w).terms.empty();
        Json c = {{"check", "artin_schreier_residual"}, {"window", window_json(w)}};
        c["lowest_nonzero"] = res.terms.empty() ? Json() : rational_to_json(res.terms.begin()->first);
        r.check(c, ok);
    }
    r["window"] = window_json(w);
    r["solutions"] = sols;
}

void cmd_gap_sum(const Globals&, const Options& o, Report& r) {
    const Json j = r.read("series", o.series);
    r["d"] = o.d;
    if (j.contains("precision")) {
        r["result"] = series_to_json(gap_sum(series_from_json(j), o.d));
    } else {
        const Window w = window_from(o);
        r["window"] = window_json(w);
        r["result"] = gen_series_to_json(gap_sum(gen_series_from_json(j), o.d, w));
    }
    // gap_sum throws VerificationFailure when the routes disagree
    r.check({{"check", "direct_route_vs_moore_route"}}, true);
}

void cmd_certify(const Globals& g, const Options& o, Report& r) {
    const SimpleSparseForm f = form_from_json(r.read("form", o.form));
    const GaloisField& field = GaloisField::get(f.base, o.degree);
    const FieldElement value = field_element_from_json(parse_json_text(o.coeff), field);
    const Certificate cert = certify_sparse(f, value);
    r["form"] = form_text(f);
    r["certificate"] = certificate_to_json(cert);

    Window w;
    Rational top;
    std::size_t digits = 0;
    if (f.radix_position()) {
        top = parse_rational(o.bound);
        digits = o.digits;
        w = Window::below(top, std::int64_t(digits));
    } else {
        top = Rational(BigInt(g.precision.value_or(1024)));
        w = Window::below(top, 0);
    }
    std::map<Rational, FieldElement> expected;
    for (const auto& x : enumerate(f, top, digits)) {
        if (x < top) expected.emplace(x, value);
    }
    const auto check = verify_certificate(cert, GenSeries::exact(field, expected), w);
    Json c = {{"check", "replay_vs_enumerated_values"}, {"window", window_json(w)}};
    c["mismatch"] = check.mismatch ? rational_to_json(*check.mismatch) : Json();
    r.check(c, check.ok);
}

void cmd_verify_cert(const Globals& g, const Options& o, Report& r) {
    const Certificate cert = certificate_from_json(r.read("certificate", o.cert));
    const Json t = r.read("target", o.target);
    CertificateCheck check;
    Json c = {{"check", "certificate_replay_vs_target"}};
    if (t.contains("precision")) {
        const TruncatedSeries target = series_from_json(t);
        const std::uint64_t n = g.precision.value_or(target.precision);
        check = verify_certificate(cert, target, n);
        c["precision"] = n;
    } else {
        const Window w = window_from(o);
        check = verify_certificate(cert, gen_series_from_json(t), w);
        c["window"] = window_json(w);
    }
    c["mismatch"] = check.mismatch ? rational_to_json(*check.mismatch) : Json();
    r["match"] = check.ok;
    r.check(c, check.ok);
}

void cmd_quasi_eval(const Globals&, const Options& o, Report& r) {
    const QuasiAutomatic q = quasi_from_json(r.read("quasi", o.quasi));
    Json values = Json::array();
    for (const auto& text : o.alpha) {
        const Rational alpha = parse_rational(text);
        const Rational x = q.a * alpha + q.b;
        values.push_back({{"alpha", rational_to_json(alpha)},
                          {"x", rational_to_json(x)},
                          {"word", x >= 0 && in_sp(x, q.field->characteristic()) ? Json(to_text(encode_sp(x, q.field->characteristic()))) : Json()},
                          {"value", field_element_to_json(quasi_eval(q, alpha))}});
    }
    r["values"] = values;
}

void cmd_demo(const Globals&, const Options&, Report& r) {
    const Dfao tm = thue_morse();
    const GaloisField& f2 = GaloisField::get(2, 1);
    const TruncatedSeries s = dfao_to_series(tm, f2, 1025);
    std::string prefix;
    for (std::uint64_t n = 0; n < 16; ++n) prefix += s.coeff(n).is_one() ? '1' : '0';
    r["prefix"] = prefix;
    r["run"] = {{"word", "1101"}, {"output", tm.run(parse_word("1101", 2))}};
    bool parity = true;
    for (std::uint64_t n = 0; n <= 1024; ++n) parity = parity && s.coeff(n).is_one() == (__builtin_popcountll(n) % 2 == 1);
    r.check({{"check", "digit_sum_parity"}, {"range", "0..1024"}}, parity);
    const auto c = classify_series(SeriesSource::from_dfao(tm, f2));
    r["classification"] = classification_json(c);
}

// ---------------------------------------------------------------------------
// output

void flatten(const Json& j, const std::string& key, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, key.empty() ? k : key + "." + k, out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], key + "[" + std::to_string(i) + "]", out);
    } else {
        out << key << '\t' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

void emit(Report& r, const std::string& format, std::ostream& out) {
    Json& body = r.body();
    if (format == "json") {
        out << body.dump(2) << '\n';
        return;
    }
    const std::string command = body["command"];
    if (command == "census") {
        out << "n\tf_L(n)\n";
        for (const auto& row : body["census"]) out << row["n"].dump() << '\t' << row["f_L"].dump() << '\n';
        return;
    }
    if (command == "demo-thue-morse") {
        out << "f(0..15) = " << body["prefix"].get<std::string>() << '\n';
        out << "run(1101) = " << body["run"]["output"].dump() << '\n';
        out << "verdict = " << body["classification"]["verdict"].get<std::string>() << '\n';
        return;
    }
    flatten(body, "", out);
}

int fail(const char* kind, const std::string& message, int code) {
    Json e;
    e["error"] = {{"kind", kind}, {"message", message}};
    std::cerr << e.dump() << '\n';
    return code;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"sparsec: sparse supports of algebraic power series over finite fields"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    Options o;
    app.add_option("--precision", g.precision, "Series precision or kernel precision N");
    app.add_option("--state-cap", g.state_cap, "Largest automaton built by subset constructions");
    app.add_option("--component-cap", g.component_cap, "Most components a decomposition may produce")->capture_default_str();
    app.add_option("--jobs", g.jobs, "Parallel workers for several classify inputs")->capture_default_str();
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    app.add_flag("--timing", g.timing, "Add wall-clock timing to the report");

    using Command = void (*)(const Globals&, const Options&, Report&);
    std::vector<std::pair<CLI::App*, Command>> commands;
    auto sub = [&](const char* name, const char* help, Command fn) {
        CLI::App* s = app.add_subcommand(name, help);
        commands.emplace_back(s, fn);
        return s;
    };

    auto* run = sub("run", "Run an automaton on one word", cmd_run);
    run->add_option("--dfao", o.dfao, "Automaton JSON")->required()->expected(1);
    auto* word = run->add_option("--word", o.word, "Word as text, '.' for the radix");
    auto* num = run->add_option("--n", o.n, "Natural number, encoded in the automaton's base");
    word->excludes(num);
    run->require_option(2);

    auto* census = sub("census", "Census f_L(n) of the words with nonzero output", cmd_census);
    census->add_option("--dfao", o.dfao, "Automaton JSON")->required()->expected(1);
    census->add_option("--max", o.max_len, "Largest word length")->capture_default_str();

    auto* classify = sub("classify", "Classify the support of a series", cmd_classify);
    classify->add_option("--dfao", o.dfao, "Coefficient automaton JSON (repeatable)");
    classify->add_option("--equation", o.equation, "Algebraic equation JSON");
    classify->add_option("--seed", o.seed, "Seed coefficients JSON");
    classify->add_option("--degree", o.degree, "Coefficient field F_(p^degree) for automaton inputs")->capture_default_str();
    classify->add_option("--agreement", o.agreement, "Terms compared per kernel subsequence")->capture_default_str();

    auto* decompose_cmd = sub("decompose", "Simple sparse components of the support", cmd_decompose);
    decompose_cmd->add_option("--dfao", o.dfao, "Automaton JSON")->required()->expected(1);

    auto* spset = sub("spset", "Operations on subsets of S_p", cmd_spset);
    spset->add_option("op", o.op, "union, sum, split, spread-up or spread-down")->required();
    spset->add_option("--a", o.a, "Set JSON")->required();
    spset->add_option("--b", o.b, "Second set JSON");
    spset->add_option("--at", o.at, "Split point or spread base b")->capture_default_str();
    spset->add_option("--bound", o.bound, "Window bound")->capture_default_str();
    spset->add_option("--digits", o.digits, "Fraction digits in the window")->capture_default_str();

    auto* as_solve = sub("as-solve", "Solve G^p - G + F = 0", cmd_as_solve);
    as_solve->add_option("--series", o.series, "Series F JSON")->required();
    as_solve->add_option("--hi", o.hi, "Window: exponents below this bound")->required();
    as_solve->add_option("--depth", o.depth, "Window: largest power of p in denominators")->capture_default_str();

    auto* gap = sub("gap-sum", "F + F^(p^d) + F^(p^2d) + ... by both routes", cmd_gap_sum);
    gap->add_option("--series", o.series, "Series JSON")->required();
    gap->add_option("--d", o.d, "Gap d")->capture_default_str();
    gap->add_option("--hi", o.hi, "Window bound for generalized series");
    gap->add_option("--depth", o.depth, "Window depth for generalized series")->capture_default_str();

    auto* certify = sub("certify", "Certificate for a simple sparse form", cmd_certify);
    certify->add_option("--form", o.form, "Form JSON")->required();
    certify->add_option("--coeff", o.coeff, "Coefficient as JSON (integer or digit array)")->capture_default_str();
    certify->add_option("--degree", o.degree, "Coefficient field F_(p^degree)")->capture_default_str();
    certify->add_option("--bound", o.bound, "Check window bound for radix forms")->capture_default_str();
    certify->add_option("--digits", o.digits, "Check window fraction digits for radix forms")->capture_default_str();

    auto* verify = sub("verify-cert", "Replay a certificate against a target series", cmd_verify_cert);
    verify->add_option("--cert", o.cert, "Certificate JSON")->required();
    verify->add_option("--target", o.target, "Target series JSON")->required();
    verify->add_option("--hi", o.hi, "Window bound for generalized targets");
    verify->add_option("--depth", o.depth, "Window depth for generalized targets")->capture_default_str();

    auto* quasi = sub("quasi-eval", "Coefficients of a quasi-automatic series", cmd_quasi_eval);
    quasi->add_option("--quasi", o.quasi, "Quasi-automatic series JSON")->required();
    quasi->add_option("--alpha", o.alpha, "Exponent (repeatable)")->required();

    sub("demo-thue-morse", "The Thue-Morse example end to end", cmd_demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        return fail("input", e.what(), kInput);
    }

    for (const auto& [s, fn] : commands) {
        if (!s->parsed()) continue;
        try {
            Report report(s->get_name());
            const auto start = std::chrono::steady_clock::now();
            fn(g, o, report);
            if (g.timing) {
                report["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            }
            emit(report, g.format, std::cout);
            return report.status();
        } catch (const InputError& e) {
            return fail("input", e.what(), kInput);
        } catch (const PreconditionError& e) {
            return fail("precondition", e.what(), kInput);
        } catch (const CapExceeded& e) {
            return fail("cap_exceeded", e.what(), kCap);
        } catch (const VerificationFailure& e) {
            return fail("verification", e.what(), kVerification);
        } catch (const std::exception& e) {
            return fail("internal", e.what(), kInternal);
        }
    }
    return kInternal;
}

}  // namespace sparsec
