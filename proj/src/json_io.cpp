#include "sparse/json_io.hpp"

namespace sparse {

namespace {

const Json& member(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

template <class T>
T read(const Json& j, const char* key) {
    try {
        return member(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("field \"") + key + "\": " + e.what());
    }
}

template <class T>
T read_or(const Json& j, const char* key, T fallback) {
    return j.is_object() && j.contains(key) ? read<T>(j, key) : fallback;
}

Json big_to_json(const BigInt& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) return x.convert_to<std::int64_t>();
    return x.str();
}

BigInt big_from_json(const Json& j) {
    try {
        if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
        if (j.is_string()) return BigInt(j.get<std::string>());
    } catch (const std::exception& e) {
        throw InputError(std::string("bad integer: ") + e.what());
    }
    throw InputError("expected an integer, got " + j.dump());
}

std::vector<std::uint32_t> digits_from_json(const Json& j) {
    if (!j.is_array()) throw InputError("expected a digit array, got " + j.dump());
    std::vector<std::uint32_t> out;
    for (const auto& d : j) {
        if (!d.is_number_integer() || d.get<std::int64_t>() < 0) throw InputError("bad field digit " + d.dump());
        out.push_back(d.get<std::uint32_t>());
    }
    return out;
}

Json digits_to_json(const FieldElement& x) { return x.digits(); }

Json symbol_to_json(Symbol s) { return s == kRadix ? Json("radix") : Json(int(s)); }

Symbol symbol_from_json(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "radix") return kRadix;
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0 && j.get<std::int64_t>() < std::int64_t(kMaxBase)) return Symbol(j.get<std::int64_t>());
    throw InputError("bad symbol " + j.dump());
}

Json field_header(const GaloisField& f) {
    Json j;
    j["p"] = f.characteristic();
    j["m"] = f.degree();
    return j;
}

Json term_to_json(const Rational& e, const FieldElement& c) { return Json::array({big_to_json(num(e)), big_to_json(den(e)), digits_to_json(c)}); }

std::pair<Rational, FieldElement> term_from_json(const Json& t, const GaloisField& field) {
    if (!t.is_array() || t.size() != 3) throw InputError("series term must be [num, den, digits], got " + t.dump());
    const BigInt d = big_from_json(t[1]);
    if (d <= 0) throw InputError("series term with a nonpositive denominator");
    return {Rational(big_from_json(t[0]), d), field_element_from_json(t[2], field)};
}

template <class F>
decltype(auto) guarded(const char* what, F&& body) {
    try {
        return body();
    } catch (const PreconditionError& e) {
        throw InputError(std::string(what) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

Json rational_to_json(const Rational& x) { return to_string(x); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception& e) {
            throw InputError("bad rational " + j.dump());
        }
    }
    throw InputError("expected a rational, got " + j.dump());
}

Json field_element_to_json(const FieldElement& x) {
    Json j = field_header(x.field());
    j["digits"] = digits_to_json(x);
    return j;
}

const GaloisField& field_from_json(const Json& j) {
    return guarded("field", [&]() -> const GaloisField& { return GaloisField::get(read<std::uint32_t>(j, "p"), read_or<std::uint32_t>(j, "m", 1)); });
}

FieldElement field_element_from_json(const Json& j, const GaloisField& field) {
    return guarded("field element", [&] {
        if (j.is_number_integer()) return field.from_int(j.get<std::int64_t>());
        if (j.is_array()) {
            const auto digits = digits_from_json(j);
            if (digits.size() > field.degree()) throw InputError("too many digits for F_" + field.order().str());
            for (auto d : digits) {
                if (d >= field.characteristic()) throw InputError("digit out of range for characteristic " + std::to_string(field.characteristic()));
            }
            return field.from_digits(digits);
        }
        if (j.is_object()) {
            if (&field_from_json(j) != &field) throw InputError("field element from F_" + field_from_json(j).order().str() + " where F_" + field.order().str() + " is expected");
            return field_element_from_json(member(j, "digits"), field);
        }
        throw InputError("bad field element " + j.dump());
    });
}

Json word_to_json(const Word& w) {
    Json j = Json::array();
    for (Symbol s : w) j.push_back(symbol_to_json(s));
    return j;
}

Word word_from_json(const Json& j, std::uint32_t base) {
    return guarded("word", [&] {
        if (j.is_string()) return parse_word(j.get<std::string>(), base);
        if (!j.is_array()) throw InputError("expected a word, got " + j.dump());
        Word w;
        for (const auto& s : j) {
            const Symbol sym = symbol_from_json(s);
            if (sym != kRadix && sym >= base) throw InputError("digit " + s.dump() + " out of range for base " + std::to_string(base));
            w.push_back(sym);
        }
        return w;
    });
}

Json dfao_to_json(const Dfao& m) {
    Json j;
    Json alphabet = Json::array();
    for (Symbol s : m.alphabet) alphabet.push_back(symbol_to_json(s));
    j["alphabet"] = alphabet;
    j["states"] = m.num_states();
    j["initial"] = m.initial;
    j["transitions"] = m.transitions;
    j["outputs"] = m.outputs;
    j["direction"] = m.direction == Direction::Lsd ? "lsd" : "msd";
    return j;
}

Dfao dfao_from_json(const Json& j) {
    return guarded("automaton", [&] {
        Dfao m;
        for (const auto& s : member(j, "alphabet")) m.alphabet.push_back(symbol_from_json(s));
        const auto states = read<std::size_t>(j, "states");
        m.initial = read_or<StateId>(j, "initial", 0);
        m.transitions = read<std::vector<std::vector<StateId>>>(j, "transitions");
        m.outputs = read<std::vector<std::uint32_t>>(j, "outputs");
        const auto direction = read_or<std::string>(j, "direction", "lsd");
        if (direction != "lsd" && direction != "msd") throw InputError("direction must be \"lsd\" or \"msd\"");
        m.direction = direction == "lsd" ? Direction::Lsd : Direction::Msd;
        if (m.transitions.size() != states) throw InputError("\"states\" does not match the transition table");
        m.validate();
        return m;
    });
}

Json sp_set_to_json(const SpSet& s) {
    Json j;
    j["p"] = s.p;
    j["acceptor"] = dfao_to_json(s.acceptor);
    j["flags"] = {{"sparse", flag_name(s.sparse)}, {"well_ordered", flag_name(s.well_ordered)}};
    return j;
}

SpSet sp_set_from_json(const Json& j) {
    // flags are recomputed rather than trusted
    return guarded("sp-set", [&] { return SpSet::from_acceptor(dfao_from_json(member(j, "acceptor")), read<std::uint32_t>(j, "p")); });
}

Json form_to_json(const SimpleSparseForm& f) {
    Json j;
    j["base"] = f.base;
    Json fixed = Json::array(), cycles = Json::array();
    for (const auto& v : f.fixed) fixed.push_back(word_to_json(v));
    for (const auto& w : f.cycles) cycles.push_back(word_to_json(w));
    j["fixed"] = fixed;
    j["cycles"] = cycles;
    return j;
}

SimpleSparseForm form_from_json(const Json& j) {
    return guarded("form", [&] {
        SimpleSparseForm f;
        f.base = read<std::uint32_t>(j, "base");
        for (const auto& v : member(j, "fixed")) f.fixed.push_back(word_from_json(v, f.base));
        for (const auto& w : member(j, "cycles")) f.cycles.push_back(word_from_json(w, f.base));
        f.validate();
        return f;
    });
}

Json closed_form_to_json(const ClosedForm& c) {
    Json j;
    j["base"] = c.base;
    Json pre = Json::array(), post = Json::array();
    for (const auto& x : c.pre) pre.push_back(rational_to_json(x));
    for (const auto& x : c.post) post.push_back(rational_to_json(x));
    j["pre"] = pre;
    j["post"] = post;
    j["periods"] = c.periods;
    return j;
}

Json series_to_json(const TruncatedSeries& s) {
    Json j = field_header(*s.field);
    j["precision"] = s.precision;
    Json terms = Json::array();
    for (const auto& [e, c] : s.coeffs) terms.push_back(term_to_json(Rational(BigInt(e)), c));
    j["terms"] = terms;
    return j;
}

TruncatedSeries series_from_json(const Json& j) {
    return guarded("series", [&] {
        const GaloisField& field = field_from_json(j);
        TruncatedSeries s = TruncatedSeries::zero(field, read<std::uint64_t>(j, "precision"));
        for (const auto& t : member(j, "terms")) {
            const auto [e, c] = term_from_json(t, field);
            if (!is_integer(e) || e < 0) throw InputError("power series exponent " + to_string(e) + " is not a natural number");
            if (e >= Rational(BigInt(s.precision))) continue;
            s.set(num(e).convert_to<std::uint64_t>(), s.coeff(num(e).convert_to<std::uint64_t>()) + c);
        }
        return s;
    });
}

Json gen_series_to_json(const GenSeries& g) {
    Json j = field_header(*g.field);
    if (g.window.hi || g.window.depth < kExactDepth) {
        Json window;
        window["hi"] = g.window.hi ? rational_to_json(*g.window.hi) : Json();
        window["depth"] = g.window.depth;
        j["window"] = window;
    }
    Json terms = Json::array();
    for (const auto& [e, c] : g.terms) terms.push_back(term_to_json(e, c));
    j["terms"] = terms;
    return j;
}

GenSeries gen_series_from_json(const Json& j) {
    return guarded("series", [&] {
        const GaloisField& field = field_from_json(j);
        std::map<Rational, FieldElement> terms;
        for (const auto& t : member(j, "terms")) {
            const auto [e, c] = term_from_json(t, field);
            auto [it, fresh] = terms.emplace(e, c);
            if (!fresh) it->second += c;
        }
        GenSeries g = GenSeries::exact(field, terms);
        if (j.contains("window")) {
            const Json& w = j.at("window");
            Window win;
            if (w.contains("hi") && !w.at("hi").is_null()) win.hi = rational_from_json(w.at("hi"));
            win.depth = read_or<std::int64_t>(w, "depth", kExactDepth);
            // nothing is known about the support outside the window
            g = g.restricted(win);
            g.bounds = SupportBounds{};
        }
        return g;
    });
}

Json equation_to_json(const AlgebraicEquation& eq) {
    Json j = field_header(*eq.field);
    Json terms = Json::array();
    for (const auto& t : eq.terms) terms.push_back(Json::array({t.i, t.j, digits_to_json(t.coeff)}));
    j["terms"] = terms;
    return j;
}

AlgebraicEquation equation_from_json(const Json& j) {
    return guarded("equation", [&] {
        AlgebraicEquation eq;
        eq.field = &field_from_json(j);
        for (const auto& t : member(j, "terms")) {
            if (!t.is_array() || t.size() != 3) throw InputError("equation term must be [i, j, coeff], got " + t.dump());
            eq.terms.push_back({t[0].get<std::uint64_t>(), t[1].get<std::uint32_t>(), field_element_from_json(t[2], *eq.field)});
        }
        eq.validate();
        return eq;
    });
}

std::vector<FieldElement> seed_from_json(const Json& j, const GaloisField& field) {
    const Json& list = j.is_object() ? member(j, "seed") : j;
    if (!list.is_array()) throw InputError("seed must be an array of coefficients");
    std::vector<FieldElement> out;
    for (const auto& c : list) out.push_back(field_element_from_json(c, field));
    return out;
}

Json certificate_to_json(const Certificate& c) {
    Json j = field_header(*c.field);
    Json steps = Json::array();
    for (const auto& s : c.steps) {
        Json step;
        step["op"] = step_name(s.kind);
        if (!s.args.empty()) step["args"] = s.args;
        switch (s.kind) {
            case StepKind::Seed:
                step["coeff"] = digits_to_json(s.coeff);
                step["exponent"] = rational_to_json(s.exponent);
                break;
            case StepKind::ScaleVar: step["alpha"] = digits_to_json(s.coeff); break;
            case StepKind::SubstPower:
                step["c"] = rational_to_json(s.c);
                step["d"] = rational_to_json(s.d);
                break;
            case StepKind::GapSum: step["d"] = s.gap; break;
            case StepKind::FrobTwist: step["j"] = s.twist; break;
            default: break;
        }
        steps.push_back(step);
    }
    j["steps"] = steps;
    return j;
}

Certificate certificate_from_json(const Json& j) {
    return guarded("certificate", [&] {
        Certificate c;
        c.field = &field_from_json(j);
        for (const auto& step : member(j, "steps")) {
            const auto name = read<std::string>(step, "op");
            const auto kind = parse_step_kind(name);
            if (!kind) throw InputError("unknown certificate step \"" + name + "\"");
            CertificateStep s;
            s.kind = *kind;
            s.args = read_or<std::vector<std::size_t>>(step, "args", {});
            switch (s.kind) {
                case StepKind::Seed:
                    s.coeff = field_element_from_json(member(step, "coeff"), *c.field);
                    s.exponent = rational_from_json(member(step, "exponent"));
                    break;
                case StepKind::ScaleVar: s.coeff = field_element_from_json(member(step, "alpha"), *c.field); break;
                case StepKind::SubstPower:
                    s.c = rational_from_json(member(step, "c"));
                    s.d = rational_from_json(member(step, "d"));
                    break;
                case StepKind::GapSum: s.gap = read<std::uint32_t>(step, "d"); break;
                case StepKind::FrobTwist: s.twist = read<std::int64_t>(step, "j"); break;
                default: break;
            }
            c.steps.push_back(std::move(s));
        }
        c.validate();
        return c;
    });
}

QuasiAutomatic quasi_from_json(const Json& j) {
    return guarded("quasi-automatic series", [&] {
        QuasiAutomatic q;
        q.a = rational_from_json(member(j, "a"));
        q.b = rational_from_json(member(j, "b"));
        q.field = &field_from_json(j);
        q.machine = dfao_from_json(member(j, "dfao"));
        if (q.a <= 0) throw InputError("a must be positive");
        return q;
    });
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace sparse
