#include "klab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "klab/document.hpp"
#include "klab/error.hpp"
#include "klab/koszul.hpp"
#include "klab/resolve.hpp"

namespace klab::cli {

using doc::Json;

namespace {

constexpr const char* kSchema = "klab-report/1";

struct Options {
    std::string command;
    std::string input = "-";
    std::optional<MonomialOrder> order;
    std::uint64_t seed = 0;
    unsigned max_power = 64;
    std::size_t perm_cap = 6;
    bool text = false;
};

struct Outcome {
    bool verdict = true;
    Json result = Json::object();
    Json details = Json::object();
};

class Context {
public:
    Context(const Json& d, const Options& o) : document(d), opt(o) {}

    const Json& document;
    const Options& opt;

    const RingPtr& ring() {
        if (!ring_) ring_ = doc::ring_from_json(need("ring"), opt.order);
        return ring_;
    }
    const Json& need(const char* key) const {
        if (!document.is_object() || !document.contains(key))
            throw InputError(opt.command + ": input document needs \"" + key + "\"");
        return document.at(key);
    }
    bool has(const char* key) const { return document.is_object() && document.contains(key); }

    Cube cube() { return doc::cube_from_json(need("cube"), ring()); }
    std::vector<Poly> sequence() { return doc::polys_from_json(need("sequence"), ring()); }
    std::vector<Poly> sequence_for(const Cube& x) {
        auto fs = sequence();
        if (fs.size() != x.size())
            throw InputError(opt.command + ": sequence has " + std::to_string(fs.size()) + " entries for " +
                             std::to_string(x.size()) + " labels");
        return fs;
    }
    Complex complex() {
        if (has("complex")) return doc::complex_from_json(need("complex"), ring());
        Cube x = cube();
        if (!x.is_free()) throw PreconditionError(opt.command + ": the total complex needs a free cube");
        return total_complex(x);
    }

private:
    RingPtr ring_;
};

Json ranks_of(const Cube& x) {
    Json r = Json::object();
    for (Mask t = 0; t <= x.full(); ++t) r[x.key(t)] = x.rank(t);
    return r;
}

Json grade_json(const Grade& g) { return g.infinite ? Json("infinite") : Json(g.value); }

Json sequence_json(const SequenceReport& s) {
    Json j;
    j["regular"] = s.regular;
    j["a_sequence"] = s.a_sequence;
    j["failing_permutation"] = s.failing_permutation ? Json(*s.failing_permutation) : Json(nullptr);
    j["failing_index"] = s.failing_index ? Json(*s.failing_index) : Json(nullptr);
    return j;
}

Json sequence_details(const SequenceReport& s) {
    return Json{{"witness", s.witness ? Json(s.witness->to_string()) : Json(nullptr)}, {"reason", s.reason}};
}

std::vector<std::vector<std::size_t>> all_orders(std::vector<std::size_t> t) {
    std::sort(t.begin(), t.end());
    std::vector<std::vector<std::size_t>> out;
    do out.push_back(t);
    while (std::next_permutation(t.begin(), t.end()));
    return out;
}

Outcome cmd_validate(Context& c) {
    Cube x = c.cube();
    Report r = validate_cube(x);
    Outcome o;
    o.verdict = r.passed;
    o.result = {{"labels", x.labels()}, {"ranks", ranks_of(x)}, {"free", x.is_free()}, {"findings", r.findings}};
    return o;
}

Outcome cmd_tot(Context& c) {
    Cube x = c.cube();
    if (!x.is_free()) throw PreconditionError("tot: the total complex needs a free cube");
    Complex t = total_complex(x);
    Json zero = Json::array();
    for (std::size_t k = 0; k <= t.length(); ++k) zero.push_back(is_zero_module(homology(t, k)));
    Outcome o;
    o.result = {{"ranks", t.ranks()}, {"homology_zero", zero}, {"zero_spherical", zero_spherical(t)}};
    o.details = {{"complex", doc::complex_to_json(t)}};
    return o;
}

Outcome cmd_homology(Context& c) {
    Complex t = c.complex();
    std::vector<std::size_t> degrees(t.length() + 1);
    std::iota(degrees.begin(), degrees.end(), std::size_t{0});
    if (c.has("degree")) {
        const Json& d = c.need("degree");
        if (!d.is_number_unsigned() || d.get<std::size_t>() > t.length()) throw InputError("homology: degree out of range");
        degrees = {d.get<std::size_t>()};
    }
    Outcome o;
    Json res = Json::array(), det = Json::object();
    for (std::size_t k : degrees) {
        FPModule h = homology(t, k);
        res.push_back({{"k", k}, {"zero", is_zero_module(h)}});
        det[std::to_string(k)] = doc::module_to_json(h);
    }
    o.result = {{"degrees", res}};
    o.details = {{"presentations", det}};
    return o;
}

Outcome cmd_h0(Context& c) {
    Cube x = c.cube();
    std::vector<std::vector<std::size_t>> orders;
    if (c.has("orders")) {
        for (const auto& ord : c.need("orders")) {
            std::vector<std::size_t> o;
            for (const auto& l : ord) {
                auto k = x.label_index(l.is_string() ? l.get<std::string>() : l.dump());
                if (!k) throw InputError("h0: unknown label " + l.dump());
                o.push_back(*k);
            }
            orders.push_back(std::move(o));
        }
    } else {
        std::vector<std::size_t> all(x.size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        orders = all_orders(all);
    }
    IteratedH0 h = iterated_h0(x, orders);
    Outcome o;
    o.verdict = h.order_independent;
    o.result = {{"orders", orders.size()}, {"order_independent", h.order_independent}, {"labels", h.cube.labels()},
                {"ranks", ranks_of(h.cube)}};
    if (h.cube.size() == 0) o.result["matches_tot"] = submodule_equal(h.cube.vertex(0).relations, h0_denominator(x));
    o.details = {{"cube", doc::cube_to_json(h.cube)}};
    return o;
}

Outcome cmd_admissible(Context& c) {
    Cube x = c.cube();
    Strategy primary = c.has("strategy") ? parse_strategy(c.need("strategy").get<std::string>()) : Strategy::definition;
    Outcome o;
    Json per = Json::object();
    std::optional<bool> first;
    bool agree = true;
    for (Strategy s : {Strategy::definition, Strategy::spherical_faces, Strategy::inductive}) {
        if (s == Strategy::spherical_faces && !x.is_free()) {
            per[to_string(s)] = {{"applicable", false}};
            if (primary == s) throw PreconditionError("admissible: spherical_faces needs a free cube");
            continue;
        }
        Report r = is_admissible(x, s);
        per[to_string(s)] = {{"admissible", r.passed}, {"findings", r.findings}};
        if (first && *first != r.passed) agree = false;
        first = r.passed;
        if (s == primary) o.verdict = r.passed;
    }
    o.result = {{"strategy", to_string(primary)}, {"strategies", per}, {"agree", agree}};
    return o;
}

Outcome cmd_koszul(Context& c) {
    Cube x = c.cube();
    KoszulVerdict v = is_koszul_cube(x, c.sequence_for(x));
    Json diag = Json::array();
    for (const auto& d : v.diagnostics)
        diag.push_back({{"T", x.key(d.t)}, {"k", x.labels()[d.k]}, {"injective", d.injective}, {"supported", d.supported}});
    Outcome o;
    o.verdict = v.is_koszul;
    o.result = {{"diagnostics", diag}, {"findings", v.findings}};
    return o;
}

Outcome cmd_reduced(Context& c) {
    Cube x = c.cube();
    Report r = is_reduced_koszul(x, c.sequence_for(x));
    Outcome o;
    o.verdict = r.passed;
    o.result = {{"findings", r.findings}};
    return o;
}

Outcome cmd_typical(Context& c) {
    std::vector<std::string> labels;
    if (c.has("labels"))
        for (const auto& l : c.need("labels")) labels.push_back(l.get<std::string>());
    Cube x = typical_cube(c.ring(), c.sequence(), labels);
    Outcome o;
    o.result = {{"labels", x.labels()}, {"ranks", ranks_of(x)}};
    o.details = {{"cube", doc::cube_to_json(x)}};
    return o;
}

Outcome cmd_det(Context& c) {
    Cube x = c.cube();
    auto fs = c.sequence_for(x);
    Outcome o;
    DeterminantReport d;
    try {
        d = cube_determinant(x, fs);
    } catch (const PreconditionError&) {
        throw;
    } catch (const CapExceeded&) {
        throw;
    } catch (const Error& e) {
        o.verdict = false;
        o.result = {{"coherent", false}, {"findings", {e.what()}}};
        return o;
    }
    bool nondegenerate = degenerate_directions(x, true) == 0;
    o.result = {{"ranks_equal", d.ranks_equal}, {"coherent", d.coherent}, {"nondegenerate", nondegenerate}};
    o.verdict = d.coherent;
    if (nondegenerate) {
        SequenceReport s = det_is_a_sequence(x, fs, c.opt.perm_cap);
        o.result["det_sequence"] = sequence_json(s);
        o.verdict = o.verdict && s.a_sequence;
    }
    o.result["findings"] = d.findings;
    o.details = {{"dets", doc::polys_to_json(d.dets)}};
    return o;
}

Outcome cmd_fitting(Context& c) {
    Matrix m = doc::matrix_from_json(c.need("matrix"), c.ring());
    const Json& t = c.need("t");
    if (!t.is_number_unsigned()) throw InputError("fitting: t must be a positive integer");
    Ideal i = fitting_ideal(m, t.get<std::size_t>());
    Outcome o;
    o.result = {{"unit", i.is_unit()}, {"zero", i.as_submodule().is_zero()}, {"grade", grade_json(grade(i))}};
    o.details = {{"basis", doc::polys_to_json(i.reduced_basis())}};
    return o;
}

Outcome cmd_grade(Context& c) {
    Ideal i(c.ring(), doc::polys_from_json(c.need("ideal"), c.ring()));
    Outcome o;
    o.result = {{"grade", grade_json(grade(i))}};
    o.details = {{"basis", doc::polys_to_json(i.reduced_basis())}};
    return o;
}

Outcome cmd_be(Context& c) {
    Complex t = c.complex();
    BEReport b = be_acyclicity(t);
    bool spherical = zero_spherical(t);
    Json grades = Json::array();
    for (const auto& g : b.grades) grades.push_back(grade_json(g));
    Outcome o;
    o.verdict = b.acyclic;
    o.result = {{"r", b.r},         {"minors", b.minors},         {"grades", grades},
                {"acyclic", b.acyclic}, {"zero_spherical", spherical}, {"agree", spherical == b.acyclic},
                {"findings", b.findings}};
    return o;
}

Outcome cmd_regseq(Context& c) {
    SequenceReport s = is_regular_sequence(c.sequence());
    Outcome o;
    o.verdict = s.regular;
    o.result = sequence_json(s);
    o.result.erase("a_sequence");
    o.details = sequence_details(s);
    return o;
}

Outcome cmd_aseq(Context& c) {
    SequenceReport s = is_A_sequence(c.sequence(), c.opt.perm_cap);
    Outcome o;
    o.verdict = s.a_sequence;
    o.result = sequence_json(s);
    o.details = sequence_details(s);
    return o;
}

Outcome cmd_factor(Context& c) {
    FactorReport f = factor_sequence_check(doc::polys_from_json(c.need("f"), c.ring()),
                                           doc::polys_from_json(c.need("g"), c.ring()), c.opt.perm_cap);
    Outcome o;
    o.verdict = f.consistent;
    o.result = {{"hypothesis", sequence_json(f.hypothesis)}, {"conclusion", sequence_json(f.conclusion)},
                {"consistent", f.consistent}};
    o.details = {{"products", doc::polys_to_json(f.products)}};
    return o;
}

Outcome cmd_weight(Context& c) {
    Cube x = c.cube();
    Report r = verify_weight_decomposition(x, c.sequence_for(x));
    Outcome o;
    o.verdict = r.passed;
    o.result = {{"findings", r.findings}};
    return o;
}

Outcome cmd_generators(Context& c) {
    Cube x = c.cube();
    GeneratorsPresentation g = generators_presentation(x, c.sequence_for(x), c.opt.perm_cap);
    Outcome o;
    o.verdict = g.matches_tot;
    o.result = {{"rank", g.module.rank()}, {"matches_tot", g.matches_tot}, {"det_sequence", sequence_json(g.det_sequence)}};
    o.details = {{"module", doc::module_to_json(g.module)}, {"dets", doc::polys_to_json(g.det_sequence.sequence)}};
    return o;
}

Cube target_from_json(const Json& j, const RingPtr& ring) {
    if (j.is_object() && j.contains("S")) return doc::cube_from_json(j, ring);
    return Cube(ring, std::vector<std::string>{}, {doc::module_from_json(j, ring)}, {});
}

Outcome cmd_resolve(Context& c) {
    const RingPtr& ring = c.ring();
    ResolutionInput in{{}, {}, target_from_json(c.need("target"), ring), std::nullopt, {}};
    if (c.has("U"))
        for (const auto& l : c.need("U")) in.u_labels.push_back(l.get<std::string>());
    std::vector<std::string> all = in.u_labels;
    all.insert(all.end(), in.target.labels().begin(), in.target.labels().end());
    const Json& seq = c.need("sequence");
    if (seq.is_object()) {
        for (const auto& l : all) {
            if (!seq.contains(l)) throw InputError("resolve: sequence has no entry for label " + l);
            in.fs.push_back(doc::poly_from_json(seq.at(l), ring));
        }
        if (seq.size() != all.size()) throw InputError("resolve: sequence names labels outside U and V");
    } else {
        in.fs = doc::polys_from_json(seq, ring);
    }
    if (c.has("chain")) {
        const Json& ch = c.need("chain");
        if (!ch.is_object() || !ch.contains("next") || !ch.contains("connecting"))
            throw InputError("resolve: chain needs \"next\" and \"connecting\"");
        in.next = target_from_json(ch.at("next"), ring);
        if (in.next->labels() != in.target.labels()) throw InputError("resolve: chain members have different labels");
        in.connecting.assign(std::size_t{1} << in.target.size(), Matrix(ring, 0, 0));
        std::vector<bool> seen(in.connecting.size(), false);
        for (const auto& [key, m] : ch.at("connecting").items()) {
            Mask t = in.target.parse_key(key);
            in.connecting[t] = doc::matrix_from_json(m, ring, in.next->rank(t), in.target.rank(t));
            seen[t] = true;
        }
        for (Mask t = 0; t < seen.size(); ++t)
            if (!seen[t]) throw InputError("resolve: connecting map missing at {" + in.target.key(t) + "}");
    }
    ResolveLimits limits;
    limits.max_power = c.opt.max_power;
    ResolutionOutput out = koszul_resolve(in, limits);
    Report check = check_resolution(out, in);

    Outcome o;
    o.verdict = check.passed;
    Json exps = Json::object();
    for (std::size_t s = 0; s < all.size(); ++s) exps[all[s]] = out.exponents[s];
    Json levels = Json::array(), dlevels = Json::array();
    for (const auto& lv : out.levels) {
        Json mult = Json::object();
        for (const auto& [t, n] : lv.multiplicities()) mult[lv.y.key(t)] = n;
        levels.push_back({{"summands", lv.types.size()}, {"multiplicities", mult}});
        Json epi = Json::object();
        for (Mask t = 0; t <= lv.y.full(); ++t) epi[lv.y.key(t)] = doc::matrix_to_json(lv.epi[t]);
        dlevels.push_back({{"y", doc::cube_to_json(lv.y)}, {"epi", epi}});
    }
    o.result = {{"U", in.u_labels}, {"V", in.target.labels()}, {"exponents", exps}, {"levels", levels},
                {"check", check.passed}, {"findings", check.findings}};
    o.details = {{"g", doc::polys_to_json(out.g)}, {"levels", dlevels}};
    if (!out.connecting.empty()) {
        Json h = Json::object();
        for (Mask t = 0; t <= in.target.full(); ++t) h[in.target.key(t)] = doc::matrix_to_json(out.connecting[t]);
        o.details["connecting"] = h;
    }
    return o;
}

Outcome cmd_random(Context& c) {
    RandomKoszulOptions ro;
    ro.seed = c.opt.seed;
    if (c.has("options")) {
        const Json& j = c.need("options");
        ro.summands = j.value("summands", ro.summands);
        ro.basechange_steps = j.value("steps", ro.basechange_steps);
        ro.min_exp = j.value("min_exp", ro.min_exp);
        ro.max_exp = j.value("max_exp", ro.max_exp);
        ro.entry_degree = j.value("entry_degree", ro.entry_degree);
    }
    auto fs = c.sequence();
    Cube x = random_koszul(c.ring(), fs, ro);
    Outcome o;
    o.result = {{"labels", x.labels()}, {"ranks", ranks_of(x)}, {"koszul", is_koszul_cube(x, fs).is_koszul}};
    o.verdict = o.result["koszul"].get<bool>();
    o.details = {{"cube", doc::cube_to_json(x)}};
    return o;
}

using Handler = std::function<Outcome(Context&)>;

const std::vector<std::pair<std::string, Handler>>& table() {
    static const std::vector<std::pair<std::string, Handler>> t = {
        {"validate", cmd_validate},     {"tot", cmd_tot},
        {"homology", cmd_homology},     {"h0", cmd_h0},
        {"admissible", cmd_admissible}, {"koszul-check", cmd_koszul},
        {"reduced-check", cmd_reduced}, {"typical", cmd_typical},
        {"det", cmd_det},               {"fitting", cmd_fitting},
        {"grade", cmd_grade},           {"be-check", cmd_be},
        {"regseq", cmd_regseq},         {"aseq", cmd_aseq},
        {"factor-lemma", cmd_factor},   {"weight-decomp", cmd_weight},
        {"generators", cmd_generators}, {"resolve", cmd_resolve},
        {"random-koszul", cmd_random},
    };
    return t;
}

Json options_json(const Options& o, const std::string& order) {
    return {{"order", order.empty() ? Json(nullptr) : Json(order)}, {"seed", o.seed}, {"max_power", o.max_power}, {"perm_cap", o.perm_cap}};
}

void text_lines(std::ostringstream& out, const Json& j, const std::string& prefix) {
    if (j.is_object() && !j.empty()) {
        for (const auto& [k, v] : j.items()) {
            std::string name = k.empty() ? "{}" : k;
            text_lines(out, v, prefix.empty() ? name : prefix + "." + name);
        }
        return;
    }
    out << prefix << ": " << j.dump() << "\n";
}

std::string render(const Json& report, bool text) {
    if (!text) return report.dump(2) + "\n";
    std::ostringstream out;
    out << "command: " << report["command"].get<std::string>() << "\n";
    if (report.contains("error")) {
        out << "error: " << report["error"]["message"].get<std::string>() << "\n";
        return out.str();
    }
    out << "verdict: " << (report["verdict"].get<bool>() ? "true" : "false") << "\n";
    text_lines(out, report["result"], "");
    return out.str();
}

Result failure(const Options& opt, const std::string& order, int code, const std::string& kind, const std::string& message,
               std::optional<std::size_t> position = std::nullopt) {
    Json err = {{"kind", kind}, {"message", message}};
    if (position) err["position"] = *position;
    Json report = {{"schema", kSchema}, {"command", opt.command}, {"options", options_json(opt, order)},
                   {"verdict", nullptr}, {"error", err}};
    return {code, render(report, opt.text), kind + " error: " + message + "\n"};
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, h] : table()) n.push_back(name);
        return n;
    }();
    return names;
}

Result run(const std::vector<std::string>& args) {
    Options opt;
    CLI::App app{"klab: Koszul cube computations"};
    std::string order_name;
    bool json_flag = false;
    app.add_option("command", opt.command, "one of: validate, tot, homology, h0, admissible, koszul-check, ...")
        ->required()
        ->check(CLI::IsMember(commands()));
    app.add_option("--input", opt.input, "input document (default: stdin)");
    app.add_option("--order", order_name, "monomial order")->check(CLI::IsMember({"grevlex", "lex", "grlex"}));
    app.add_option("--seed", opt.seed, "seed for randomized commands");
    app.add_option("--max-power", opt.max_power, "bound on exponent searches")->check(CLI::Range(1u, 1u << 20));
    app.add_option("--perm-cap", opt.perm_cap, "bound on sequence length for permutation checks");
    auto* json_opt = app.add_flag("--json", json_flag, "JSON report (default)");
    app.add_flag("--text", opt.text, "plain text report")->excludes(json_opt);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        return {ok, app.help(), ""};
    } catch (const CLI::ParseError& e) {
        return {input_error, "", std::string("usage error: ") + e.what() + "\n"};
    }
    if (!order_name.empty()) opt.order = parse_order(order_name);

    std::string text;
    if (opt.input == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(opt.input, std::ios::binary);
        if (!in) return failure(opt, order_name, input_error, "input", "cannot read " + opt.input);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }

    Json document;
    try {
        document = Json::parse(text);
    } catch (const Json::parse_error& e) {
        return failure(opt, order_name, input_error, "parse", "malformed JSON at byte " + std::to_string(e.byte), e.byte);
    }

    std::string order = order_name;
    try {
        Context ctx(document, opt);
        if (order.empty()) order = ctx.has("ring") ? to_string(ctx.ring()->order()) : "grevlex";
        const auto& t = table();
        auto it = std::find_if(t.begin(), t.end(), [&](const auto& p) { return p.first == opt.command; });
        Outcome o = it->second(ctx);
        Json report = {{"schema", kSchema},        {"command", opt.command}, {"options", options_json(opt, order)},
                       {"verdict", o.verdict}, {"result", o.result},     {"details", o.details}};
        return {o.verdict ? ok : verdict_false, render(report, opt.text), ""};
    } catch (const ParseError& e) {
        return failure(opt, order, input_error, "parse", e.what(), e.position());
    } catch (const PreconditionError& e) {
        return failure(opt, order, input_error, "precondition", e.what());
    } catch (const InputError& e) {
        return failure(opt, order, input_error, "input", e.what());
    } catch (const CapExceeded& e) {
        return failure(opt, order, cap_exceeded, "cap", e.what());
    } catch (const Json::exception& e) {
        return failure(opt, order, input_error, "input", e.what());
    } catch (const Error& e) {
        return failure(opt, order, input_error, "input", e.what());
    }
}

}  // namespace klab::cli
