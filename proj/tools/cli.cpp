#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "schreier/adjoints.hpp"
#include "schreier/catalog.hpp"
#include "schreier/search.hpp"
#include "schreier/sweeps.hpp"

namespace schreier::cli {

namespace fs = std::filesystem;

namespace {

struct Globals {
    std::string json_path;
    std::uint64_t guard_functions = Guards{}.functions;
    std::uint64_t guard_homs = Guards{}.homs;
    std::uint64_t seed = 0;

    Guards guards() const { return {guard_homs, guard_functions}; }
};

/// What a command produced: the report plus lines printed before it.
struct Outcome {
    Report report;
    std::vector<std::string> notes;
    bool force_pass = false;  // commands that succeed by completing
};

Json bare(Json j) {
    j.erase("version");
    return j;
}

std::string reference(const std::string& arg) {
    if (fs::exists(arg) || arg.rfind("builtin:", 0) == 0) return arg;
    return "builtin:" + arg;
}

Point load_point(const std::string& arg) { return point_from_json(Json(reference(arg))); }
AnyAction load_action(const std::string& arg) { return action_from_json(Json(reference(arg))); }

Json subset_json(const Subset& s) { return std::vector<Elem>(s.members().begin(), s.members().end()); }

CheckResult law_check(std::string id, std::string title, const LawReport& laws) {
    CheckResult c{std::move(id), std::move(title)};
    for (const auto& law : laws.checks)
        c.expect(law.holds, [&] { return Json{{"op", law.op}, {"law", law.law}, {"at", law.witness}}; });
    return c;
}

CheckResult single(std::string id, std::string title, bool ok, const std::function<Json()>& witness) {
    CheckResult c{std::move(id), std::move(title)};
    c.expect(ok, witness);
    return c;
}

std::string describe(const SchreierWitness& w) {
    std::ostringstream out;
    out << "status: " << to_string(w.status);
    for (const auto& f : w.failures) {
        out << "\n  " << to_string(f.kind) << " at element " << f.element;
        if (f.kind == SchreierStatus::UniquenessFails) out << " (alpha " << f.alpha1 << ", " << f.alpha2 << ")";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// validate

Outcome cmd_validate(const std::string& path) {
    Outcome o;
    const fs::path file(path);
    const Json j = read_json_file(file);
    check_version(j);
    const fs::path base = file.parent_path();
    auto& checks = o.report.checks;

    if (j.contains("goal")) {
        o.notes.push_back("file: search witness");
        const auto r = replay_witness(inline_references(j, base));
        checks.push_back(single("witness", "witness re-verifies with the recorded verdict", r.confirmed && r.same_verdict,
                                [&] { return Json{{"confirmed", r.confirmed}, {"same_verdict", r.same_verdict}}; }));
    } else if (j.contains("checks")) {
        o.notes.push_back("file: report");
        const bool shaped = j.contains("command") && j.contains("summary") && j.at("checks").is_array();
        checks.push_back(single("report", "report has command, checks and summary", shaped, [] { return Json{}; }));
    } else if (j.contains("act") || j.contains("left")) {
        o.notes.push_back("file: action");
        const auto a = action_from_json(j, base);
        checks.push_back(law_check("action", "action axioms", std::visit([](const auto& x) { return validate_action(x); }, a)));
    } else if (j.contains("f") && j.contains("s")) {
        o.notes.push_back("file: point");
        const auto A = algebra_from_json(j.at("A"), base);
        const auto B = algebra_from_json(j.at("B"), base);
        const Hom f(A, B, j.at("f").get<std::vector<Elem>>());
        const Hom s(B, A, j.at("s").get<std::vector<Elem>>());
        checks.push_back(law_check("A", "laws of A", validate_algebra(*A)));
        checks.push_back(law_check("B", "laws of B", validate_algebra(*B)));
        for (const auto& [id, h] : {std::pair<std::string, const Hom*>{"f", &f}, {"s", &s}}) {
            const auto hc = check_hom(*h);
            checks.push_back(single(id, id + " is a homomorphism", hc.ok, [&] {
                return Json{{"x", hc.violation->x}, {"y", hc.violation->y}, {"op", hc.violation->op}};
            }));
        }
        CheckResult split{"split", "f s is the identity of B"};
        for (Elem b = 0; b < B->size(); ++b) split.expect(f(s(b)) == b, [&] { return Json{{"b", b}}; });
        checks.push_back(std::move(split));
    } else if (j.contains("map")) {
        o.notes.push_back("file: hom");
        const auto h = hom_from_json(j, base);
        const auto hc = check_hom(h);
        checks.push_back(single("hom", "preserves every operation", hc.ok, [&] {
            return Json{{"x", hc.violation->x}, {"y", hc.violation->y}, {"op", hc.violation->op}};
        }));
    } else {
        o.notes.push_back("file: algebra");
        const auto a = algebra_from_json(j, base);
        checks.push_back(law_check("laws", std::string(to_string(a->kind())) + " laws", validate_algebra(*a)));
    }
    return o;
}

// ---------------------------------------------------------------------------
// schreier, semidirect, action

Outcome cmd_schreier(const std::string& arg) {
    Outcome o;
    const auto p = load_point(arg);
    const auto w = check_schreier(p);
    o.notes.push_back(describe(w));
    CheckResult c{"schreier", "every element splits uniquely along the kernel and the section"};
    c.cases = p.A().size();
    for (const auto& f : w.failures) {
        Json e = {{"kind", std::string(to_string(f.kind))}, {"element", f.element}};
        if (f.kind == SchreierStatus::UniquenessFails) {
            e["alpha1"] = f.alpha1;
            e["alpha2"] = f.alpha2;
        }
        c.violation(std::move(e));
    }
    o.report.checks.push_back(std::move(c));
    const auto strong = is_strong_point(p);
    o.notes.push_back(std::string("strong: ") + (strong.strong ? "yes" : "no"));
    o.report.extra = {{"point", bare(to_json(p))},
                      {"witness", to_json(w)},
                      {"kernel", subset_json(p.kernel())},
                      {"strong", strong.strong}};
    return o;
}

Outcome cmd_semidirect(const std::string& arg, const std::string& out_path) {
    Outcome o;
    const auto a = load_action(arg);
    o.report.checks.push_back(
        law_check("action", "action axioms", std::visit([](const auto& x) { return validate_action(x); }, a)));
    const auto p = semidirect_any(a);
    const auto w = check_schreier(p);
    o.report.checks.push_back(single("schreier", "the semidirect product is a Schreier point", w.is_schreier(),
                                     [&] { return to_json(w); }));
    o.report.checks.push_back(single("roundtrip", "the action read back from the point is the input",
                                     point_to_action(p) == a, [] { return Json{}; }));
    o.notes.push_back("semidirect product of size " + std::to_string(p.A().size()));
    o.report.extra = {{"point", bare(to_json(p))}};
    if (!out_path.empty()) write_json_file(out_path, to_json(p));
    return o;
}

Outcome cmd_action(const std::string& arg, const std::string& out_path, const Guards& guards) {
    Outcome o;
    const auto p = load_point(arg);
    const auto w = check_schreier(p);
    o.report.checks.push_back(
        single("schreier", "the point is Schreier", w.is_schreier(), [&] { return to_json(w); }));
    if (!w.is_schreier()) {
        o.notes.push_back(describe(w));
        return o;
    }
    const auto a = point_to_action(p);
    o.report.checks.push_back(
        law_check("action", "action axioms", std::visit([](const auto& x) { return validate_action(x); }, a)));
    const auto iso = find_point_isomorphism(semidirect_any(a), p, guards);
    o.report.checks.push_back(single("roundtrip", "the semidirect product of the action is isomorphic to the point",
                                     iso.has_value(), [] { return Json{}; }));
    if (iso) o.notes.push_back("isomorphism: " + Json(std::vector<Elem>(iso->g().map().begin(), iso->g().map().end())).dump());
    o.report.extra = {{"action", bare(to_json(a))}};
    if (!out_path.empty()) write_json_file(out_path, to_json(a));
    return o;
}

// ---------------------------------------------------------------------------
// radjoint

template <class A>
const A& expect_action(const AnyAction& a, const char* what) {
    if (const auto* x = std::get_if<A>(&a)) return *x;
    throw PreconditionError(std::string(what) + ": wrong kind of action");
}

Outcome cmd_radjoint(const std::string& variety, const std::string& hom_path, const std::string& action_arg,
                     const std::string& against, const Guards& guards) {
    Outcome o;
    const auto h = load_hom_file(hom_path);
    const auto any = load_action(action_arg);
    auto& checks = o.report.checks;
    if (variety == "mon") {
        const auto& f = expect_action<MonoidAction>(any, "radjoint mon");
        const auto c = cofree_mon(h, f, guards);
        const auto eps = counit_mon(c);
        checks.push_back(law_check("action", "induced action axioms", validate_action(c.action)));
        checks.push_back(single("counit", "evaluation at 0 is an equivariant homomorphism", eps.is_hom && eps.equivariant,
                                [&] { return Json{{"is_hom", eps.is_hom}, {"equivariant", eps.equivariant}}; }));
        if (h.is_surjective()) {
            CheckResult simplified{"simplified", "description inside M agrees for every pointed section"};
            std::optional<Subset> first;
            for (const auto& sect : pointed_sections(h, guards)) {
                const auto s = cofree_mon_surjective(h, f, sect, guards);
                const bool same = !first || *first == s.submonoid;
                if (!first) first = s.submonoid;
                simplified.expect(s.iso_verified && same, [&] { return Json{{"section", sect}}; });
            }
            checks.push_back(std::move(simplified));
            o.report.extra["submonoid"] = subset_json(*first);
        }
        if (!against.empty()) {
            const auto other = load_action(against);
        const auto& g = expect_action<MonoidAction>(other, "radjoint mon --against");
            const auto a = verify_adjunction_mon(h, g, f, guards);
            checks.push_back(single("adjunction", "hom-set bijection, triangle identity and uniqueness", a.ok(), [&] {
                return Json{{"left", a.left_count}, {"right", a.right_count}};
            }));
            o.notes.push_back("hom-sets: " + std::to_string(a.left_count) + " = " + std::to_string(a.right_count));
        }
        o.notes.push_back("cofree object has " + std::to_string(c.elements.size()) + " elements");
        o.report.extra["elements"] = c.elements;
        o.report.extra["algebra"] = bare(to_json(*c.algebra));
        o.report.extra["action"] = bare(to_json(c.action));
        return o;
    }
    const auto& f = expect_action<SemiringAction>(any, "radjoint srng");
    const auto inv = invariants_srng(h, f);
    checks.push_back(single("choice", "the induced action does not depend on the chosen preimage",
                            inv.choice_independent, [] { return Json{}; }));
    checks.push_back(law_check("action", "induced action axioms", validate_action(inv.action)));
    if (!against.empty()) {
        const auto other = load_action(against);
        const auto& g = expect_action<SemiringAction>(other, "radjoint srng --against");
        const auto a = verify_adjunction_srng(h, g, f, guards);
        checks.push_back(single("adjunction", "hom-set bijection, triangle identity, uniqueness and naturality",
                                a.ok(), [&] { return Json{{"left", a.left_count}, {"right", a.right_count}}; }));
        o.notes.push_back("hom-sets: " + std::to_string(a.left_count) + " = " + std::to_string(a.right_count));
    }
    o.notes.push_back("invariant subsemiring has " + std::to_string(inv.members.size()) + " elements");
    o.report.extra = {{"members", subset_json(inv.members)}, {"action", bare(to_json(inv.action))}};
    return o;
}

// ---------------------------------------------------------------------------
// verify

Outcome cmd_verify(const std::string& target, const std::string& variety, const std::string& catalog_arg,
                   const Globals& g) {
    Outcome o;
    Catalog dir_catalog;
    SweepOptions opts;
    opts.guards = g.guards();
    opts.seed = g.seed;
    if (catalog_arg != "builtin") {
        dir_catalog = Catalog::from_directory(catalog_arg);
        opts.catalog = &dir_catalog;
    }
    o.report.config["sweep"] = to_json(opts);
    o.report.config["catalog"] = catalog_arg;
    o.report.config["variety"] = variety;

    std::vector<std::pair<std::string, std::function<CheckResult()>>> runs;
    if (target == "protomodularity") {
        runs = {{"1", [&] { return sweep_schreier_implies_strong(opts); }},
                {"2", [&] { return sweep_limit_stability(opts); }}};
    } else if (target == "ssfl") {
        runs = {{"3", [&] { return sweep_ssfl(opts); }}};
    } else if (target == "adjunction") {
        if (variety != "srng") {
            runs.push_back({"5", [&] { return sweep_mon_adjunction(opts); }});
            runs.push_back({"6", [&] { return sweep_simplified_cofree(opts); }});
        }
        if (variety != "mon") runs.push_back({"7", [&] { return sweep_srng_adjunction(opts); }});
    } else if (target == "coherence") {
        runs = {{"9", [&] { return sweep_coherence(opts, variety); }}};
    } else if (target == "ring-base") {
        runs = {{"8", [&] { return sweep_ring_base(opts); }}};
    }
    for (const auto& [id, sweep] : runs) {
        auto r = run_timed(id, sweep);
        for (const char* key : {"skipped", "skipped_pairs"})
            if (r.details.contains(key) && r.details.at(key).get<std::size_t>() > 0)
                throw GuardExceeded("check " + id + " skipped " + r.details.at(key).dump() +
                                    " enumerations; raise --guard-homs or --guard-functions");
        o.report.checks.push_back(std::move(r));
    }
    return o;
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
    std::string goal = "NonSchreier";
    std::string variety = "mon";
    std::size_t max_size = 4;
    double timeout = 10;
    std::size_t max_witnesses = 64;
    std::size_t max_tables = 2000;
    std::string out_dir;
};

Outcome cmd_search(const SearchArgs& s, const Globals& g) {
    Outcome o;
    o.force_pass = true;
    SearchBounds b;
    b.variety = s.variety;
    b.max_size = s.max_size;
    b.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(s.timeout * 1000));
    b.max_witnesses = s.max_witnesses;
    b.max_tables = s.max_tables;
    b.seed = g.seed;
    b.guards = g.guards();
    const auto goal = search_goal_from_string(s.goal);
    o.report.config["search"] = {{"goal", s.goal},       {"variety", s.variety},
                                 {"max_size", s.max_size}, {"timeout_s", s.timeout},
                                 {"max_witnesses", s.max_witnesses}, {"max_tables", s.max_tables}};
    const auto r = search_counterexamples(goal, b);

    CheckResult c{"reverify", "every witness re-verifies under its checker"};
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) {
        c.expect(reverify(w), [&] { return to_json(w); });
        witnesses.push_back(to_json(w));
    }
    o.report.checks.push_back(std::move(c));
    o.notes.push_back(s.goal + " over " + s.variety + " up to size " + std::to_string(s.max_size) + ": " +
                      std::to_string(r.witnesses.size()) + " witnesses from " + std::to_string(r.candidates) +
                      " candidates, pool of " + std::to_string(r.pool_size) + " algebras" +
                      (r.timed_out ? " (timed out)" : "") + (r.truncated ? " (witness budget reached)" : ""));
    if (!s.out_dir.empty()) {
        fs::create_directories(s.out_dir);
        for (std::size_t i = 0; i < witnesses.size(); ++i) {
            std::ostringstream name;
            name << "witness_" << std::setw(3) << std::setfill('0') << i << ".json";
            write_json_file(fs::path(s.out_dir) / name.str(), witnesses[i]);
        }
    }
    o.report.extra = {{"goal", s.goal},
                      {"pool_size", r.pool_size},
                      {"candidates", r.candidates},
                      {"timed_out", r.timed_out},
                      {"truncated", r.truncated},
                      {"witnesses", std::move(witnesses)}};
    return o;
}

// ---------------------------------------------------------------------------
// catalog

Outcome cmd_catalog(const std::string& action, const std::string& arg) {
    Outcome o;
    o.force_pass = true;
    const auto& cat = Catalog::builtin();
    if (action == "list") {
        for (const auto& n : cat.names()) o.notes.push_back(n);
        o.report.extra = {{"names", cat.names()}};
        return o;
    }
    if (action == "show") {
        Json j;
        for (const auto& a : cat.algebras())
            if (a.name == arg) j = to_json(*a.algebra);
        for (const auto& p : cat.points())
            if (p.name == arg) j = to_json(p.point);
        for (const auto& a : cat.monoid_actions())
            if (a.name == arg) j = to_json(a.action);
        for (const auto& a : cat.semiring_actions())
            if (a.name == arg) j = to_json(a.action);
        if (j.is_null()) throw PreconditionError("no catalog entry named '" + arg + "'");
        o.notes.push_back(dump(j));
        o.report.extra = {{"name", arg}, {"entry", j}};
        return o;
    }
    if (arg.empty()) throw PreconditionError("catalog export needs a directory");
    const fs::path dir(arg);
    fs::create_directories(dir / "points");
    fs::create_directories(dir / "actions");
    std::size_t files = 0;
    auto write = [&](const fs::path& path, const Json& j) {
        write_json_file(path, j);
        ++files;
    };
    for (const auto& a : cat.algebras()) write(dir / (a.name + ".json"), to_json(*a.algebra));
    for (const auto& p : cat.points()) write(dir / "points" / (p.name + ".json"), to_json(p.point));
    for (const auto& a : cat.monoid_actions()) write(dir / "actions" / (a.name + ".json"), to_json(a.action));
    for (const auto& a : cat.semiring_actions()) write(dir / "actions" / (a.name + ".json"), to_json(a.action));
    o.notes.push_back("wrote " + std::to_string(files) + " files to " + dir.string());
    o.report.extra = {{"files", files}};
    return o;
}

// ---------------------------------------------------------------------------
// report

Outcome cmd_report(const std::string& action, const std::string& first, const std::string& second,
                   std::ostream& err) {
    Outcome o;
    const Json a = read_json_file(first);
    if (action == "compare") {
        const Json b = read_json_file(second);
        const bool same = same_report(a, b);
        o.report.checks.push_back(single("compare", "reports agree outside the timestamp", same, [] { return Json{}; }));
        return o;
    }
    if (a.contains("goal")) {
        const auto r = replay_witness(inline_references(a, fs::path(first).parent_path()));
        o.report.checks.push_back(single("replay", "witness reproduces its recorded verdict",
                                         r.confirmed && r.same_verdict, [&] {
                                             return Json{{"confirmed", r.confirmed}, {"same_verdict", r.same_verdict}};
                                         }));
        return o;
    }
    check_version(a);
    const auto argv = a.at("command").at("argv").get<std::vector<std::string>>();
    if (!argv.empty() && argv.front() == "report") throw PreconditionError("report replay: refusing to replay a replay");
    std::ostringstream sink;
    Json again;
    run(argv, sink, err, &again);
    const bool same = same_report(a, again);
    o.notes.push_back("replayed: " + Json(argv).dump());
    o.report.checks.push_back(single("replay", "re-running the recorded command reproduces the report", same, [&] {
        return Json{{"recorded", a.at("summary")}, {"replayed", again.at("summary")}};
    }));
    return o;
}

std::vector<std::string> argv_without_json(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--json") {
            ++i;
            continue;
        }
        if (args[i].rfind("--json=", 0) == 0) continue;
        out.push_back(args[i]);
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Json* report) {
    CLI::App app{"Schreier point verification toolkit", "schreier"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--json", g.json_path, "Write the machine-readable report here");
    app.add_option("--guard-functions", g.guard_functions, "Largest function space a construction may filter");
    app.add_option("--guard-homs", g.guard_homs, "Largest candidate space for hom enumeration");
    app.add_option("--seed", g.seed, "Shuffles search order; never changes a verdict");

    std::string file, out_path, hom_path, action_arg, against, variety = "both", catalog = "builtin", target;
    std::string adj_variety, catalog_action, name, report_action, second;

    auto* validate = app.add_subcommand("validate", "Check a JSON file against its laws");
    validate->add_option("file", file)->required();

    auto* schreier = app.add_subcommand("schreier", "Decide whether a point is Schreier");
    schreier->add_option("point", file, "Point file or catalog point name")->required();

    auto* semidirect = app.add_subcommand("semidirect", "Semidirect product of an action");
    semidirect->add_option("action", file, "Action file or catalog action name")->required();
    semidirect->add_option("--out", out_path, "Write the point here");

    auto* action = app.add_subcommand("action", "Action of a Schreier point");
    action->add_option("point", file, "Point file or catalog point name")->required();
    action->add_option("--out", out_path, "Write the action here");

    auto* radjoint = app.add_subcommand("radjoint", "Right adjoint of restriction along a hom");
    radjoint->add_option("variety", adj_variety)->required()->check(CLI::IsMember({"mon", "srng"}));
    radjoint->add_option("hom", hom_path, "Hom file h: E -> B")->required();
    radjoint->add_option("action", action_arg, "E-action file or catalog name")->required();
    radjoint->add_option("--against", against, "B-action G: also verify the adjunction at (G, F)");

    auto* verify = app.add_subcommand("verify", "Exhaustive verification sweep over a catalog");
    verify->add_option("target", target)
        ->required()
        ->check(CLI::IsMember({"protomodularity", "ssfl", "adjunction", "coherence", "ring-base"}));
    verify->add_option("--variety", variety)->check(CLI::IsMember({"mon", "srng", "both"}));
    verify->add_option("--catalog", catalog, "builtin or a directory of algebra files");

    SearchArgs sa;
    auto* search = app.add_subcommand("search", "Bounded counterexample search");
    search->add_option("--goal", sa.goal)
        ->check(CLI::IsMember({"NonSchreier", "KernelCoherenceFailure", "SSFLFailureOffClass"}));
    search->add_option("--variety", sa.variety)->check(CLI::IsMember({"mon", "srng", "nasrng", "jt"}));
    search->add_option("--max-size", sa.max_size);
    search->add_option("--timeout", sa.timeout, "Seconds");
    search->add_option("--max-witnesses", sa.max_witnesses, "0 for no limit");
    search->add_option("--max-tables", sa.max_tables);
    search->add_option("--out-dir", sa.out_dir, "Write each witness to its own file");

    auto* cat = app.add_subcommand("catalog", "Built-in algebras, points and actions");
    cat->add_option("action", catalog_action)->required()->check(CLI::IsMember({"list", "show", "export"}));
    cat->add_option("name", name, "Entry name (show) or directory (export)");

    auto* rep = app.add_subcommand("report", "Replay or compare reports and witnesses");
    rep->add_option("action", report_action)->required()->check(CLI::IsMember({"replay", "compare"}));
    rep->add_option("file", file)->required();
    rep->add_option("other", second);

    // `schreier FILE.json` is shorthand for `schreier schreier FILE.json`.
    std::vector<std::string> argv = args;
    for (std::size_t i = 0; i < argv.size(); ++i) {
        const auto& a = argv[i];
        if (a.starts_with("-")) {
            if (a.starts_with("--") && a != "--help" && a.find('=') == std::string::npos) ++i;
            continue;
        }
        if (a.ends_with(".json") && !app.get_subcommand_no_throw(a)) argv.insert(argv.begin() + i, "schreier");
        break;
    }
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsageError;
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        if (validate->parsed()) o = cmd_validate(file);
        else if (schreier->parsed()) o = cmd_schreier(file);
        else if (semidirect->parsed()) o = cmd_semidirect(file, out_path);
        else if (action->parsed()) o = cmd_action(file, out_path, g.guards());
        else if (radjoint->parsed()) o = cmd_radjoint(adj_variety, hom_path, action_arg, against, g.guards());
        else if (verify->parsed()) o = cmd_verify(target, variety, catalog, g);
        else if (search->parsed()) o = cmd_search(sa, g);
        else if (cat->parsed()) o = cmd_catalog(catalog_action, name);
        else if (rep->parsed()) {
            if (report_action == "compare" && second.empty()) throw PreconditionError("report compare needs two files");
            o = cmd_report(report_action, file, second, err);
        }
    } catch (const GuardExceeded& e) {
        err << "guard exceeded: " << e.what() << "\n";
        return kUsageError;
    } catch (const StructuralError& e) {
        err << "malformed input: " << e.what() << "\n";
        return kUsageError;
    } catch (const SignatureMismatch& e) {
        err << "signature mismatch: " << e.what() << "\n";
        return kUsageError;
    } catch (const FileError& e) {
        err << "file error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    } catch (const Json::exception& e) {
        err << "malformed input: " << e.what() << "\n";
        return kUsageError;
    } catch (const fs::filesystem_error& e) {
        err << "file error: " << e.what() << "\n";
        return kUsageError;
    }

    o.report.argv = argv_without_json(args);
    o.report.config["guards"] = {{"homs", g.guard_homs}, {"functions", g.guard_functions}};
    o.report.config["seed"] = g.seed;
    o.report.elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    for (const auto& line : o.notes) out << line << "\n";
    out << render_text(o.report);
    const Json j = to_json(o.report);
    if (report) *report = j;
    if (!g.json_path.empty()) {
        try {
            write_json_file(g.json_path, j);
        } catch (const Error& e) {
            err << "file error: " << e.what() << "\n";
            return kUsageError;
        }
    }
    return o.force_pass || o.report.passed() ? kPass : kCheckFailed;
}

}  // namespace schreier::cli
