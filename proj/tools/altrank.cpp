// altrank: batch front end for constructing, verifying and reducing affine
// spaces of alternating matrices. Exit codes: 0 success, 1 a mathematical
// check failed, 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "altrank/altrank.hpp"
#include "altrank/json_io.hpp"

using namespace altrank;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_check_failed = 1;
constexpr int exit_usage = 2;

struct Common {
    std::uint64_t seed = 0;
    std::uint64_t budget = default_enumeration_budget;
    std::uint64_t sample = default_sample_count;
    bool timings = false;
    std::string output = "-";
};

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Json make_report(const std::string& command, const Common& c)
{
    return Json{{"tool", "altrank"},
                {"version", ALTRANK_VERSION},
                {"command", command},
                {"seed", c.seed},
                {"budget", c.budget},
                {"sample", c.sample}};
}

void emit(const Common& c, const std::string& text)
{
    if (c.output == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw usage_error("cannot write " + c.output);
    out << text;
}

Json read_json_input(const std::string& path)
{
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(path);
        if (!in) throw usage_error("cannot read " + path);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw usage_error(std::string("invalid JSON input: ") + e.what());
    }
}

/// Accepts a bare space/pair or a construct report wrapping one.
const Json& unwrap_payload(const Json& j)
{
    if (j.contains("results")) {
        const auto& r = j.at("results");
        if (r.contains("space")) return r.at("space");
        if (r.contains("pair")) return r.at("pair");
    }
    return j;
}

template <class Fn>
auto with_field(const FieldCtx& ctx, Fn&& fn)
{
    return std::visit([&](const auto& f) { return fn(f); }, ctx);
}

std::size_t require(std::size_t v, const char* flag, const std::string& family)
{
    if (v == 0) throw usage_error("--" + std::string(flag) + " is required (and positive) for family " + family);
    return v;
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
    std::string family;
    std::string field = "Fp:3";
    std::size_t n = 0, s = 0, r = 0, p = 0;
};

template <Field F>
Json rank_contract(const AffineMatrixSpace<F>& sp, const Common& c, std::size_t min_rank, std::optional<std::size_t> exact,
                   bool& ok)
{
    const auto prof = rank_profile(sp, c.budget, c.seed, c.sample);
    Json j = profile_to_json(prof, sp.field());
    bool pass = prof.min_rank >= min_rank;
    if (exact) pass = pass && prof.min_rank == *exact && prof.max_rank == *exact;
    j["expected"] = exact ? "constant rank " + std::to_string(*exact) : "rank at least " + std::to_string(min_rank);
    j["holds"] = pass;
    ok = ok && pass;
    return j;
}

template <Field F>
int run_construct(const ConstructArgs& a, const F& f, const Common& c, Json& report)
{
    Json res;
    bool ok = true;
    const auto& fam = a.family;
    res["family"] = fam;
    auto dims = [&](std::size_t got, std::uint64_t expected) {
        res["dimension"] = got;
        res["expected_dimension"] = expected;
        ok = ok && got == expected;
    };
    if (fam == "nt") {
        const auto n = require(a.n, "n", fam);
        auto sp = build_nt(n, f);
        dims(sp.dimension(), n * (n - 1) / 2);
        if constexpr (std::is_same_v<F, PrimeField>) {
            try {
                const auto spec = trivial_spectrum_check(sp, c.budget);
                res["trivial_spectrum"] = {{"holds", spec.trivial}, {"members_checked", spec.members_checked}};
                ok = ok && spec.trivial;
            } catch (const budget_exceeded&) {
                res["trivial_spectrum"] = "skipped: above budget";
            }
        }
        res["space"] = space_to_json(sp);
    } else if (fam == "identity-plus-nt") {
        const auto s = require(a.s, "s", fam);
        auto sp = build_identity_plus_nt(s, f);
        dims(sp.dimension(), s * (s - 1) / 2);
        res["rank"] = rank_contract(sp, c, s, s, ok);
        res["space"] = space_to_json(sp);
    } else if (fam == "nonsingular-alt") {
        const auto s = require(a.s, "s", fam);
        auto sp = build_nonsingular_alt(s, f);
        dims(sp.dimension(), maximal_dimension(2 * s, 2 * s, DimensionProblem::symplectic));
        res["rank"] = rank_contract(sp, c, 2 * s, 2 * s, ok);
        res["space"] = space_to_json(sp);
    } else if (fam == "m-tilde-alt") {
        const auto n = require(a.n, "n", fam), s = require(a.s, "s", fam);
        auto sp = build_m_tilde_alt(n, s, f);
        dims(sp.dimension(), s * (n - s - 1));
        res["rank"] = rank_contract(sp, c, 2 * s, 2 * s, ok);
        res["space"] = space_to_json(sp);
    } else if (fam == "m-tilde-rect") {
        const auto p = require(a.p, "p", fam), s = require(a.s, "s", fam);
        auto sp = build_m_tilde_rect(p, build_identity_plus_nt(s, f));
        dims(sp.dimension(), s * (s - 1) / 2 + s * (p - s));
        res["rank"] = rank_contract(sp, c, s, s, ok);
        res["space"] = space_to_json(sp);
    } else if (fam == "h-plus") {
        const auto r = require(a.r, "r", fam);
        auto sp = build_h_plus(r, f);
        dims(sp.dimension(), maximal_dimension(r + 1, r, DimensionProblem::constant_rank));
        res["rank"] = rank_contract(sp, c, r, r, ok);
        res["space"] = space_to_json(sp);
    } else if (fam == "h-bar") {
        const auto n = require(a.n, "n", fam), r = require(a.r, "r", fam);
        auto sp = build_h_bar(n, r, f);
        dims(sp.dimension(), maximal_dimension(n, r, DimensionProblem::rank_at_least));
        res["rank"] = rank_contract(sp, c, r, std::nullopt, ok);
        res["space"] = space_to_json(sp);
    } else if (fam == "operator-block") {
        const auto n = require(a.n, "n", fam);
        auto pair = build_operator_block(n, build_nt(n, f), c.budget);
        dims(pair.dimension(), n * (n - 1));
        if constexpr (std::is_same_v<F, PrimeField>) {
            try {
                const auto spec = trivial_spectrum_check(pair.operator_space(), c.budget);
                res["trivial_spectrum"] = {{"holds", spec.trivial}, {"members_checked", spec.members_checked}};
                ok = ok && spec.trivial;
            } catch (const budget_exceeded&) {
                res["trivial_spectrum"] = "skipped: above budget";
            }
        }
        res["pair"] = pair_to_json(pair);
    } else if (fam == "counterexample-plane") {
        auto sp = build_counterexample_plane(f);
        dims(sp.dimension(), 2);
        const auto prof = rank_profile(sp, c.budget, c.seed, c.sample);
        res["rank"] = profile_to_json(prof, f);
        res["space"] = space_to_json(sp);
    } else if (fam == "standard-symplectic") {
        const auto s = require(a.s, "s", fam);
        const auto k = AlternatingMatrix<F>::standard_symplectic(f, s);
        res["pfaffian"] = scalar_to_json(f, pfaffian(k));
        res["matrix"] = matrix_to_json(k.matrix());
    } else {
        throw usage_error("unknown family '" + fam + "'");
    }
    res["contract"] = ok;
    report["field"] = f.name();
    report["results"] = std::move(res);
    return ok ? exit_ok : exit_check_failed;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string input = "-";
    std::string check = "rank-profile";
    std::optional<std::size_t> expect_rank, expect_min_rank, r;
};

template <Field F>
int run_verify(const VerifyArgs& a, const F& f, const Json& payload, const Common& c, Json& report)
{
    Json res;
    res["check"] = a.check;
    bool ok = true;
    if (a.check == "rank-profile" || a.check == "constant-rank") {
        const auto sp = space_from_json(f, payload);
        const auto prof = rank_profile(sp, c.budget, c.seed, c.sample);
        res["rank_profile"] = profile_to_json(prof, f);
        if (a.check == "constant-rank") ok = prof.rank_constant_observed();
        if (a.expect_rank) ok = ok && prof.min_rank == *a.expect_rank && prof.max_rank == *a.expect_rank;
        if (a.expect_min_rank) ok = ok && prof.min_rank >= *a.expect_min_rank;
        if (!ok) {
            const bool low = (a.expect_rank && prof.min_rank != *a.expect_rank) ||
                             (a.expect_min_rank && prof.min_rank < *a.expect_min_rank) || a.check == "constant-rank";
            const auto& coords = low ? prof.min_witness : prof.max_witness;
            res["witness"] = {{"coordinates", vector_to_json(f, coords)}, {"matrix", matrix_to_json(sp.member_at(coords))},
                              {"rank", low ? prof.min_rank : prof.max_rank}};
        }
    } else if (a.check == "trivial-spectrum") {
        if constexpr (std::is_same_v<F, PrimeField>) {
            const auto sp = payload.contains("gram") ? pair_from_json(f, payload).operator_space() : space_from_json(f, payload);
            const auto rep = trivial_spectrum_check(sp, c.budget);
            res["members_checked"] = rep.members_checked;
            ok = rep.trivial;
            if (!ok) res["witness"] = {{"matrix", matrix_to_json(*rep.witness)}, {"eigenvalue", *rep.eigenvalue}};
        } else {
            throw usage_error("trivial-spectrum verification requires a prime field");
        }
    } else if (a.check == "flanders-atkinson") {
        if (!a.r) throw usage_error("--r is required for the flanders-atkinson check");
        const auto sp = space_from_json(f, payload);
        if (rank(sp.base()) != *a.r) throw usage_error("base point must have rank r");
        const auto jk = to_jk_form(sp, sp.base());
        Json gens = Json::array();
        for (std::size_t g = 0; g < jk.space.dimension(); ++g) {
            const auto fa = flanders_atkinson_check<F>(jk.space.basis()[g], *a.r, AlternatingMode<F>{jk.k});
            Json moments = Json::array();
            for (bool m : fa.moment_vanishing) moments.push_back(m);
            const bool asserted = fa.hypothesis_held && fa.cardinality_hypothesis_met;
            const bool pass = !asserted || fa.conclusions_hold();
            ok = ok && pass;
            gens.push_back(Json{{"generator", g},
                                {"hypothesis_held", fa.hypothesis_held},
                                {"cardinality_hypothesis_met", fa.cardinality_hypothesis_met},
                                {"D_zero", fa.d_zero ? Json(*fa.d_zero) : Json(nullptr)},
                                {"moment_vanishing", std::move(moments)},
                                {"holds", pass}});
        }
        res["normalizing_congruence"] = matrix_to_json(jk.p);
        res["generators"] = std::move(gens);
    } else if (a.check == "duality") {
        const auto pair = pair_from_json(f, payload);
        DualityReport<F> rep;
        if constexpr (std::is_same_v<F, PrimeField>) {
            rep = duality_invariant_check(pair, c.seed, c.budget);
        } else {
            rep = duality_invariant_holds(pair, c.seed);
        }
        res["vectors_checked"] = rep.vectors_checked;
        ok = rep.holds;
        if (!ok) res["witness"] = vector_to_json(f, *rep.witness);
    } else {
        throw usage_error("unknown check '" + a.check + "'");
    }
    res["holds"] = ok;
    report["field"] = f.name();
    report["results"] = std::move(res);
    return ok ? exit_ok : exit_check_failed;
}

// ---------------------------------------------------------------------------

struct ReduceArgs {
    std::string input = "-";
    std::size_t r = 0;
    bool assume_constant_rank = false;
    std::size_t candidates = 200;
};

template <Field F>
int run_reduce(const ReduceArgs& a, const F& f, const Json& payload, const Common& c, Json& report)
{
    if (a.r == 0) throw usage_error("--r is required");
    const auto sp = space_from_json(f, payload);
    ReduceOptions o;
    o.budget = c.budget;
    o.rank_samples = c.sample;
    o.seed = c.seed;
    o.constant_rank_certified = a.assume_constant_rank;
    o.uniqueness_candidates = a.candidates;
    const auto cert = reduce(sp, a.r, o);
    report["field"] = f.name();
    report["parameters"] = {{"n", sp.rows()}, {"r", a.r}, {"dimension", sp.dimension()}};
    report["results"] = certificate_to_json(cert, f);
    return cert.ok() ? exit_ok : exit_check_failed;
}

// ---------------------------------------------------------------------------

struct TableArgs {
    std::size_t n_min = 2, n_max = 9;
    std::vector<std::size_t> r_list{2, 4, 6};
    std::vector<std::uint32_t> q_list{3, 5, 7};
    bool verify_ranks = false;
    bool hypothesis_only = false;
    std::string format = "tsv";
};

struct TableRow {
    std::size_t n, r;
    std::uint32_t q;
    DimensionProblem problem;
    bool hypothesis;
    std::uint64_t formula;
    std::size_t constructed;
    bool agree;
    std::string rank_check = "-";
    std::string method = "-";
    bool rank_ok = true;
};

TableRow table_row(std::size_t n, std::size_t r, std::uint32_t q, DimensionProblem problem, const TableArgs& a,
                   const Common& c)
{
    const PrimeField f(q);
    TableRow row{n, r, q, problem, q >= min_field_size(n, r, problem), maximal_dimension(n, r, problem), 0, false};
    const auto sp = build_extremal_family(n, r, problem, f);
    row.constructed = sp.dimension();
    row.agree = row.constructed == row.formula;
    if (problem == DimensionProblem::symplectic) {
        const auto pulled = phi_operators_to_forms(build_operator_block(r / 2, build_nt(r / 2, f), c.budget));
        row.agree = row.agree && pulled.dimension() == row.formula;
    }
    if (a.verify_ranks) {
        const auto prof = rank_profile(sp, c.budget, c.seed, c.sample);
        row.rank_ok = problem == DimensionProblem::rank_at_least ? prof.min_rank >= r
                                                                 : prof.min_rank == r && prof.max_rank == r;
        row.rank_check = row.rank_ok ? "ok" : "FAIL";
        row.method = std::string(to_string(prof.method)) + ":" + std::to_string(prof.members_checked);
    }
    return row;
}

int run_table(const TableArgs& a, const Common& c, std::string& text)
{
    struct Key {
        std::size_t n, r;
        std::uint32_t q;
        DimensionProblem p;
    };
    std::vector<Key> keys;
    for (auto q : a.q_list) {
        if (!is_prime(q)) throw usage_error("table: " + std::to_string(q) + " is not prime");
        for (auto r : a.r_list) {
            if (r == 0 || r % 2 != 0) throw usage_error("table: r values must be positive and even");
            for (std::size_t n = std::max(a.n_min, r); n <= a.n_max; ++n) {
                std::vector<DimensionProblem> probs;
                if (n == r) probs.push_back(DimensionProblem::symplectic);
                probs.push_back(DimensionProblem::rank_at_least);
                probs.push_back(DimensionProblem::constant_rank);
                for (auto p : probs) {
                    if (a.hypothesis_only && q < min_field_size(n, r, p)) continue;
                    keys.push_back({n, r, q, p});
                }
            }
        }
    }
    // rows are computed in parallel and assembled by key order
    auto chunks = map_chunks(keys.size(), [&](IndexRange range) {
        std::vector<TableRow> rows;
        for (auto i = range.begin; i < range.end; ++i) rows.push_back(table_row(keys[i].n, keys[i].r, keys[i].q, keys[i].p, a, c));
        return rows;
    });
    std::vector<TableRow> rows;
    for (auto& ch : chunks) rows.insert(rows.end(), ch.begin(), ch.end());
    bool ok = true;
    for (const auto& row : rows) ok = ok && row.agree && row.rank_ok;

    std::ostringstream out;
    if (a.format == "tsv") {
        out << "# altrank " << ALTRANK_VERSION << " table seed=" << c.seed << " budget=" << c.budget
            << " sample=" << c.sample << "\n";
        out << "n\tr\tq\tproblem\thypothesis\tformula\tconstructed\tagree\trank_check\tmethod\n";
        for (const auto& row : rows)
            out << row.n << '\t' << row.r << '\t' << row.q << '\t' << to_string(row.problem) << '\t'
                << (row.hypothesis ? "yes" : "no") << '\t' << row.formula << '\t' << row.constructed << '\t'
                << (row.agree ? "yes" : "no") << '\t' << row.rank_check << '\t' << row.method << '\n';
    } else if (a.format == "json") {
        Json report = make_report("table", c);
        Json js = Json::array();
        for (const auto& row : rows)
            js.push_back(Json{{"n", row.n},
                              {"r", row.r},
                              {"q", row.q},
                              {"problem", to_string(row.problem)},
                              {"hypothesis", row.hypothesis},
                              {"formula", row.formula},
                              {"constructed", row.constructed},
                              {"agree", row.agree},
                              {"rank_check", row.rank_check},
                              {"method", row.method}});
        report["results"] = {{"rows", std::move(js)}, {"all_agree", ok}};
        out << report.dump(2) << "\n";
    } else {
        throw usage_error("unknown format '" + a.format + "'");
    }
    text = out.str();
    return ok ? exit_ok : exit_check_failed;
}

// ---------------------------------------------------------------------------

struct SearchArgs {
    std::size_t n = 4, r = 4;
    std::string field = "Fp:3";
    std::string predicate = "constant-rank";
    std::uint64_t work_budget = OptimalSearchOptions{}.work_budget;
};

int run_search(const SearchArgs& a, const Common&, Json& report)
{
    const auto ctx = parse_field(a.field);
    const auto* f = std::get_if<PrimeField>(&ctx);
    if (!f) throw usage_error("optimal-search requires a prime field");
    RankPredicate pred;
    if (a.predicate == "constant-rank") {
        pred = RankPredicate::constant_rank;
    } else if (a.predicate == "rank-at-least") {
        pred = RankPredicate::rank_at_least;
    } else {
        throw usage_error("unknown predicate '" + a.predicate + "'");
    }
    OptimalSearchOptions o;
    o.work_budget = a.work_budget;
    const auto res = exhaustive_optimal_dimension(a.n, a.r, *f, pred, o);
    Json scans = Json::array();
    for (const auto& s : res.scans)
        scans.push_back(Json{{"dimension", s.dimension},
                             {"linear_subspaces", s.subspaces},
                             {"affine_examined", s.affine_examined},
                             {"found", s.found}});
    report["field"] = f->name();
    report["parameters"] = {{"n", a.n}, {"r", a.r}, {"predicate", a.predicate}};
    report["results"] = {{"max_dimension", res.max_dimension},
                         {"scans", std::move(scans)},
                         {"witness", res.witness ? space_to_json(*res.witness) : Json(nullptr)}};
    return exit_ok;
}

// ---------------------------------------------------------------------------

template <Field F>
int run_counterexample(const F& f, const Common& c, std::uint64_t samples, Json& report)
{
    Json res;
    const auto cert = certify_plane_anisotropy(f);
    Json full = Json::array(), trans = Json::array();
    for (const auto& v : cert.full_form) full.push_back(scalar_to_json(f, v));
    for (const auto& v : cert.translation_form) trans.push_back(scalar_to_json(f, v));
    res["pfaffian_form"] = {{"monomials", {"x^2", "xy", "xz", "y^2", "yz", "z^2"}},
                            {"coefficients", std::move(full)},
                            {"sum_of_squares", cert.full_form_is_sum_of_squares}};
    res["translation_form"] = {{"monomials", {"x^2", "xy", "y^2"}},
                               {"coefficients", std::move(trans)},
                               {"sum_of_squares", cert.translation_form_is_sum_of_squares},
                               {"positive_diagonal", cert.positive_diagonal},
                               {"anisotropic", cert.anisotropic}};
    const auto plane = build_counterexample_plane(f);
    const auto prof = rank_profile(plane, c.budget, c.seed, samples);
    res["plane_rank_profile"] = profile_to_json(prof, f);
    bool ok = cert.full_form_is_sum_of_squares && cert.translation_form_is_sum_of_squares;
    if constexpr (std::is_same_v<F, RationalField>) {
        const bool constant = prof.min_rank == 4 && prof.max_rank == 4;
        res["conclusion"] = constant && cert.anisotropic
                                ? "plane members sampled all have rank 4; translation plane has no rank-2 matrix"
                                : "unexpected: plane is not certified";
        ok = ok && constant && cert.anisotropic;
    } else {
        const auto drop = find_singular_plane_point(f, {1});
        const auto iso = find_singular_plane_point(f, {0});
        auto pt = [](const auto& w) { return w ? Json{(*w)[0], (*w)[1], (*w)[2]} : Json(nullptr); };
        res["rank_drop_witness"] = pt(drop);
        res["translation_rank2_witness"] = pt(iso);
    }
    res["holds"] = ok;
    report["field"] = f.name();
    report["results"] = std::move(res);
    return ok ? exit_ok : exit_check_failed;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Affine spaces of alternating matrices: constructions, rank checks and canonical reduction"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ALTRANK_VERSION);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", common.seed, "Master seed for sampled checks");
        sub->add_option("--budget", common.budget, "Largest member count enumerated exhaustively");
        sub->add_option("--sample", common.sample, "Sample count when above the budget");
        sub->add_flag("--timings", common.timings, "Include runtimes (makes output non-reproducible)");
        sub->add_option("-o,--output", common.output, "Output path, - for stdout");
    };

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build a family and verify its dimension and rank contract");
    construct->add_option("--family", ca.family,
                          "nt | identity-plus-nt | nonsingular-alt | m-tilde-alt | m-tilde-rect | h-plus | h-bar | "
                          "operator-block | counterexample-plane | standard-symplectic")
        ->required();
    construct->add_option("--field", ca.field, "Fp:<p> or Q");
    construct->add_option("--n", ca.n);
    construct->add_option("--s", ca.s);
    construct->add_option("--r", ca.r);
    construct->add_option("--p", ca.p, "Column count for m-tilde-rect");
    add_common(construct);

    VerifyArgs va;
    std::size_t expect_rank = 0, expect_min_rank = 0, fa_r = 0;
    auto* verify = app.add_subcommand("verify", "Run a check on a space (or operator pair) read as JSON");
    verify->add_option("--input", va.input, "Path or - for stdin");
    verify->add_option("--check", va.check, "rank-profile | constant-rank | trivial-spectrum | flanders-atkinson | duality");
    auto* er = verify->add_option("--expect-rank", expect_rank);
    auto* emr = verify->add_option("--expect-min-rank", expect_min_rank);
    auto* rr = verify->add_option("--r", fa_r, "Rank of the base point (flanders-atkinson)");
    add_common(verify);

    ReduceArgs ra;
    auto* reduce_cmd = app.add_subcommand("reduce", "Carry a constant-rank space of critical dimension to canonical form");
    reduce_cmd->add_option("--input", ra.input, "Path or - for stdin");
    reduce_cmd->add_option("--r", ra.r)->required();
    reduce_cmd->add_flag("--assume-constant-rank", ra.assume_constant_rank, "Skip the constant-rank check");
    reduce_cmd->add_option("--candidates", ra.candidates, "Perturbed subspaces tried in the uniqueness check");
    add_common(reduce_cmd);

    TableArgs ta;
    std::string r_list = "2,4,6", q_list = "3,5,7";
    auto* table = app.add_subcommand("table", "Formula versus constructed dimension over a grid");
    table->add_option("--n-min", ta.n_min);
    table->add_option("--n-max", ta.n_max);
    table->add_option("--r", r_list, "Comma-separated even ranks");
    table->add_option("--q", q_list, "Comma-separated primes");
    table->add_flag("--verify-ranks", ta.verify_ranks, "Also check each family's rank contract");
    table->add_flag("--hypothesis-only", ta.hypothesis_only, "Skip rows below the field-size hypothesis");
    table->add_option("--format", ta.format, "tsv | json");
    add_common(table);

    SearchArgs sa;
    auto* search = app.add_subcommand("optimal-search", "Exhaustive maximum dimension in A_n(F_q), n <= 5");
    search->add_option("--n", sa.n);
    search->add_option("--r", sa.r);
    search->add_option("--field", sa.field);
    search->add_option("--predicate", sa.predicate, "constant-rank | rank-at-least");
    search->add_option("--work-budget", sa.work_budget);
    add_common(search);

    std::string cx_field = "Q";
    std::uint64_t cx_samples = 10'000;
    auto* counter = app.add_subcommand("counterexample", "Pfaffian form and rank behaviour of the 4x4 plane");
    counter->add_option("--field", cx_field);
    counter->add_option("--samples", cx_samples, "Sampled plane members over Q");
    add_common(counter);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    const auto start = std::chrono::steady_clock::now();
    auto finish = [&](Json& report, int code) {
        if (common.timings)
            report["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report["exit_code"] = code;
        emit(common, report.dump(2) + "\n");
        return code;
    };

    try {
        if (construct->parsed()) {
            Json report = make_report("construct", common);
            report["parameters"] = {{"family", ca.family}, {"n", ca.n}, {"s", ca.s}, {"r", ca.r}, {"p", ca.p}};
            const int code = with_field(parse_field(ca.field), [&](const auto& f) { return run_construct(ca, f, common, report); });
            return finish(report, code);
        }
        if (verify->parsed()) {
            if (er->count()) va.expect_rank = expect_rank;
            if (emr->count()) va.expect_min_rank = expect_min_rank;
            if (rr->count()) va.r = fa_r;
            const Json input = read_json_input(va.input);
            const Json& payload = unwrap_payload(input);
            if (!payload.contains("field")) throw usage_error("input JSON has no \"field\"");
            Json report = make_report("verify", common);
            const int code = with_field(parse_field(payload.at("field").get<std::string>()),
                                        [&](const auto& f) { return run_verify(va, f, payload, common, report); });
            return finish(report, code);
        }
        if (reduce_cmd->parsed()) {
            const Json input = read_json_input(ra.input);
            const Json& payload = unwrap_payload(input);
            if (!payload.contains("field")) throw usage_error("input JSON has no \"field\"");
            Json report = make_report("reduce", common);
            const int code = with_field(parse_field(payload.at("field").get<std::string>()),
                                        [&](const auto& f) { return run_reduce(ra, f, payload, common, report); });
            return finish(report, code);
        }
        if (table->parsed()) {
            ta.r_list.clear();
            ta.q_list.clear();
            for (const auto& t : split_list(r_list)) ta.r_list.push_back(std::stoul(t));
            for (const auto& t : split_list(q_list)) ta.q_list.push_back(static_cast<std::uint32_t>(std::stoul(t)));
            std::string text;
            const int code = run_table(ta, common, text);
            emit(common, text);
            return code;
        }
        if (search->parsed()) {
            Json report = make_report("optimal-search", common);
            const int code = run_search(sa, common, report);
            return finish(report, code);
        }
        if (counter->parsed()) {
            Json report = make_report("counterexample", common);
            const int code = with_field(parse_field(cx_field),
                                        [&](const auto& f) { return run_counterexample(f, common, cx_samples, report); });
            return finish(report, code);
        }
    } catch (const usage_error& e) {
        std::cerr << "altrank: " << e.what() << "\n";
        return exit_usage;
    } catch (const precondition_error& e) {
        std::cerr << "altrank: " << e.what() << "\n";
        return exit_usage;
    } catch (const budget_exceeded& e) {
        std::cerr << "altrank: " << e.what() << " (raise --budget)\n";
        return exit_usage;
    } catch (const Json::exception& e) {
        std::cerr << "altrank: malformed JSON input: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "altrank: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
