// knotss: exact first and second diagonal pages of the embedding-tower
// spectral sequence, the bracket calculus behind them, and the matching
// tree/graph model. All outputs are deterministic for a fixed invocation.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kss/correspondence.hpp"
#include "kss/cosimplicial.hpp"
#include "kss/verify.hpp"

using json = nlohmann::ordered_json;
using namespace kss;

namespace {

// sizes grow factorially with the column; past this bound SNF is impractical
constexpr int kFeasibleColumn = 7;

void feasibility_guard(int column, bool force) {
    if (column <= kFeasibleColumn) return;
    if (!force)
        throw Error("column " + std::to_string(column) +
                    " is past the feasibility bound (p <= " +
                    std::to_string(kFeasibleColumn) + "); rerun with --force to try anyway");
    std::fprintf(stderr, "warning: column %d is past the tested range; expect factorial growth\n",
                 column);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw Error("cannot open output file: " + out_path);
    f << text;
}

std::string render_set(const std::set<int>& s) {
    std::string out = "{";
    for (int v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
    return out + "}";
}

int default_jobs() {
    if (const char* env = std::getenv("KNOTSS_JOBS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

// --- e1 --------------------------------------------------------------------

int cmd_e1(int p, int q, const std::string& format, const std::string& out, bool force) {
    if (p < 0 || q < p) throw Error("e1 requires 0 <= p <= q");
    feasibility_guard(std::max(p, q), force);
    const E1Entry entry = e1_entry(p, q);
    std::ostringstream text;
    if (format == "json") {
        json j;
        j["p"] = p;
        j["q"] = q;
        j["describe"] = entry.describe();
        j["free_rank"] = entry.free_basis.size();
        json summands = json::array();
        for (const auto& s : entry.summands)
            summands.push_back({{"term", s.term.key()}, {"symbol", s.symbol.str()}});
        j["summands"] = summands;
        text << j.dump(2) << "\n";
    } else {
        text << "E^1_{" << p << "," << q << "} = " << entry.describe() << "\n";
        if (!entry.free_basis.empty()) {
            text << "free basis (" << entry.free_basis.size() << "):\n";
            for (const auto& t : entry.free_basis) text << "  " << t.key() << "\n";
        }
        if (!entry.other.empty()) {
            text << "other summands (" << entry.other.size() << "):\n";
            for (const auto& s : entry.other)
                text << "  " << s.term.key() << "  " << s.symbol.str() << "\n";
        }
    }
    emit(text.str(), out);
    return 0;
}

// --- d1 --------------------------------------------------------------------

int cmd_d1(int p, bool oracle, int jobs, const std::string& format, const std::string& out,
           bool force) {
    if (p < 1) throw Error("d1 requires p >= 1");
    feasibility_guard(p, force);
    std::ostringstream text;
    json j;
    j["p"] = p;

    if (p == 1) {
        j["map"] = "zero";
        text << "E^1_{0,1} = 0; the differential into column one is the zero map\n";
    } else if (p == 2) {
        const LinearCombo d = d1_bruteforce(LinearCombo(Term(Gen::tangent(1))), 2);
        const bool iso = d.size() == 1 && (d.terms().begin()->second == 1 ||
                                           d.terms().begin()->second == -1);
        j["images"] = json::array({{{"source", "y(1)"}, {"image", d.str()}}});
        j["isomorphism"] = iso;
        text << "d1(y(1)) = " << d.str() << "\n";
        text << (iso ? "the differential E^1_{1,2} -> E^1_{2,2} is an isomorphism\n"
                     : "the differential is NOT an isomorphism\n");
        if (!iso) {
            emit(format == "json" ? j.dump(2) + "\n" : text.str(), out);
            return 1;
        }
    } else if (p == 3) {
        LinearCombo alternating;
        json pushes = json::array();
        for (int l = 0; l <= 3; ++l) {
            const LinearCombo push = coface_push(l, Gen::config(1, 2), 2);
            alternating += push * Int(l % 2 ? -1 : 1);
            pushes.push_back({{"coface", l}, {"image", push.str()}});
            text << "  d^" << l << " x(1,2) = " << push.str() << "\n";
        }
        const bool zero = alternating.is_zero();
        j["cofaces"] = pushes;
        j["zero_map"] = zero;
        text << "alternating sum = " << alternating.str() << "\n";
        text << (zero ? "the differential into column three is the zero map\n"
                      : "the alternating sum does NOT cancel\n");
        if (!zero) {
            emit(format == "json" ? j.dump(2) + "\n" : text.str(), out);
            return 1;
        }
    } else {
        const auto gens = dsep_generators(p);
        j["generator_count"] = gens.size();
        text << gens.size() << " separated generators in column " << p - 1 << "\n";
        json images = json::array();
        for (const auto& w : gens) {
            const LinearCombo image = d1_simplified(w);
            images.push_back({{"term", w.term.key()}, {"k", w.k}, {"image", image.str()}});
            text << "  d1 " << w.term.key() << " = " << image.str() << "\n";
        }
        j["images"] = images;

        const auto trees = enumerate_trees(p - 1);
        const auto rows = d1_graph_rows(enumerate_marked(p - 1), trees);
        const std::size_t rank = cokernel_of_rows(trees.size(), rows).rank;
        j["d1_matrix_rank"] = rank;
        text << "transported differential matrix rank over " << trees.size() << " trees: "
             << rank << "\n";

        if (oracle) {
            const auto start = std::chrono::steady_clock::now();
            std::vector<int> agree(gens.size(), 0);
            const int workers = std::max(1, jobs);
            std::vector<std::future<void>> futs;
            const std::size_t chunk = (gens.size() + workers - 1) / workers;
            for (int w = 0; w < workers; ++w) {
                const std::size_t lo = w * chunk;
                const std::size_t hi = std::min(gens.size(), lo + chunk);
                if (lo >= hi) break;
                futs.push_back(std::async(std::launch::async, [&, lo, hi] {
                    for (std::size_t i = lo; i < hi; ++i)
                        agree[i] = d1_simplified(gens[i]) ==
                                   d1_bruteforce(LinearCombo(gens[i].term), p);
                }));
            }
            for (auto& f : futs) f.get();
            const double seconds = std::chrono::duration<double>(
                                       std::chrono::steady_clock::now() - start)
                                       .count();
            std::size_t good = 0;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                if (agree[i]) ++good;
                else text << "  DISAGREE " << gens[i].term.key() << "\n";
            }
            const bool all = good == gens.size();
            j["oracle"] = {{"agree", all},
                           {"generators", gens.size()},
                           {"seconds", seconds}};
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "oracle: closed form vs coface sum -- %zu of %zu agree (%.3fs)\n",
                          good, gens.size(), seconds);
            text << buf;
            if (!all) {
                emit(format == "json" ? j.dump(2) + "\n" : text.str(), out);
                return 1;
            }
        }
    }
    emit(format == "json" ? j.dump(2) + "\n" : text.str(), out);
    return 0;
}

// --- e2 --------------------------------------------------------------------

int cmd_e2(int p, const std::string& format, const std::string& out, bool force) {
    if (p < 0) throw Error("e2 requires p >= 0");
    feasibility_guard(p, force);
    const GroupPresentation g = e2_diagonal(p);
    json certificates = json::object();
    std::size_t rank = 0;
    if (p >= 4) {
        const auto trees = enumerate_trees(p - 1);
        auto left = tree_relation_rows(trees, RelKind::AS);
        const auto ihx = tree_relation_rows(trees, RelKind::IHX);
        left.insert(left.end(), ihx.begin(), ihx.end());
        auto right = left;
        const auto d1rows = d1_graph_rows(enumerate_marked(p - 1), trees);
        rank = cokernel_of_rows(trees.size(), d1rows).rank;
        const auto stu2 = stu2_rows(enumerate_oneloop(p - 1), trees);
        left.insert(left.end(), d1rows.begin(), d1rows.end());
        right.insert(right.end(), stu2.begin(), stu2.end());
        certificates["differential_image_equals_stu2_span"] =
            subgroup_equal(trees.size(), left, right);
    }
    json j;
    j["p"] = p;
    j["describe"] = g.describe();
    j["free_rank"] = g.free_rank();
    json factors = json::array();
    for (const auto& f : g.invariant_factors) factors.push_back(f.convert_to<long long>());
    j["e2_invariant_factors"] = factors;
    j["d1_matrix_rank"] = rank;
    j["certificates"] = certificates;

    std::ostringstream text;
    text << "E^2_{" << p << "," << p << "} = " << g.describe() << "\n";
    if (p >= 4) {
        text << "differential matrix rank: " << rank << "\n";
        text << "certificate: differential image equals the STU^2 span modulo AS+IHX: "
             << (certificates["differential_image_equals_stu2_span"].get<bool>() ? "yes"
                                                                                 : "NO")
             << "\n";
    }
    emit(format == "json" ? j.dump(2) + "\n" : text.str(), out);
    if (p >= 4 && !certificates["differential_image_equals_stu2_span"].get<bool>()) return 1;
    return 0;
}

// --- trees -----------------------------------------------------------------

int cmd_trees(int degree, const std::string& modulo, const std::string& format,
              const std::string& out, bool force) {
    if (degree < 1) throw Error("trees requires --degree >= 1");
    feasibility_guard(degree + 1, force);
    const auto trees = enumerate_trees(degree);

    std::set<std::string> kinds;
    std::stringstream ss(modulo);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item != "as" && item != "ihx" && item != "stu2")
            throw Error("unknown relation kind in --modulo: " + item +
                        " (expected as, ihx, stu2)");
        kinds.insert(item);
    }

    if (format == "dot") {
        std::ostringstream text;
        for (std::size_t i = 0; i < trees.size(); ++i)
            text << trees[i].dot("t" + std::to_string(i));
        emit(text.str(), out);
        return 0;
    }

    std::vector<std::vector<SparseVec>> blocks;
    json relations = json::object();
    std::ostringstream reltext;
    for (const auto& kind : kinds) {  // set iteration: as, ihx, stu2 -- fixed order
        std::vector<SparseVec> rows;
        if (kind == "as") rows = tree_relation_rows(trees, RelKind::AS);
        else if (kind == "ihx") rows = tree_relation_rows(trees, RelKind::IHX);
        else rows = stu2_rows(enumerate_oneloop(degree), trees);
        relations[kind] = rows.size();
        if (!reltext.str().empty()) reltext << ", ";
        reltext << kind << " (" << rows.size() << " rows)";
        blocks.push_back(std::move(rows));
    }
    const GroupPresentation g = quotient_group(trees.size(), blocks);

    if (format == "json") {
        json j;
        j["degree"] = degree;
        j["generator_count"] = trees.size();
        j["relations"] = relations;
        j["describe"] = g.describe();
        j["free_rank"] = g.free_rank();
        json factors = json::array();
        for (const auto& f : g.invariant_factors) factors.push_back(f.convert_to<long long>());
        j["invariant_factors"] = factors;
        emit(j.dump(2) + "\n", out);
    } else {
        std::ostringstream text;
        text << "degree " << degree << ": " << trees.size() << " labelled trees\n";
        text << "relations: " << (reltext.str().empty() ? "none" : reltext.str()) << "\n";
        text << "group: " << g.describe() << "\n";
        emit(text.str(), out);
    }
    return 0;
}

// --- dsep ------------------------------------------------------------------

int cmd_dsep(int p, const std::string& format, const std::string& out, bool force) {
    if (p < 4) throw Error("dsep requires --p >= 4 (lower columns have no separated part)");
    feasibility_guard(p, force);
    const auto gens = dsep_generators(p);
    if (format == "json") {
        json arr = json::array();
        for (const auto& w : gens) {
            const auto sm = marked_of_dsep(w);
            arr.push_back({{"term", w.term.key()},
                           {"k", w.k},
                           {"left", std::vector<int>(w.left_indices.begin(), w.left_indices.end())},
                           {"right", std::vector<int>(w.right_indices.begin(), w.right_indices.end())},
                           {"marked", sm.graph.key()},
                           {"sign", sm.sign}});
        }
        json j;
        j["p"] = p;
        j["generators"] = arr;
        emit(j.dump(2) + "\n", out);
    } else {
        std::ostringstream text;
        text << gens.size() << " separated generators in column " << p - 1 << "\n";
        for (const auto& w : gens) {
            const auto sm = marked_of_dsep(w);
            text << "  " << w.term.key() << "  k=" << w.k << "  left=" << render_set(w.left_indices)
                 << " right=" << render_set(w.right_indices) << "  ->  " << sm.graph.key()
                 << "  sign " << (sm.sign > 0 ? "+1" : "-1") << "\n";
        }
        emit(text.str(), out);
    }
    return 0;
}

// --- verify ----------------------------------------------------------------

int cmd_verify(const std::string& suite, const std::string& format, const std::string& out) {
    std::vector<CheckResult> results;
    if (suite.empty() || suite == "all") results = run_all_verifications();
    else results.push_back(run_verification(suite));

    int failures = 0;
    std::ostringstream text;
    json arr = json::array();
    for (const auto& res : results) {
        if (!res.passed) ++failures;
        char buf[64];
        std::snprintf(buf, sizeof buf, "(%.2fs)", res.seconds);
        text << res.suite << ": " << (res.passed ? "PASS" : "FAIL") << " " << buf << "  "
             << res.summary << "\n";
        if (!res.passed) text << res.detail;
        arr.push_back({{"suite", res.suite},
                       {"passed", res.passed},
                       {"seconds", res.seconds},
                       {"summary", res.summary},
                       {"detail", res.detail}});
    }
    text << results.size() - failures << " of " << results.size() << " suites passed\n";
    emit(format == "json" ? arr.dump(2) + "\n" : text.str(), out);
    return failures == 0 ? 0 : 1;
}

// --- export-dot ------------------------------------------------------------

int cmd_export_dot(int degree, const std::string& out, bool force) {
    if (degree < 1) throw Error("export-dot requires --degree >= 1");
    feasibility_guard(degree + 1, force);
    const auto trees = enumerate_trees(degree);
    std::ostringstream text;
    for (std::size_t i = 0; i < trees.size(); ++i)
        text << trees[i].dot("t" + std::to_string(i));
    emit(text.str(), out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact pages of the knot-tower spectral sequence and its tree/graph model"};
    app.require_subcommand(1);

    int p = -1, q = -1, degree = -1;
    int jobs = default_jobs();
    bool oracle = false, force = false;
    std::string format = "text", out_path, modulo = "as,ihx", suite = "all";

    const auto add_common = [&](CLI::App* sub, bool with_format = true) {
        if (with_format)
            sub->add_option("--format", format, "output format")
                ->check(CLI::IsMember({"text", "json", "dot"}));
        sub->add_option("--out", out_path, "write output to a file instead of stdout");
        sub->add_flag("--force", force, "run past the feasibility bound");
        sub->add_option("--jobs", jobs, "worker count for independent generators")
            ->check(CLI::PositiveNumber);
    };

    CLI::App* e1 = app.add_subcommand("e1", "first-page entry E^1_{p,q}");
    e1->add_option("--p", p, "column")->required();
    e1->add_option("--q", q, "row (defaults to p)");
    add_common(e1);

    CLI::App* d1 = app.add_subcommand("d1", "first differential into column p");
    d1->add_option("--p", p, "target column")->required();
    d1->add_flag("--oracle", oracle, "also run the alternating coface sum and compare");
    add_common(d1);

    CLI::App* e2 = app.add_subcommand("e2", "diagonal second-page entry E^2_{p,p}");
    e2->add_option("--p", p, "column")->required();
    add_common(e2);

    CLI::App* trees = app.add_subcommand("trees", "labelled tree groups modulo relations");
    trees->add_option("--degree", degree, "tree degree (leaves minus one)")->required();
    trees->add_option("--modulo", modulo, "comma list of relations: as, ihx, stu2");
    add_common(trees);

    CLI::App* dsep = app.add_subcommand("dsep", "separated superdiagonal generators");
    dsep->add_option("--p", p, "column")->required();
    add_common(dsep);

    CLI::App* verify = app.add_subcommand("verify", "run verification suites");
    verify->add_option("--suite", suite,
                       "suite slug or 'all' (see --list for slugs)");
    bool list_suites = false;
    verify->add_flag("--list", list_suites, "list suite slugs and exit");
    add_common(verify);

    CLI::App* exdot = app.add_subcommand("export-dot", "write DOT for all trees of a degree");
    exdot->add_option("--degree", degree, "tree degree")->required();
    add_common(exdot, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (e1->parsed()) return cmd_e1(p, e1->count("--q") ? q : p, format, out_path, force);
        if (d1->parsed()) return cmd_d1(p, oracle, jobs, format, out_path, force);
        if (e2->parsed()) return cmd_e2(p, format, out_path, force);
        if (trees->parsed()) return cmd_trees(degree, modulo, format, out_path, force);
        if (dsep->parsed()) return cmd_dsep(p, format, out_path, force);
        if (verify->parsed()) {
            if (list_suites) {
                for (const auto& s : verification_suites()) std::printf("%s\n", s.c_str());
                return 0;
            }
            return cmd_verify(suite, format, out_path);
        }
        if (exdot->parsed()) return cmd_export_dot(degree, out_path, force);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
