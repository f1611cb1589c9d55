#include <algorithm>
#include <future>
#include <set>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qtoda/cluster.hpp"
#include "qtoda/correspondence.hpp"
#include "qtoda/fixtures.hpp"
#include "qtoda/lax.hpp"
#include "qtoda/network.hpp"
#include "qtoda/words.hpp"

using namespace qtoda;
using nlohmann::json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string type = "A";
    int rank = 2;
    std::string word;
    std::string qvec;
    std::string kvec;
    bool all_words = false;
    std::string format = "json";
    int max_depth = 6;
    int jobs = 1;
    std::string route = "network";
    bool normalize = true;
    bool in_lax = false;
    bool labels = false;
    std::string check;
    bool families_only = false;
    std::string moves;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

DynkinType config_type(const RunConfig& c) {
    try {
        return parse_type(c.type);
    } catch (const std::exception&) {
        throw UsageError("unknown type " + c.type);
    }
}

// The words named by --word, --qvec or --all-words.
std::vector<DoubleWord> selected_words(const RunConfig& c) {
    const int given = !c.word.empty() + !c.qvec.empty() + c.all_words;
    if (given != 1) throw UsageError("give exactly one of --word, --qvec, --all-words");
    try {
        if (c.all_words) return enumerate_double_coxeter(c.rank);
        if (!c.word.empty()) return {parse_word(c.rank, c.word)};
        if (!c.qvec.empty()) {
            auto q = parse_vector(c.qvec);
            if (static_cast<int>(q.size()) != c.rank - 1) throw UsageError("--qvec needs rank-1 entries");
            return {word_of_quiver_vector(c.rank, q)};
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return {};
}

// Runs fn on every item with up to `jobs` workers; results keep input order.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, int jobs, F fn) -> std::vector<decltype(fn(items.front()))> {
    using R = decltype(fn(items.front()));
    std::vector<R> out;
    out.reserve(items.size());
    const std::size_t batch = static_cast<std::size_t>(std::max(1, jobs));
    for (std::size_t start = 0; start < items.size(); start += batch) {
        std::vector<std::future<R>> fs;
        for (std::size_t i = start; i < std::min(items.size(), start + batch); ++i)
            fs.push_back(std::async(batch > 1 ? std::launch::async : std::launch::deferred, fn, std::cref(items[i])));
        for (auto& f : fs) out.push_back(f.get());
    }
    return out;
}

json envelope(const std::string& command, const RunConfig& c) {
    return {{"schema_version", kSchemaVersion}, {"command", command}, {"type", c.type}, {"rank", c.rank}};
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

void require_format(const RunConfig& c, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (c.format == f) return;
    throw UsageError("format " + c.format + " is not available for this command");
}

// ---- words ----

int run_words(const RunConfig& c) {
    require_format(c, {"json", "text"});
    auto words = enumerate_double_coxeter(c.rank);
    if (c.format == "text") {
        for (const auto& w : words) std::cout << to_string(w) << "  Q=" << vector_to_string(quiver_vector_of(w)) << "\n";
        return 0;
    }
    json j = envelope("words", c);
    j["count"] = words.size();
    for (const auto& w : words) j["words"].push_back({{"word", to_json(w)}, {"quiver_vector", quiver_vector_of(w)}});
    emit_json(j);
    return 0;
}

// ---- network / quiver ----

int run_network(const RunConfig& c) {
    require_format(c, {"json", "dot"});
    const auto type = config_type(c);
    auto words = selected_words(c);
    json j = envelope("network", c);
    for (const auto& w : words) {
        auto net = build_network(type, w);
        if (c.format == "dot") {
            std::cout << net.to_dot();
            continue;
        }
        json e = net.to_json();
        json paths = json::array();
        for (const auto& p : enumerate_labeled_paths(net))
            paths.push_back({{"label", label_name(p.label)}, {"edges", p.edges}, {"weight", p.weight}});
        e["paths"] = paths;
        j["networks"].push_back(e);
    }
    if (c.format == "json") emit_json(j);
    return 0;
}

int run_quiver(const RunConfig& c) {
    require_format(c, {"json", "dot"});
    const auto type = config_type(c);
    json j = envelope("quiver", c);
    for (const auto& w : selected_words(c)) {
        auto s = quiver_from_network(build_network(type, w));
        if (c.format == "dot") {
            std::cout << s.to_dot();
            continue;
        }
        j["seeds"].push_back({{"word", to_json(w)}, {"quiver_vector", quiver_vector_of(w)}, {"seed", s.to_json()}});
    }
    if (c.format == "json") emit_json(j);
    return 0;
}

// ---- hamiltonians ----

struct HamiltonianList {
    std::string key;
    std::string symbol;
    IndexVector k;
    std::vector<TorusElement> hs;
    json extra;
};

// (0,Q,0) for type A, (Q,0) for type C.
IndexVector lax_vector(DynkinType type, const QuiverVector& q) {
    if (type == DynkinType::A) return index_vector_of(q);
    IndexVector k = q;
    k.push_back(0);
    return k;
}

// Index vector of the Lax side: --kvec, else (0,Q,0) for type A, (Q,0) for type C.
IndexVector lax_index_vector(const RunConfig& c, DynkinType type) {
    try {
        if (!c.word.empty() || c.all_words) throw UsageError("the Lax routes take --qvec or --kvec");
        if (c.kvec.empty() == c.qvec.empty()) throw UsageError("give exactly one of --qvec, --kvec");
        if (!c.kvec.empty()) {
            auto k = parse_vector(c.kvec);
            if (static_cast<int>(k.size()) != c.rank) throw UsageError("--kvec needs rank entries");
            for (int x : k)
                if (x < -1 || x > 1) throw UsageError("--kvec entries lie in {-1,0,1}");
            return k;
        }
        QuiverVector q = parse_vector(c.qvec);
        // Type A: --rank counts the Lax factors, so Q has rank-2 entries.
        const int entries = type == DynkinType::A ? c.rank - 2 : c.rank - 1;
        if (static_cast<int>(q.size()) != entries) throw UsageError("--qvec has the wrong length for the Lax route");
        return lax_vector(type, q);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

HamiltonianList lax_list(const RunConfig& c, DynkinType type, bool recursive) {
    auto k = lax_index_vector(c, type);
    LaxContext ctx(static_cast<int>(k.size()));
    HamiltonianList out{vector_to_string(k), "H", k, {}, json::object()};
    if (recursive) {
        const int count = type == DynkinType::A ? static_cast<int>(k.size()) + 1 : 2 * static_cast<int>(k.size()) + 1;
        for (int i = 1; i <= count; ++i)
            out.hs.push_back(type == DynkinType::A ? hamiltonian_recursive_A(ctx, k, i) : hamiltonian_recursive_C(ctx, k, i));
    } else {
        out.hs = type == DynkinType::A ? lax_hamiltonians_A(ctx, k) : lax_hamiltonians_C(ctx, k);
    }
    if (c.normalize) out.hs = type == DynkinType::A ? normalized_A(out.hs) : normalized_C(out.hs);
    out.extra["normalized"] = c.normalize;
    return out;
}

HamiltonianList network_list(const RunConfig& c, DynkinType type, const DoubleWord& w) {
    auto net = build_network(type, w);
    auto paths = enumerate_labeled_paths(net);
    HamiltonianList out{to_string(w), "H", quiver_vector_of(w), {}, json::object()};
    const int rows = net.row_count();
    if (c.in_lax) {
        for (int i = 1; i <= rows; ++i) out.hs.push_back(network_hamiltonian_in_lax(type, w, i));
    } else if (c.labels) {
        auto ctx = network_label_context(net, paths);
        for (int i = 1; i <= rows; ++i) {
            TorusElement h(ctx.torus);
            for (const auto& fam : label_families(net, paths, i)) {
                TorusElement t = TorusElement::one(ctx.torus);
                for (const auto& l : fam) t = t * ctx.generator(l);
                h += t;
            }
            out.hs.push_back(h);
        }
    } else {
        for (int i = 1; i <= rows; ++i) {
            TorusElement h(net.torus());
            for (const auto& f : enumerate_families(net, paths, i)) h += family_weight(net, paths, f);
            out.hs.push_back(h);
        }
    }
    out.extra["word"] = to_json(w);
    out.extra["quiver_vector"] = quiver_vector_of(w);
    out.extra["form"] = c.in_lax ? "lax" : c.labels ? "labels" : "weights";
    return out;
}

int run_hamiltonians(const RunConfig& c) {
    require_format(c, {"json", "latex", "text"});
    const auto type = config_type(c);
    if (c.in_lax && c.labels) throw UsageError("--in-lax and --labels are exclusive");
    std::vector<HamiltonianList> lists;
    if (c.route == "network") {
        auto words = selected_words(c);
        lists = parallel_map(words, c.jobs, [&](const DoubleWord& w) { return network_list(c, type, w); });
    } else if (c.route == "lax" || c.route == "recursive") {
        lists.push_back(lax_list(c, type, c.route == "recursive"));
    } else {
        throw UsageError("unknown route " + c.route);
    }
    if (c.format == "latex") {
        for (const auto& l : lists) std::cout << hamiltonians_to_latex(l.k, l.hs, l.symbol);
        return 0;
    }
    if (c.format == "text") {
        for (const auto& l : lists) {
            std::cout << "# " << l.key << "\n";
            for (std::size_t i = 0; i < l.hs.size(); ++i) std::cout << "H_" << i + 1 << " = " << l.hs[i].to_string() << "\n";
        }
        return 0;
    }
    json j = envelope("hamiltonians", c);
    j["route"] = c.route;
    for (const auto& l : lists) {
        json e = hamiltonians_to_json(l.k, l.hs);
        e.update(l.extra);
        j["lists"].push_back(e);
    }
    emit_json(j);
    return 0;
}

// ---- verify ----

struct CheckResult {
    std::string unit;
    bool ok = true;
    json detail;
};

CheckResult check_commute(DynkinType type, const DoubleWord& w) {
    CheckResult r{to_string(w), true, json::object()};
    auto net = build_network(type, w);
    std::vector<TorusElement> hs;
    for (int i = 1; i <= net.row_count(); ++i) hs.push_back(network_hamiltonian(net, i));
    json bad = json::array();
    for (std::size_t a = 0; a < hs.size(); ++a)
        for (std::size_t b = a + 1; b < hs.size(); ++b)
            if (!commutes(hs[a], hs[b])) bad.push_back({a + 1, b + 1});
    r.ok = bad.empty();
    r.detail["network_pairs_failing"] = bad;
    return r;
}

CheckResult check_commute_lax(DynkinType type, const IndexVector& k) {
    CheckResult r{"lax " + vector_to_string(k), true, json::object()};
    LaxContext ctx(static_cast<int>(k.size()));
    auto hs = type == DynkinType::A ? lax_hamiltonians_A(ctx, k) : lax_hamiltonians_C(ctx, k);
    json bad = json::array();
    for (std::size_t a = 0; a < hs.size(); ++a)
        for (std::size_t b = a + 1; b < hs.size(); ++b)
            if (!commutes(hs[a], hs[b])) bad.push_back({a + 1, b + 1});
    r.ok = bad.empty();
    r.detail["lax_pairs_failing"] = bad;
    return r;
}

CheckResult check_equivalence(DynkinType type, const DoubleWord& w) {
    auto rep = type == DynkinType::A ? verify_equivalence_A(w) : verify_equivalence_C(w);
    return {to_string(w), rep.ok(), rep.to_json()};
}

CheckResult check_alpha(DynkinType type, int n, const QuiverVector& Q, bool families_only) {
    auto rep = verify_alpha_homomorphism(type, n, Q);
    bool ok = families_only ? rep.cooccurring_failures() == 0 : rep.ok();
    json d = {{"pairs", rep.pairs.size()},
              {"failures", rep.failures()},
              {"cooccurring_failures", rep.cooccurring_failures()},
              {"scope", families_only ? "co-occurring pairs" : "all pairs"}};
    return {"Q=" + vector_to_string(Q), ok, d};
}

std::vector<CheckResult> check_rtt(DynkinType type, int n) {
    std::vector<CheckResult> out;
    LaxContext one(1);
    for (int k : {-1, 0, 1})
        for (bool barred : {false, true})
            out.push_back({std::string(barred ? "bar L" : "L") + " k=" + std::to_string(k),
                           check_rtt(local_lax(one, 1, k, barred)), json::object()});
    LaxContext ctx(type == DynkinType::A ? n + 1 : n);
    for (const auto& q : all_quiver_vectors(n)) {
        auto k = lax_vector(type, q);
        out.push_back({"T " + vector_to_string(k), check_rtt(monodromy(ctx, k)), json::object()});
    }
    return out;
}

std::vector<CheckResult> check_mutation_equiv(DynkinType type, int n, int depth, int jobs) {
    auto words = enumerate_double_coxeter(n);
    auto target = quiver_from_word(type, standard_word(n));
    return parallel_map(words, jobs, [&](const DoubleWord& w) {
        auto res = mutation_equivalent(quiver_from_word(type, w), target, depth);
        return CheckResult{to_string(w), res.found, {{"moves", res.moves}, {"explored", res.explored}}};
    });
}

std::vector<CheckResult> check_oracle(DynkinType type, int n) {
    std::vector<CheckResult> out;
    if (type == DynkinType::A && n == 2) {
        for (const auto& g : a2_network_goldens()) {
            auto w = parse_word(2, g.key);
            auto net = build_network(type, w);
            auto paths = enumerate_labeled_paths(net);
            std::set<std::vector<std::pair<int, int>>> got, want;
            for (const auto& fam : label_families(net, paths, g.index)) {
                std::vector<std::pair<int, int>> f;
                for (const auto& l : fam) f.emplace_back(l.low, l.source);
                std::sort(f.begin(), f.end());
                got.insert(f);
            }
            for (auto f : parse_label_families(g.text)) {
                std::sort(f.begin(), f.end());
                want.insert(f);
            }
            out.push_back({"network H_" + std::to_string(g.index) + " " + g.key, got == want, {{"expected", g.text}}});
        }
        LaxContext ctx(3);
        for (const auto& g : a2_lax_goldens()) {
            auto k = parse_vector(g.key);
            auto hs = normalized_A(lax_hamiltonians_A(ctx, k));
            auto want = parse_expression(ctx.torus, g.text, lax_symbol);
            const auto& have = hs[static_cast<std::size_t>(g.index - 1)];
            out.push_back({"lax H_" + std::to_string(g.index) + " " + g.key, have == want,
                           {{"expected", g.text}, {"difference", have == want ? "" : first_difference(have, want)}}});
        }
    }
    // Recursion against direct extraction.
    const int factors = type == DynkinType::A ? n + 1 : n;
    LaxContext ctx(factors);
    std::vector<IndexVector> ks{{}};
    for (int i = 0; i < factors; ++i) {
        std::vector<IndexVector> next;
        for (const auto& k : ks)
            for (int x : {-1, 0, 1}) {
                auto kk = k;
                kk.push_back(x);
                next.push_back(kk);
            }
        ks = next;
    }
    for (const auto& k : ks) {
        auto hs = type == DynkinType::A ? lax_hamiltonians_A(ctx, k) : lax_hamiltonians_C(ctx, k);
        bool ok = true;
        for (std::size_t i = 0; i < hs.size(); ++i) {
            int idx = static_cast<int>(i) + 1;
            auto r = type == DynkinType::A ? hamiltonian_recursive_A(ctx, k, idx) : hamiltonian_recursive_C(ctx, k, idx);
            ok = ok && r == hs[i];
        }
        out.push_back({"recursion " + vector_to_string(k), ok, json::object()});
    }
    return out;
}

int run_verify(const RunConfig& c) {
    require_format(c, {"json", "text"});
    const auto type = config_type(c);
    std::vector<CheckResult> results;
    if (c.check == "commute") {
        auto words = selected_words(c);
        results = parallel_map(words, c.jobs, [&](const DoubleWord& w) { return check_commute(type, w); });
        for (const auto& w : words) results.push_back(check_commute_lax(type, lax_vector(type, quiver_vector_of(w))));
    } else if (c.check == "equivalence") {
        auto words = selected_words(c);
        results = parallel_map(words, c.jobs, [&](const DoubleWord& w) { return check_equivalence(type, w); });
    } else if (c.check == "alpha") {
        auto words = selected_words(c);
        std::vector<QuiverVector> qs;
        for (const auto& w : words) qs.push_back(quiver_vector_of(w));
        results = parallel_map(qs, c.jobs, [&](const QuiverVector& q) { return check_alpha(type, c.rank, q, c.families_only); });
    } else if (c.check == "rtt") {
        results = check_rtt(type, c.rank);
    } else if (c.check == "mutation-equiv") {
        results = check_mutation_equiv(type, c.rank, c.max_depth, c.jobs);
    } else if (c.check == "oracle") {
        results = check_oracle(type, c.rank);
    } else {
        throw UsageError("unknown check " + c.check);
    }
    bool all = true;
    for (const auto& r : results) all = all && r.ok;
    if (c.format == "text") {
        for (const auto& r : results) std::cout << (r.ok ? "PASS " : "FAIL ") << r.unit << "\n";
        std::cout << (all ? "all passed" : "failures present") << " (" << results.size() << " checks)\n";
    } else {
        json j = envelope("verify", c);
        j["check"] = c.check;
        j["passed"] = all;
        for (const auto& r : results) j["results"].push_back({{"unit", r.unit}, {"ok", r.ok}, {"detail", r.detail}});
        emit_json(j);
    }
    return all ? 0 : kExitFail;
}

// ---- mutate ----

std::vector<std::string> split_moves(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if ((ch == ',' || ch == ' ') && depth == 0) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

int run_mutate(const RunConfig& c) {
    require_format(c, {"json", "dot"});
    const auto type = config_type(c);
    auto words = selected_words(c);
    if (words.size() != 1) throw UsageError("mutate takes one word");
    auto start = quiver_from_word(type, words.front());
    auto moves = split_moves(c.moves);
    Seed end = start;
    try {
        end = apply_moves(start, moves);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
    }
    if (c.format == "dot") {
        std::cout << end.to_dot();
        return 0;
    }
    json j = envelope("mutate", c);
    j["word"] = to_json(words.front());
    j["moves"] = moves;
    j["seed"] = end.to_json();
    emit_json(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Coxeter-Toda systems: networks, Lax matrices and cluster seeds"};
    app.require_subcommand(0, 1);
    RunConfig c;
    bool manifest = false;
    app.add_flag("--seed-manifest", manifest, "Print every fixed expectation with its origin and exit");

    auto common = [&](CLI::App* s) {
        s->add_option("--type", c.type, "Dynkin type")->check(CLI::IsMember({"A", "C"}));
        s->add_option("--rank", c.rank, "Rank n")->check(CLI::Range(1, 8));
        s->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "latex", "dot", "text"}));
        s->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::Range(1, 256));
    };
    auto selector = [&](CLI::App* s) {
        s->add_option("--word", c.word, "Double Coxeter word, e.g. (-1,-2,1,2)");
        s->add_option("--qvec", c.qvec, "Quiver vector (Q_{n-1},...,Q_1)");
        s->add_flag("--all-words", c.all_words, "Every commutation class");
    };

    auto* words = app.add_subcommand("words", "Enumerate double Coxeter words");
    common(words);
    auto* network = app.add_subcommand("network", "Build the directed network");
    common(network);
    selector(network);
    auto* quiver = app.add_subcommand("quiver", "Build the seed of a word");
    common(quiver);
    selector(quiver);
    auto* ham = app.add_subcommand("hamiltonians", "Compute Hamiltonians");
    common(ham);
    selector(ham);
    ham->add_option("--route", c.route, "network, lax or recursive")->check(CLI::IsMember({"network", "lax", "recursive"}));
    ham->add_option("--kvec", c.kvec, "Lax index vector (k_n,...,k_1)");
    ham->add_flag("!--raw", c.normalize, "Keep the signs of the extracted Lax coefficients");
    ham->add_flag("--in-lax", c.in_lax, "Push network sums through alpha");
    ham->add_flag("--labels", c.labels, "Network sums over path labels");
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    common(verify);
    selector(verify);
    verify->add_option("--check", c.check, "Suite")
        ->required()
        ->check(CLI::IsMember({"commute", "equivalence", "rtt", "alpha", "mutation-equiv", "oracle"}));
    verify->add_option("--max-depth", c.max_depth, "Search depth for mutation-equiv")->check(CLI::Range(0, 20));
    verify->add_flag("--families-only", c.families_only, "alpha: only pairs that share a path family");
    auto* mutate = app.add_subcommand("mutate", "Apply mu/tau/sigma moves to the seed of a word");
    common(mutate);
    selector(mutate);
    mutate->add_option("--moves", c.moves, "e.g. \"mu(-1),tau(2)\"")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (manifest) {
            emit_json(seed_manifest());
            return 0;
        }
        if (*words) return run_words(c);
        if (*network) return run_network(c);
        if (*quiver) return run_quiver(c);
        if (*ham) return run_hamiltonians(c);
        if (*verify) return run_verify(c);
        if (*mutate) return run_mutate(c);
        std::cerr << app.help();
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
