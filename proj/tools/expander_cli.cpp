#include "expander/codes.hpp"
#include "expander/constructions.hpp"
#include "expander/graph.hpp"
#include "expander/group.hpp"
#include "expander/group_sieve.hpp"
#include "expander/number_theory.hpp"
#include "expander/orbit.hpp"
#include "expander/parallel.hpp"
#include "expander/polynomial.hpp"
#include "expander/prodrep.hpp"
#include "expander/report.hpp"
#include "expander/spectral.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace expander;
using nlohmann::ordered_json;

namespace {

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw PreconditionError("cannot open " + path);
    return in;
}

// Destination for the main report: --out FILE or stdout.
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_)
                throw PreconditionError("cannot write " + path);
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct Common {
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
};

struct GraphSource {
    std::string in, preset;
    bool random = false;
    std::uint32_t n = 0, k = 0;

    void add(CLI::App* sub)
    {
        sub->add_option("--in", in, "graph file (\"n k\" then \"v p w q\" lines)");
        sub->add_option("--preset", preset, "k4, c6 or petersen");
        sub->add_flag("--random", random, "random connected k-regular graph on n vertices");
        sub->add_option("--n", n, "vertices for --random");
        sub->add_option("--k", k, "degree for --random");
    }

    Graph load(std::uint64_t seed) const
    {
        const int given = !in.empty() + !preset.empty() + random;
        if (given != 1)
            throw PreconditionError("choose exactly one of --in, --preset, --random");
        if (!in.empty()) {
            auto f = open_input(in);
            return read_graph(f);
        }
        if (random)
            return random_connected_regular(n, k, seed);
        if (preset == "k4")
            return complete_graph(4);
        if (preset == "c6")
            return cycle_graph(6);
        if (preset == "petersen")
            return petersen_graph();
        throw PreconditionError("unknown graph preset '" + preset + "' (k4, c6, petersen)");
    }
};

struct OrbitSource {
    std::string preset, gens, base, root;
    unsigned radius = 3;
    unsigned depth = 3;
    std::size_t point_cap = kOrbitPointCap;

    void add(CLI::App* sub)
    {
        sub->add_option("--preset", preset, "apollonian, pythagorean, example-4.6 or example-4.7");
        sub->add_option("--gens", gens, "generator file (modulus 0)");
        sub->add_option("--base", base, "base point, comma separated");
        sub->add_option("--root", root, "Apollonian root quadruple");
        sub->add_option("--radius", radius, "word length cap");
        sub->add_option("--depth", depth, "reduced-word depth (apollonian) or tree depth (pythagorean)");
        sub->add_option("--point-cap", point_cap, "maximum number of points");
    }

    OrbitBall load() const
    {
        if (!preset.empty() && !gens.empty())
            throw PreconditionError("--preset and --gens are exclusive");
        OrbitOptions opt;
        opt.point_cap = point_cap;
        if (preset == "apollonian") {
            const ZVector r = parse_vector(root.empty() ? "18,23,27,146" : root);
            auto ao = apollonian_orbit(r, depth);
            if (ao.collisions)
                std::cerr << "note: " << ao.collisions << " reduced words revisit a quadruple\n";
            return std::move(ao.ball);
        }
        if (preset == "pythagorean")
            return pythagorean_orbit(depth);
        if (preset == "example-4.6")
            return orbit_ball(pell_generators(), base.empty() ? pell_base() : parse_vector(base), radius, opt);
        if (preset == "example-4.7")
            return orbit_ball(fibonacci_generators(), base.empty() ? fibonacci_base() : parse_vector(base), radius,
                              opt);
        if (!preset.empty())
            throw PreconditionError("unknown orbit preset '" + preset + "'");
        if (gens.empty() || base.empty())
            throw PreconditionError("orbit needs --preset, or --gens with --base");
        auto f = open_input(gens);
        const auto gf = read_generators(f);
        if (gf.modulus != 0)
            throw PreconditionError(gens + ": orbit generators must be integral (modulus 0)");
        return orbit_ball(gf.matrices, parse_vector(base), radius, opt);
    }
};

std::vector<std::uint32_t> parse_u32_list(const std::string& csv)
{
    std::vector<std::uint32_t> out;
    for (const auto& x : parse_vector(csv)) {
        if (x < 0 || x > std::numeric_limits<std::uint32_t>::max())
            throw PreconditionError("value out of range in '" + csv + "'");
        out.push_back(static_cast<std::uint32_t>(x));
    }
    return out;
}

ordered_json graph_stats(const Graph& g, bool exact)
{
    ordered_json j;
    j["n"] = g.n();
    j["k"] = g.k();
    const bool conn = is_connected(g);
    j["connected"] = conn;
    j["bipartite"] = bipartition(g).has_value();
    const auto gi = girth(g);
    j["girth"] = gi ? ordered_json(*gi) : ordered_json(nullptr);
    j["diameter"] = conn ? ordered_json(diameter(g)) : ordered_json(nullptr);
    if (exact) {
        const auto e = expansion_exact(g);
        const auto h = cheeger_exact(g);
        j["expansion"] = e.value.str();
        j["expansion_witness"] = e.witness.members();
        j["cheeger"] = h.value.str();
        j["cheeger_witness"] = h.witness.members();
    }
    return j;
}

struct GroupChoice {
    std::shared_ptr<GroupTable> table;
    std::vector<std::uint32_t> gens;
};

GroupChoice parse_group(const std::string& spec, const std::string& gens_file)
{
    GroupChoice c;
    std::vector<Element> gens;
    std::shared_ptr<const GroupLaw> law;
    if (!gens_file.empty()) {
        auto f = open_input(gens_file);
        const auto gf = read_generators(f);
        if (gf.modulus < 2 || gf.modulus > std::numeric_limits<std::int32_t>::max())
            throw PreconditionError(gens_file + ": group generators need a modulus >= 2");
        law = matrix_law(gf.d, static_cast<std::uint32_t>(gf.modulus));
        for (const auto& m : gf.matrices)
            gens.push_back(reduce(m, static_cast<std::uint32_t>(gf.modulus)));
    } else {
        const auto colon = spec.find(':');
        const std::string kind = spec.substr(0, colon);
        if (colon == std::string::npos)
            throw PreconditionError("group spec must be cyclic:N or sym:N");
        const long long n = std::stoll(spec.substr(colon + 1));
        if (n < 2 || n > 1000000)
            throw PreconditionError("group size out of range in '" + spec + "'");
        if (kind == "cyclic") {
            law = cyclic_law(static_cast<std::uint32_t>(n));
            gens.push_back({1});
        } else if (kind == "sym") {
            law = permutation_law(static_cast<unsigned>(n));
            Element t(n), cyc(n);
            for (long long i = 0; i < n; ++i) {
                t[i] = static_cast<std::int32_t>(i);
                cyc[i] = static_cast<std::int32_t>((i + 1) % n);
            }
            std::swap(t[0], t[1]);
            gens.push_back(t);
            if (n > 2)
                gens.push_back(cyc);
        } else {
            throw PreconditionError("unknown group kind '" + kind + "' (cyclic, sym)");
        }
    }
    c.table = std::make_shared<GroupTable>(GroupTable::close(law, gens));
    for (const auto& g : gens)
        c.gens.push_back(c.table->index_of(g));
    return c;
}

std::vector<ZMatrix> walk_generators(const std::string& preset, const std::string& gens_file, std::int64_t t)
{
    if (!gens_file.empty()) {
        auto f = open_input(gens_file);
        const auto gf = read_generators(f);
        if (gf.modulus != 0)
            throw PreconditionError(gens_file + ": walk generators must be integral (modulus 0)");
        return gf.matrices;
    }
    if (preset == "sl2")
        return elementary_generators(2);
    if (preset == "sl3")
        return elementary_generators(3);
    if (preset == "sl2-onetwothree")
        return sl2_onetwothree_integer(t);
    throw PreconditionError("walk needs --gens or --preset sl2, sl3 or sl2-onetwothree");
}

void emit_json(std::ostream& os, ordered_json report, const RunManifest& m)
{
    report["manifest"] = to_json(m);
    os << report.dump(2) << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Expander graphs, expander codes, product replacement and sieve experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--seed", common.seed, "master seed")->capture_default_str();
    app.add_option("--threads", common.threads, "worker threads (0 = OpenMP default)");
    app.add_option("--out", common.out, "write the report here instead of stdout");
    app.set_version_flag("--version", std::string(kVersion));

    // graph
    auto* graph_cmd = app.add_subcommand("graph", "structure of a regular graph");
    GraphSource graph_src;
    graph_src.add(graph_cmd);
    bool graph_exact = false, graph_dump = false, graph_square = false;
    graph_cmd->add_flag("--exact", graph_exact, "exact expansion and Cheeger constants (n <= 24)");
    graph_cmd->add_flag("--dump", graph_dump, "print the graph in the text format");
    graph_cmd->add_flag("--square", graph_square, "replace the graph by its square first");

    // spectral
    auto* spectral_cmd = app.add_subcommand("spectral", "adjacency spectrum and Ramanujan test");
    GraphSource spectral_src;
    spectral_src.add(spectral_cmd);
    bool spectral_iterative = false;
    std::int64_t mixing_start = -1;
    unsigned mixing_tmax = 50;
    spectral_cmd->add_flag("--iterative", spectral_iterative, "force the Lanczos route");
    spectral_cmd->add_option("--mixing", mixing_start, "print the mixing profile from this vertex (CSV)");
    spectral_cmd->add_option("--tmax", mixing_tmax, "steps for --mixing");

    // cayley
    auto* cayley_cmd = app.add_subcommand("cayley", "Cayley graphs of finite matrix groups");
    std::string cayley_gens, cayley_preset;
    std::int64_t cayley_t = 1;
    std::uint32_t cayley_p = 5;
    std::string girth_primes;
    bool cayley_dump = false;
    cayley_cmd->add_option("--gens", cayley_gens, "generator file with modulus >= 2");
    cayley_cmd->add_option("--preset", cayley_preset, "sl2-onetwothree");
    cayley_cmd->add_option("--t", cayley_t, "t for sl2-onetwothree");
    cayley_cmd->add_option("--p", cayley_p, "prime for sl2-onetwothree");
    cayley_cmd->add_option("--girth-primes", girth_primes, "girth/log p table over these primes (CSV)");
    cayley_cmd->add_flag("--dump", cayley_dump, "print the Cayley graph in the text format");

    // zigzag
    auto* zigzag_cmd = app.add_subcommand("zigzag", "Zig-Zag expander family");
    std::uint32_t zz_d = 3;
    unsigned zz_levels = 3, zz_trials = 200;
    double zz_threshold = 0.9;
    std::string zz_base, zz_dump_base;
    zigzag_cmd->add_option("--d", zz_d, "base degree");
    zigzag_cmd->add_option("--levels", zz_levels, "number of levels");
    zigzag_cmd->add_option("--trials", zz_trials, "base graph search trials");
    zigzag_cmd->add_option("--threshold", zz_threshold, "largest acceptable base lambda/d");
    zigzag_cmd->add_option("--base", zz_base, "use this (d^4, d) base graph instead of searching");
    zigzag_cmd->add_option("--dump-base", zz_dump_base, "write the base graph here");

    // code
    auto* code_cmd = app.add_subcommand("code", "cycle codes and Tanner codes");
    GraphSource code_src;
    code_src.add(code_cmd);
    std::string inner_file, labels = "default", code_write;
    code_cmd->add_option("--inner", inner_file, "inner code file; builds the Tanner code");
    code_cmd->add_option("--labels", labels, "default or random edge labeling");
    code_cmd->add_option("--write", code_write, "write the parity-check matrix here");

    // prodrep
    auto* prodrep_cmd = app.add_subcommand("prodrep", "product replacement walks");
    std::string pr_group = "cyclic:5", pr_gens;
    std::uint32_t pr_r = 2;
    unsigned pr_tmax = 20, pr_trials = 10000;
    bool pr_lazy = false, pr_omega = false;
    prodrep_cmd->add_option("--group", pr_group, "cyclic:N or sym:N");
    prodrep_cmd->add_option("--gens", pr_gens, "generator file with modulus >= 2");
    prodrep_cmd->add_option("--r", pr_r, "tuple length");
    prodrep_cmd->add_option("--tmax", pr_tmax, "steps");
    prodrep_cmd->add_option("--trials", pr_trials, "walks");
    prodrep_cmd->add_flag("--lazy", pr_lazy, "lazy walk");
    prodrep_cmd->add_flag("--omega", pr_omega, "print the Omega graph instead of the TV profile");

    // sieve
    auto* sieve_cmd = app.add_subcommand("sieve", "sieve counts and saturation reports");
    OrbitSource sieve_src;
    sieve_src.add(sieve_cmd);
    std::string poly;
    std::string nu_arg;
    std::uint64_t legendre_x = 0, mobius_n = 0, beta_d = 0, sum_x = 0, sum_z = 0;
    sieve_cmd->add_option("--poly", poly, "polynomial in x1..xn");
    sieve_cmd->add_option("--legendre", legendre_x, "Legendre count at x");
    sieve_cmd->add_option("--mobius", mobius_n, "Mobius function at n");
    sieve_cmd->add_option("--nu", nu_arg, "prime factors of x with multiplicity");
    sieve_cmd->add_option("--beta", beta_d, "roots of --poly modulo d");
    sieve_cmd->add_option("--sum", sum_x, "S(f, z) up to x for --poly");
    sieve_cmd->add_option("--z", sum_z, "sieve level for --sum");

    // orbit
    auto* orbit_cmd = app.add_subcommand("orbit", "orbit enumeration");
    OrbitSource orbit_src;
    orbit_src.add(orbit_cmd);

    // walk
    auto* walk_cmd = app.add_subcommand("walk", "random walks on matrix groups over Z");
    std::string walk_gens, walk_preset, predicate = "disc", primes_csv, summary_file;
    std::int64_t walk_t = 1;
    unsigned steps = 60;
    std::uint64_t trials = 1000;
    std::uint32_t mod = 101, prime_count = 20, prime_from = 1000;
    bool walk_lazy = false, patterns = false, exact = false;
    walk_cmd->add_option("--gens", walk_gens, "generator file (modulus 0), closed under inverses");
    walk_cmd->add_option("--preset", walk_preset, "sl2, sl3 or sl2-onetwothree");
    walk_cmd->add_option("--t", walk_t, "t for sl2-onetwothree");
    walk_cmd->add_option("--steps", steps, "walk length");
    walk_cmd->add_option("--trials", trials, "number of walks");
    walk_cmd->add_option("--mod", mod, "prime for the predicate");
    walk_cmd->add_option("--predicate", predicate, "disc, power:m or subset:FILE");
    walk_cmd->add_flag("--lazy", walk_lazy, "lazy walk");
    walk_cmd->add_flag("--exact", exact, "enumerate the target set mod p for the exact limit");
    walk_cmd->add_flag("--patterns", patterns, "char-poly factor patterns instead of hit rates");
    walk_cmd->add_option("--primes", primes_csv, "primes for --patterns");
    walk_cmd->add_option("--prime-count", prime_count, "number of primes for --patterns");
    walk_cmd->add_option("--prime-from", prime_from, "smallest prime for --patterns");
    walk_cmd->add_option("--summary", summary_file, "write the fit summary JSON here (default stderr)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << kVersion << '\n';
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        std::cerr << (subs.empty() ? app.help() : subs.front()->help());
        return 64;
    }

    CLI::App* sub = app.get_subcommands().front();
    RunManifest manifest;
    manifest.subcommand = sub->get_name();
    manifest.seed = common.seed;
    for (const auto* opt : sub->get_options()) {
        if (opt->count() == 0 || opt->get_name() == "--help")
            continue;
        std::string v;
        for (const auto& r : opt->results())
            v += (v.empty() ? "" : ",") + r;
        manifest.flags[opt->get_name()] = v;
    }
    if (!common.out.empty())
        manifest.flags["--out"] = common.out;
    auto digest = [&](const std::string& path) {
        if (!path.empty())
            manifest.inputs[path] = file_digest(path);
    };
    if (common.threads > 0)
        set_thread_count(common.threads);

    try {
        const std::string name = sub->get_name();
        if (name == "graph") {
            digest(graph_src.in);
            Graph g = graph_src.load(common.seed);
            if (graph_square)
                g = square(g);
            Output out(common.out);
            if (graph_dump) {
                write_graph(out.os(), g);
                std::cerr << to_json(manifest).dump() << '\n';
            } else {
                emit_json(out.os(), graph_stats(g, graph_exact), manifest);
            }
        } else if (name == "spectral") {
            digest(spectral_src.in);
            const Graph g = spectral_src.load(common.seed);
            SpectrumOptions opt;
            opt.force_iterative = spectral_iterative;
            opt.seed = common.seed;
            const Spectrum s = spectrum(g, opt);
            Output out(common.out);
            if (mixing_start >= 0) {
                if (mixing_start >= static_cast<std::int64_t>(g.n()))
                    throw PreconditionError("--mixing vertex " + std::to_string(mixing_start) + " out of range");
                std::vector<double> mu0(g.n(), 0.0);
                mu0[mixing_start] = 1.0;
                const auto prof = mixing_profile(g, s, mu0, mixing_tmax);
                out.os() << csv_manifest_line(manifest) << '\n' << "step,distance,bound\n";
                for (unsigned t = 0; t <= mixing_tmax; ++t)
                    out.os() << t << ',' << num(prof.measured[t]) << ',' << num(prof.bound[t]) << '\n';
            } else {
                emit_json(out.os(), spectrum_json(s), manifest);
            }
        } else if (name == "cayley") {
            digest(cayley_gens);
            Output out(common.out);
            if (!girth_primes.empty()) {
                const auto primes = parse_u32_list(girth_primes);
                out.os() << csv_manifest_line(manifest) << '\n' << "p,order,girth,ratio\n";
                for (const auto& row : girth_vs_logp_experiment(cayley_t, primes))
                    out.os() << row.p << ',' << row.order << ','
                             << (row.girth ? std::to_string(*row.girth) : std::string()) << ',' << num(row.ratio)
                             << '\n';
            } else {
                std::shared_ptr<const GroupLaw> law;
                std::vector<Element> gens;
                if (!cayley_gens.empty()) {
                    auto f = open_input(cayley_gens);
                    const auto gf = read_generators(f);
                    if (gf.modulus < 2)
                        throw PreconditionError(cayley_gens + ": Cayley generators need a modulus >= 2");
                    law = matrix_law(gf.d, static_cast<std::uint32_t>(gf.modulus));
                    for (const auto& m : gf.matrices)
                        gens.push_back(reduce(m, static_cast<std::uint32_t>(gf.modulus)));
                } else if (cayley_preset == "sl2-onetwothree") {
                    law = matrix_law(2, cayley_p);
                    gens = sl2_onetwothree_generators(cayley_t, cayley_p);
                } else {
                    throw PreconditionError("cayley needs --gens or --preset sl2-onetwothree");
                }
                const auto tbl = GroupTable::close(law, gens);
                const auto sigma = GenSet::from_elements(tbl, gens);
                const Graph g = cayley_graph(tbl, sigma);
                if (cayley_dump) {
                    write_graph(out.os(), g);
                    std::cerr << to_json(manifest).dump() << '\n';
                } else {
                    SpectrumOptions opt;
                    opt.seed = common.seed;
                    const Spectrum s = spectrum(g, opt);
                    ordered_json j;
                    j["order"] = tbl.order();
                    j["degree"] = g.k();
                    j["spectrum"] = spectrum_json(s);
                    j["kazhdan_lower_bound"] = kazhdan_lower_bound(s);
                    const auto gi = girth_at(adjacency_lists(g), 0);
                    j["girth"] = gi ? ordered_json(*gi) : ordered_json(nullptr);
                    j["diameter"] = eccentricity(g, 0);
                    emit_json(out.os(), j, manifest);
                }
            }
        } else if (name == "zigzag") {
            digest(zz_base);
            Graph base;
            ordered_json search;
            if (!zz_base.empty()) {
                auto f = open_input(zz_base);
                base = read_graph(f);
            } else {
                const auto res = base_graph_search(zz_d, common.seed, zz_trials, zz_threshold);
                base = res.graph;
                search["trial"] = res.trial;
                search["ratio"] = res.ratio;
            }
            if (!zz_dump_base.empty()) {
                std::ofstream f(zz_dump_base);
                write_graph(f, base);
            }
            SpectrumOptions opt;
            opt.seed = common.seed;
            const auto fam = iterate_family(base, zz_levels, opt);
            auto j = family_json(fam);
            if (!search.empty())
                j["search"] = search;
            Output out(common.out);
            emit_json(out.os(), j, manifest);
        } else if (name == "code") {
            digest(code_src.in);
            digest(inner_file);
            const Graph g = code_src.load(common.seed);
            Output out(common.out);
            if (inner_file.empty()) {
                const auto cc = cycle_code(g);
                const auto code = with_min_distance(cc.code);
                ordered_json j;
                j["n"] = code.n;
                j["dim"] = code.dim;
                j["expected_dim"] = cc.expected_dim;
                j["components"] = cc.components;
                j["rate"] = code.rate();
                j["mindist"] = code.mindist ? ordered_json(*code.mindist) : ordered_json(nullptr);
                const auto gi = girth(g);
                j["girth"] = gi ? ordered_json(*gi) : ordered_json(nullptr);
                if (!code_write.empty()) {
                    std::ofstream f(code_write);
                    write_code(f, code);
                }
                emit_json(out.os(), j, manifest);
            } else {
                auto f = open_input(inner_file);
                const auto c0 = read_code(f);
                EdgeLabeling lab;
                if (labels == "default")
                    lab = default_labeling(g);
                else if (labels == "random")
                    lab = random_labeling(g, common.seed);
                else
                    throw PreconditionError("--labels must be default or random");
                const auto cert = rate_distance_certificate(g, c0, lab);
                if (!code_write.empty()) {
                    std::ofstream w(code_write);
                    write_code(w, tanner_code(g, c0, lab));
                }
                emit_json(out.os(), certificate_json(cert), manifest);
            }
        } else if (name == "prodrep") {
            digest(pr_gens);
            const auto grp = parse_group(pr_group, pr_gens);
            Output out(common.out);
            if (pr_omega) {
                const auto om = omega_graph(*grp.table, pr_r);
                ordered_json j;
                j["group_order"] = grp.table->order();
                j["r"] = pr_r;
                j["vertices"] = om.graph.n();
                j["degree"] = om.graph.k();
                j["connected"] = is_connected(om.graph);
                emit_json(out.os(), j, manifest);
            } else {
                const auto start = padded_start(grp.gens, pr_r);
                const auto prof = tv_profile(*grp.table, pr_r, start, pr_tmax, pr_trials, common.seed, pr_lazy);
                out.os() << csv_manifest_line(manifest) << '\n' << "step,tv_empirical,tv_exact,bound\n";
                for (unsigned t = 0; t <= pr_tmax; ++t)
                    out.os() << t << ',' << num(prof.empirical[t]) << ',' << num(prof.exact[t]) << ','
                             << num(prof.bound[t]) << '\n';
            }
        } else if (name == "sieve") {
            digest(sieve_src.gens);
            Output out(common.out);
            ordered_json j;
            if (sieve_cmd->count("--legendre")) {
                j["x"] = legendre_x;
                j["legendre_count"] = legendre_count(legendre_x);
                j["direct"] = static_cast<std::int64_t>(prime_pi(legendre_x)) -
                              static_cast<std::int64_t>(prime_pi(static_cast<std::uint64_t>(
                                  boost::multiprecision::sqrt(BigInt(legendre_x)))));
            } else if (sieve_cmd->count("--mobius")) {
                j["n"] = mobius_n;
                j["mobius"] = mobius(mobius_n);
            } else if (sieve_cmd->count("--nu")) {
                const BigInt x(nu_arg);
                const auto v = nu(x);
                j["x"] = nu_arg;
                j["nu"] = v ? ordered_json(*v) : ordered_json(nullptr);
            } else if (sieve_cmd->count("--beta")) {
                const auto f = Polynomial::parse(poly);
                j["poly"] = poly;
                j["d"] = beta_d;
                j["beta"] = beta(f, beta_d);
            } else if (sieve_cmd->count("--sum")) {
                const auto f = Polynomial::parse(poly);
                j["poly"] = poly;
                j["x"] = sum_x;
                j["z"] = sum_z;
                j["S"] = sieve_sum(f, sum_x, sum_z);
            } else {
                if (poly.empty())
                    throw PreconditionError("sieve needs --poly for a saturation report");
                const auto f = Polynomial::parse(poly);
                const auto ob = sieve_src.load();
                const auto rep = saturation_report(ob, f);
                j = sieve_json(rep);
                if (ob.truncated)
                    std::cerr << "note: orbit truncated (" << ob.reason << ")\n";
                std::cerr << "gcd of values: " << rep.value_gcd.str() << "; points divisible by p:";
                for (const auto& [p, c] : rep.divisible)
                    std::cerr << ' ' << p << ':' << c;
                std::cerr << '\n';
            }
            emit_json(out.os(), j, manifest);
        } else if (name == "orbit") {
            digest(orbit_src.gens);
            const auto ob = orbit_src.load();
            Output out(common.out);
            for (const auto& pt : ob.points)
                out.os() << format_vector(pt) << '\n';
            std::cerr << to_json(manifest).dump() << '\n';
            if (ob.truncated)
                std::cerr << "note: orbit truncated (" << ob.reason << ")\n";
        } else if (name == "walk") {
            digest(walk_gens);
            WalkConfig cfg;
            cfg.gens = walk_generators(walk_preset, walk_gens, walk_t);
            cfg.steps = steps;
            cfg.trials = trials;
            cfg.seed = common.seed;
            cfg.lazy = walk_lazy;
            Output out(common.out);
            ordered_json summary;
            if (patterns) {
                std::vector<std::uint32_t> primes;
                if (!primes_csv.empty()) {
                    primes = parse_u32_list(primes_csv);
                } else {
                    for (std::uint64_t q = prime_from; primes.size() < prime_count; ++q)
                        if (is_prime(q))
                            primes.push_back(static_cast<std::uint32_t>(q));
                }
                const auto h = charpoly_pattern_histogram(cfg, primes);
                out.os() << csv_manifest_line(manifest) << '\n' << "prime,pattern,frequency\n";
                for (const auto& [p, pats] : h.per_prime) {
                    std::uint64_t total = 0;
                    for (const auto& [pat, c] : pats)
                        total += c;
                    for (const auto& [pat, c] : pats)
                        out.os() << p << ',' << pat << ',' << num(double(c) / double(total)) << '\n';
                }
                const auto v = generic_galois_verdict(h);
                summary["samples"] = h.samples;
                summary["non_generic"] = h.non_generic;
                summary["skipped"] = h.skipped;
                summary["verdict"] = verdict_name(v.verdict);
                summary["chi_square"] = v.chi_square;
                summary["dof"] = v.dof;
                summary["p_value"] = v.p_value;
            } else {
                MatrixPredicate pred;
                std::optional<QuotientTarget> target;
                if (predicate == "disc") {
                    if (exact)
                        target = disc_target(cfg.gens, mod);
                    else
                        pred = disc_predicate(mod);
                } else if (predicate.rfind("power:", 0) == 0) {
                    target = power_target(cfg.gens, mod, std::stoull(predicate.substr(6)));
                } else if (predicate.rfind("subset:", 0) == 0) {
                    const std::string path = predicate.substr(7);
                    digest(path);
                    auto f = open_input(path);
                    target = subset_target(cfg.gens, mod, read_generators(f).matrices);
                } else {
                    throw PreconditionError("--predicate must be disc, power:m or subset:FILE");
                }
                if (target)
                    pred = target->predicate();
                const auto fit = hit_probability(cfg, pred);
                out.os() << csv_manifest_line(manifest) << '\n' << "step,p_hat,ci_low,ci_high\n";
                for (const auto& r : fit.rates)
                    out.os() << r.step << ',' << num(r.p_hat) << ',' << num(r.ci.low) << ',' << num(r.ci.high)
                             << '\n';
                summary["alpha"] = fit.alpha;
                summary["alpha_ci"] = {fit.alpha_ci.low, fit.alpha_ci.high};
                summary["alpha_lower_bound_only"] = fit.alpha_lower_bound_only;
                summary["c"] = fit.c;
                summary["fit_steps"] = {fit.fit_from, fit.fit_to};
                summary["limit"] = fit.limit;
                summary["limit_ci"] = {fit.limit_ci.low, fit.limit_ci.high};
                if (target) {
                    summary["exact_fraction"] = target->fraction();
                    summary["limit_matches"] = limit_matches(fit, target->fraction());
                }
                summary["truncated_walks"] = fit.truncated_walks;
            }
            summary["manifest"] = to_json(manifest);
            if (summary_file.empty()) {
                std::cerr << summary.dump() << '\n';
            } else {
                std::ofstream f(summary_file);
                f << summary.dump(2) << '\n';
            }
        }
    } catch (const CapExceeded& e) {
        std::cerr << "limit: " << e.what() << '\n';
        return 2;
    } catch (const ConvergenceError& e) {
        std::cerr << "limit: " << e.what() << " (residual " << e.residual() << ")\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
