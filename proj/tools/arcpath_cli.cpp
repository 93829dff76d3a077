// arcpath: inspect circular-arc instances and verify the longest-path
// intersection property on them.
//
// Exit codes: 0 ok, 1 property failure, 2 usage or resource error.

#include <arcpath/instance_io.hpp>
#include <arcpath/verifier.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace arcpath;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;

ReportFormat parse_format(const std::string & s) { return s == "machine" ? ReportFormat::machine : ReportFormat::text; }

int cmd_gen(std::size_t arcs, std::int64_t ticks, std::uint64_t seed, bool cover, bool connected,
            const std::string & out)
{
    GenerateParams p;
    p.arcs = arcs;
    p.ticks = ticks;
    p.seed = seed;
    p.require_cover = cover;
    p.require_connected = connected;
    auto family = generate(p);
    if (out.empty() || out == "-")
        std::cout << format_instance(family);
    else
        save_instance(out, family);
    return exit_ok;
}

int cmd_graph(const std::string & file)
{
    auto inst = load_instance(file);
    auto g = build_graph(inst.family);
    std::cout << "vertices " << g.size() << "\n";
    std::cout << "edges " << g.edge_count() << "\n";
    for (std::size_t u = 0; u < g.size(); ++u) {
        std::cout << "adj " << u << ":";
        for (auto w : g.neighbours(u))
            std::cout << " " << w;
        std::cout << "\n";
    }
    std::cout << "connected " << (is_connected(g) ? "true" : "false") << "\n";
    return exit_ok;
}

int cmd_cover(const std::string & file)
{
    auto inst = load_instance(file);
    if (!covers_circle(inst.family)) {
        std::cout << "covering false\n";
        return exit_ok;
    }
    auto cover = minimal_cover(inst.family);
    std::cout << "covering true\n";
    std::cout << "n " << cover.n() << "\n";
    std::cout << "cover " << join_indices(cover.arcs()) << "\n";
    if (cover.n() >= 2)
        for (std::size_t i = 0; i < cover.n(); ++i)
            std::cout << "delta " << i << " " << to_string(delta_k(inst.family, cover, static_cast<std::int64_t>(i)))
                      << "\n";
    return exit_ok;
}

int cmd_longest(const std::string & file, bool enumerate, std::uint64_t cap)
{
    auto inst = load_instance(file);
    auto g = build_graph(inst.family);
    if (!enumerate) {
        std::cout << "length " << longest_path_length(g) << "\n";
        return exit_ok;
    }
    EnumerateOptions opts;
    opts.cap = cap;
    auto r = enumerate_longest(g, opts);
    std::cout << "length " << r.length << "\n";
    std::cout << "count " << r.count << "\n";
    std::cout << "truncated " << (r.truncated ? "true" : "false") << "\n";
    std::cout << "common " << join_indices(r.common_vertices) << "\n";
    for (const auto & p : r.paths)
        std::cout << "path " << join_indices(p) << "\n";
    return exit_ok;
}

int cmd_canonicalize(const std::string & file, const std::string & chain_arg, bool paranoid)
{
    auto inst = load_instance(file);
    const auto & family = inst.family;
    std::vector<ArcIndex> arcs;
    if (!chain_arg.empty())
        arcs = parse_index_list(chain_arg);
    else if (!inst.chains.empty())
        arcs = inst.chains.front();
    else {
        std::cerr << "canonicalize: no --chain given and the file has no chain line\n";
        return exit_usage;
    }
    auto chain = validate_chain(arcs, family);
    auto g = build_graph(family);
    if (chain.size() != longest_path_length(g)) {
        std::cerr << "canonicalize: chain has length " << chain.size() << " but the longest chain has length "
                  << longest_path_length(g) << "\n";
        return exit_usage;
    }
    if (!covers_circle(family)) {
        std::cerr << "canonicalize: the arcs do not cover the circle\n";
        return exit_usage;
    }
    auto cover = minimal_cover(family);
    auto trace = cover_trace(chain, cover);
    if (!trace.proper()) {
        std::cerr << "canonicalize: chain meets every cover arc (or its trace is not contiguous)\n";
        return exit_usage;
    }
    CanonicalizeOptions opts;
    opts.paranoid = paranoid;
    opts.compare_verbatim = true;
    auto run = canonicalize(chain, family, cover, trace, opts);

    std::cout << "input " << join_indices(chain.arcs()) << "\n";
    std::cout << "cover " << join_indices(cover.arcs()) << "\n";
    std::cout << "a " << *trace.a << " b " << *trace.b << "\n";
    std::cout << "cut " << to_string(run.points.cut) << "\n";
    std::cout << "points";
    for (const auto & x : run.points.points)
        std::cout << " " << to_string(x);
    std::cout << "\n";
    std::cout << "keil " << join_indices(run.keil_chain.arcs()) << "\n";
    for (std::size_t k = 0; k < run.steps.size(); ++k) {
        const auto & s = run.steps[k];
        std::cout << "step " << k + 1 << " rule " << to_string(s.rule) << " swap " << s.p << " " << s.q << " f "
                  << s.f << "\n";
    }
    std::cout << "result " << join_indices(run.result.arcs()) << "\n";
    const auto & r = run.report;
    std::cout << "report a " << r.a << " b " << r.b << " c " << r.c << " d " << r.d << " e " << r.e << "\n";
    for (const auto & w : r.witnesses)
        std::cout << "witness " << w.property << " position " << w.position << " arc " << w.arc << "\n";
    for (const auto & v : run.proof_violations)
        std::cout << "violation " << v << "\n";
    std::cout << "verbatim_divergences " << run.verbatim_divergences << "\n";
    return run.ok() ? exit_ok : exit_failure;
}

int cmd_verify(const std::string & file, bool paranoid, const std::string & format)
{
    auto inst = load_instance(file);
    VerifyOptions opts;
    opts.paranoid = paranoid;
    auto r = verify_instance(inst.family, opts);
    std::cout << format_report(r, parse_format(format));
    return r.ok() ? exit_ok : exit_failure;
}

int cmd_hunt(const HuntParams & params, const std::string & format)
{
    auto s = hunt(params);
    std::cout << format_summary(s, parse_format(format));
    return s.ok() ? exit_ok : exit_failure;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Circular-arc longest path toolkit"};
    app.require_subcommand(1);

    std::string file, out, chain, format = "text", out_dir;
    std::size_t arcs = 6;
    std::int64_t ticks = 0;
    std::uint64_t seed = 1, cap = default_path_cap;
    bool require_cover = false, require_connected = false, enumerate = false, paranoid = false, mixed = false;
    HuntParams hp;

    auto * gen = app.add_subcommand("gen", "Generate a random arc family");
    gen->add_option("--arcs", arcs, "Number of arcs")->required();
    gen->add_option("--ticks", ticks, "Circle size in ticks (default 4 * arcs)");
    gen->add_option("--seed", seed, "Random seed");
    gen->add_flag("--require-cover", require_cover, "Reject families that leave the circle uncovered");
    gen->add_flag("--require-connected", require_connected, "Reject disconnected intersection graphs");
    gen->add_option("-o,--output", out, "Output file (default stdout)");

    auto * graph = app.add_subcommand("graph", "Print the intersection graph");
    graph->add_option("file", file)->required()->check(CLI::ExistingFile);

    auto * cover = app.add_subcommand("cover", "Print the minimum cover and its ΔK regions");
    cover->add_option("file", file)->required()->check(CLI::ExistingFile);

    auto * longest = app.add_subcommand("longest", "Longest path length, or all longest paths");
    longest->add_option("file", file)->required()->check(CLI::ExistingFile);
    longest->add_flag("--enumerate", enumerate, "List every longest path");
    longest->add_option("--cap", cap, "Maximum number of listed paths");

    auto * canon = app.add_subcommand("canonicalize", "Reorder a longest chain, printing every swap");
    canon->add_option("file", file)->required()->check(CLI::ExistingFile);
    canon->add_option("--chain", chain, "Comma-separated arc indices (default: first chain line in the file)");
    canon->add_flag("--paranoid", paranoid, "Check every proof-step assertion");

    auto * verify = app.add_subcommand("verify", "Run every check on one instance");
    verify->add_option("file", file)->required()->check(CLI::ExistingFile);
    verify->add_flag("--paranoid", paranoid, "Check every proof-step assertion and tied trace");
    verify->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));

    auto * hunt_cmd = app.add_subcommand("hunt", "Verify many seeded random instances");
    hunt_cmd->add_option("--trials", hp.trials)->required();
    hunt_cmd->add_option("--max-arcs", hp.max_arcs)->required();
    hunt_cmd->add_option("--min-arcs", hp.min_arcs);
    hunt_cmd->add_option("--ticks-factor", hp.ticks_factor, "Ticks per arc");
    hunt_cmd->add_option("--seed", hp.seed);
    hunt_cmd->add_option("--max-span", hp.max_span, "Draw arcs of at most this many ticks (0: pair endpoints)");
    hunt_cmd->add_option("--long-arcs", hp.long_arcs, "Arcs exempt from --max-span");
    hunt_cmd->add_flag("--paranoid", hp.paranoid);
    hunt_cmd->add_flag("--mixed", mixed, "Also draw families that do not cover the circle");
    hunt_cmd->add_option("--out", out_dir, "Directory for failure payloads");
    hunt_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "machine"}));

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp & e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError & e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*gen)
            return cmd_gen(arcs, ticks ? ticks : 4 * static_cast<std::int64_t>(arcs), seed, require_cover,
                           require_connected, out);
        if (*graph)
            return cmd_graph(file);
        if (*cover)
            return cmd_cover(file);
        if (*longest)
            return cmd_longest(file, enumerate, cap);
        if (*canon)
            return cmd_canonicalize(file, chain, paranoid);
        if (*verify)
            return cmd_verify(file, paranoid, format);
        if (*hunt_cmd) {
            hp.require_cover = !mixed;
            if (!out_dir.empty())
                hp.out_dir = out_dir;
            return cmd_hunt(hp, format);
        }
    }
    catch (const Error & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
