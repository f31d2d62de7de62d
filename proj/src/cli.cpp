#include "phyloinv/cli.hpp"

#include "phyloinv/json_io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace phyloinv {

namespace {

struct Config {
    std::string group;
    std::string tree;
    std::string mode = "direct-cyclic";
    std::string output = "json";
    std::size_t flow_cap = kDefaultFlowCap;
    std::uint64_t seed = 0;
    bool has_seed = false;
};

Tree read_tree(const std::string& arg) {
    if (!arg.empty() && arg.front() == '@') {
        std::ifstream in(arg.substr(1));
        if (!in)
            throw InputError("cannot read tree file '" + arg.substr(1) + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
            text.pop_back();
        return parse_newick(text);
    }
    return parse_newick(arg);
}

void add_common(CLI::App& cmd, Config& cfg, bool generation) {
    cmd.add_option("--group", cfg.group, "Finite abelian group, e.g. Z2xZ3")->required();
    cmd.add_option("--tree", cfg.tree, "Newick tree with leaves 1..l, or @file")->required();
    cmd.add_option("--flow-cap", cfg.flow_cap, "Refuse instances with more flows than this")
        ->check(CLI::PositiveNumber);
    if (!generation)
        return;
    cmd.add_option("--mode", cfg.mode, "Tripod basis construction")
        ->check(CLI::IsMember({"direct-cyclic", "factored"}));
    cmd.add_option("--seed", cfg.seed, "Randomize the decomposition order with this seed");
}

GenerateOptions generate_options(const Config& cfg, const CLI::App& cmd) {
    GenerateOptions opts;
    opts.mode = parse_tripod_mode(cfg.mode);
    opts.flow_cap = cfg.flow_cap;
    if (cmd.count("--seed"))
        opts.seed = cfg.seed;
    return opts;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Binomial phylogenetic invariants for group-based models", "phyloinv"};
    app.require_subcommand(1);
    Config cfg;

    CLI::App* gen = app.add_subcommand("generate", "Print a complete-intersection invariant set");
    add_common(*gen, cfg, true);
    gen->add_option("--output", cfg.output, "Output format")->check(CLI::IsMember({"json", "algebra-text"}));

    CLI::App* ver = app.add_subcommand("verify", "Generate, then certify the set against the lattice oracle");
    add_common(*ver, cfg, true);

    CLI::App* info = app.add_subcommand("lattice-info", "Report dim M0~ and the index (M0 : M0~)");
    add_common(*info, cfg, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "error: " << msg << '\n';
        return kExitInputError;
    }

    try {
        const GroupSpec group = GroupSpec::parse(cfg.group);
        const Tree tree = read_tree(cfg.tree);
        if (gen->parsed()) {
            const GenerateResult r = generate(tree, group, generate_options(cfg, *gen));
            if (cfg.output == "algebra-text")
                out << to_algebra_text(r.set);
            else
                out << to_json(r.set).dump(2) << '\n';
            return kExitOk;
        }
        if (ver->parsed()) {
            const GenerateResult r = generate(tree, group, generate_options(cfg, *ver));
            VerifyOptions vo;
            vo.flow_cap = cfg.flow_cap;
            const VerificationReport report = verify_complete_intersection(r.set, vo);
            Json j = to_json(report);
            j["group"] = group.to_string();
            j["tree"] = to_json(r.set.tree);
            Json joins = Json::array();
            for (const JoinCount& c : r.joins)
                joins.push_back(to_json(c));
            j["joins"] = std::move(joins);
            out << j.dump(2) << '\n';
            return report.pass() ? kExitOk : kExitVerificationFailed;
        }
        const RootedTree rooted = root_default(tree);
        Json j = to_json(lattice_report(rooted, group, cfg.flow_cap));
        j["group"] = group.to_string();
        j["tree"] = to_json(rooted);
        out << j.dump(2) << '\n';
        return kExitOk;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << '\n';
        return kExitResourceLimit;
    }
}

} // namespace phyloinv
