#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppv/closure.hpp"
#include "ppv/errors.hpp"
#include "ppv/fsa.hpp"
#include "ppv/gen.hpp"
#include "ppv/parse.hpp"
#include "ppv/print.hpp"
#include "ppv/protocol.hpp"
#include "ppv/sim.hpp"
#include "ppv/smallstep.hpp"
#include "ppv/tape.hpp"

namespace {

using nlohmann::json;

// secure / accept-free outcomes exit 0 so scripts can gate on security;
// 2 flags an insecure protocol (or an accepting run), 1 an input error,
// 3 a sim/closure disagreement, which would be a bug in this tool
constexpr int exit_secure = 0;
constexpr int exit_error = 1;
constexpr int exit_insecure = 2;
constexpr int exit_disagree = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ppv::Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ppv::Error("cannot write " + path);
    out << text;
}

// composition-order rendering of one reduction state, the about-to-cancel
// pair bracketed: "DZ EZ [DY EY]"
std::string boxed_step(const ppv::ReductionStep& s) {
    const size_t n = s.before.size();
    std::string out;
    for (size_t ci = 0; ci < n; ++ci) {
        size_t ai = n - 1 - ci;
        if (!out.empty()) out += ' ';
        if (ai == s.pos + 1) out += '[';
        out += op_token(s.before[ai]);
        if (ai == s.pos) out += ']';
    }
    return out;
}

void print_reduction(const ppv::Word& w, const ppv::CancelTable& ct) {
    for (const ppv::ReductionStep& s : ppv::reduction_trace(w, ct))
        std::cout << "  " << boxed_step(s) << "\n";
    std::cout << "  epsilon\n";
}

struct VerifyArgs {
    std::string protocol_file, fsa_file, tape_file;
    std::string method = "both";
    bool witness = false;
    bool json_out = false;
};

int cmd_verify(const VerifyArgs& a) {
    ppv::Fsa fsa;
    ppv::Tape tape;
    if (!a.protocol_file.empty()) {
        fsa = ppv::build_fsa(ppv::parse_protocol(slurp(a.protocol_file)));
        tape = ppv::encode_tape(fsa);
    } else if (!a.fsa_file.empty()) {
        fsa = ppv::parse_fsa(slurp(a.fsa_file));
        tape = ppv::encode_tape(fsa);
    } else {
        tape = ppv::parse_tape(slurp(a.tape_file));
        fsa = ppv::decode_tape(tape);
    }

    const ppv::CancelTable ct = ppv::CancelTable::standard();
    std::optional<bool> sim_verdict, closure_verdict;
    ppv::SimStats stats;
    if (a.method == "sim" || a.method == "both") {
        ppv::Verdict v = ppv::simulate(ppv::gen_verifier(ct), tape);
        sim_verdict = v.accepted;
        stats = v.stats;
    }
    if (a.method == "closure" || a.method == "both")
        closure_verdict = ppv::is_insecure(fsa, ct);

    const bool agree = !sim_verdict || !closure_verdict || *sim_verdict == *closure_verdict;
    const bool insecure = sim_verdict ? *sim_verdict : *closure_verdict;

    std::optional<std::vector<ppv::FsaEdge>> path;
    if (a.witness && agree && insecure) {
        int cap = 2 * (int)fsa.nodes.size() * ((int)fsa.edges.size() + 1);
        path = ppv::bounded_path_search(fsa, ct, cap);
    }

    if (a.json_out) {
        json out;
        out["verdict"] = insecure ? "insecure" : "secure";
        out["method"] = a.method;
        if (sim_verdict && closure_verdict) out["agree"] = agree;
        if (sim_verdict)
            out["stats"] = {
                {"configs", stats.configs}, {"steps", stats.steps}, {"summaries", stats.summaries}};
        if (path) {
            json jw;
            json edges = json::array();
            for (const ppv::FsaEdge& e : *path)
                edges.push_back(e.from + " " + op_token(e.op) + " " + e.to);
            jw["path"] = std::move(edges);
            jw["word"] = json::array();
            for (ppv::Op o : path_word(*path)) jw["word"].push_back(op_token(o));
            jw["display"] = ppv::format_word(path_word(*path), true);
            out["witness"] = std::move(jw);
        }
        std::cout << out.dump(2) << "\n";
    } else {
        if (!agree) {
            std::cout << "methods disagree: simulation says "
                      << (*sim_verdict ? "insecure" : "secure") << ", closure says "
                      << (*closure_verdict ? "insecure" : "secure") << "\n";
            return exit_disagree;
        }
        std::cout << (insecure ? "insecure" : "secure") << "\n";
        if (sim_verdict && closure_verdict) std::cout << "methods agree: yes\n";
        if (a.witness && insecure) {
            if (path) {
                ppv::Word w = ppv::path_word(*path);
                std::cout << "attack word: " << ppv::format_word(w, true) << "\n";
                std::cout << "path:";
                for (const ppv::FsaEdge& e : *path)
                    std::cout << " " << e.from << " -" << op_token(e.op) << "-> " << e.to;
                std::cout << "\nreduction:\n";
                print_reduction(w, ct);
            } else {
                std::cerr << "no attack path found within the search bound\n";
            }
        }
    }
    if (!agree) return exit_disagree;
    return insecure ? exit_insecure : exit_secure;
}

struct RunArgs {
    std::string program_file, tape_file;
    bool stats = false;
    bool witness = false;
};

int cmd_run(const RunArgs& a) {
    ppv::Program p = ppv::parse_program(slurp(a.program_file));
    ppv::Tape t = ppv::parse_tape(slurp(a.tape_file));
    ppv::Verdict v = ppv::simulate(p, t, a.witness);
    std::cout << (v.accepted ? "accept" : "reject") << "\n";
    if (a.stats)
        std::cout << "configs=" << v.stats.configs << " steps=" << v.stats.steps
                  << " summaries=" << v.stats.summaries << "\n";
    if (a.witness && v.witness) {
        const ppv::Witness& w = *v.witness;
        std::cout << "witness: " << w.steps.size() << " steps\n";
        if (!w.choice_script.empty()) {
            std::cout << "choices:";
            for (int c : w.choice_script) std::cout << " " << c;
            std::cout << "\n";
        }
        std::cout << "stack trace:";
        for (const ppv::WitnessStep& s : w.steps) {
            if (s.action == ppv::WitnessStep::Action::Push) std::cout << " push " << s.pushed << ";";
            if (s.action == ppv::WitnessStep::Action::Pop) std::cout << " pop;";
        }
        std::cout << "\n";
    }
    return v.accepted ? exit_insecure : exit_secure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ping-pong protocol security verifier and pushdown-program runner"};
    app.require_subcommand(1);

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand(
        "verify", "decide whether a protocol (or labeled graph) is secure");
    auto* in_p = verify->add_option("--protocol", va.protocol_file, "protocol file (alpha1/alpha2)");
    auto* in_f = verify->add_option("--fsa", va.fsa_file, "edge-list file");
    auto* in_t = verify->add_option("--tape", va.tape_file, "tape file");
    in_p->excludes(in_f)->excludes(in_t);
    in_f->excludes(in_t);
    verify->add_option("--method", va.method, "sim, closure, or both")
        ->check(CLI::IsMember({"sim", "closure", "both"}))
        ->capture_default_str();
    verify->add_flag("--witness", va.witness, "print an attack path when insecure");
    verify->add_flag("--json", va.json_out, "machine-readable report");

    RunArgs ra;
    CLI::App* run = app.add_subcommand("run", "run a pushdown program on a tape");
    run->add_option("--program", ra.program_file, "program file")->required();
    run->add_option("--tape", ra.tape_file, "tape file")->required();
    run->add_flag("--stats", ra.stats, "print simulation counters");
    run->add_flag("--witness", ra.witness, "print an accepting run if any");

    std::string cf_protocol, cf_out;
    CLI::App* cfsa = app.add_subcommand("compile-fsa", "protocol file -> edge-list file");
    cfsa->add_option("--protocol", cf_protocol, "protocol file")->required();
    cfsa->add_option("-o,--output", cf_out, "output file (default stdout)");

    std::string et_fsa, et_out;
    CLI::App* etape = app.add_subcommand("encode-tape", "edge-list file -> tape file");
    etape->add_option("--fsa", et_fsa, "edge-list file")->required();
    etape->add_option("-o,--output", et_out, "output file (default stdout)");

    std::string ep_kind, ep_identities, ep_out;
    CLI::App* eprog = app.add_subcommand("emit-program", "write a generated pushdown program");
    eprog->add_option("--kind", ep_kind, "pathfinder or verifier")
        ->required()
        ->check(CLI::IsMember({"pathfinder", "verifier"}));
    eprog->add_option("--identities", ep_identities,
                      "cancellation pairs file (verifier only), one 'EARLIER LATER' per line");
    eprog->add_option("-o,--output", ep_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
        if (verify->parsed()) {
            if (va.protocol_file.empty() && va.fsa_file.empty() && va.tape_file.empty())
                throw ppv::Error("verify needs one of --protocol, --fsa, --tape");
            return cmd_verify(va);
        }
        if (run->parsed()) return cmd_run(ra);
        if (cfsa->parsed()) {
            spill(cf_out, ppv::format_fsa(ppv::build_fsa(ppv::parse_protocol(slurp(cf_protocol)))));
            return exit_secure;
        }
        if (etape->parsed()) {
            spill(et_out, ppv::format_tape(ppv::encode_tape(ppv::parse_fsa(slurp(et_fsa)))));
            return exit_secure;
        }
        if (eprog->parsed()) {
            if (ep_kind == "pathfinder") {
                if (!ep_identities.empty())
                    throw ppv::Error("--identities applies to the verifier only");
                spill(ep_out, ppv::pretty_print(ppv::gen_pathfinder()));
            } else {
                ppv::CancelTable ct = ep_identities.empty()
                                          ? ppv::CancelTable::standard()
                                          : ppv::parse_cancel_table(slurp(ep_identities));
                spill(ep_out, ppv::pretty_print(ppv::gen_verifier(ct)));
            }
            return exit_secure;
        }
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_error;
    } catch (const ppv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
