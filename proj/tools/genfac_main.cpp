#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "genfac/decide.hpp"
#include "genfac/decomp.hpp"
#include "genfac/errors.hpp"
#include "genfac/gadgets.hpp"
#include "genfac/io.hpp"
#include "genfac/oracle.hpp"
#include "genfac/reduce.hpp"
#include "genfac/solver_cutw.hpp"
#include "genfac/solver_tw.hpp"

using nlohmann::json;
namespace gf = genfac;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

uint64_t mem_budget_default() {
    if (const char* env = std::getenv("GENFAC_MEM_BUDGET")) {
        try {
            return std::stoull(env);
        } catch (...) {
            throw gf::parse_error("GENFAC_MEM_BUDGET is not an integer");
        }
    }
    return gf::kDefaultMemBudget;
}

void print_profile(const gf::Instance& inst, const gf::SizeProfile& p, const std::string& mode,
                   int width, double wall_ms, const std::string& format) {
    if (format == "tsv") {
        for (size_t s = 0; s < p.counts.size(); ++s)
            std::cout << s << "\t" << p.counts[s].to_string() << "\n";
        return;
    }
    auto s = gf::profile_summary(p);
    json j;
    j["n"] = inst.graph.num_vertices();
    j["m"] = inst.graph.num_edges();
    json counts = json::array();
    for (const auto& c : p.counts) counts.push_back(c.to_string());
    j["counts"] = counts;
    j["decide"] = s.decide;
    j["min"] = s.min_size ? json(*s.min_size) : json(nullptr);
    j["max"] = s.max_size ? json(*s.max_size) : json(nullptr);
    j["total"] = s.total.to_string();
    j["mode"] = mode;
    j["width"] = width;
    j["wall_ms"] = wall_ms;
    std::cout << j.dump(2) << "\n";
}

gf::DegreeList parse_b_flag(const std::string& s) {
    std::vector<int> vals;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (!cur.empty()) vals.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return gf::DegreeList(vals);
}

gf::Relation parse_rel_flag(int arity, const std::string& masks) {
    std::vector<uint32_t> acc;
    std::string cur;
    for (char c : masks + ",") {
        if (c == ',') {
            if (!cur.empty()) acc.push_back(static_cast<uint32_t>(std::stoul(cur, nullptr, 16)));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return gf::Relation(arity, std::move(acc));
}

struct Flags {
    std::string instance_path, td_path, layout_path;
    std::string mode = "fast";
    std::string format = "json";
    std::string method = "tw";
    int oracle_budget = 25;
    int cut_guard = 25;
    int workers = 1;
    std::string out_path, b_flag, rel_masks, gadget_type, gadget_path, cnf_path;
    std::string bfactor_out, layout_out, bfactor_layout_out, td_out;
    int rel_arity = 0, k = 0, beta = 3, hw_weight = -1, paired_l = -1;
    bool raw_bfr = false, eq_target = false;
    std::vector<std::string> bench_paths;
};

gf::SizeProfile run_tw(const Flags& f, const gf::Instance& inst, int& width_out) {
    gf::TreeDecomposition td = f.td_path.empty() ? gf::heuristic_td(inst.graph)
                                                 : gf::parse_td(gf::read_file(f.td_path));
    gf::validate_td(inst.graph, td);
    auto nd = gf::make_nice(inst.graph, td);
    width_out = nd.width();
    auto mode = f.mode == "naive" ? gf::JoinMode::Naive : gf::JoinMode::Fast;
    return gf::count_tw(inst, nd, mode, mem_budget_default());
}

gf::SizeProfile run_cutw(const Flags& f, const gf::Instance& inst, int& width_out) {
    gf::LinearLayout l = f.layout_path.empty() ? gf::heuristic_layout(inst.graph)
                                               : gf::parse_layout(gf::read_file(f.layout_path));
    width_out = gf::cutwidth_of_layout(inst.graph, l);
    auto mode = f.mode == "naive" ? gf::StepMode::Naive : gf::StepMode::Fast;
    return gf::count_cutw(inst, l, mode, f.cut_guard);
}

void cmd_gadget_build(const Flags& f) {
    gf::DegreeList b = parse_b_flag(f.b_flag);
    std::optional<int> paired;
    if (f.paired_l >= 0) paired = f.paired_l;
    gf::Gadget g;
    if (f.gadget_type == "hw22") g = gf::realize_hw22(b);
    else if (f.gadget_type == "eq") g = gf::realize_eq(b, f.k);
    else if (f.gadget_type == "hweq1") g = gf::realize_hw_eq1(b, f.k, paired);
    else if (f.gadget_type == "even-rel")
        g = gf::realize_even_relation(b, parse_rel_flag(f.rel_arity, f.rel_masks));
    else if (f.gadget_type == "hw22-penalized") g = gf::realize_hw22_penalized(b, f.beta);
    else if (f.gadget_type == "eq-penalized-internal")
        g = gf::realize_eq_penalized_internal(b, f.beta);
    else throw gf::parse_error("unknown gadget type: " + f.gadget_type);
    gf::write_file(f.out_path, gf::emit_gadget(g));
    json j;
    j["vertices"] = g.graph.num_vertices();
    j["edges"] = g.graph.num_edges();
    j["arity"] = g.arity();
    j["simple"] = g.is_simple();
    if (g.kind == gf::Gadget::Kind::Penalized) {
        j["alpha"] = g.alpha;
        j["beta"] = g.beta;
        j["internal"] = g.internal_count;
    }
    std::cout << j.dump(2) << "\n";
}

void cmd_gadget_verify(const Flags& f, std::chrono::steady_clock::time_point t0) {
    gf::Gadget g = gf::parse_gadget(gf::read_file(f.gadget_path));
    gf::Relation target;
    if (!f.rel_masks.empty())
        target = parse_rel_flag(f.rel_arity ? f.rel_arity : g.arity(), f.rel_masks);
    else if (f.eq_target)
        target = gf::eq_relation(g.arity());
    else if (f.hw_weight >= 0)
        target = gf::hw_eq_relation(g.arity(), f.hw_weight);
    else
        throw gf::parse_error("gadget verify: no target relation given");
    auto rep = g.kind == gf::Gadget::Kind::Penalized ? gf::verify_penalized(g, target)
                                                     : gf::verify_realization(g, target);
    json j;
    j["pass"] = rep.pass;
    j["arity"] = rep.arity;
    j["failures"] = rep.failures;
    j["wall_ms"] = ms_since(t0);
    std::cout << j.dump(2) << "\n";
    if (!rep.pass) throw gf::precondition_error("gadget verification failed");
}

void cmd_reduce(const Flags& f, std::chrono::steady_clock::time_point t0) {
    auto cnf = gf::parse_dimacs(gf::read_file(f.cnf_path));
    auto bfr = gf::cnf_to_bfr(cnf);
    if (!f.raw_bfr) bfr = gf::normalize_parity(bfr);
    if (!f.out_path.empty()) gf::write_file(f.out_path, gf::emit_instance(bfr.inst));
    if (!f.layout_out.empty()) gf::write_file(f.layout_out, gf::emit_layout(bfr.layout));
    json j;
    j["n"] = bfr.inst.graph.num_vertices();
    j["m"] = bfr.inst.graph.num_edges();
    j["cnf_vars"] = bfr.cnf_vars;
    int cw = gf::cutwidth_of_layout(bfr.inst.graph, bfr.layout);
    j["cutwidth"] = cw;
    j["c_impl"] = cw - bfr.cnf_vars;
    j["def41"] = bfr.def_violations().empty();
    if (!f.b_flag.empty()) {
        auto [bf, bl] = gf::bfr_to_bfactor(bfr, parse_b_flag(f.b_flag));
        if (!f.bfactor_out.empty()) gf::write_file(f.bfactor_out, gf::emit_instance(bf));
        if (!f.bfactor_layout_out.empty())
            gf::write_file(f.bfactor_layout_out, gf::emit_layout(bl));
        if (!f.td_out.empty()) {
            auto td = gf::heuristic_td(bf.graph);
            gf::write_file(f.td_out, gf::emit_td(td, bf.graph.num_vertices()));
            j["td_width"] = td.width();
        }
        j["bfactor_n"] = bf.graph.num_vertices();
        j["bfactor_m"] = bf.graph.num_edges();
        j["bfactor_cutwidth"] = gf::cutwidth_of_layout(bf.graph, bl);
    } else if (!f.td_out.empty()) {
        auto td = gf::heuristic_td(bfr.inst.graph);
        gf::write_file(f.td_out, gf::emit_td(td, bfr.inst.graph.num_vertices()));
        j["td_width"] = td.width();
    }
    j["wall_ms"] = ms_since(t0);
    std::cout << j.dump(2) << "\n";
}

void cmd_validate(const Flags& f) {
    auto inst = gf::parse_instance(gf::read_file(f.instance_path));
    json j;
    j["n"] = inst.graph.num_vertices();
    j["m"] = inst.graph.num_edges();
    if (!f.td_path.empty()) {
        auto td = gf::parse_td(gf::read_file(f.td_path));
        j["td_width"] = gf::validate_td(inst.graph, td);
    }
    if (!f.layout_path.empty()) {
        auto l = gf::parse_layout(gf::read_file(f.layout_path));
        j["cutwidth"] = gf::cutwidth_of_layout(inst.graph, l);
    }
    j["valid"] = true;
    std::cout << j.dump(2) << "\n";
}

void cmd_bench(const Flags& f) {
    std::cout << "instance\twidth\tmode\twall_ms\ttable_cells\n";
    for (const auto& path : f.bench_paths) {
        auto inst = gf::parse_instance(gf::read_file(path));
        auto td = f.td_path.empty() ? gf::heuristic_td(inst.graph)
                                    : gf::parse_td(gf::read_file(f.td_path));
        auto nd = gf::make_nice(inst.graph, td);
        auto l = gf::heuristic_layout(inst.graph);
        int m = inst.graph.num_edges();
        int M = inst.max_list_value();
        int cw = gf::cutwidth_of_layout(inst.graph, l);
        uint64_t tw_cells = m + 1;
        for (int i = 0; i <= nd.width(); ++i) tw_cells *= M + 1;
        uint64_t cw_cells = (uint64_t(1) << cw) * (m + 1);
        auto time_it = [&](auto&& fn) {
            auto s0 = std::chrono::steady_clock::now();
            fn();
            return ms_since(s0);
        };
        auto row = [&](const char* mode, int width, double t, uint64_t cells) {
            std::cout << path << "\t" << width << "\t" << mode << "\t" << t << "\t" << cells
                      << "\n";
        };
        row("tw-naive", nd.width(),
            time_it([&] { gf::count_tw(inst, nd, gf::JoinMode::Naive); }), tw_cells);
        row("tw-fast", nd.width(),
            time_it([&] { gf::count_tw(inst, nd, gf::JoinMode::Fast, mem_budget_default()); }),
            tw_cells);
        row("cutw-naive", cw, time_it([&] { gf::count_cutw(inst, l, gf::StepMode::Naive); }),
            cw_cells);
        row("cutw-fast", cw, time_it([&] { gf::count_cutw(inst, l, gf::StepMode::Fast); }),
            cw_cells);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genfac — exact solvers, gadgets and reductions for General Factor"};
    app.require_subcommand(1);
    Flags f;

    auto add_instance = [&](CLI::App* cmd) {
        cmd->add_option("--instance", f.instance_path, "instance file (.gf)")->required();
    };

    CLI::App* ctw = app.add_subcommand("count-tw", "count solutions by treewidth DP");
    add_instance(ctw);
    ctw->add_option("--td", f.td_path, "PACE tree decomposition (heuristic if omitted)");
    ctw->add_option("--mode", f.mode, "naive|fast")->check(CLI::IsMember({"naive", "fast"}));
    ctw->add_option("--format", f.format, "json|tsv")->check(CLI::IsMember({"json", "tsv"}));

    CLI::App* ccw = app.add_subcommand("count-cutw", "count solutions by cutwidth DP");
    add_instance(ccw);
    ccw->add_option("--layout", f.layout_path, "linear layout (heuristic if omitted)");
    ccw->add_option("--mode", f.mode, "naive|fast")->check(CLI::IsMember({"naive", "fast"}));
    ccw->add_option("--guard", f.cut_guard, "cutwidth guard (default 25)");
    ccw->add_option("--format", f.format, "json|tsv")->check(CLI::IsMember({"json", "tsv"}));

    CLI::App* orc = app.add_subcommand("oracle", "brute-force ground truth");
    add_instance(orc);
    orc->add_option("--budget", f.oracle_budget, "edge budget (default 25)");
    orc->add_option("--workers", f.workers, "worker threads");
    orc->add_option("--format", f.format, "json|tsv")->check(CLI::IsMember({"json", "tsv"}));

    CLI::App* dec = app.add_subcommand("decide", "existence via the size profile");
    CLI::App* mn = app.add_subcommand("min", "minimum solution size");
    CLI::App* mx = app.add_subcommand("max", "maximum solution size");
    for (CLI::App* cmd : {dec, mn, mx}) {
        add_instance(cmd);
        cmd->add_option("--method", f.method, "tw|cutw|oracle")
            ->check(CLI::IsMember({"tw", "cutw", "oracle"}));
        cmd->add_option("--td", f.td_path, "tree decomposition for tw");
        cmd->add_option("--layout", f.layout_path, "layout for cutw");
    }

    CLI::App* gad = app.add_subcommand("gadget", "build or verify realizations");
    gad->require_subcommand(1);
    CLI::App* gb = gad->add_subcommand("build", "construct a gadget");
    gb->add_option("--type", f.gadget_type,
                   "hw22|eq|hweq1|even-rel|hw22-penalized|eq-penalized-internal")
        ->required();
    gb->add_option("--b", f.b_flag, "degree set, e.g. 1,4")->required();
    gb->add_option("-k,--k", f.k, "arity parameter for eq/hweq1");
    gb->add_option("--paired-l", f.paired_l, "paired second component (even-only B)");
    gb->add_option("--beta", f.beta, "penalty for penalized gadgets");
    gb->add_option("--rel-arity", f.rel_arity, "relation arity for even-rel");
    gb->add_option("--rel", f.rel_masks, "accepted masks (hex, comma separated)");
    gb->add_option("-o,--out", f.out_path, "output gadget file")->required();

    CLI::App* gv = gad->add_subcommand("verify", "verify a gadget against a relation");
    gv->add_option("--gadget", f.gadget_path, "gadget file")->required();
    gv->add_option("--rel-arity", f.rel_arity, "target relation arity");
    gv->add_option("--rel", f.rel_masks, "target accepted masks (hex)");
    gv->add_flag("--eq", f.eq_target, "target EQ over the gadget arity");
    gv->add_option("--hw-eq", f.hw_weight, "target HW=w over the gadget arity");

    CLI::App* red = app.add_subcommand("reduce", "SAT reduction pipeline");
    red->require_subcommand(1);
    CLI::App* rc = red->add_subcommand("cnf", "CNF -> B-Factor^R grid (-> B-Factor)");
    rc->add_option("--cnf", f.cnf_path, "DIMACS CNF file")->required();
    rc->add_flag("--raw", f.raw_bfr, "skip parity normalization of the emitted grid");
    rc->add_option("-o,--out", f.out_path, "output BFR instance file");
    rc->add_option("--layout-out", f.layout_out, "output layout certificate");
    rc->add_option("--b", f.b_flag, "also build the B-Factor instance for this set");
    rc->add_option("--bfactor-out", f.bfactor_out, "output B-Factor instance file");
    rc->add_option("--bfactor-layout-out", f.bfactor_layout_out, "output extended layout");
    rc->add_option("--td-out", f.td_out, "also emit a heuristic tree decomposition (.td)");

    CLI::App* val = app.add_subcommand("validate", "validate decompositions/layouts");
    add_instance(val);
    val->add_option("--td", f.td_path, "tree decomposition to validate");
    val->add_option("--layout", f.layout_path, "layout to validate");

    CLI::App* ben = app.add_subcommand("bench", "naive vs fast timing table (TSV)");
    ben->add_option("--instance", f.bench_paths, "instance files")->required();
    ben->add_option("--td", f.td_path, "tree decomposition (heuristic if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (*ctw) {
            auto inst = gf::parse_instance(gf::read_file(f.instance_path));
            int width = 0;
            auto p = run_tw(f, inst, width);
            print_profile(inst, p, "tw-" + f.mode, width, ms_since(t0), f.format);
        } else if (*ccw) {
            auto inst = gf::parse_instance(gf::read_file(f.instance_path));
            int width = 0;
            auto p = run_cutw(f, inst, width);
            print_profile(inst, p, "cutw-" + f.mode, width, ms_since(t0), f.format);
        } else if (*orc) {
            auto inst = gf::parse_instance(gf::read_file(f.instance_path));
            auto p = gf::brute_force_profile(inst, f.oracle_budget, f.workers);
            print_profile(inst, p, "oracle", -1, ms_since(t0), f.format);
        } else if (*dec || *mn || *mx) {
            auto inst = gf::parse_instance(gf::read_file(f.instance_path));
            gf::SizeProfile p;
            int width = -1;
            if (f.method == "oracle")
                p = gf::brute_force_profile(inst, f.oracle_budget, f.workers);
            else if (f.method == "cutw")
                p = run_cutw(f, inst, width);
            else
                p = run_tw(f, inst, width);
            print_profile(inst, p, f.method, width, ms_since(t0), "json");
        } else if (*gb) {
            cmd_gadget_build(f);
        } else if (*gv) {
            cmd_gadget_verify(f, t0);
        } else if (*rc) {
            cmd_reduce(f, t0);
        } else if (*val) {
            cmd_validate(f);
        } else if (*ben) {
            cmd_bench(f);
        }
    } catch (const gf::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const gf::precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gf::internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
