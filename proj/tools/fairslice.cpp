// Command-line surface for the exact fair-division engine.  Everything on
// stdout is deterministic JSON; wall-clock timing goes to stderr only.
//
// Exit codes: 0 = found/verified, 1 = proven NONE / verification fail,
// 2 = usage or runtime error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairslice/bridges.hpp"
#include "fairslice/exact_solver.hpp"
#include "fairslice/gadgets.hpp"
#include "fairslice/io.hpp"
#include "fairslice/midpoint_protocol.hpp"
#include "fairslice/moving_knife.hpp"

using namespace fairslice;
using nlohmann::ordered_json;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNone = 1;
constexpr int kExitError = 2;

std::string digest(const std::string& text) {
    // FNV-1a, enough to tie a report to its input file.
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", h);
    return buf;
}

ordered_json rat_json(const Rat& q) {
    return {{"exact", rat_str(q)}, {"decimal", rat_double(q)}};
}

ordered_json report_base(const std::string& command, const std::string& input_text) {
    ordered_json j;
    j["command"] = command;
    j["instance_digest"] = digest(input_text);
    return j;
}

ordered_json alloc_json(const ContiguousAllocation& a) {
    return ordered_json::parse(cake_allocation_to_json(a));
}

ordered_json alloc_json(const DiscreteAllocation& a) {
    return ordered_json::parse(discrete_allocation_to_json(a));
}

void emit(const ordered_json& report) { std::cout << report.dump(2) << "\n"; }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

EFConstraint parse_constraint(const std::string& text) {
    EFConstraint c;
    if (text.empty() || text == "none") return c;
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto agents = [&] {
        for (const auto& t : split(rest, ',')) {
            int v = std::stoi(t);
            if (v < 1) throw CLI::ValidationError("constraint agents are 1-based");
            c.agents.push_back(v - 1);
        }
    };
    auto positions = [&] {
        for (const auto& t : split(rest, ',')) c.positions.push_back(rat_parse(t));
    };
    using K = EFConstraint::Kind;
    if (head == "leftmost") {
        c.kind = K::AGENT_LEFTMOST;
        agents();
    } else if (head == "prefix") {
        c.kind = K::PREFIX_ORDER;
        agents();
    } else if (head == "order") {
        c.kind = K::FULL_ORDER;
        agents();
    } else if (head == "cut") {
        c.kind = K::CUT_AT;
        positions();
    } else if (head == "leftmost-cut") {
        c.kind = K::LEFTMOST_CUT_AT;
        positions();
    } else if (head == "cuts") {
        c.kind = K::CUTS_AT;
        positions();
    } else if (head == "all-cuts") {
        c.kind = K::ALL_CUTS;
        positions();
    } else {
        throw CLI::ValidationError("unknown constraint: " + head);
    }
    return c;
}

FairnessCriteria parse_criteria(const std::string& text) {
    FairnessCriteria c;
    for (const auto& t : split(text, ',')) {
        if (t == "ef") c.ef = true;
        else if (t == "prop") c.prop = true;
        else if (t == "eq") c.eq = true;
        else if (t == "positive") c.positive_value = true;
        else if (t.rfind("eps:", 0) == 0) c.eps_ef = rat_parse(t.substr(4));
        else throw CLI::ValidationError("unknown criterion: " + t);
    }
    return c;
}

void maybe_write(const std::string& path, const std::string& text) {
    if (!path.empty()) write_file(path, text);
}

int finish_with_allocation(ordered_json report, const CakeInstance& inst,
                           const ContiguousAllocation& alloc, const std::string& out) {
    auto rep = envy_report(inst, alloc);
    report["result"] = alloc_json(alloc);
    report["max_envy"] = rat_json(rep.max_envy);
    maybe_write(out, cake_allocation_to_json(alloc));
    emit(report);
    return kExitFound;
}

int cmd_solve(const std::string& alg, const std::string& in_path, const std::string& out,
              const std::string& eps_text) {
    std::string text = read_file(in_path);
    auto inst = cake_instance_from_json(text);
    auto report = report_base("solve --alg " + alg, text);
    if (alg == "alg1") return finish_with_allocation(report, inst, run_alg1(inst), out);
    if (alg == "alg2") {
        auto [alloc, tags] = run_alg2(inst);
        ordered_json tj = ordered_json::array();
        for (const auto& t : tags) tj.push_back(static_cast<int>(t.kind) + 1);
        report["case_tags"] = tj;
        return finish_with_allocation(report, inst, alloc, out);
    }
    if (alg == "grid") {
        if (eps_text.empty()) throw CLI::ValidationError("--alg grid needs --eps");
        auto alloc = grid_eps_ef(inst, rat_parse(eps_text));
        if (!alloc) {
            report["result"] = "NONE";
            emit(report);
            return kExitNone;
        }
        return finish_with_allocation(report, inst, *alloc, out);
    }
    if (alg == "exact") {
        auto alloc = decide_ef(inst, EFConstraint{});
        if (!alloc) {
            report["result"] = "NONE";
            emit(report);
            return kExitNone;
        }
        return finish_with_allocation(report, inst, *alloc, out);
    }
    throw CLI::ValidationError("unknown algorithm: " + alg);
}

int cmd_decide(const std::string& in_path, const std::string& constraint_text,
               const std::string& out) {
    std::string text = read_file(in_path);
    auto inst = cake_instance_from_json(text);
    auto report = report_base("decide --constraint " +
                                  (constraint_text.empty() ? "none" : constraint_text),
                              text);
    auto alloc = decide_ef(inst, parse_constraint(constraint_text));
    if (!alloc) {
        report["result"] = "NONE";
        emit(report);
        return kExitNone;
    }
    return finish_with_allocation(report, inst, *alloc, out);
}

int cmd_exactify(const std::string& in_path, const std::string& alloc_path,
                 const std::string& out) {
    std::string text = read_file(in_path);
    auto inst = cake_instance_from_json(text);
    auto approx = cake_allocation_from_json(read_file(alloc_path));
    auto report = report_base("exactify", text);
    auto exact = exactify(inst, approx);
    if (!exact) {
        report["result"] = "NONE";
        emit(report);
        return kExitNone;
    }
    return finish_with_allocation(report, inst, *exact, out);
}

int cmd_verify(const std::string& in_path, const std::string& alloc_path,
               const std::string& eps_text, const std::string& criteria_text) {
    std::string text = read_file(in_path);
    auto j = nlohmann::json::parse(text);
    bool discrete = j.value("type", "cake") == "items";
    auto report = report_base("verify", text);
    bool pass;
    if (discrete) {
        auto inst = discrete_instance_from_json(text);
        auto alloc = discrete_allocation_from_json(read_file(alloc_path));
        auto criteria = parse_criteria(criteria_text.empty() ? "ef" : criteria_text);
        auto res = check_discrete(inst, alloc, criteria);
        report["result"] = {{"ef", res.ef},
                            {"prop", res.prop},
                            {"eq", res.eq},
                            {"positive_value", res.positive_value},
                            {"eps_ef", res.eps_ef},
                            {"violations", res.violations}};
        pass = res.ok();
    } else {
        auto inst = cake_instance_from_json(text);
        auto alloc = cake_allocation_from_json(read_file(alloc_path));
        Rat eps = eps_text.empty() ? Rat(0) : rat_parse(eps_text);
        auto rep = envy_report(inst, alloc);
        pass = rep.max_envy <= eps;
        ordered_json entries = ordered_json::array();
        for (size_t i = 0; i < rep.matrix.size(); ++i)
            for (size_t k = 0; k < rep.matrix[i].size(); ++k)
                if (rep.matrix[i][k] > eps)
                    entries.push_back({{"agent", i + 1}, {"piece_of", k + 1},
                                       {"envy", rat_str(rep.matrix[i][k])}});
        report["max_envy"] = rat_json(rep.max_envy);
        report["eps"] = rat_str(eps);
        report["violations"] = entries;
        report["result"] = pass ? "pass" : "fail";
    }
    emit(report);
    return pass ? kExitFound : kExitNone;
}

int cmd_discrete(const std::string& mode, const std::string& in_path,
                 const std::string& criteria_text, const std::string& out) {
    std::string text = read_file(in_path);
    auto inst = discrete_instance_from_json(text);
    auto report = report_base("discrete --mode " + mode, text);
    report["stats"] = {{"agents", inst.agents()}, {"items", inst.items}};
    std::optional<DiscreteAllocation> alloc;
    if (mode == "brute") {
        alloc = brute_force_discrete(inst, parse_criteria(criteria_text));
    } else if (mode == "disjoint-ef") {
        alloc = solve_disjoint_ef(inst);
    } else {
        throw CLI::ValidationError("unknown mode: " + mode);
    }
    if (!alloc) {
        report["result"] = "NONE";
        emit(report);
        return kExitNone;
    }
    report["result"] = alloc_json(*alloc);
    maybe_write(out, discrete_allocation_to_json(*alloc));
    emit(report);
    return kExitFound;
}

int cmd_bridge(const std::string& dir, const std::string& in_path, const std::string& eps_text,
               const std::string& out) {
    std::string text = read_file(in_path);
    auto report = report_base("bridge " + dir, text);
    if (dir == "c2d") {
        if (eps_text.empty()) throw CLI::ValidationError("bridge c2d needs --eps");
        auto inst = cake_instance_from_json(text);
        auto [items, map] = continuous_to_discrete(inst, rat_parse(eps_text));
        report["stats"] = {{"delta", rat_str(map.delta)},
                           {"retained_per_agent", map.retained_per_agent},
                           {"items", items.items}};
        report["result"] = ordered_json::parse(discrete_instance_to_json(items));
        maybe_write(out, discrete_instance_to_json(items));
    } else if (dir == "d2c") {
        auto inst = discrete_instance_from_json(text);
        auto [cake, eps, map] = discrete_to_continuous(inst);
        report["stats"] = {{"eps", rat_str(eps)}, {"regions", map.m}};
        report["result"] = ordered_json::parse(cake_instance_to_json(cake));
        maybe_write(out, cake_instance_to_json(cake));
    } else {
        throw CLI::ValidationError("unknown direction: " + dir);
    }
    emit(report);
    return kExitFound;
}

Formula3SAT load_formula(const std::string& cnf_path) {
    std::ifstream in(cnf_path);
    if (!in) throw InvalidInstanceError("cannot open " + cnf_path);
    return formula_from_dimacs(in);
}

std::vector<bool> parse_assignment(const std::string& bits) {
    std::vector<bool> a;
    for (char c : bits) {
        if (c != '0' && c != '1') throw CLI::ValidationError("assignment must be 0/1 bits");
        a.push_back(c == '1');
    }
    return a;
}

std::vector<std::array<int, 3>> parse_parts(const std::string& text) {
    std::vector<std::array<int, 3>> parts;
    for (const auto& triple : split(text, ';')) {
        auto xs = split(triple, ',');
        if (xs.size() != 3) throw CLI::ValidationError("each part needs 3 indices");
        std::array<int, 3> p{};
        for (int t = 0; t < 3; ++t) {
            p[t] = std::stoi(xs[t]) - 1;  // 1-based on the wire
            if (p[t] < 0) throw CLI::ValidationError("part indices are 1-based");
        }
        parts.push_back(p);
    }
    return parts;
}

int cmd_gen(const std::string& kind, const std::string& cnf_path, const std::string& x_text,
            const std::string& witness, const std::string& out, const std::string& witness_out) {
    auto report = report_base("gen --kind " + kind, kind + "|" + cnf_path + "|" + x_text);
    auto cert_json = [](const GadgetCertificate& cert) {
        ordered_json j;
        j["kind"] = cert.kind;
        j["agents"] = cert.agent_names.size();
        j["epsilon"] = rat_str(cert.epsilon);
        j["scale"] = rat_str(cert.scale);
        return j;
    };
    if (kind == "cake-sat" || kind == "items-sat" || kind == "items-epsef") {
        if (cnf_path.empty()) throw CLI::ValidationError("SAT kinds need --cnf");
        auto f = load_formula(cnf_path);
        if (kind == "cake-sat") {
            auto [inst, cert] = gen_cake_from_3sat(f);
            report["certificate"] = cert_json(cert);
            maybe_write(out, cake_instance_to_json(inst));
            if (!witness.empty()) {
                auto alloc = witness_cake(f, parse_assignment(witness));
                maybe_write(witness_out, cake_allocation_to_json(alloc));
                report["witness"] = alloc_json(alloc);
            }
        } else {
            auto [inst, cert] = kind == "items-sat" ? gen_items_combined(f) : gen_items_epsef(f);
            report["certificate"] = cert_json(cert);
            maybe_write(out, discrete_instance_to_json(inst));
            if (!witness.empty()) {
                auto a = parse_assignment(witness);
                auto alloc = kind == "items-sat" ? witness_items_combined(f, a)
                                                 : witness_items_epsef(f, a);
                maybe_write(witness_out, discrete_allocation_to_json(alloc));
                report["witness"] = alloc_json(alloc);
            }
        }
    } else if (kind == "items-prop3p" || kind == "items-eq3p") {
        if (x_text.empty()) throw CLI::ValidationError("3-PARTITION kinds need --x");
        ThreePartitionInput in;
        for (const auto& t : split(x_text, ',')) in.x.push_back(std::stol(t));
        auto [inst, cert] = kind == "items-prop3p" ? gen_items_prop_3part(in)
                                                   : gen_items_equit_3part(in);
        report["certificate"] = cert_json(cert);
        maybe_write(out, discrete_instance_to_json(inst));
        if (!witness.empty()) {
            auto parts = parse_parts(witness);
            auto alloc = kind == "items-prop3p" ? witness_items_prop_3part(in, parts)
                                                : witness_items_equit_3part(in, parts);
            maybe_write(witness_out, discrete_allocation_to_json(alloc));
            report["witness"] = alloc_json(alloc);
        }
    } else {
        throw CLI::ValidationError("unknown kind: " + kind);
    }
    emit(report);
    return kExitFound;
}

int cmd_pipeline(const std::string& name, const std::string& in_path, const std::string& outdir,
                 const std::string& eps_text) {
    std::string text = read_file(in_path);
    auto report = report_base("pipeline " + name, text);
    auto stage = [&](const std::string& file, const std::string& content) {
        write_file(outdir + "/" + file, content);
    };
    if (name == "disjoint-ef") {
        auto inst = discrete_instance_from_json(text);
        auto [cake, eps, map] = discrete_to_continuous(inst);
        stage("01-embedded-cake.json", cake_instance_to_json(cake));
        auto grid = grid_eps_ef(cake, eps);
        if (!grid) throw InvalidInstanceError("stage grid_eps_ef: no allocation found");
        stage("02-grid-allocation.json", cake_allocation_to_json(*grid));
        auto rounded = round_i_chains(cake, *grid, map);
        stage("03-discrete-allocation.json", discrete_allocation_to_json(rounded));
        FairnessCriteria ef;
        ef.ef = true;
        report["result"] = alloc_json(rounded);
        report["verified_ef"] = check_discrete(inst, rounded, ef).ok();
        emit(report);
        return kExitFound;
    }
    if (name == "exactify") {
        auto inst = cake_instance_from_json(text);
        unsigned long M = 3;
        int k = 0;
        for (const auto& v : inst.valuations) k = std::max(k, (int)v.blocks().size());
        Rat mesh = precision_bound({M, k, inst.agents(), true});
        auto approx = grid_eps_ef(inst, mesh);
        if (!approx) throw InvalidInstanceError("stage grid_eps_ef: no allocation found");
        stage("01-approx.json", cake_allocation_to_json(*approx));
        auto exact = exactify(inst, *approx);
        if (!exact) throw InvalidInstanceError("stage exactify: residual envy positive");
        stage("02-exact.json", cake_allocation_to_json(*exact));
        return finish_with_allocation(report, inst, *exact, "");
    }
    if (name == "c2d-roundtrip") {
        auto inst = cake_instance_from_json(text);
        Rat eps = eps_text.empty() ? rat(1, 4) : rat_parse(eps_text);
        auto [items, map] = continuous_to_discrete(inst, eps);
        stage("01-items.json", discrete_instance_to_json(items));
        FairnessCriteria ef;
        ef.ef = true;
        auto dalloc = brute_force_discrete(items, ef);
        if (!dalloc) throw InvalidInstanceError("stage brute_force_discrete: no EF allocation");
        stage("02-discrete-allocation.json", discrete_allocation_to_json(*dalloc));
        auto back = discrete_solution_to_continuous(map, *dalloc);
        stage("03-cake-allocation.json", cake_allocation_to_json(back));
        return finish_with_allocation(report, inst, back, "");
    }
    throw CLI::ValidationError("unknown pipeline: " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact contiguous fair-division toolkit"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "accepted for compatibility; runs are sequential");

    std::string in_path, out, alloc_path, eps, alg, constraint, criteria, mode, dir, kind,
        cnf, x_text, witness, witness_out, outdir, pipeline;

    auto* solve = app.add_subcommand("solve", "run a cake-cutting algorithm");
    solve->add_option("-i,--instance", in_path)->required();
    solve->add_option("--alg", alg, "alg1|alg2|grid|exact")->required();
    solve->add_option("--eps", eps);
    solve->add_option("-o,--output", out);

    auto* decide = app.add_subcommand("decide", "exact envy-free decision with side constraints");
    decide->add_option("-i,--instance", in_path)->required();
    decide->add_option("--constraint", constraint,
                       "none|leftmost:A|prefix:A,..|order:A,..|cut:P|leftmost-cut:P|"
                       "cuts:P,..|all-cuts:P,..");
    decide->add_option("-o,--output", out);

    auto* exact = app.add_subcommand("exactify", "snap a near-EF allocation to exact EF");
    exact->add_option("-i,--instance", in_path)->required();
    exact->add_option("-a,--allocation", alloc_path)->required();
    exact->add_option("-o,--output", out);

    auto* verify = app.add_subcommand("verify", "check an allocation against an instance");
    verify->add_option("-i,--instance", in_path)->required();
    verify->add_option("-a,--allocation", alloc_path)->required();
    verify->add_option("--eps", eps);
    verify->add_option("--criteria", criteria, "ef,prop,eq,positive,eps:P (item instances)");

    auto* discrete = app.add_subcommand("discrete", "solvers for item instances");
    discrete->add_option("-i,--instance", in_path)->required();
    discrete->add_option("--mode", mode, "brute|disjoint-ef")->required();
    discrete->add_option("--criteria", criteria);
    discrete->add_option("-o,--output", out);

    auto* bridge = app.add_subcommand("bridge", "cake <-> items translations");
    bridge->add_option("direction", dir, "c2d|d2c")->required();
    bridge->add_option("-i,--instance", in_path)->required();
    bridge->add_option("--eps", eps);
    bridge->add_option("-o,--output", out);

    auto* gen = app.add_subcommand("gen", "hardness-gadget generators");
    gen->add_option("--kind", kind, "cake-sat|items-sat|items-epsef|items-prop3p|items-eq3p")
        ->required();
    gen->add_option("--cnf", cnf, "DIMACS CNF file (SAT kinds)");
    gen->add_option("--x", x_text, "comma-separated 3-PARTITION input");
    gen->add_option("--witness", witness, "satisfying assignment bits / 1-based part triples");
    gen->add_option("-o,--output", out);
    gen->add_option("--witness-out", witness_out);

    auto* pipe = app.add_subcommand("pipeline", "canned multi-stage runs");
    pipe->add_option("name", pipeline, "disjoint-ef|exactify|c2d-roundtrip")->required();
    pipe->add_option("-i,--instance", in_path)->required();
    pipe->add_option("--outdir", outdir)->required();
    pipe->add_option("--eps", eps);

    CLI11_PARSE(app, argc, argv);

    auto start = std::chrono::steady_clock::now();
    int code = kExitError;
    try {
        if (*solve) code = cmd_solve(alg, in_path, out, eps);
        else if (*decide) code = cmd_decide(in_path, constraint, out);
        else if (*exact) code = cmd_exactify(in_path, alloc_path, out);
        else if (*verify) code = cmd_verify(in_path, alloc_path, eps, criteria);
        else if (*discrete) code = cmd_discrete(mode, in_path, criteria, out);
        else if (*bridge) code = cmd_bridge(dir, in_path, eps, out);
        else if (*gen) code = cmd_gen(kind, cnf, x_text, witness, out, witness_out);
        else if (*pipe) code = cmd_pipeline(pipeline, in_path, outdir, eps);
    } catch (const ResourceLimitError& e) {
        emit({{"error", e.what()}, {"code", "resource-limit"}});
    } catch (const CLI::ValidationError& e) {
        emit({{"error", e.what()}, {"code", "usage"}});
    } catch (const std::exception& e) {
        emit({{"error", e.what()}, {"code", "runtime"}});
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::fprintf(stderr, "wall_time_ms=%lld\n", static_cast<long long>(ms));
    return code;
}
