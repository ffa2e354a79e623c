#include "fairslice/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fairslice {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Rat jrat(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<long>());
    if (j.is_string()) {
        try {
            return rat_parse(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw InvalidInstanceError(e.what());
        }
    }
    throw InvalidInstanceError("expected rational as \"p/q\" string, got " + j.dump());
}

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InvalidInstanceError("malformed JSON");
    return j;
}

void expect_type(const json& j, const std::string& type) {
    if (j.contains("type") && j.at("type") != type)
        throw InvalidInstanceError("expected \"type\": \"" + type + "\", got " +
                                   j.at("type").dump());
}

std::vector<int> order_from_json(const json& j) {
    std::vector<int> order;
    for (const auto& a : j.at("order")) {
        int v = a.get<int>();
        if (v < 1) throw InvalidInstanceError("agent indices are 1-based");
        order.push_back(v - 1);
    }
    return order;
}

ordered_json order_to_json(const std::vector<int>& order) {
    ordered_json arr = ordered_json::array();
    for (int a : order) arr.push_back(a + 1);
    return arr;
}

}  // namespace

std::string cake_instance_to_json(const CakeInstance& inst) {
    ordered_json j;
    j["type"] = "cake";
    j["agents"] = ordered_json::array();
    for (const auto& v : inst.valuations) {
        ordered_json blocks = ordered_json::array();
        for (const auto& b : v.blocks())
            blocks.push_back({rat_str(b.left), rat_str(b.right), rat_str(b.height)});
        j["agents"].push_back({{"blocks", std::move(blocks)}});
    }
    return j.dump(2) + "\n";
}

CakeInstance cake_instance_from_json(const std::string& text) {
    json j = parse(text);
    expect_type(j, "cake");
    CakeInstance inst;
    for (const auto& agent : j.at("agents")) {
        std::vector<Block> blocks;
        for (const auto& b : agent.at("blocks")) {
            if (!b.is_array() || b.size() != 3)
                throw InvalidInstanceError("block must be [left, right, height]");
            blocks.push_back({jrat(b[0]), jrat(b[1]), jrat(b[2])});
        }
        inst.valuations.emplace_back(std::move(blocks));
    }
    if (inst.agents() == 0) throw InvalidInstanceError("instance has no agents");
    return inst;
}

std::string cake_allocation_to_json(const ContiguousAllocation& alloc) {
    ordered_json j;
    j["type"] = "cake-allocation";
    j["cuts"] = ordered_json::array();
    for (const auto& c : alloc.cuts) j["cuts"].push_back(rat_str(c));
    j["order"] = order_to_json(alloc.order);
    return j.dump(2) + "\n";
}

ContiguousAllocation cake_allocation_from_json(const std::string& text) {
    json j = parse(text);
    expect_type(j, "cake-allocation");
    ContiguousAllocation alloc;
    for (const auto& c : j.at("cuts")) alloc.cuts.push_back(jrat(c));
    alloc.order = order_from_json(j);
    if (!alloc.well_formed()) throw InvalidInstanceError("allocation is not well formed");
    return alloc;
}

std::string discrete_instance_to_json(const DiscreteInstance& inst) {
    ordered_json j;
    j["type"] = "items";
    j["items"] = inst.items;
    j["agents"] = ordered_json::array();
    for (const auto& row : inst.values) {
        ordered_json r = ordered_json::array();
        for (const auto& v : row) r.push_back(rat_str(v));
        j["agents"].push_back(std::move(r));
    }
    return j.dump(2) + "\n";
}

DiscreteInstance discrete_instance_from_json(const std::string& text) {
    json j = parse(text);
    expect_type(j, "items");
    DiscreteInstance inst;
    inst.items = j.at("items").get<int>();
    for (const auto& row : j.at("agents")) {
        std::vector<Rat> r;
        for (const auto& v : row) r.push_back(jrat(v));
        inst.values.push_back(std::move(r));
    }
    inst.validate();
    return inst;
}

std::string discrete_allocation_to_json(const DiscreteAllocation& alloc) {
    ordered_json j;
    j["type"] = "items-allocation";
    j["cuts"] = alloc.cuts;
    j["order"] = order_to_json(alloc.order);
    return j.dump(2) + "\n";
}

DiscreteAllocation discrete_allocation_from_json(const std::string& text) {
    json j = parse(text);
    expect_type(j, "items-allocation");
    DiscreteAllocation alloc;
    for (const auto& c : j.at("cuts")) alloc.cuts.push_back(c.get<int>());
    alloc.order = order_from_json(j);
    return alloc;
}

Formula3SAT formula_from_dimacs(std::istream& in) {
    Formula3SAT f;
    bool seen_header = false;
    int declared_clauses = 0;
    std::vector<int> pending;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c") continue;
        if (tok == "p") {
            std::string fmt;
            if (!(ls >> fmt >> f.variables >> declared_clauses) || fmt != "cnf")
                throw InvalidInstanceError("bad DIMACS header: " + line);
            seen_header = true;
            continue;
        }
        if (!seen_header) throw InvalidInstanceError("DIMACS clause before header");
        ls.clear();
        ls.seekg(0);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (pending.size() != 3)
                    throw InvalidInstanceError("every clause must have exactly 3 literals");
                std::array<Literal, 3> cl;
                for (int t = 0; t < 3; ++t)
                    cl[t] = Literal{std::abs(pending[t]) - 1, pending[t] < 0};
                f.clauses.push_back(cl);
                pending.clear();
            } else {
                pending.push_back(lit);
            }
        }
    }
    if (!pending.empty()) throw InvalidInstanceError("unterminated DIMACS clause");
    if (declared_clauses != f.num_clauses())
        throw InvalidInstanceError("DIMACS header clause count mismatch");
    f.validate();
    return f;
}

std::string formula_to_dimacs(const Formula3SAT& f) {
    std::ostringstream out;
    out << "p cnf " << f.variables << " " << f.num_clauses() << "\n";
    for (const auto& cl : f.clauses) {
        for (const auto& lit : cl) out << (lit.negated ? -(lit.var + 1) : lit.var + 1) << " ";
        out << "0\n";
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInstanceError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInstanceError("cannot write " + path);
    out << text;
}

}  // namespace fairslice
