#include "genfac/io.hpp"

#include <fstream>
#include <sstream>

#include "genfac/errors.hpp"

namespace {
inline void prequire(bool cond, const std::string& msg) {
    if (!cond) throw genfac::parse_error(msg);
}
}  // namespace

namespace genfac {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

int to_int(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw parse_error("");
        return v;
    } catch (...) {
        throw parse_error(std::string("bad ") + what + ": '" + s + "'");
    }
}

std::string hex_of(uint32_t mask) {
    if (mask == 0) return "0";
    std::string out;
    while (mask) {
        out += "0123456789abcdef"[mask & 15];
        mask >>= 4;
    }
    return {out.rbegin(), out.rend()};
}

uint32_t hex_to_mask(const std::string& s) {
    uint32_t v = 0;
    prequire(!s.empty(), "empty hex mask");
    for (char c : s) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else throw parse_error(std::string("bad hex digit '") + c + "'");
        v = v * 16 + d;
    }
    return v;
}

void emit_constraints_and_edges(std::ostringstream& out, const Instance& inst) {
    const MultiGraph& g = inst.graph;
    out << "p genfac " << g.num_vertices() << " " << g.num_edges() << "\n";
    for (int e = 0; e < g.num_edges(); ++e) {
        auto [u, v] = g.edge(e);
        out << "e " << e + 1 << " " << u + 1 << " " << v + 1 << "\n";
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
        out << "v " << v + 1 << " ";
        if (inst.is_rel(v)) {
            const auto& rc = inst.rel_at(v);
            out << "rel " << rc.rel.arity() << " ";
            const auto& acc = rc.rel.accepted();
            for (size_t i = 0; i < acc.size(); ++i) out << (i ? "," : "") << hex_of(acc[i]);
            if (acc.empty()) out << "-";
            out << " order";
            for (int e : rc.edge_order) out << " " << e + 1;
        } else {
            const auto& b = inst.list_at(v);
            out << "list ";
            if (b.empty()) {
                out << "-";
            } else {
                const auto& vals = b.values();
                for (size_t i = 0; i < vals.size(); ++i)
                    out << (i ? "," : "") << vals[i];
            }
        }
        out << "\n";
    }
}

struct ParsedBody {
    Instance inst;
    std::vector<int> dangling;
    bool penalized = false;
    int64_t alpha = 0;
    int beta = 0;
    bool internal_count = false;
};

ParsedBody parse_body(const std::string& text) {
    ParsedBody body;
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<char> edge_seen;
    struct VLine {
        int id;
        std::vector<std::string> toks;
    };
    std::vector<VLine> vlines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] == "p") {
            prequire(toks.size() == 4 && toks[1] == "genfac", "bad header line: " + line);
            n = to_int(toks[2], "vertex count");
            m = to_int(toks[3], "edge count");
            edges.assign(m, {-1, -1});
            edge_seen.assign(m, 0);
        } else if (toks[0] == "e") {
            prequire(n >= 0, "e line before header");
            prequire(toks.size() == 4, "bad e line: " + line);
            int id = to_int(toks[1], "edge id") - 1;
            prequire(id >= 0 && id < m && !edge_seen[id], "bad/duplicate edge id in: " + line);
            edge_seen[id] = 1;
            edges[id] = {to_int(toks[2], "endpoint") - 1, to_int(toks[3], "endpoint") - 1};
        } else if (toks[0] == "v") {
            prequire(n >= 0, "v line before header");
            prequire(toks.size() >= 3, "bad v line: " + line);
            vlines.push_back({to_int(toks[1], "vertex id") - 1, toks});
        } else if (toks[0] == "portal") {
            prequire(toks.size() == 3, "bad portal line: " + line);
            int v = to_int(toks[1], "portal vertex") - 1;
            int cnt = to_int(toks[2], "portal count");
            prequire(cnt >= 1, "portal count < 1");
            for (int i = 0; i < cnt; ++i) body.dangling.push_back(v);
        } else if (toks[0] == "penalized") {
            prequire(toks.size() == 4, "bad penalized line: " + line);
            body.penalized = true;
            body.alpha = to_int(toks[1], "alpha");
            body.beta = to_int(toks[2], "beta");
            body.internal_count = to_int(toks[3], "internal flag") != 0;
        } else {
            throw parse_error("unrecognized line: " + line);
        }
    }
    prequire(n >= 0, "missing header");
    for (int e = 0; e < m; ++e) prequire(edge_seen[e], "edge " + std::to_string(e + 1) + " missing");
    body.inst.graph = MultiGraph(n);
    for (auto [u, v] : edges) body.inst.graph.add_edge(u, v);
    body.inst.constraints.assign(n, Constraint(DegreeList{}));
    std::vector<char> vseen(n, 0);
    for (const auto& vl : vlines) {
        prequire(vl.id >= 0 && vl.id < n && !vseen[vl.id], "bad/duplicate vertex id");
        vseen[vl.id] = 1;
        const auto& toks = vl.toks;
        if (toks[2] == "list") {
            prequire(toks.size() == 4, "bad list line");
            std::vector<int> vals;
            if (toks[3] != "-")
                for (const auto& t : split_commas(toks[3])) vals.push_back(to_int(t, "degree"));
            body.inst.constraints[vl.id] = DegreeList(vals);
        } else if (toks[2] == "rel") {
            prequire(toks.size() >= 6 && toks[5] == "order", "bad rel line (missing order)");
            int arity = to_int(toks[3], "arity");
            std::vector<uint32_t> acc;
            if (toks[4] != "-")
                for (const auto& t : split_commas(toks[4])) acc.push_back(hex_to_mask(t));
            std::vector<int> order;
            for (size_t i = 6; i < toks.size(); ++i)
                order.push_back(to_int(toks[i], "edge id") - 1);
            prequire(static_cast<int>(order.size()) == arity, "order length != arity");
            body.inst.constraints[vl.id] = RelConstraint{Relation(arity, std::move(acc)), order};
        } else {
            throw parse_error("bad constraint kind: " + toks[2]);
        }
    }
    for (int v = 0; v < n; ++v) prequire(vseen[v], "vertex " + std::to_string(v + 1) + " missing");
    body.inst.validate();
    return body;
}

}  // namespace

std::string emit_instance(const Instance& inst) {
    std::ostringstream out;
    emit_constraints_and_edges(out, inst);
    return out.str();
}

Instance parse_instance(const std::string& text) {
    auto body = parse_body(text);
    prequire(body.dangling.empty(), "instance file contains portal lines (gadget file?)");
    return body.inst;
}

std::string emit_gadget(const Gadget& g) {
    std::ostringstream out;
    Instance inst = homogeneous_instance(g.graph, g.b);
    emit_constraints_and_edges(out, inst);
    for (auto [v, cnt] : g.portal_groups()) out << "portal " << v + 1 << " " << cnt << "\n";
    if (g.kind == Gadget::Kind::Penalized)
        out << "penalized " << g.alpha << " " << g.beta << " " << (g.internal_count ? 1 : 0)
            << "\n";
    return out.str();
}

Gadget parse_gadget(const std::string& text) {
    auto body = parse_body(text);
    Gadget g;
    g.graph = body.inst.graph;
    prequire(body.inst.graph.num_vertices() > 0, "empty gadget");
    prequire(!body.inst.is_rel(0), "gadget vertices must carry lists");
    g.b = body.inst.list_at(0);
    for (int v = 0; v < body.inst.graph.num_vertices(); ++v)
        prequire(!body.inst.is_rel(v) && body.inst.list_at(v) == g.b,
                "gadget file is not B-homogeneous");
    g.dangling = body.dangling;
    if (body.penalized) {
        g.kind = Gadget::Kind::Penalized;
        g.alpha = body.alpha;
        g.beta = body.beta;
        g.internal_count = body.internal_count;
    }
    return g;
}

std::string emit_td(const TreeDecomposition& td, int graph_n) {
    std::ostringstream out;
    out << "s td " << td.num_nodes() << " " << td.width() + 1 << " " << graph_n << "\n";
    for (int t = 0; t < td.num_nodes(); ++t) {
        out << "b " << t + 1;
        for (int v : td.bags[t]) out << " " << v + 1;
        out << "\n";
    }
    for (auto [a, b] : td.tree_edges) out << a + 1 << " " << b + 1 << "\n";
    return out.str();
}

TreeDecomposition parse_td(const std::string& text) {
    TreeDecomposition td;
    int nodes = -1;
    std::vector<char> bag_seen;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] == "s") {
            prequire(toks.size() == 5 && toks[1] == "td", "bad s line: " + line);
            nodes = to_int(toks[2], "bag count");
            prequire(nodes >= 1, "no bags");
            td.bags.assign(nodes, {});
            bag_seen.assign(nodes, 0);
        } else if (toks[0] == "b") {
            prequire(nodes >= 0, "b line before s line");
            prequire(toks.size() >= 2, "bad b line: " + line);
            int id = to_int(toks[1], "bag id") - 1;
            prequire(id >= 0 && id < nodes && !bag_seen[id], "bad/duplicate bag id");
            bag_seen[id] = 1;
            for (size_t i = 2; i < toks.size(); ++i)
                td.bags[id].push_back(to_int(toks[i], "bag vertex") - 1);
            std::sort(td.bags[id].begin(), td.bags[id].end());
        } else {
            prequire(nodes >= 0 && toks.size() == 2, "bad tree edge line: " + line);
            td.tree_edges.emplace_back(to_int(toks[0], "node id") - 1,
                                       to_int(toks[1], "node id") - 1);
        }
    }
    prequire(nodes >= 1, "missing s line");
    for (int t = 0; t < nodes; ++t) prequire(bag_seen[t], "bag " + std::to_string(t + 1) + " missing");
    return td;
}

std::string emit_layout(const LinearLayout& l) {
    std::ostringstream out;
    for (size_t i = 0; i < l.order.size(); ++i) out << (i ? " " : "") << l.order[i] + 1;
    out << "\n";
    return out.str();
}

LinearLayout parse_layout(const std::string& text) {
    LinearLayout l;
    for (const auto& t : split_ws(text)) l.order.push_back(to_int(t, "vertex id") - 1);
    return l;
}

std::string emit_dimacs(const CnfFormula& cnf) {
    std::ostringstream out;
    out << "p cnf " << cnf.num_vars << " " << cnf.clauses.size() << "\n";
    for (const auto& cl : cnf.clauses) {
        for (int lit : cl) out << lit << " ";
        out << "0\n";
    }
    return out.str();
}

CnfFormula parse_dimacs(const std::string& text) {
    CnfFormula cnf;
    std::istringstream ss(text);
    std::string line;
    bool have_header = false;
    std::vector<int> cur;
    while (std::getline(ss, line)) {
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] == "c") continue;
        if (toks[0] == "p") {
            prequire(toks.size() == 4 && toks[1] == "cnf", "bad DIMACS header: " + line);
            cnf.num_vars = to_int(toks[2], "variable count");
            have_header = true;
            continue;
        }
        prequire(have_header, "clause line before header");
        for (const auto& t : toks) {
            int lit = to_int(t, "literal");
            if (lit == 0) {
                cnf.clauses.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(lit);
            }
        }
    }
    prequire(have_header, "missing DIMACS header");
    prequire(cur.empty(), "unterminated clause");
    return cnf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    prequire(in.good(), "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    prequire(out.good(), "cannot write file: " + path);
    out << content;
}

}  // namespace genfac
