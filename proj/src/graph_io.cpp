#include "aivip/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aivip {

namespace {

std::pair<Mark, Mark> edge_marks(const std::string& token, int line_no) {
    if (token == "-->") return {Mark::Tail, Mark::Arrow};
    if (token == "<->") return {Mark::Arrow, Mark::Arrow};
    if (token == "o->") return {Mark::Circle, Mark::Arrow};
    if (token == "o-o") return {Mark::Circle, Mark::Circle};
    if (token == "<-o") return {Mark::Arrow, Mark::Circle};
    throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown edge token '" +
                                token + "'");
}

std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

MixedGraph parse_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    bool have_nodes = false;
    std::vector<std::string> nodes;
    std::vector<EdgeSpec> edges;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(strip_comment(line));
        std::string first;
        if (!(ls >> first)) continue;

        if (!have_nodes) {
            if (first != "nodes:")
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": expected 'nodes:' declaration first");
            std::string name;
            while (ls >> name) nodes.push_back(name);
            have_nodes = true;
            continue;
        }
        std::string token, to;
        if (!(ls >> token >> to))
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 'A <mark> B'");
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": trailing content '" + extra + "'");
        auto [at_from, at_to] = edge_marks(token, line_no);
        edges.push_back({first, at_from, at_to, to});
    }
    if (!have_nodes) throw std::invalid_argument("missing 'nodes:' declaration");
    return MixedGraph::build(std::move(nodes), edges);
}

MixedGraph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

MixedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return parse_graph(in);
}

std::string format_graph(const MixedGraph& g) {
    std::ostringstream out;
    out << "nodes:";
    for (const auto& n : g.names()) out << ' ' << n;
    out << '\n';
    for (auto [i, j] : g.edges()) {
        const Mark mi = g.mark_at(i, j), mj = g.mark_at(j, i);
        std::string token;
        int a = i, b = j;
        if (mi == Mark::Tail && mj == Mark::Arrow) {
            token = "-->";
        } else if (mi == Mark::Arrow && mj == Mark::Tail) {
            token = "-->";
            std::swap(a, b);
        } else if (mi == Mark::Arrow && mj == Mark::Arrow) {
            token = "<->";
        } else if (mi == Mark::Circle && mj == Mark::Arrow) {
            token = "o->";
        } else if (mi == Mark::Arrow && mj == Mark::Circle) {
            token = "<-o";
        } else if (mi == Mark::Circle && mj == Mark::Circle) {
            token = "o-o";
        } else {
            throw std::invalid_argument("edge " + g.name(i) + " - " + g.name(j) +
                                        " has no textual representation");
        }
        out << g.name(a) << ' ' << token << ' ' << g.name(b) << '\n';
    }
    return out.str();
}

void write_graph_file(const MixedGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << format_graph(g);
}

}  // namespace aivip
