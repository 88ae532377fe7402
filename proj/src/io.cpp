#include "ddg/io.hpp"

#include <fstream>
#include <sstream>

#include "ddg/errors.hpp"

namespace ddg {

Graph read_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    long long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        char tag;
        ls >> tag;
        if (tag == 'p') {
            if (n >= 0) throw FormatError("duplicate problem line", lineno);
            std::string kind;
            ls >> kind >> n >> m;
            if (!ls || kind != "edge" || n < 0 || m < 0)
                throw FormatError("bad problem line, expected 'p edge N M'", lineno);
        } else if (tag == 'e') {
            if (n < 0) throw FormatError("edge before problem line", lineno);
            long long u, v;
            ls >> u >> v;
            if (!ls) throw FormatError("bad edge line", lineno);
            if (u < 1 || u > n || v < 1 || v > n)
                throw FormatError("edge endpoint out of range", lineno);
            if (u == v) throw FormatError("self-loop rejected", lineno);
            edges.emplace_back(int(u - 1), int(v - 1));
        } else {
            throw FormatError("unknown line tag", lineno);
        }
    }
    if (n < 0) throw FormatError("missing problem line");
    if ((long long)edges.size() != m) throw FormatError("edge count does not match header");
    try {
        return Graph::from_edges(int(n), edges);
    } catch (const Error& e) {
        throw FormatError(e.what());
    }
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << "p edge " << g.order() << " " << g.edge_count() << "\n";
    for (int u = 0; u < g.order(); ++u)
        for (int v = g.row(u).next(u); v >= 0; v = g.row(u).next(v))
            out << "e " << (u + 1) << " " << (v + 1) << "\n";
}

void write_graph_file(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_graph(out, g);
}

}  // namespace ddg
