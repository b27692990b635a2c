#include "brpa/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "brpa/error.hpp"

namespace brpa {

void write_graph(std::ostream& out, const MultiGraph& g,
                 const GraphFileInfo& info) {
  require(info.n == g.n() && info.m == g.m(),
          "graph file: header does not match graph");
  require(!info.method.empty() &&
              info.method.find_first_of(" \t\n") == std::string::npos,
          "graph file: method must be a single token");
  out << info.n << ' ' << info.m << ' ' << info.method << ' ' << info.seed
      << '\n';
  for (const auto& e : g.edges()) {
    out << e.a << ' ' << e.b << ' ' << e.multiplicity << '\n';
  }
}

void write_graph_file(const std::string& path, const MultiGraph& g,
                      const GraphFileInfo& info) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIoError, "cannot open " + path + " for writing");
  write_graph(out, g, info);
  out.flush();
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path);
}

GraphFile read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    fail(ErrorCode::kInvalidArgument, "graph file: missing header");
  }
  GraphFileInfo info;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> info.n >> info.m >> info.method >> info.seed) ||
        (header >> extra)) {
      fail(ErrorCode::kInvalidArgument,
           "graph file: header must be `n m method seed`");
    }
  }
  std::vector<WeightedEdge> edges;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    long long a = 0, b = 0, k = 0;
    std::string extra;
    if (!(row >> a >> b >> k) || (row >> extra) || a < 1 || b < 1 || k < 1 ||
        a > 0xFFFFFFFFll || b > 0xFFFFFFFFll || k > 0xFFFFFFFFll) {
      fail(ErrorCode::kInvalidArgument,
           "graph file: bad edge line " + std::to_string(line_no));
    }
    edges.push_back({static_cast<Vertex>(a), static_cast<Vertex>(b),
                     static_cast<std::uint32_t>(k)});
  }
  if (in.bad()) fail(ErrorCode::kIoError, "graph file: read error");
  MultiGraph g = MultiGraph::from_weighted(info.n, info.m, edges);
  return {std::move(info), std::move(g)};
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path);
  return read_graph(in);
}

}  // namespace brpa
