#ifndef BRPA_GRAPH_IO_HPP_
#define BRPA_GRAPH_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>

#include "brpa/multigraph.hpp"

namespace brpa {

/// Header line of a graph file: `n m method seed`.
struct GraphFileInfo {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::string method;
  std::uint64_t seed = 0;
};

struct GraphFile {
  GraphFileInfo info;
  MultiGraph graph;
};

/// Header line, then one `a b multiplicity` line per edge class sorted by
/// (a, b); loops are `a a k`.
void write_graph(std::ostream& out, const MultiGraph& g,
                 const GraphFileInfo& info);
void write_graph_file(const std::string& path, const MultiGraph& g,
                      const GraphFileInfo& info);

/// Throws io-error on unreadable input and invalid-argument on malformed
/// content.
GraphFile read_graph(std::istream& in);
GraphFile read_graph_file(const std::string& path);

}  // namespace brpa

#endif  // BRPA_GRAPH_IO_HPP_
