#pragma once

#include <iosfwd>
#include <string>

#include "aivip/graph.hpp"

namespace aivip {

/// Text graph format: a `nodes: A B C` line first, then one edge per line
/// using `A --> B`, `A <-> B`, `A o-> B`, `A o-o B` or `A <-o B`.
/// `#` starts a comment; tokens are whitespace separated.
MixedGraph parse_graph(std::istream& in);
MixedGraph parse_graph(const std::string& text);
MixedGraph read_graph_file(const std::string& path);

std::string format_graph(const MixedGraph& g);
void write_graph_file(const MixedGraph& g, const std::string& path);

}  // namespace aivip
