#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "hyperboot/hypergraph.hpp"

namespace hyperboot {

// HG1 text format:
//   k n m
//   m lines of k increasing vertex indices separated by single spaces
// Lines starting with '#' are comments. Writers emit edges in ascending order,
// so write(read(write(h))) reproduces the same bytes.

Hypergraph read_hg1(std::istream& in);
Hypergraph parse_hg1(std::string_view text);
Hypergraph load_hg1(const std::string& path);

void write_hg1(std::ostream& out, const Hypergraph& h);
std::string format_hg1(const Hypergraph& h);
void save_hg1(const std::string& path, const Hypergraph& h);

/// One edge in HG1 edge syntax, without newline.
std::string format_edge(const KSet& e);

}  // namespace hyperboot
