#pragma once

#include "opmodel/io.hpp"

#include <string>
#include <vector>

namespace opm {

// The curated catalog:
//   A  scalar t = 0.5 over E = M = C
//   B  2x2 Jordan cell over E = M = C
//   C  row contraction [0.6, 0.3] over E = C^2
//   D  graph with an edge 0 -> 1 and a loop at 0, sigma = C^2
//   E  swap endomorphism of C^2 with t = [[0, 0.5], [0.3, 0]]
//   F  unitary flip over E = M = C (not c.n.c.)
//   G  B + F
std::vector<std::string> catalog_names();
FixtureFile catalog_fixture(const std::string& name);  // built in code
std::string catalog_file(const std::string& name);     // file name under fixtures/
std::string fixture_path(const std::string& file);     // absolute path of a shipped file
FixtureFile load_catalog_fixture(const std::string& name);

// Carrier blocks of G: the Jordan part and the unitary part.
struct MixedBlocks {
    Mat jordan;
    Mat unitary;
};
MixedBlocks mixed_blocks();

}  // namespace opm
