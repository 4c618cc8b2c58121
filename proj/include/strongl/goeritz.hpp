#pragma once

// Checkerboard colouring, Goeritz matrix and the link determinant
// |H_1(branched double cover)|.

#include <vector>

#include "strongl/diagram.hpp"
#include "strongl/signed_matrix.hpp"

namespace strongl {

struct GoeritzData {
  // Colour per face id: 0 white, 1 black.  At crossing 0 the white corners
  // are the pair not swept by rotating the over-strand counterclockwise.
  std::vector<int> coloring;
  std::vector<int> white_faces;  // row order of `full`
  SignedMatrix full;             // all white faces, zero row sums
  SignedMatrix matrix;           // first white face deleted
};

// Throws NotConnected for split diagrams, Crossingless without crossings.
GoeritzData goeritz_matrix(const Diagram& d);

// |det| of the reduced Goeritz matrix; 1 for a lone free loop; 0 for any
// diagram with two or more components.
long long link_determinant(const Diagram& d);

}  // namespace strongl
