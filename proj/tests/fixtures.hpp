#pragma once

#include <string>

#include "cablegraph/mcd.hpp"

namespace fixtures {

inline cablegraph::Diagram mcd(const std::string& body) { return cablegraph::parse_mcd("mcd 1\n" + body); }

// Single-cable overhand knot, three crossings.
inline cablegraph::Diagram overhand1() {
  return mcd("cables 1\ncable 1: X1@+1 X2@-1 X3@+1 X1@-1 X2@+1 X3@-1\norder: 1L 1R\n");
}

// Two cables meeting once.
inline cablegraph::Diagram single_crossing() {
  return mcd("cables 2\ncable 1: X1@+1\ncable 2: X1@-1\norder: 1L 2L 1R 2R\n");
}

inline cablegraph::Diagram two_free_cables() {
  return mcd("cables 2\ncable 1:\ncable 2:\norder: 1L 2L 1R 2R\n");
}

// One arity-3 crossing shared by three cables.
inline cablegraph::Diagram triple_point() {
  return mcd("cables 3\ncable 1: X1@+1\ncable 2: X1@-1\ncable 3: X1@-2\norder: 1L 2L 3L 1R 2R 3R\n");
}

}  // namespace fixtures
