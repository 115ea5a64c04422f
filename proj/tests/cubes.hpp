#pragma once

// Small cube fixtures shared by several test binaries.

#include "klab/cube.hpp"

namespace fixtures {

/// Free 2-cube of rank one with direction-1 boundaries a, b (at {1} and {1,2})
/// and direction-2 boundaries c, d (at {2} and {1,2}).
inline klab::Cube square(const klab::RingPtr& r, const char* a, const char* b, const char* c, const char* d) {
    using namespace klab;
    Cube x = Cube::free(r, {"1", "2"}, {1, 1, 1, 1});
    x.set_boundary(0b01, 0, Matrix::scalar(r, 1, parse_poly(a, r)));
    x.set_boundary(0b11, 0, Matrix::scalar(r, 1, parse_poly(b, r)));
    x.set_boundary(0b10, 1, Matrix::scalar(r, 1, parse_poly(c, r)));
    x.set_boundary(0b11, 1, Matrix::scalar(r, 1, parse_poly(d, r)));
    return x;
}

/// The square whose boundaries are all multiplication by x.
inline klab::Cube both_x(const klab::RingPtr& r) { return square(r, "x", "x", "x", "x"); }

/// 1-cube [A^n --m--> A^n].
inline klab::Cube arrow(const klab::Matrix& m, const char* label = "1") {
    using namespace klab;
    Cube x = Cube::free(m.ring(), {label}, {m.rows(), m.cols()});
    x.set_boundary(1, 0, m);
    return x;
}

}  // namespace fixtures
