#pragma once

#include <Eigen/Core>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace kbg {

struct InvalidComplexError : std::runtime_error {
    explicit InvalidComplexError(const std::string& what) : std::runtime_error(what) {}
};

// Finite simplicial 2-complex given by incidence: vertices are 0..n-1, edges
// are vertex pairs, faces are vertex triples whose three sides must all be
// listed as edges.
struct SimplicialComplex {
    std::size_t vertex_count = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::array<int, 3>> faces;

    long euler_characteristic() const {
        return static_cast<long>(vertex_count) - static_cast<long>(edges.size()) +
               static_cast<long>(faces.size());
    }
};

// Line-oriented incidence format: a VERTICES count, an EDGES count followed
// by that many vertex pairs, a FACES count followed by that many vertex
// triples. '#' starts a comment. Structural problems throw.
SimplicialComplex parse_complex(const std::string& text);

SimplicialComplex load_complex(const std::string& path);

// Rectangular operator from even to odd cochains, with a description tag.
struct HeatModel {
    Eigen::MatrixXcd d; // (1-cochains) x (0-cochains + 2-cochains)
    std::string label;
};

// D = d0 + d1* : C^0 + C^2 -> C^1 assembled from signed incidence. The face
// rows use each face's listed cyclic orientation; d1 d0 = 0 holds for any
// such choice, which is all the supertrace identity needs.
HeatModel hodge_even_odd_operator(const SimplicialComplex& complex);

} // namespace kbg
