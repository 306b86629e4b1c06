#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gw2::ribbon {

// Combinatorial-map encoding of a quartic ribbon graph: half-edges 0..4V-1,
// vertex v owns [4v, 4v+3] in cyclic order, `pairing` is the edge involution
// (external half-edges are fixed points). Faces are cycles of the composite
// permutation h -> cyclic_next(pairing(h)).
struct RibbonGraph {
    int n_vertices = 0;
    std::vector<int> pairing;
    std::vector<bool> external;

    int n_half_edges() const { return 4 * n_vertices; }
    int vertex_of(int h) const { return h / 4; }
    int cyclic_next(int h) const { return (h % 4 == 3) ? h - 3 : h + 1; }
    int n_edges() const;
};

RibbonGraph from_wick_pairing(int n_vertices, const std::vector<std::pair<int, int>>& pairs,
                              const std::vector<int>& externals = {});

struct FaceData {
    std::vector<std::vector<int>> faces;
    int F = 0;
    int broken = 0;  // faces touching at least one external half-edge
    int genus = 0;   // per-component genera summed when disconnected
    bool connected = true;
    int components = 1;
};

FaceData faces(const RibbonGraph& g);

/// Power-counting exponent 4 - 2V - 4g - 2B.
int divergence_degree(const RibbonGraph& g);

// Isomorphism class under vertex relabeling plus per-vertex rotations.
struct GraphClass {
    RibbonGraph representative;
    long multiplicity = 0;
    FaceData topology;
    std::string code;
};

/// All Wick pairings of the 4*order half-edges of `order` quartic vertices,
/// grouped by isomorphism class. Raw pairing count is (4*order-1)!!.
std::vector<GraphClass> enumerate_vacuum_graphs(int order);

std::string canonical_code(const RibbonGraph& g);

// --- contraction-configuration counts ----------------------------------------
// Matrix-vertex contraction multiplicities: a tadpole loop on a Hermitian
// matrix vertex can hug either border of the ribbon, doubling each
// nearest-neighbor contraction; for pure vacuum configurations the global
// reflection identifies mirror-image border assignments.

/// Nearest-neighbor single contraction of a quartic vertex with two legs
/// left external: 4 adjacent pairs x 2 borders = 8.
int two_point_tadpole_multiplicity();

/// Full vacuum contraction of one quartic vertex: 2 planar pair schemes x
/// 3 border classes ({inner,inner}, {outer,outer}, mixed) = 6.
int vacuum_order1_multiplicity();

struct Order2Multiplicities {
    int A = 0;  // quartic sigma-vertex, planar pair schemes x per-pair borders
    int B = 0;  // cubic sigma-vertex + one counterterm
    int C = 0;  // quadratic sigma-vertex + two counterterms
};

/// Contraction counts for the three divergent second-order classes,
/// re-derived by enumerating (pairing, border) configurations. An optional
/// perturbation is applied to class B for mutation testing.
Order2Multiplicities order2_divergent_multiplicities(int perturb_b = 0);

}  // namespace gw2::ribbon
