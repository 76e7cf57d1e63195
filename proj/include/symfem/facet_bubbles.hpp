#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symfem/element.hpp"
#include "symfem/mesh.hpp"

namespace symfem {

enum class BubbleVariant { B1, B2, Bhat };

const char* to_string(BubbleVariant v);

/// One H(div)-conforming field supported on the cells sharing a facet.
struct FacetBubble {
  int facet = -1;
  BubbleVariant variant = BubbleVariant::B1;
  std::vector<int> cells;          // ascending; one cell for boundary facets
  std::vector<SymMatPoly> pieces;  // restriction to cells[i], in that cell's frame
  std::vector<CellFrame> frames;
};

/// Expected number of bubbles per facet in dimension n.
int bubble_count(int n, BubbleVariant v);

/// Provides the auxiliary element of a mesh cell (full P2* for B1/B2,
/// simplified for Bhat).
using AuxProvider = std::function<const ElementDef&(int cell)>;

/// Basis of the facet bubble space: auxiliary fields on the cells sharing
/// the facet whose DOFs vanish except those attached to the facet, with
/// continuous normal trace across the facet and normal trace on the facet
/// L2-orthogonal to the complement of the rigid-motion traces in
/// P1(F; R^n) (B2 additionally orthogonal to constants). Each bubble is
/// scaled to unit largest coefficient. Boundary facets use the single
/// adjacent cell. Throws ConstructionError when the constraint system has
/// an unexpected rank.
std::vector<FacetBubble> facet_bubbles(const SimplexMesh& mesh, int facet, BubbleVariant variant);
std::vector<FacetBubble> facet_bubbles(const SimplexMesh& mesh, int facet, BubbleVariant variant,
                                       const AuxProvider& aux);

/// Local indices (in cell c) of the vertices of facet f, ascending.
std::vector<int> facet_local_vertices(const SimplexMesh& mesh, int c, int f);

} // namespace symfem
