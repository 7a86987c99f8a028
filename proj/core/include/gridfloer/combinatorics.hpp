// Generators, gradings, and empty polygon enumeration on the grid torus.
#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "gridfloer/grid.hpp"
#include "gridfloer/util.hpp"

namespace gf {

struct Generator {
  ResolutionVector resolution;
  Perm matching;    // column line -> row line of its dot
  int maslov_total; // M_O of the dot set plus the count of 0-bits
  int alexander2;   // twice the Alexander degree (kept integral)

  bool operator==(const Generator&) const = default;
};

enum class Policy { AvoidAll, AvoidOOnly, AvoidNone };

// Chosen arcs-intersection per singular element: Plus selects the point
// below an X and above an O (for rows: left an O, right an X), Minus the
// other one.
struct PeakConvention {
  std::vector<Orient> flags;  // scan order, one per singular element
  static PeakConvention from_grid(const GridDiagram& g);
};

// Edge of the underlying rectangle broken by a peak.
enum class Edge : uint8_t { West, North, East, South };

struct PolygonPeak {
  int element;  // index into grid.singular (scan order)
  Edge edge;
  Orient type;  // which intersection point (effective flag)
};

struct GridPolygon {
  Generator source;
  Generator target;
  // Boundary corners in traversal order, quadrupled coordinates (lattice
  // point (c,r) -> (4c,4r); peaks sit at off-lattice positions).
  std::vector<std::pair<int, int>> corners;
  std::vector<PolygonPeak> peaks;
  int o_inside = 0;
  int x_inside = 0;
  bool torn = false;
  int west = 0, east = 0;  // vertical lines of the underlying rectangle
};

// #{(a,b) in A x B : a strictly south-west of b}.
int southwest_count(const std::vector<std::pair<int, int>>& A,
                    const std::vector<std::pair<int, int>>& B);

// I(A,A) - I(A,B) - I(B,A) + I(B,B) + 1 with A = dots, B = markers.
// Dots sit at lattice points, markers at cell centers; pass doubled
// coordinates to keep everything integral.
int m_grading(const std::vector<std::pair<int, int>>& dots,
              const std::vector<std::pair<int, int>>& markers);

// (maslov_total, alexander2) of a matching on the resolution I of the grid.
std::pair<int, int> gradings(const GridDiagram& g, const ResolutionVector& I, const Perm& matching);

inline constexpr int kDefaultGeneratorCap = 10;

// All N! generators of the resolution I, in permutation-rank order.
std::vector<Generator> enumerate_generators(const GridDiagram& g, const ResolutionVector& I,
                                            int cap = kDefaultGeneratorCap, bool force = false);
void enumerate_generators_streamed(const GridDiagram& g, const ResolutionVector& I,
                                   const std::function<void(const Generator&)>& sink,
                                   int cap = kDefaultGeneratorCap, bool force = false);

// Precomputed per-resolution geometry shared by polygon enumeration.
class GridContext {
 public:
  GridContext(GridDiagram grid, PeakConvention convention);

  const GridDiagram& grid() const { return grid_; }
  const PeakConvention& convention() const { return convention_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int ell() const { return ell_; }

  uint32_t mask_of(const ResolutionVector& I) const;
  ResolutionVector vector_of(uint32_t mask) const;
  const GridDiagram& resolved(uint32_t mask) const;

  std::pair<int, int> gradings_of(uint32_t mask, const Perm& matching) const;

  // All empty polygons out of the source, honoring the policy filter.
  std::vector<GridPolygon> polygons_from(const Generator& source, Policy policy) const;

  // Lean enumeration for complex assembly: reports the rectangle pair
  // (west,east), the peak subset as (element,edge) pairs, decoration counts,
  // and the torn flag. Targets are (source.mask | peak bits, matching * t_WE).
  struct RawPolygon {
    int west, east;
    uint32_t peak_mask;         // bits of consumed elements
    uint8_t mu;                 // peaks on East/North edges (sign parity)
    uint8_t o_inside, x_inside;
    bool torn;
  };
  void polygons_raw(uint32_t mask, const Perm& matching, Policy policy,
                    const std::function<void(const RawPolygon&)>& sink) const;

 private:
  struct ElementView {
    int line;       // internal line index on the resolved grid
    int cross_key;  // crossing position, quadrupled scale, at this reading
    // The element's four decorations: fixed coordinate (resolved row for a
    // column element, resolved column for a row element), its center key,
    // kind, and the moving coordinate's cell at this reading and the other.
    struct Deco {
      int idx;         // index into the unresolved decoration list
      int center_key;  // quadrupled fixed coordinate
      Kind kind;
      int cell_here;   // moving cell at this reading
      int cell_there;  // moving cell at the flipped reading
    };
    Deco deco[4];
  };
  struct Reading {
    GridDiagram grid;
    std::array<int, kMaxGridSize> o_row{}, x_row{};  // per resolved column
    std::vector<ElementView> elements;               // per singular element
    std::vector<Decoration> images;                  // resolved image, by unresolved index
  };

  const Reading& reading(uint32_t mask) const { return readings_[mask]; }

  GridDiagram grid_;
  PeakConvention convention_;
  int n_ = 0, k_ = 0, ell_ = 0;
  std::vector<Reading> readings_;
};

std::vector<GridPolygon> enumerate_polygons(const GridDiagram& g, const Generator& source,
                                            const PeakConvention& convention, Policy policy);

// The unique rectangle obtained by embanking every peak with its spike; the
// result lives on the source's resolution. Errors on peakless input.
GridPolygon fill_spikes(const GridContext& ctx, const GridPolygon& poly);

// True iff the underlying rectangle meets the leftmost vertical grid line.
bool is_torn(const GridPolygon& rect);

}  // namespace gf
