#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wangkit/core.hpp"

namespace wangkit {

// Geometry of an N-by-N macro-tile: bit windows on the four sides,
// communication wires from every window bit to its input-row column,
// the computation zone, the reserved free zone above it, and (after the
// quasiperiodicity upgrade) diversification slots.
//
// Wires are L-shaped Manhattan paths. Entries from the left and right
// sides drop into a staging band below the computation zone through the
// side margins; entries from the top ride high rows into the right
// margin first. Staging depths, drop columns, and input-column
// assignments are ordered so that no two paths ever cross; every pair of
// wires keeps a distance of at least 3 cells.

struct WirePath {
  Direction side;       // which macro-color this bit belongs to
  int bit;              // index within the side's window (0 = lowest/leftmost)
  int payload_index;    // input-row payload cell this wire feeds
  std::vector<std::pair<int, int>> cells;  // border cell first, port cell last
};

struct SlotSpec {
  int sx, st;      // source 2x2 position, comp-zone coordinates (st >= 1)
  int pattern;     // index into the layout's pattern table for (sx, st)
  int x, y;        // macro coordinates of the slot interior's lower-left cell
};

struct MacroLayout {
  int N = 0;
  int k_bits = 0;   // payload bits per macro-color
  int m = 0;        // computation zone side
  bool zones = false;  // three-zone cycling encoding of macro-colors
  int k_win = 0;       // window bits per side: k_bits, or 3*k_bits with zones
  int payload_count = 0;  // 4 * k_win

  int cx0 = 0, cy0 = 0;           // comp zone lower-left corner
  int free_x0 = 0, free_x1 = 0;   // free zone columns [free_x0, free_x1)
  int free_y0 = 0, free_h = 0;    // free zone rows [free_y0, free_y0+free_h)
  std::array<std::vector<int>, 4> window;  // positions along each side
  std::vector<WirePath> wires;
  std::vector<SlotSpec> slots;

  int payload_col(int p) const { return cx0 + 2 + 4 * p; }  // macro column

  // zone role of window bit t under a phase, when zones are active:
  // 0 = data, 1 = all-zeros, 2 = all-ones
  int zone_role(int t, int phase) const {
    int zone = t / k_bits;
    return (zone - phase + 3) % 3;
  }
};

struct LayoutAudit {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

namespace layout_detail {

inline void require(bool cond, const std::string& constraint) {
  if (!cond) throw SizingError("layout infeasible: " + constraint);
}

inline void straight(std::vector<std::pair<int, int>>& cells, int x0, int y0,
                     int x1, int y1) {
  int dx = x1 > x0 ? 1 : x1 < x0 ? -1 : 0;
  int dy = y1 > y0 ? 1 : y1 < y0 ? -1 : 0;
  int x = x0, y = y0;
  for (;;) {
    if (cells.empty() || cells.back() != std::pair<int, int>{x, y})
      cells.emplace_back(x, y);
    if (x == x1 && y == y1) break;
    x += dx;
    y += dy;
  }
}

}  // namespace layout_detail

// Deterministic macro-tile layout. Throws SizingError naming the violated
// constraint when the parameters cannot host the geometry.
inline MacroLayout layout(int N, int k_bits, int m, bool zones = false) {
  using layout_detail::require;
  MacroLayout L;
  L.N = N;
  L.k_bits = k_bits;
  L.m = m;
  L.zones = zones;
  require(N >= 2, "N must be at least 2");
  require(k_bits >= 0, "k_bits must be nonnegative");
  require(m >= 1, "m must be positive");
  require(m < N, "comp zone side m must be smaller than N");
  int k = zones ? 3 * k_bits : k_bits;
  L.k_win = k;
  int P = 4 * k;
  L.payload_count = P;

  // staging band below the comp zone: rows 2 + 3d, one depth band of k
  // wires per direction group (bottom, left, top, right)
  L.cy0 = 12 * std::max(k, 1) + 4;
  L.cx0 = (N - m) / 2;
  require(L.cy0 + m < N, "comp zone does not fit above the staging band");
  if (P > 0)
    require(2 + 4 * P + 1 <= m,
            "input row overflow: 4*k_win payload cells exceed m");

  // free zone sits directly above the comp zone, spanning the wire-free
  // column band between the side margins
  L.free_x0 = 6 * k + 2;
  L.free_x1 = N - 3 * k - 4;
  require(L.free_x0 < L.free_x1, "side margins leave no free-zone columns");
  L.free_y0 = L.cy0 + m;
  L.free_h = m;  // reserve a band of height m; slots may grow it

  if (k > 0) {
    // One window per side with k bit positions at pitch 4, centered; the
    // top and bottom windows share the same columns so that vertically
    // adjacent macro-tiles agree on their shared edge. Input columns are
    // grouped [top | left | bottom | right]; staging depth bands run
    // bottom, left, top, right from the shallowest. The drop/slot/depth
    // orderings below keep every pair of paths crossing-free.
    require(L.cx0 >= 6 * k + 2, "left margin cannot host the wire drops");
    require(L.cx0 + m <= N - 3 * k - 2,
            "right margin cannot host the wire drops");

    int span = 4 * (k - 1) + 1;
    int side_base = (N - span) / 2;
    require(side_base > L.cy0 + 2, "side windows collide with the comp zone");
    require(side_base >= L.payload_col(P - 1) + 3,
            "input row must end left of the top/bottom windows");
    require(side_base + 4 * (k - 1) <= N - 3 * k - 2,
            "side windows collide with the top wire runs");
    require(N - 2 - 3 * (k - 1) > L.free_y0 + L.free_h + 1,
            "top wire runs collide with the free zone");

    for (int t = 0; t < k; ++t) {
      L.window[int(Direction::Left)].push_back(side_base + 4 * t);
      L.window[int(Direction::Right)].push_back(side_base + 4 * t);
      L.window[int(Direction::Up)].push_back(side_base + 4 * t);
      L.window[int(Direction::Down)].push_back(side_base + 4 * t);
    }

    auto add_wire = [&](Direction side, int bit, int payload,
                        std::vector<std::pair<int, int>> cells) {
      WirePath w;
      w.side = side;
      w.bit = bit;
      w.payload_index = payload;
      w.cells = std::move(cells);
      L.wires.push_back(std::move(w));
    };

    // top group: slots are the leftmost input group (reversed); drops sit
    // in the inner left margin band
    for (int u = 0; u < k; ++u) {
      int TX = side_base + 4 * u;
      int H = N - 2 - 3 * u;
      int A = 3 * k + 2 + 3 * u;
      int R = 2 + 3 * (2 * k + u);
      int payload = k - 1 - u;
      int S = L.payload_col(payload);
      std::vector<std::pair<int, int>> cells;
      layout_detail::straight(cells, TX, N - 1, TX, H);
      layout_detail::straight(cells, TX, H, A, H);
      layout_detail::straight(cells, A, H, A, R);
      layout_detail::straight(cells, A, R, S, R);
      layout_detail::straight(cells, S, R, S, L.cy0 - 1);
      add_wire(Direction::Up, u, payload, std::move(cells));
    }
    // left group: outer left margin, second input group (reversed)
    for (int t = 0; t < k; ++t) {
      int W = side_base + 4 * t;
      int A = 2 + 3 * t;
      int R = 2 + 3 * (k + t);
      int payload = 2 * k - 1 - t;
      int S = L.payload_col(payload);
      std::vector<std::pair<int, int>> cells;
      layout_detail::straight(cells, 0, W, A, W);
      layout_detail::straight(cells, A, W, A, R);
      layout_detail::straight(cells, A, R, S, R);
      layout_detail::straight(cells, S, R, S, L.cy0 - 1);
      add_wire(Direction::Left, t, payload, std::move(cells));
    }
    // bottom group: shallowest band, third input group, runs leftward from
    // the shared window columns
    for (int u = 0; u < k; ++u) {
      int TX = side_base + 4 * u;
      int R = 2 + 3 * u;
      int payload = 2 * k + u;
      int S = L.payload_col(payload);
      std::vector<std::pair<int, int>> cells;
      layout_detail::straight(cells, TX, 0, TX, R);
      layout_detail::straight(cells, TX, R, S, R);
      layout_detail::straight(cells, S, R, S, L.cy0 - 1);
      add_wire(Direction::Down, u, payload, std::move(cells));
    }
    // right group: deepest band, drops on the far right, rightmost input
    // group in ascending order
    for (int t = 0; t < k; ++t) {
      int W = side_base + 4 * t;
      int A = N - 3 - 3 * t;
      int R = 2 + 3 * (3 * k + t);
      int payload = 3 * k + t;
      int S = L.payload_col(payload);
      std::vector<std::pair<int, int>> cells;
      layout_detail::straight(cells, N - 1, W, A, W);
      layout_detail::straight(cells, A, W, A, R);
      layout_detail::straight(cells, A, R, S, R);
      layout_detail::straight(cells, S, R, S, L.cy0 - 1);
      add_wire(Direction::Right, t, payload, std::move(cells));
    }
  }
  return L;
}

// Chebyshev distance between cells.
inline int cell_distance(std::pair<int, int> a, std::pair<int, int> b) {
  return std::max(std::abs(a.first - b.first), std::abs(a.second - b.second));
}

// Audits the emitted geometry against the layout invariants: wires
// pairwise separated by distance > 2, wires disjoint from the comp zone,
// free zone, and slots; slots pairwise disjoint inside the free zone and
// vertically aligned with their source columns.
inline LayoutAudit audit_layout(const MacroLayout& L) {
  LayoutAudit a;
  auto fail = [&](const std::string& s) { a.violations.push_back(s); };
  auto in_comp = [&](int x, int y) {
    return x >= L.cx0 && x < L.cx0 + L.m && y >= L.cy0 && y < L.cy0 + L.m;
  };
  auto in_free = [&](int x, int y) {
    return x >= L.free_x0 && x < L.free_x1 && y >= L.free_y0 &&
           y < L.free_y0 + L.free_h;
  };
  for (std::size_t i = 0; i < L.wires.size(); ++i) {
    for (auto [x, y] : L.wires[i].cells) {
      if (x < 0 || x >= L.N || y < 0 || y >= L.N)
        fail("wire " + std::to_string(i) + " leaves the macro-tile");
      if (in_comp(x, y)) fail("wire " + std::to_string(i) + " enters the comp zone");
      if (in_free(x, y)) fail("wire " + std::to_string(i) + " enters the free zone");
    }
    for (std::size_t j = i + 1; j < L.wires.size(); ++j) {
      int best = 1 << 30;
      for (auto c1 : L.wires[i].cells)
        for (auto c2 : L.wires[j].cells)
          best = std::min(best, cell_distance(c1, c2));
      if (best <= 2)
        fail("wires " + std::to_string(i) + " and " + std::to_string(j) +
             " come within distance " + std::to_string(best));
    }
  }
  // slot blocks are 4x4 (12-cell frame around a 2x2 interior)
  std::set<std::pair<int, int>> slot_cells;
  for (std::size_t s = 0; s < L.slots.size(); ++s) {
    const SlotSpec& sl = L.slots[s];
    if (std::abs(sl.x - (L.cx0 + sl.sx)) > 3)
      fail("slot " + std::to_string(s) + " is not in its source stripe");
    for (int dy = -1; dy <= 2; ++dy)
      for (int dx = -1; dx <= 2; ++dx) {
        std::pair<int, int> c{sl.x + dx, sl.y + dy};
        if (!slot_cells.insert(c).second)
          fail("slot " + std::to_string(s) + " overlaps another slot");
        if (!in_free(c.first, c.second))
          fail("slot " + std::to_string(s) + " leaves the free zone");
      }
  }
  std::set<std::pair<int, int>> wire_cells;
  for (const auto& w : L.wires)
    wire_cells.insert(w.cells.begin(), w.cells.end());
  for (const auto& c : slot_cells)
    if (wire_cells.count(c)) fail("a slot overlaps a wire");
  return a;
}

// Cell roles, computable from the layout for every position.
enum class CellRole {
  Skeleton,
  Window,
  Wire,
  CompZone,
  FreeZone,
  SlotInterior,
  SlotFrame
};

struct RoleInfo {
  CellRole role = CellRole::Skeleton;
  int wire = -1;        // wire index for Window/Wire
  int path_pos = -1;    // position along the wire path
  int slot = -1;        // slot index for slot cells
  int comp_x = -1, comp_y = -1;  // comp coordinates for CompZone
};

struct RoleMap {
  const MacroLayout* layout = nullptr;
  std::map<std::pair<int, int>, RoleInfo> special;

  RoleInfo at(int x, int y) const {
    auto it = special.find({x, y});
    if (it != special.end()) return it->second;
    RoleInfo r;
    const MacroLayout& L = *layout;
    if (x >= L.cx0 && x < L.cx0 + L.m && y >= L.cy0 && y < L.cy0 + L.m) {
      r.role = CellRole::CompZone;
      r.comp_x = x - L.cx0;
      r.comp_y = y - L.cy0;
    } else if (x >= L.free_x0 && x < L.free_x1 && y >= L.free_y0 &&
               y < L.free_y0 + L.free_h) {
      r.role = CellRole::FreeZone;
    }
    return r;
  }
};

inline RoleMap build_role_map(const MacroLayout& L) {
  RoleMap rm;
  rm.layout = &L;
  for (std::size_t w = 0; w < L.wires.size(); ++w) {
    const auto& cells = L.wires[w].cells;
    for (std::size_t p = 0; p < cells.size(); ++p) {
      RoleInfo r;
      r.role = p == 0 ? CellRole::Window : CellRole::Wire;
      r.wire = int(w);
      r.path_pos = int(p);
      rm.special[cells[p]] = r;
    }
  }
  for (std::size_t s = 0; s < L.slots.size(); ++s) {
    const SlotSpec& sl = L.slots[s];
    for (int dy = -1; dy <= 2; ++dy)
      for (int dx = -1; dx <= 2; ++dx) {
        RoleInfo r;
        bool interior = dx >= 0 && dx <= 1 && dy >= 0 && dy <= 1;
        r.role = interior ? CellRole::SlotInterior : CellRole::SlotFrame;
        r.slot = int(s);
        rm.special[{sl.x + dx, sl.y + dy}] = r;
      }
  }
  return rm;
}

// Sides through which a wire cell conducts its bit: the edge shared with
// the previous path cell (or the macro border for the window head) and
// the edge shared with the next cell (or the input row for the port).
inline std::pair<Direction, Direction> wire_conduct_sides(const MacroLayout& L,
                                                          int wire,
                                                          int path_pos) {
  const WirePath& w = L.wires[std::size_t(wire)];
  auto cell = w.cells[std::size_t(path_pos)];
  auto toward = [&](std::pair<int, int> other) {
    if (other.first > cell.first) return Direction::Right;
    if (other.first < cell.first) return Direction::Left;
    if (other.second > cell.second) return Direction::Up;
    return Direction::Down;
  };
  Direction in, out;
  if (path_pos == 0) {
    // window head: the bit enters through the macro-tile border
    switch (w.side) {
      case Direction::Left: in = Direction::Left; break;
      case Direction::Right: in = Direction::Right; break;
      case Direction::Up: in = Direction::Up; break;
      default: in = Direction::Down; break;
    }
  } else {
    in = toward(w.cells[std::size_t(path_pos) - 1]);
  }
  if (path_pos + 1 < int(w.cells.size()))
    out = toward(w.cells[std::size_t(path_pos) + 1]);
  else
    out = Direction::Up;  // port cell feeds the input row above
  return {in, out};
}

}  // namespace wangkit
