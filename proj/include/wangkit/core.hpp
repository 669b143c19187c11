#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wangkit/errors.hpp"

namespace wangkit {

using ColorId = std::uint32_t;

enum class Direction : int { Left = 0, Right = 1, Up = 2, Down = 3 };

inline Direction opposite(Direction d) {
  switch (d) {
    case Direction::Left: return Direction::Right;
    case Direction::Right: return Direction::Left;
    case Direction::Up: return Direction::Down;
    default: return Direction::Up;
  }
}

// A Wang tile: four side colors plus an optional letter index into the
// owning tile set's alphabet (-1 = no letter). Letters ride along as a
// projection layer; side matching never looks at them.
struct Tile {
  ColorId left = 0;
  ColorId right = 0;
  ColorId top = 0;
  ColorId bottom = 0;
  std::int32_t letter = -1;

  ColorId side(Direction d) const {
    switch (d) {
      case Direction::Left: return left;
      case Direction::Right: return right;
      case Direction::Up: return top;
      default: return bottom;
    }
  }
  bool operator==(const Tile& o) const {
    return left == o.left && right == o.right && top == o.top &&
           bottom == o.bottom && letter == o.letter;
  }
};

struct TileHash {
  std::size_t operator()(const Tile& t) const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(t.left);
    mix(t.right);
    mix(t.top);
    mix(t.bottom);
    mix(static_cast<std::uint64_t>(t.letter) + 0x9e3779b9ull);
    return static_cast<std::size_t>(h);
  }
};

// Dense, ordered tile set. Tiles are referenced everywhere by index;
// duplicate quadruple(+letter) entries are rejected on insert.
struct TileSet {
  std::string name = "tileset";
  ColorId colors = 0;                  // size of the color universe
  std::vector<Tile> tiles;
  std::vector<std::string> alphabet;   // letter symbols; empty = no projection

  bool has_letters() const { return !alphabet.empty(); }

  void check_tile(const Tile& t) const {
    if (t.left >= colors || t.right >= colors || t.top >= colors ||
        t.bottom >= colors)
      throw InputError("tile references color out of range in '" + name + "'");
    if (t.letter >= 0 && static_cast<std::size_t>(t.letter) >= alphabet.size())
      throw InputError("tile letter out of range in '" + name + "'");
  }

  std::size_t add_tile(const Tile& t) {
    check_tile(t);
    tiles.push_back(t);
    return tiles.size() - 1;
  }

  void validate() const {
    std::unordered_set<Tile, TileHash> seen;
    for (const Tile& t : tiles) {
      check_tile(t);
      if (!seen.insert(t).second)
        throw InputError("duplicate tile quadruple in '" + name + "'");
    }
  }
};

// Rectangular, possibly partial assignment of tile indices to cells.
// x grows right, y grows up; cell value -1 means unassigned.
struct Patch {
  int width = 0;
  int height = 0;
  std::vector<std::int64_t> cells;  // height*width entries, row y major

  Patch() = default;
  Patch(int w, int h) : width(w), height(h), cells(std::size_t(w) * h, -1) {
    if (w <= 0 || h <= 0) throw InputError("patch dimensions must be positive");
  }

  std::size_t idx(int x, int y) const {
    return std::size_t(y) * width + x;
  }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  std::int64_t at(int x, int y) const { return cells[idx(x, y)]; }
  void set(int x, int y, std::int64_t tile) {
    if (!in_bounds(x, y)) throw InputError("patch cell out of bounds");
    cells[idx(x, y)] = tile;
  }
  bool fully_assigned() const {
    return std::all_of(cells.begin(), cells.end(),
                       [](std::int64_t v) { return v >= 0; });
  }
  bool operator==(const Patch& o) const {
    return width == o.width && height == o.height && cells == o.cells;
  }
};

// A fully tiled n-by-n block together with its four side color sequences.
// Side sequences read bottom-to-top for Left/Right and left-to-right for
// Up/Down.
struct MacroTile {
  int n = 0;
  Patch body;
  std::array<std::vector<ColorId>, 4> macro_colors;  // indexed by Direction
};

inline bool tiles_match(const Tile& a, const Tile& b, Direction dir) {
  switch (dir) {
    case Direction::Right: return a.right == b.left;
    case Direction::Left: return a.left == b.right;
    case Direction::Up: return a.top == b.bottom;
    default: return a.bottom == b.top;
  }
}

struct Violation {
  int x1, y1, x2, y2;  // the two adjacent cells that fail to match
  bool operator==(const Violation& o) const {
    return x1 == o.x1 && y1 == o.y1 && x2 == o.x2 && y2 == o.y2;
  }
};

// Every pair of horizontally/vertically adjacent assigned cells must match.
inline std::vector<Violation> validate_patch(const TileSet& ts, const Patch& p) {
  std::vector<Violation> out;
  auto tile_at = [&](int x, int y) -> const Tile* {
    std::int64_t v = p.at(x, y);
    if (v < 0) return nullptr;
    if (static_cast<std::size_t>(v) >= ts.tiles.size())
      throw InputError("patch references tile index out of range");
    return &ts.tiles[static_cast<std::size_t>(v)];
  };
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < p.width; ++x) {
      const Tile* t = tile_at(x, y);
      if (!t) continue;
      if (x + 1 < p.width) {
        const Tile* r = tile_at(x + 1, y);
        if (r && !tiles_match(*t, *r, Direction::Right))
          out.push_back({x, y, x + 1, y});
      }
      if (y + 1 < p.height) {
        const Tile* u = tile_at(x, y + 1);
        if (u && !tiles_match(*t, *u, Direction::Up))
          out.push_back({x, y, x, y + 1});
      }
    }
  }
  return out;
}

// All offsets (dx,dy) at which needle equals the corresponding
// sub-rectangle of haystack. Both patches must be fully assigned.
inline std::vector<std::pair<int, int>> occurrences(const Patch& haystack,
                                                    const Patch& needle) {
  if (!haystack.fully_assigned() || !needle.fully_assigned())
    throw InputError("occurrences requires fully assigned patches");
  std::vector<std::pair<int, int>> out;
  if (needle.width > haystack.width || needle.height > haystack.height)
    return out;
  for (int dy = 0; dy + needle.height <= haystack.height; ++dy) {
    for (int dx = 0; dx + needle.width <= haystack.width; ++dx) {
      bool ok = true;
      for (int y = 0; y < needle.height && ok; ++y)
        for (int x = 0; x < needle.width && ok; ++x)
          if (haystack.at(dx + x, dy + y) != needle.at(x, y)) ok = false;
      if (ok) out.emplace_back(dx, dy);
    }
  }
  return out;
}

inline MacroTile make_macro_tile(const TileSet& ts, const Patch& body) {
  if (body.width != body.height)
    throw InputError("macro-tile body must be square");
  if (!body.fully_assigned())
    throw InputError("macro-tile body must be fully assigned");
  MacroTile mt;
  mt.n = body.width;
  mt.body = body;
  auto tile = [&](int x, int y) -> const Tile& {
    std::int64_t v = body.at(x, y);
    if (static_cast<std::size_t>(v) >= ts.tiles.size())
      throw InputError("macro-tile references tile index out of range");
    return ts.tiles[static_cast<std::size_t>(v)];
  };
  for (int y = 0; y < mt.n; ++y) {
    mt.macro_colors[int(Direction::Left)].push_back(tile(0, y).left);
    mt.macro_colors[int(Direction::Right)].push_back(tile(mt.n - 1, y).right);
  }
  for (int x = 0; x < mt.n; ++x) {
    mt.macro_colors[int(Direction::Down)].push_back(tile(x, 0).bottom);
    mt.macro_colors[int(Direction::Up)].push_back(tile(x, mt.n - 1).top);
  }
  return mt;
}

// Cuts a fully assigned patch into a grid of n-by-n macro-tiles. The
// lattice is anchored at the given offset; any incomplete block inside
// the patch is a BoundaryError naming the offending block.
struct MacroGrid {
  int n = 0;
  int cols = 0;
  int rows = 0;
  std::vector<MacroTile> blocks;  // row-major, row 0 = bottom
  const MacroTile& block(int bx, int by) const {
    return blocks[std::size_t(by) * cols + bx];
  }
};

inline MacroGrid split_into_blocks(const TileSet& ts, const Patch& p, int n,
                                   std::pair<int, int> offset = {0, 0}) {
  if (n <= 0) throw InputError("block size must be positive");
  if (!p.fully_assigned())
    throw InputError("split_into_blocks requires a fully assigned patch");
  auto [ox, oy] = offset;
  if (ox < 0 || ox >= n || oy < 0 || oy >= n)
    throw InputError("block offset must lie in [0,n)");
  if (ox != 0 || p.width % n != 0)
    throw BoundaryError("incomplete block column starting at x=" +
                        std::to_string(ox != 0 ? 0 : (p.width / n) * n));
  if (oy != 0 || p.height % n != 0)
    throw BoundaryError("incomplete block row starting at y=" +
                        std::to_string(oy != 0 ? 0 : (p.height / n) * n));
  MacroGrid grid;
  grid.n = n;
  grid.cols = p.width / n;
  grid.rows = p.height / n;
  for (int by = 0; by < grid.rows; ++by) {
    for (int bx = 0; bx < grid.cols; ++bx) {
      Patch body(n, n);
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
          body.set(x, y, p.at(bx * n + x, by * n + y));
      grid.blocks.push_back(make_macro_tile(ts, body));
    }
  }
  return grid;
}

inline Patch flatten_blocks(const MacroGrid& grid) {
  Patch p(grid.cols * grid.n, grid.rows * grid.n);
  for (int by = 0; by < grid.rows; ++by)
    for (int bx = 0; bx < grid.cols; ++bx)
      for (int y = 0; y < grid.n; ++y)
        for (int x = 0; x < grid.n; ++x)
          p.set(bx * grid.n + x, by * grid.n + y,
                grid.block(bx, by).body.at(x, y));
  return p;
}

struct LetterGrid {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> letters;  // -1 where the tile carries none
  bool columns_constant = false;
  std::int32_t at(int x, int y) const {
    return letters[std::size_t(y) * width + x];
  }
};

// Applies the tile set's letter projection cell-wise. The flag reports
// whether each column carries a single letter value.
inline LetterGrid project_letters(const TileSet& ts, const Patch& p) {
  if (!ts.has_letters())
    throw ConfigError("tile set '" + ts.name + "' has no letter projection");
  if (!p.fully_assigned())
    throw InputError("project_letters requires a fully assigned patch");
  LetterGrid g;
  g.width = p.width;
  g.height = p.height;
  g.letters.resize(std::size_t(p.width) * p.height);
  for (int y = 0; y < p.height; ++y)
    for (int x = 0; x < p.width; ++x) {
      std::int64_t v = p.at(x, y);
      if (static_cast<std::size_t>(v) >= ts.tiles.size())
        throw InputError("patch references tile index out of range");
      g.letters[g.width * std::size_t(y) + x] = ts.tiles[std::size_t(v)].letter;
    }
  g.columns_constant = true;
  for (int x = 0; x < p.width && g.columns_constant; ++x)
    for (int y = 1; y < p.height; ++y)
      if (g.at(x, y) != g.at(x, 0)) {
        g.columns_constant = false;
        break;
      }
  return g;
}

}  // namespace wangkit
