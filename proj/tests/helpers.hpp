#pragma once

// Shared fixture tile sets and machines used by the unit tests and the
// acceptance suite.

#include <string>

#include "wangkit/core.hpp"

namespace wangkit::testfix {

// Two letter-tagged tiles with all sides equal: the full shift on two
// symbols.
inline TileSet full_shift2() {
  TileSet ts;
  ts.name = "full-shift-2";
  ts.colors = 1;
  ts.alphabet = {"a", "b"};
  ts.add_tile({0, 0, 0, 0, 0});
  ts.add_tile({0, 0, 0, 0, 1});
  return ts;
}

inline TileSet one_tile() {
  TileSet ts;
  ts.name = "one-tile";
  ts.colors = 1;
  ts.add_tile({0, 0, 0, 0});
  return ts;
}

// Hard-square ("golden mean") Wang encoding: a tile is marked or blank;
// no two marked tiles may be adjacent horizontally or vertically.
// Tile = (l, m, b): l = left neighbor's mark, m = own mark, b = below's
// mark; sides left=l right=m top=m bottom=b; marked tiles force l=b=0.
inline TileSet golden_mean() {
  TileSet ts;
  ts.name = "golden-mean";
  ts.colors = 2;
  ts.add_tile({0, 0, 0, 0});  // blank, blank left, blank below
  ts.add_tile({0, 0, 0, 1});  // blank, blank left, marked below
  ts.add_tile({1, 0, 0, 0});  // blank, marked left, blank below
  ts.add_tile({1, 0, 0, 1});  // blank, marked left, marked below
  ts.add_tile({0, 1, 1, 0});  // marked
  return ts;
}

inline bool golden_mean_marked(std::int64_t tile) { return tile == 4; }

// N*N tiles carrying coordinates mod N: tile (i,j) has left/bottom (i,j),
// right (i+1 mod N, j), top (i, j+1 mod N). Color id = i*N + j.
inline TileSet coord_tiles(int n) {
  TileSet ts;
  ts.name = "coords-" + std::to_string(n);
  ts.colors = ColorId(n) * ColorId(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Tile t;
      t.left = ColorId(i * n + j);
      t.bottom = ColorId(i * n + j);
      t.right = ColorId(((i + 1) % n) * n + j);
      t.top = ColorId(i * n + ((j + 1) % n));
      ts.add_tile(t);
    }
  return ts;
}

// --- machine corpus (text format, exercised through the parser) ---

// accepts immediately: start state is the accept state
inline const char* tm_accept_now =
    "tm accept-now 1 2\n"
    "start 0\n"
    "accept 0\n";

// scans right over nonblank symbols, accepts at the first blank
inline const char* tm_scan_right =
    "tm scan-right 2 3\n"
    "start 0\n"
    "accept 1\n"
    "t 0 1 -> 0 1 R\n"
    "t 0 2 -> 0 2 R\n"
    "t 0 0 -> 1 0 S\n";

// accepts iff the input (over symbols 1='0', 2='1') has an even number
// of 2s; odd parity gets stuck at the blank
inline const char* tm_parity =
    "tm parity 3 3\n"
    "start 0\n"
    "accept 2\n"
    "t 0 1 -> 0 1 R\n"
    "t 0 2 -> 1 2 R\n"
    "t 1 1 -> 1 1 R\n"
    "t 1 2 -> 0 2 R\n"
    "t 0 0 -> 2 0 S\n";

// accepts iff every input symbol's bit (sym-1) equals the read-only bit
// under it
inline const char* tm_ro_match =
    "tm ro-match 2 3 ro\n"
    "start 0\n"
    "accept 1\n"
    "t 0 1 0 -> 0 1 R\n"
    "t 0 2 1 -> 0 2 R\n"
    "t 0 0 0 -> 1 0 S\n"
    "t 0 0 1 -> 1 0 S\n";

// spins in place forever
inline const char* tm_loop =
    "tm loop 2 2\n"
    "start 0\n"
    "accept 1\n"
    "t 0 0 -> 0 0 S\n"
    "t 0 1 -> 0 1 S\n";

// walks left immediately (off the frame)
inline const char* tm_walk_left =
    "tm walk-left 2 2\n"
    "start 0\n"
    "accept 1\n"
    "t 0 0 -> 0 0 L\n"
    "t 0 1 -> 0 1 L\n";

}  // namespace wangkit::testfix
