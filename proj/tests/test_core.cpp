#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "wangkit/core.hpp"
#include "wangkit/io.hpp"

using namespace wangkit;

namespace {

TileSet simple_set() {
  TileSet ts;
  ts.name = "simple";
  ts.colors = 10;
  ts.add_tile({0, 1, 2, 3});
  ts.add_tile({1, 7, 8, 9});
  ts.add_tile({5, 7, 8, 9, -1});
  ts.add_tile({4, 5, 6, 2});
  return ts;
}

}  // namespace

TEST_CASE("tiles_match on shared sides") {
  Tile a{0, 1, 2, 3};
  CHECK(tiles_match(a, Tile{1, 7, 8, 9}, Direction::Right));
  CHECK_FALSE(tiles_match(a, Tile{5, 7, 8, 9}, Direction::Right));
  CHECK(tiles_match(a, Tile{4, 5, 6, 2}, Direction::Up));
  CHECK_FALSE(tiles_match(a, Tile{4, 5, 3, 6}, Direction::Up));
}

TEST_CASE("matching is symmetric under direction reversal") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<ColorId> color(0, 4);
  for (int it = 0; it < 200; ++it) {
    Tile a{color(rng), color(rng), color(rng), color(rng)};
    Tile b{color(rng), color(rng), color(rng), color(rng)};
    CHECK(tiles_match(a, b, Direction::Right) ==
          tiles_match(b, a, Direction::Left));
    CHECK(tiles_match(a, b, Direction::Up) ==
          tiles_match(b, a, Direction::Down));
  }
}

TEST_CASE("validate_patch finds adjacency violations") {
  TileSet ts = simple_set();
  SECTION("single assigned cell has no adjacencies") {
    Patch p(3, 3);
    p.set(1, 1, 0);
    CHECK(validate_patch(ts, p).empty());
  }
  SECTION("two horizontal copies of (0,1,2,3) violate once") {
    Patch p(2, 1);
    p.set(0, 0, 0);
    p.set(1, 0, 0);
    auto v = validate_patch(ts, p);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == Violation{0, 0, 1, 0});
  }
  SECTION("out of range tile index is an input error") {
    Patch p(1, 1);
    p.set(0, 0, 99);
    CHECK_THROWS_AS(validate_patch(ts, p), InputError);
  }
}

TEST_CASE("duplicate quadruples are rejected") {
  TileSet ts;
  ts.colors = 2;
  ts.add_tile({0, 0, 0, 0});
  ts.add_tile({0, 0, 0, 1});
  ts.tiles.push_back({0, 0, 0, 0});
  CHECK_THROWS_AS(ts.validate(), InputError);
}

TEST_CASE("occurrences") {
  TileSet ts;
  ts.colors = 1;
  ts.alphabet = {"a", "b"};
  ts.add_tile({0, 0, 0, 0, 0});
  ts.add_tile({0, 0, 0, 0, 1});

  SECTION("needle equal to haystack occurs at the origin only") {
    Patch p(2, 2);
    for (int y = 0; y < 2; ++y)
      for (int x = 0; x < 2; ++x) p.set(x, y, (x + y) % 2);
    auto occ = occurrences(p, p);
    REQUIRE(occ.size() == 1);
    CHECK(occ[0] == std::pair<int, int>{0, 0});
  }
  SECTION("1x1 needle over uniform 3x3 haystack hits 9 offsets") {
    Patch hay(3, 3);
    for (auto& c : hay.cells) c = 0;
    Patch needle(1, 1);
    needle.set(0, 0, 0);
    CHECK(occurrences(hay, needle).size() == 9);
  }
  SECTION("checkerboard parity: offsets with dx+dy even") {
    Patch hay(4, 4);
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 4; ++x) hay.set(x, y, (x + y) % 2);
    Patch needle(2, 2);
    for (int y = 0; y < 2; ++y)
      for (int x = 0; x < 2; ++x) needle.set(x, y, (x + y) % 2);
    auto occ = occurrences(hay, needle);
    // independent scan over the 3x3 offset grid
    std::size_t expected = 0;
    for (int dy = 0; dy < 3; ++dy)
      for (int dx = 0; dx < 3; ++dx)
        if ((dx + dy) % 2 == 0) ++expected;
    CHECK(occ.size() == expected);
    for (auto [dx, dy] : occ) CHECK((dx + dy) % 2 == 0);
  }
  SECTION("needle larger than haystack yields empty list") {
    Patch hay(1, 1);
    hay.set(0, 0, 0);
    Patch needle(2, 1);
    needle.set(0, 0, 0);
    needle.set(1, 0, 0);
    CHECK(occurrences(hay, needle).empty());
  }
}

TEST_CASE("split_into_blocks and flatten round-trip") {
  TileSet ts;
  ts.colors = 1;
  for (int i = 0; i < 4; ++i) {
    Tile t{0, 0, 0, 0};
    t.letter = -1;
    // distinct quadruples via a color universe of 4
    ts.colors = 4;
    t.left = t.right = t.top = t.bottom = ColorId(i);
    ts.add_tile(t);
  }
  Patch p(6, 6);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 6; ++x) p.set(x, y, (x / 3 + y / 3) % 4);
  SECTION("6x6 with n=3 gives a 2x2 grid") {
    auto grid = split_into_blocks(ts, p, 3);
    CHECK(grid.cols == 2);
    CHECK(grid.rows == 2);
    CHECK(flatten_blocks(grid) == p);
  }
  SECTION("6x6 with n=4 is a boundary error") {
    CHECK_THROWS_AS(split_into_blocks(ts, p, 4), BoundaryError);
  }
  SECTION("nonzero offset leaves incomplete border blocks") {
    CHECK_THROWS_AS(split_into_blocks(ts, p, 3, {1, 0}), BoundaryError);
  }
}

TEST_CASE("macro-colors read off the block sides") {
  TileSet ts;
  ts.colors = 8;
  ts.add_tile({0, 1, 2, 3});
  ts.add_tile({1, 4, 5, 6});
  Patch body(2, 1);
  body.set(0, 0, 0);
  body.set(1, 0, 1);
  CHECK_THROWS_AS(make_macro_tile(ts, body), InputError);  // not square
  Patch sq(1, 1);
  sq.set(0, 0, 0);
  auto mt = make_macro_tile(ts, sq);
  CHECK(mt.macro_colors[int(Direction::Left)] == std::vector<ColorId>{0});
  CHECK(mt.macro_colors[int(Direction::Right)] == std::vector<ColorId>{1});
  CHECK(mt.macro_colors[int(Direction::Up)] == std::vector<ColorId>{2});
  CHECK(mt.macro_colors[int(Direction::Down)] == std::vector<ColorId>{3});
}

TEST_CASE("letter projection and column constancy") {
  TileSet ts;
  ts.colors = 2;
  ts.alphabet = {"a", "b"};
  ts.add_tile({0, 0, 0, 0, 0});
  ts.add_tile({0, 0, 1, 1, 1});
  SECTION("uniform column letters set the flag") {
    Patch p(2, 2);
    p.set(0, 0, 0);
    p.set(0, 1, 0);
    p.set(1, 0, 1);
    p.set(1, 1, 1);
    auto g = project_letters(ts, p);
    CHECK(g.columns_constant);
    CHECK(g.at(0, 0) == 0);
    CHECK(g.at(1, 1) == 1);
  }
  SECTION("mixed letters in one column clear the flag") {
    Patch p(1, 2);
    p.set(0, 0, 0);
    p.set(0, 1, 1);
    CHECK_FALSE(project_letters(ts, p).columns_constant);
  }
  SECTION("projection absent is a config error") {
    TileSet plain;
    plain.colors = 1;
    plain.add_tile({0, 0, 0, 0});
    Patch p(1, 1);
    p.set(0, 0, 0);
    CHECK_THROWS_AS(project_letters(plain, p), ConfigError);
  }
}

TEST_CASE("tileset text format round-trip") {
  std::string text =
      "# golden sample\n"
      "tileset demo 4 3\n"
      "tile 0 0 1 2 3\n"
      "tile 1 1 0 3 2 letter=a\n"
      "tile 2 2 2 2 2 letter=b\n";
  TileSet ts = read_tileset_string(text);
  CHECK(ts.name == "demo");
  CHECK(ts.colors == 4);
  REQUIRE(ts.tiles.size() == 3);
  CHECK(ts.tiles[1].letter == 0);
  CHECK(ts.tiles[2].letter == 1);
  std::ostringstream out;
  write_tileset(out, ts);
  TileSet again = read_tileset_string(out.str());
  CHECK(again.tiles == ts.tiles);
  CHECK(again.alphabet == ts.alphabet);

  SECTION("id gaps are rejected") {
    CHECK_THROWS_AS(
        read_tileset_string("tileset x 2 1\ntile 1 0 0 0 0\n"), FormatError);
  }
  SECTION("color out of range is rejected") {
    CHECK_THROWS_AS(
        read_tileset_string("tileset x 1 1\ntile 0 0 0 0 5\n"), InputError);
  }
}

TEST_CASE("patch text format round-trip with top row first") {
  std::string text =
      "patch 3 2\n"
      "0 1 2\n"
      ". 4 .\n";
  Patch p = read_patch_string(text);
  CHECK(p.at(0, 1) == 0);  // file row 0 is the top row, y = height-1
  CHECK(p.at(2, 1) == 2);
  CHECK(p.at(0, 0) == -1);
  CHECK(p.at(1, 0) == 4);
  std::ostringstream out;
  write_patch(out, p);
  CHECK(read_patch_string(out.str()) == p);
}

TEST_CASE("valid sub-rectangles of a valid patch stay valid") {
  // random patches over a permissive set, then every sub-rectangle that
  // occurs must itself validate
  TileSet ts;
  ts.colors = 2;
  for (ColorId l : {0u, 1u})
    for (ColorId r : {0u, 1u})
      for (ColorId t : {0u, 1u})
        for (ColorId b : {0u, 1u}) ts.add_tile({l, r, t, b});
  std::mt19937 rng(11);
  for (int it = 0; it < 20; ++it) {
    Patch p(4, 4);
    // grow a valid patch greedily
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 4; ++x) {
        std::vector<int> ok;
        for (std::size_t t = 0; t < ts.tiles.size(); ++t) {
          p.set(x, y, std::int64_t(t));
          if (validate_patch(ts, p).empty()) ok.push_back(int(t));
          p.cells[p.idx(x, y)] = -1;
        }
        REQUIRE_FALSE(ok.empty());
        p.set(x, y, ok[std::uniform_int_distribution<std::size_t>(
            0, ok.size() - 1)(rng)]);
      }
    REQUIRE(validate_patch(ts, p).empty());
    Patch sub(2, 2);
    for (int y = 0; y < 2; ++y)
      for (int x = 0; x < 2; ++x) sub.set(x, y, p.at(x + 1, y + 1));
    CHECK(validate_patch(ts, sub).empty());
    CHECK_FALSE(occurrences(p, sub).empty());
  }
}
