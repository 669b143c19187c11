#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wangkit/core.hpp"

namespace wangkit {

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;  // rest of line is a comment
    toks.push_back(t);
  }
  return toks;
}

inline long long parse_int(const std::string& s, const char* what, int lineno) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw FormatError(std::string("line ") + std::to_string(lineno) +
                      ": expected integer for " + what + ", got '" + s + "'");
  }
}

}  // namespace detail

// Tile set text format:
//   tileset <name> <ncolors> <ntiles>
//   tile <id> <left> <right> <top> <bottom> [letter=<symbol>]
// '#' starts a comment; tile ids must appear in order 0..ntiles-1.
inline TileSet read_tileset(std::istream& in) {
  TileSet ts;
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  long long ntiles = -1;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (!header_seen) {
      if (toks[0] != "tileset" || toks.size() != 4)
        throw FormatError("line " + std::to_string(lineno) +
                          ": expected 'tileset <name> <ncolors> <ntiles>'");
      ts.name = toks[1];
      long long nc = detail::parse_int(toks[2], "ncolors", lineno);
      ntiles = detail::parse_int(toks[3], "ntiles", lineno);
      if (nc < 0 || ntiles < 0)
        throw FormatError("line " + std::to_string(lineno) +
                          ": negative count in tileset header");
      ts.colors = static_cast<ColorId>(nc);
      header_seen = true;
      continue;
    }
    if (toks[0] != "tile" || (toks.size() != 6 && toks.size() != 7))
      throw FormatError("line " + std::to_string(lineno) +
                        ": expected 'tile <id> <l> <r> <t> <b> [letter=X]'");
    long long id = detail::parse_int(toks[1], "tile id", lineno);
    if (id != static_cast<long long>(ts.tiles.size()))
      throw FormatError("line " + std::to_string(lineno) +
                        ": tile ids must be consecutive from 0");
    Tile t;
    t.left = static_cast<ColorId>(detail::parse_int(toks[2], "left", lineno));
    t.right = static_cast<ColorId>(detail::parse_int(toks[3], "right", lineno));
    t.top = static_cast<ColorId>(detail::parse_int(toks[4], "top", lineno));
    t.bottom = static_cast<ColorId>(detail::parse_int(toks[5], "bottom", lineno));
    if (toks.size() == 7) {
      const std::string& f = toks[6];
      if (f.rfind("letter=", 0) != 0)
        throw FormatError("line " + std::to_string(lineno) +
                          ": expected letter=<symbol>");
      std::string sym = f.substr(7);
      if (sym.empty())
        throw FormatError("line " + std::to_string(lineno) + ": empty letter");
      auto it = std::find(ts.alphabet.begin(), ts.alphabet.end(), sym);
      if (it == ts.alphabet.end()) {
        ts.alphabet.push_back(sym);
        t.letter = static_cast<std::int32_t>(ts.alphabet.size() - 1);
      } else {
        t.letter = static_cast<std::int32_t>(it - ts.alphabet.begin());
      }
    }
    ts.add_tile(t);
  }
  if (!header_seen) throw FormatError("missing tileset header");
  if (static_cast<long long>(ts.tiles.size()) != ntiles)
    throw FormatError("tileset declares " + std::to_string(ntiles) +
                      " tiles but " + std::to_string(ts.tiles.size()) +
                      " were given");
  ts.validate();
  return ts;
}

inline void write_tileset(std::ostream& out, const TileSet& ts) {
  out << "tileset " << ts.name << ' ' << ts.colors << ' ' << ts.tiles.size()
      << '\n';
  for (std::size_t i = 0; i < ts.tiles.size(); ++i) {
    const Tile& t = ts.tiles[i];
    out << "tile " << i << ' ' << t.left << ' ' << t.right << ' ' << t.top
        << ' ' << t.bottom;
    if (t.letter >= 0) out << " letter=" << ts.alphabet[std::size_t(t.letter)];
    out << '\n';
  }
}

// Patch text format:
//   patch <width> <height>
// then height rows, top row first, each with width fields: a tile id or '.'.
inline Patch read_patch(std::istream& in) {
  std::string line;
  int lineno = 0;
  int width = -1, height = -1;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (toks[0] != "patch" || toks.size() != 3)
      throw FormatError("line " + std::to_string(lineno) +
                        ": expected 'patch <width> <height>'");
    width = static_cast<int>(detail::parse_int(toks[1], "width", lineno));
    height = static_cast<int>(detail::parse_int(toks[2], "height", lineno));
    break;
  }
  if (width <= 0 || height <= 0)
    throw FormatError("patch header missing or dimensions not positive");
  Patch p(width, height);
  int rows_read = 0;
  while (rows_read < height && std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    if (static_cast<int>(toks.size()) != width)
      throw FormatError("line " + std::to_string(lineno) + ": expected " +
                        std::to_string(width) + " fields, got " +
                        std::to_string(toks.size()));
    int y = height - 1 - rows_read;  // top row first in the file
    for (int x = 0; x < width; ++x) {
      if (toks[std::size_t(x)] == ".") continue;
      p.set(x, y, detail::parse_int(toks[std::size_t(x)], "tile id", lineno));
    }
    ++rows_read;
  }
  if (rows_read != height)
    throw FormatError("patch body ended after " + std::to_string(rows_read) +
                      " of " + std::to_string(height) + " rows");
  return p;
}

inline void write_patch(std::ostream& out, const Patch& p) {
  out << "patch " << p.width << ' ' << p.height << '\n';
  for (int y = p.height - 1; y >= 0; --y) {
    for (int x = 0; x < p.width; ++x) {
      if (x) out << ' ';
      std::int64_t v = p.at(x, y);
      if (v < 0)
        out << '.';
      else
        out << v;
    }
    out << '\n';
  }
}

inline TileSet read_tileset_string(const std::string& s) {
  std::istringstream in(s);
  return read_tileset(in);
}

inline Patch read_patch_string(const std::string& s) {
  std::istringstream in(s);
  return read_patch(in);
}

}  // namespace wangkit
