#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "wangkit/core.hpp"
#include "wangkit/layout.hpp"
#include "wangkit/solver.hpp"
#include "wangkit/tm.hpp"
#include "wangkit/zoom.hpp"

namespace wangkit {

// N*N tiles that carry their coordinates modulo N; the backbone of every
// compiled set. Color id of the pair (i,j) is i*N+j.
inline TileSet skeleton_tiles(int n) {
  if (n < 2) throw InputError("skeleton zoom must be at least 2");
  TileSet ts;
  ts.name = "skeleton-" + std::to_string(n);
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

// ---------------------------------------------------------------------------
// The checker machine: a fixed interpreter whose program rides the
// read-only layer of the input row. In check mode it walks the
// payload/mask pairs left to right and rejects when a mask bit demands a
// zero over a one. In self-read mode the payload spells a unary index j
// and a claimed bit; the machine navigates to program column j by fixed
// offsets and compares the claim against its own hardwired text.
// ---------------------------------------------------------------------------

namespace checker {
enum Sym : int { Blank = 0, Zero = 1, One = 2, Start = 3, Prog = 4, Sep = 5, Level = 6 };
enum State : int {
  Q0 = 0,
  QMode,
  QScan,
  QMask0,
  QMask1,
  SrScan,
  SrS1,
  SrS2,
  SrS3,
  SrD1,
  SrD2,
  SrD3,
  SrClaim,
  SrB0a,
  SrB0b,
  SrB1a,
  SrB1b,
  SrCmp0,
  SrCmp1,
  QAcc,
  StateCount
};
}  // namespace checker

inline TMachine checker_machine() {
  using namespace checker;
  TMachine m;
  m.name = "checker";
  m.nstates = StateCount;
  m.nsymbols = 7;
  m.uses_ro = true;
  m.start = Q0;
  m.accept = QAcc;
  auto both = [&](int q, int sym, int q2, int s2, Move mv) {
    m.add_rule(q, sym, 0, {q2, s2, mv});
    m.add_rule(q, sym, 1, {q2, s2, mv});
  };
  both(Q0, Start, QMode, Start, Move::Right);
  both(QMode, Zero, QScan, Zero, Move::Right);
  both(QMode, One, SrScan, One, Move::Right);
  both(QScan, Zero, QMask0, Zero, Move::Right);
  both(QScan, One, QMask1, One, Move::Right);
  both(QScan, Blank, QScan, Blank, Move::Right);
  both(QScan, Sep, QAcc, Sep, Move::Stay);
  // the mask bit: 0 = don't care, 1 = the payload bit must be zero
  m.add_rule(QMask0, Prog, 0, {QScan, Prog, Move::Right});
  m.add_rule(QMask0, Prog, 1, {QScan, Prog, Move::Right});
  m.add_rule(QMask1, Prog, 0, {QScan, Prog, Move::Right});
  // (QMask1, Prog, ro=1): stuck — rejection
  both(SrScan, One, SrS1, One, Move::Right);
  both(SrScan, Zero, SrD1, Zero, Move::Right);
  both(SrS1, Prog, SrS2, Prog, Move::Right);
  both(SrS2, Blank, SrS3, Blank, Move::Right);
  both(SrS3, Blank, SrScan, Blank, Move::Right);
  both(SrD1, Prog, SrD2, Prog, Move::Right);
  both(SrD2, Blank, SrD3, Blank, Move::Right);
  both(SrD3, Blank, SrClaim, Blank, Move::Right);
  both(SrClaim, Zero, SrB0a, Zero, Move::Left);
  both(SrClaim, One, SrB1a, One, Move::Left);
  both(SrB0a, Blank, SrB0b, Blank, Move::Left);
  both(SrB0b, Blank, SrCmp0, Blank, Move::Left);
  both(SrB1a, Blank, SrB1b, Blank, Move::Left);
  both(SrB1b, Blank, SrCmp1, Blank, Move::Left);
  m.add_rule(SrCmp0, Prog, 0, {QAcc, Prog, Move::Stay});
  m.add_rule(SrCmp1, Prog, 1, {QAcc, Prog, Move::Stay});
  return m;
}

// ---------------------------------------------------------------------------
// Program bundles
// ---------------------------------------------------------------------------

struct ProgramBundle {
  enum class Kind { Checker, Raw };
  Kind kind = Kind::Checker;
  std::string name = "bundle";
  TMachine machine;

  // checker bundles
  std::vector<int> mask;     // per payload cell: 1 = must-be-zero, 0 = free
  int payload_alg = 0;       // recorded in the header
  std::vector<int> pi_bits;  // program text: mask section then header
  int level_field = -1;      // hardwired level; -1 encodes the zoom N instead

  // raw bundles: payload symbols, pad, optional end marker after the last
  // payload pair
  int bit_sym0 = checker::Zero;
  int bit_sym1 = checker::One;
  int pad_sym = checker::Blank;
  int end_sym = -1;

  std::vector<std::string> alphabet;  // letter projection (optional)
};

struct BundleTemplate {
  std::vector<int> mask;  // one entry per payload cell
  int payload_alg = 0;
};

namespace fixpoint_detail {

constexpr int kHeaderBits = 24;  // 8 version + 12 length + 4 payload alg

inline std::vector<int> header_bits(int total_len, int payload_alg) {
  std::vector<int> bits;
  auto push = [&](int value, int width) {
    for (int b = width - 1; b >= 0; --b) bits.push_back((value >> b) & 1);
  };
  push(1, 8);
  push(total_len, 12);
  push(payload_alg, 4);
  return bits;
}

}  // namespace fixpoint_detail

// Builds the fixed-point program: the text contains its own length in the
// header, so the emission is iterated until the bytes stabilize. Overflow
// of the 12-bit length field is a sizing error.
inline ProgramBundle self_referential_program(const BundleTemplate& tpl) {
  ProgramBundle b;
  b.kind = ProgramBundle::Kind::Checker;
  b.name = "pi";
  b.machine = checker_machine();
  b.mask = tpl.mask;
  b.payload_alg = tpl.payload_alg;
  for (int v : tpl.mask)
    if (v != 0 && v != 1)
      throw InputError("mask entries must be 0 (free) or 1 (must-be-zero)");
  int len = 0;
  for (int iter = 0; iter < 4; ++iter) {
    int next_len = int(tpl.mask.size()) + fixpoint_detail::kHeaderBits;
    if (next_len >= (1 << 12))
      throw SizingError("fixed-point program length overflows the header field");
    std::vector<int> bits = tpl.mask;
    auto hdr = fixpoint_detail::header_bits(next_len, tpl.payload_alg);
    bits.insert(bits.end(), hdr.begin(), hdr.end());
    b.pi_bits = std::move(bits);
    if (next_len == len) break;
    len = next_len;
  }
  return b;
}

// A raw bundle wraps an arbitrary machine whose input row is just the
// payload cells (with pads and an optional end marker).
inline ProgramBundle raw_bundle(TMachine machine, int bit_sym0, int bit_sym1,
                                int pad_sym, int end_sym = -1) {
  ProgramBundle b;
  b.kind = ProgramBundle::Kind::Raw;
  b.name = machine.name;
  b.machine = std::move(machine);
  b.bit_sym0 = bit_sym0;
  b.bit_sym1 = bit_sym1;
  b.pad_sym = pad_sym;
  b.end_sym = end_sym;
  return b;
}

// ---------------------------------------------------------------------------
// Input row specification
// ---------------------------------------------------------------------------

struct InputCell {
  enum class Kind { Hardwired, Payload };
  Kind kind = Kind::Hardwired;
  int sym = 0;       // initial tape symbol (hardwired cells)
  int ro = 0;        // read-only layer bit
  int payload = -1;  // payload index for payload cells
  bool head = false; // initial head position
  bool program = false;  // carries a program text bit on the ro layer
};

inline std::vector<InputCell> build_input_row(const ProgramBundle& b,
                                              const MacroLayout& L) {
  std::vector<InputCell> row(std::size_t(L.m));
  for (auto& c : row) c.sym = b.kind == ProgramBundle::Kind::Checker
                                  ? checker::Blank
                                  : b.pad_sym;
  int P = L.payload_count;
  auto payload_comp_col = [&](int p) { return L.payload_col(p) - L.cx0; };
  if (b.kind == ProgramBundle::Kind::Checker) {
    if (int(b.mask.size()) != P)
      throw InputError("mask length does not match the layout payload count");
    if (int(b.pi_bits.size()) != P + fixpoint_detail::kHeaderBits)
      throw InputError("program text length mismatch");
    row[0] = {InputCell::Kind::Hardwired, checker::Start, 0, -1, true, false};
    row[1] = {InputCell::Kind::Hardwired, checker::Zero, 0, -1, false, false};
    for (int p = 0; p < P; ++p) {
      int col = payload_comp_col(p);
      row[std::size_t(col)] = {InputCell::Kind::Payload, 0, 0, p, false, false};
      row[std::size_t(col) + 1] = {InputCell::Kind::Hardwired, checker::Prog,
                                   b.pi_bits[std::size_t(p)], -1, false, true};
    }
    int at = 2 + 4 * P;
    auto put = [&](int sym, int ro, bool prog) {
      if (at >= L.m)
        throw SizingError("program too long for the input row");
      row[std::size_t(at++)] = {InputCell::Kind::Hardwired, sym, ro, -1, false,
                                prog};
    };
    put(checker::Sep, 0, false);
    for (int i = 0; i < fixpoint_detail::kHeaderBits; ++i)
      put(checker::Prog, b.pi_bits[std::size_t(P + i)], true);
    put(checker::Sep, 0, false);
    int level_value = b.level_field >= 0 ? b.level_field : L.N;
    for (int bit = msb_floor_log2(BigInt(std::max(level_value, 1))); bit >= 0;
         --bit)
      put(checker::Level, (level_value >> bit) & 1, false);
    put(checker::Sep, 0, false);
  } else {
    for (int p = 0; p < P; ++p) {
      int col = payload_comp_col(p);
      row[std::size_t(col)] = {InputCell::Kind::Payload, 0, 0, p, false, false};
    }
    if (b.end_sym >= 0) {
      int at = P > 0 ? payload_comp_col(P - 1) + 1 : 0;
      if (at >= L.m) throw SizingError("input row too small for the end marker");
      row[std::size_t(at)] = {InputCell::Kind::Hardwired, b.end_sym, 0, -1,
                              false, false};
    }
    if (L.m > 0) row[0].head = true;
  }
  return row;
}

// ---------------------------------------------------------------------------
// Reachable computation-zone content
// ---------------------------------------------------------------------------

struct SlotPattern {
  // diagram tiles at (sx,st),(sx+1,st),(sx,st+1),(sx+1,st+1)
  std::array<std::uint32_t, 4> cells;
  bool operator<(const SlotPattern& o) const { return cells < o.cells; }
  bool operator==(const SlotPattern& o) const { return cells == o.cells; }
};

struct CompContent {
  DiagramTiles dt;
  std::vector<InputCell> input_row;
  // per comp cell (s + t*m): reachable diagram tiles, ascending
  std::vector<std::vector<std::uint32_t>> cell_tiles;
  // distinct interior 2x2 blocks per position, from accepting runs
  std::map<std::pair<int, int>, std::vector<SlotPattern>> patterns;
};

namespace fixpoint_detail {

// Enumerates the payload bit vectors deliverable through the windows:
// all 2^P without zones, otherwise per phase with the constant zones
// forced.
inline std::vector<std::vector<int>> payload_space(const MacroLayout& L) {
  int P = L.payload_count;
  std::vector<std::vector<int>> out;
  if (!L.zones) {
    if (P > 20) throw SizingError("payload space too large to enumerate");
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << P); ++mask) {
      std::vector<int> bits(std::size_t(P), 0);
      for (int p = 0; p < P; ++p) bits[std::size_t(p)] = int((mask >> p) & 1);
      out.push_back(std::move(bits));
    }
    return out;
  }
  // zones: per side the data zone has k_bits free positions
  int free_bits = 4 * L.k_bits;
  if (free_bits > 18) throw SizingError("payload space too large to enumerate");
  for (int phase = 0; phase < 3; ++phase) {
    std::vector<int> zone_of(std::size_t(P), 0);
    for (const auto& w : L.wires)
      zone_of[std::size_t(w.payload_index)] = L.zone_role(w.bit, phase);
    std::vector<int> free_pos;
    for (int p = 0; p < P; ++p)
      if (zone_of[std::size_t(p)] == 0) free_pos.push_back(p);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << free_pos.size());
         ++mask) {
      std::vector<int> bits(std::size_t(P), 0);
      for (int p = 0; p < P; ++p)
        bits[std::size_t(p)] = zone_of[std::size_t(p)] == 2 ? 1 : 0;
      for (std::size_t i = 0; i < free_pos.size(); ++i)
        bits[std::size_t(free_pos[i])] = int((mask >> i) & 1);
      out.push_back(std::move(bits));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace fixpoint_detail

// Simulates the bundle machine over every deliverable payload and records
// which diagram tiles each computation-zone cell can carry. Runs that
// reject contribute their complete rows (their frames stay unsatisfiable
// at the stuck cell); runs that fail to accept within m rows are a sizing
// error for checker bundles, since the compiled predicate would silently
// change.
inline CompContent enumerate_comp_content(const ProgramBundle& b,
                                          const MacroLayout& L) {
  CompContent cc;
  cc.dt = diagram_tiles(b.machine);
  cc.input_row = build_input_row(b, L);
  int m = L.m;
  cc.cell_tiles.assign(std::size_t(m) * m, {});
  std::vector<std::set<std::uint32_t>> cell_sets(std::size_t(m) * m);

  std::unordered_map<Tile, std::uint32_t, TileHash> tile_id;
  for (std::uint32_t t = 0; t < cc.dt.ts.tiles.size(); ++t)
    tile_id.emplace(cc.dt.ts.tiles[t], t);

  const TMachine& M = b.machine;
  auto payloads = fixpoint_detail::payload_space(L);
  for (const auto& bits : payloads) {
    std::vector<int> tape(std::size_t(m), 0), ro(std::size_t(m), 0);
    int head = -1;
    for (int s = 0; s < m; ++s) {
      const InputCell& ic = cc.input_row[std::size_t(s)];
      tape[std::size_t(s)] =
          ic.kind == InputCell::Kind::Payload
              ? (bits[std::size_t(ic.payload)] ? b.bit_sym1 : b.bit_sym0)
              : ic.sym;
      ro[std::size_t(s)] = ic.ro;
      if (ic.head) head = s;
    }
    int state = M.start;
    std::vector<std::vector<std::uint32_t>> rows;
    bool truncated = false;
    for (int t = 0; t < m && !truncated; ++t) {
      // one machine step: derive the full row of diagram tiles from the
      // configurations on both sides of it
      std::vector<int> ntape = tape;
      int nhead = head, nstate = state;
      int sig_edge = -1;  // vertical edge (s-1,s) carrying a signal
      bool sig_right = false;
      if (state == M.accept || head < 0) {
        // identity row (a headless zone stays headless)
      } else {
        const TMachine::Rule* r =
            M.rule(state, tape[std::size_t(head)], ro[std::size_t(head)]);
        if (!r) {
          truncated = true;  // stuck: this row has no tile at the head
          break;
        }
        ntape[std::size_t(head)] = r->write_sym;
        nstate = r->next_state;
        if (r->move == Move::Right) {
          nhead = head + 1;
          sig_edge = head + 1;
          sig_right = true;
        } else if (r->move == Move::Left) {
          nhead = head - 1;
          sig_edge = head;
          sig_right = false;
        }
        if (nhead < 0 || nhead >= m) {
          truncated = true;  // head leaves through a side wall
          break;
        }
      }
      std::vector<std::uint32_t> row(std::size_t(m), 0);
      for (int s = 0; s < m; ++s) {
        Tile want;
        want.bottom = cc.dt.h_color(tape[std::size_t(s)],
                                    s == head ? state : -1, ro[std::size_t(s)]);
        want.top = cc.dt.h_color(ntape[std::size_t(s)],
                                 s == nhead ? nstate : -1, ro[std::size_t(s)]);
        want.left = s == sig_edge ? cc.dt.v_ids.at({nstate, sig_right})
                                  : cc.dt.v_none;
        want.right = s + 1 == sig_edge ? cc.dt.v_ids.at({nstate, sig_right})
                                       : cc.dt.v_none;
        auto it = tile_id.find(want);
        if (it == tile_id.end())
          throw InputError("internal: simulated row tile missing from the "
                           "diagram set");
        row[std::size_t(s)] = it->second;
      }
      rows.push_back(std::move(row));
      tape = std::move(ntape);
      head = nhead;
      state = nstate;
    }
    bool accepted = !truncated && state == M.accept && head >= 0;
    if (!truncated && !accepted && b.kind == ProgramBundle::Kind::Checker)
      throw SizingError(
          "computation zone too small: a run neither accepts nor rejects "
          "within m rows");
    for (int t = 0; t < int(rows.size()); ++t)
      for (int s = 0; s < m; ++s)
        cell_sets[std::size_t(t) * m + s].insert(
            rows[std::size_t(t)][std::size_t(s)]);
    if (accepted) {
      // interior blocks only: the top comp row has its diagram channel
      // erased toward the free zone, so slots stop one row short of it
      for (int st = 1; st + 2 < m; ++st)
        for (int sx = 0; sx + 1 < m; ++sx) {
          SlotPattern p{{rows[std::size_t(st)][std::size_t(sx)],
                         rows[std::size_t(st)][std::size_t(sx) + 1],
                         rows[std::size_t(st) + 1][std::size_t(sx)],
                         rows[std::size_t(st) + 1][std::size_t(sx) + 1]}};
          auto& list = cc.patterns[{sx, st}];
          if (std::find(list.begin(), list.end(), p) == list.end())
            list.push_back(p);
        }
    }
  }
  for (std::size_t i = 0; i < cell_sets.size(); ++i)
    cc.cell_tiles[i].assign(cell_sets[i].begin(), cell_sets[i].end());
  for (auto& [pos, list] : cc.patterns) std::sort(list.begin(), list.end());
  return cc;
}

// ---------------------------------------------------------------------------
// Quasiperiodicity upgrade: three-zone macro-color encoding plus
// diversification slots for every reachable interior 2x2 pattern of the
// computation zone, stacked in the free zone above their source columns.
// ---------------------------------------------------------------------------

struct UpgradeResult {
  MacroLayout layout;
  std::vector<SlotPattern> patterns;  // indexed by SlotSpec::pattern
};

inline UpgradeResult quasiperiodic_upgrade(const MacroLayout& base,
                                           const ProgramBundle& bundle,
                                           bool with_zones = true) {
  UpgradeResult out;
  out.layout = layout(base.N, base.k_bits, base.m, with_zones);
  MacroLayout& L = out.layout;
  CompContent cc = enumerate_comp_content(bundle, L);

  std::set<std::pair<int, int>> occupied;
  std::map<int, int> next_y;  // per anchor column, placement scan hint
  auto block_free = [&](int x, int y) {
    for (int dy = -1; dy <= 2; ++dy)
      for (int dx = -1; dx <= 2; ++dx)
        if (occupied.count({x + dx, y + dy})) return false;
    return true;
  };
  auto block_take = [&](int x, int y) {
    for (int dy = -1; dy <= 2; ++dy)
      for (int dx = -1; dx <= 2; ++dx) occupied.insert({x + dx, y + dy});
  };
  int top_used = L.free_y0;
  for (const auto& [pos, list] : cc.patterns) {
    auto [sx, st] = pos;
    for (const auto& pat : list) {
      int pattern_id = int(out.patterns.size());
      out.patterns.push_back(pat);
      int x = L.cx0 + sx;
      // clamp the 4x4 block into free-zone columns while staying within
      // the source's vertical stripe
      x = std::max(x, L.free_x0 + 1);
      x = std::min(x, L.free_x1 - 3);
      if (std::abs(x - (L.cx0 + sx)) > 3)
        throw SizingError("slot cannot stay in its source stripe");
      auto hint = next_y.find(x);
      int y = hint == next_y.end() ? L.free_y0 + 1 : hint->second;
      while (!block_free(x, y)) ++y;
      block_take(x, y);
      next_y[x] = y + 4;
      top_used = std::max(top_used, y + 2);
      L.slots.push_back({sx, st, pattern_id, x, y});
    }
  }
  L.free_h = std::max(L.free_h, top_used - L.free_y0 + 2);
  if (!(L.N - 2 - 3 * (L.k_win - 1) > L.free_y0 + L.free_h + 1))
    throw SizingError("diversification slots do not fit in the free zone");
  return out;
}

// ---------------------------------------------------------------------------
// The compiler
// ---------------------------------------------------------------------------

enum class ChannelKind : int { None = 0, Bit = 1, DiagH = 2, DiagV = 3 };

struct ColorInfo {
  int i = 0, j = 0;          // coordinates carried on the edge
  ChannelKind kind = ChannelKind::None;
  int aux = 0;               // bit value or diagram color id
  int phase = -1;            // -1 = unphased
  int letter = -1;           // -1 = no letter component
};

struct CompiledSet {
  TileSet ts;
  MacroLayout layout;
  ProgramBundle bundle;
  DiagramTiles dt;
  std::vector<InputCell> input_row;
  std::vector<SlotPattern> slot_patterns;
  std::vector<ColorInfo> colors;
  std::map<std::array<int, 6>, ColorId> color_ids;

  ColorId color(int i, int j, ChannelKind kind, int aux, int phase,
                int letter) {
    std::array<int, 6> key{i, j, int(kind), aux, phase, letter};
    auto it = color_ids.find(key);
    if (it != color_ids.end()) return it->second;
    ColorId id = ColorId(colors.size());
    colors.push_back({i, j, kind, aux, phase, letter});
    color_ids.emplace(key, id);
    ts.colors = ColorId(colors.size());
    return id;
  }
  const ColorInfo& info(ColorId c) const { return colors[std::size_t(c)]; }
};

namespace fixpoint_detail {

struct SideSpec {
  ChannelKind kind = ChannelKind::None;
  int aux = 0;
};

}  // namespace fixpoint_detail

// Compiles a program bundle against a layout into a Wang tile set.
// Deterministic: identical inputs produce identical tile sets.
inline CompiledSet compile(const ProgramBundle& bundle, const MacroLayout& L,
                           const std::vector<SlotPattern>& slot_patterns = {}) {
  CompiledSet cs;
  cs.layout = L;
  cs.bundle = bundle;
  cs.ts.name = bundle.name + "-N" + std::to_string(L.N);
  cs.ts.alphabet = bundle.alphabet;
  cs.slot_patterns = slot_patterns;
  CompContent cc = enumerate_comp_content(bundle, L);
  cs.dt = cc.dt;
  cs.input_row = cc.input_row;
  if (!L.slots.empty() && slot_patterns.empty())
    throw InputError("layout has slots but no pattern table was given");

  RoleMap roles = build_role_map(L);
  const int N = L.N;
  const int nphase = L.zones ? 3 : 1;
  const int nletter = bundle.alphabet.empty() ? 1 : int(bundle.alphabet.size());

  // wire index -> allowed bits per phase (zone forcing at the window)
  auto window_bits_allowed = [&](int wire, int phase) {
    std::vector<int> bits;
    if (!L.zones) {
      bits = {0, 1};
      return bits;
    }
    int role = L.zone_role(L.wires[std::size_t(wire)].bit, phase);
    if (role == 0) bits = {0, 1};
    if (role == 1) bits = {0};
    if (role == 2) bits = {1};
    return bits;
  };

  auto side_phase = [&](int i, int j, Direction d, int phase) -> int {
    if (!L.zones) return -1;
    bool phased = false;
    switch (d) {
      case Direction::Left: phased = i == 0 || j == 0 || j == N - 1; break;
      case Direction::Right: phased = i == N - 1 || j == 0 || j == N - 1; break;
      case Direction::Up: phased = j == N - 1 || i == 0 || i == N - 1; break;
      case Direction::Down: phased = j == 0 || i == 0 || i == N - 1; break;
    }
    if (!phased) return -1;
    if (d == Direction::Up && j == N - 1) return (phase + 1) % 3;
    return phase;
  };

  auto emit = [&](int i, int j,
                  std::array<fixpoint_detail::SideSpec, 4> chan, int phase,
                  int letter) {
    Tile t;
    auto make = [&](Direction d, int ci, int cj) {
      const auto& sp = chan[std::size_t(int(d))];
      bool vertical_edge = d == Direction::Up || d == Direction::Down;
      return cs.color(ci, cj, sp.kind, sp.aux, side_phase(i, j, d, phase),
                      vertical_edge ? letter : -1);
    };
    t.left = make(Direction::Left, i, j);
    t.bottom = make(Direction::Down, i, j);
    t.right = make(Direction::Right, (i + 1) % N, j);
    t.top = make(Direction::Up, i, (j + 1) % N);
    t.letter = letter;
    cs.ts.tiles.push_back(t);
  };

  using fixpoint_detail::SideSpec;
  auto none4 = [] {
    return std::array<SideSpec, 4>{SideSpec{}, SideSpec{}, SideSpec{},
                                   SideSpec{}};
  };
  // channel conversion for diagram edges: the v_none wall becomes a plain
  // edge, everything else keeps the diagram color id
  auto vchan = [&](ColorId v) {
    if (v == cs.dt.v_none) return SideSpec{};
    return SideSpec{ChannelKind::DiagV, int(v)};
  };
  auto hchan = [&](ColorId h) { return SideSpec{ChannelKind::DiagH, int(h)}; };

  for (int j = 0; j < N; ++j) {
    for (int i = 0; i < N; ++i) {
      RoleInfo role = roles.at(i, j);
      // only ring cells carry the phase component; everything else would
      // emit identical tiles three times
      bool ring = i == 0 || i == N - 1 || j == 0 || j == N - 1;
      int cell_phases = (L.zones && ring) ? nphase : 1;
      for (int phase = 0; phase < cell_phases; ++phase) {
        for (int letter0 = 0; letter0 < nletter; ++letter0) {
          int letter = bundle.alphabet.empty() ? -1 : letter0;
          switch (role.role) {
            case CellRole::Skeleton:
            case CellRole::FreeZone:
              emit(i, j, none4(), phase, letter);
              break;
            case CellRole::Window:
            case CellRole::Wire: {
              auto [in, out] = wire_conduct_sides(L, role.wire, role.path_pos);
              std::vector<int> bits =
                  role.role == CellRole::Window
                      ? window_bits_allowed(role.wire, phase)
                      : std::vector<int>{0, 1};
              for (int b : bits) {
                auto chan = none4();
                chan[std::size_t(int(in))] = {ChannelKind::Bit, b};
                chan[std::size_t(int(out))] = {ChannelKind::Bit, b};
                emit(i, j, chan, phase, letter);
              }
              break;
            }
            case CellRole::CompZone: {
              int s = role.comp_x, t = role.comp_y;
              for (std::uint32_t dtile :
                   cc.cell_tiles[std::size_t(t) * L.m + s]) {
                const Tile& d = cs.dt.ts.tiles[dtile];
                auto chan = none4();
                chan[std::size_t(int(Direction::Left))] = vchan(d.left);
                chan[std::size_t(int(Direction::Right))] = vchan(d.right);
                // top edge: erased at the zone's top row when idle;
                // non-idle top rows are dropped (acceptance enforcement)
                if (t == L.m - 1) {
                  const auto& h = cs.dt.h_of(d.top);
                  if (h.head >= 0 && h.head != bundle.machine.accept) continue;
                } else {
                  chan[std::size_t(int(Direction::Up))] = hchan(d.top);
                }
                if (t == 0) {
                  const InputCell& ic = cc.input_row[std::size_t(s)];
                  if (ic.kind == InputCell::Kind::Payload) {
                    const auto& h = cs.dt.h_of(d.bottom);
                    int bit = h.sym == bundle.bit_sym1 ? 1 : 0;
                    chan[std::size_t(int(Direction::Down))] = {ChannelKind::Bit,
                                                               bit};
                  }
                } else {
                  chan[std::size_t(int(Direction::Down))] = hchan(d.bottom);
                }
                emit(i, j, chan, phase, letter);
              }
              break;
            }
            case CellRole::SlotInterior: {
              // interiors reuse the computation-zone tiles verbatim; no
              // emission here
              break;
            }
            case CellRole::SlotFrame: {
              const SlotSpec& sl = L.slots[std::size_t(role.slot)];
              int dx = i - sl.x, dy = j - sl.y;
              bool corner = (dx == -1 || dx == 2) && (dy == -1 || dy == 2);
              if (corner) {
                emit(i, j, none4(), phase, letter);
                break;
              }
              const SlotPattern& pat =
                  cs.slot_patterns[std::size_t(sl.pattern)];
              // the facing interior cell and the side we share with it
              int ix = std::clamp(dx, 0, 1), iy = std::clamp(dy, 0, 1);
              const Tile& d =
                  cs.dt.ts.tiles[pat.cells[std::size_t(iy * 2 + ix)]];
              int ci = L.cx0 + sl.sx + ix;  // fake comp coordinates
              int cj = L.cy0 + sl.st + iy;
              auto chan = none4();
              Tile t;
              auto real = [&](Direction dsd, int a, int bcoord) {
                return cs.color(a, bcoord, ChannelKind::None, 0,
                                side_phase(i, j, dsd, phase),
                                (dsd == Direction::Up || dsd == Direction::Down)
                                    ? letter
                                    : -1);
              };
              t.left = real(Direction::Left, i, j);
              t.bottom = real(Direction::Down, i, j);
              t.right = real(Direction::Right, (i + 1) % N, j);
              t.top = real(Direction::Up, i, (j + 1) % N);
              if (dy == -1) {  // below the interior: top side is fake
                t.top = cs.color(ci, cj, ChannelKind::DiagH, int(d.bottom), -1,
                                 letter);
              } else if (dy == 2) {  // above: bottom side is fake
                const auto& h = cs.dt.h_of(d.top);
                (void)h;
                t.bottom = cs.color(ci, cj + 1, ChannelKind::DiagH, int(d.top),
                                    -1, letter);
              } else if (dx == -1) {  // left of the interior
                t.right = cs.color(ci, cj,
                                   d.left == cs.dt.v_none ? ChannelKind::None
                                                          : ChannelKind::DiagV,
                                   d.left == cs.dt.v_none ? 0 : int(d.left), -1,
                                   -1);
              } else {  // dx == 2: right of the interior
                t.left = cs.color(ci + 1, cj,
                                  d.right == cs.dt.v_none ? ChannelKind::None
                                                          : ChannelKind::DiagV,
                                  d.right == cs.dt.v_none ? 0 : int(d.right),
                                  -1, -1);
              }
              t.letter = letter;
              cs.ts.tiles.push_back(t);
              break;
            }
          }
        }
      }
    }
  }
  // slot interiors: make sure the comp tiles they reuse exist (they were
  // emitted at their comp-zone positions)
  cs.ts.validate();
  return cs;
}

// A coordinate-only compiled set wrapping skeleton_tiles(N); lets the
// simulation verifier treat the plain skeleton through the same decoding
// path as real compiles.
inline CompiledSet skeleton_compiled(int n) {
  CompiledSet cs;
  cs.layout.N = n;
  cs.layout.k_bits = 0;
  cs.layout.m = 0;
  cs.bundle.kind = ProgramBundle::Kind::Raw;
  cs.bundle.name = "skeleton";
  cs.ts.name = "skeleton-" + std::to_string(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cs.color(i, j, ChannelKind::None, 0, -1, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Tile t;
      t.left = cs.color(i, j, ChannelKind::None, 0, -1, -1);
      t.bottom = t.left;
      t.right = cs.color((i + 1) % n, j, ChannelKind::None, 0, -1, -1);
      t.top = cs.color(i, (j + 1) % n, ChannelKind::None, 0, -1, -1);
      cs.ts.tiles.push_back(t);
    }
  cs.ts.validate();
  return cs;
}

// ---------------------------------------------------------------------------
// Macro-tile frames and decoding
// ---------------------------------------------------------------------------

// Boundary constraints for one N-by-N macro-tile whose window bits are
// given per side (bit t of side S). Non-window border positions carry the
// plain coordinate colors. Missing colors in the registry mean the
// requested frame cannot occur and yield an unsatisfiable constraint.
inline SolveRequest macro_frame_request(
    CompiledSet& cs, const std::array<std::vector<int>, 4>& window_bits,
    int phase = 0, const std::vector<int>& column_letters = {}) {
  const MacroLayout& L = cs.layout;
  const int N = L.N;
  SolveRequest req = make_request(cs.ts, N, N);
  req.mode = SolveMode::First;
  // window position -> bit, per side
  std::array<std::map<int, int>, 4> bit_at;
  for (int side = 0; side < 4; ++side) {
    const auto& pos = L.window[side];
    if (!pos.empty()) {
      if (window_bits[std::size_t(side)].size() != pos.size())
        throw InputError("window bit count mismatch");
      for (std::size_t t = 0; t < pos.size(); ++t)
        bit_at[std::size_t(side)][pos[t]] =
            window_bits[std::size_t(side)][t];
    }
  }
  bool zoned = L.zones;
  bool lettered = !cs.ts.alphabet.empty();
  auto letter_of = [&](int x) {
    if (!lettered) return -1;
    if (int(column_letters.size()) != N)
      throw InputError("letter-projected frames need per-column letters");
    return column_letters[std::size_t(x)];
  };
  auto side_color = [&](Direction d, int index) -> ColorId {
    int i = 0, j = 0;
    int letter = -1;
    int ph = zoned ? phase : -1;
    ChannelKind kind = ChannelKind::None;
    int aux = 0;
    auto it = bit_at[std::size_t(int(d))].find(index);
    if (it != bit_at[std::size_t(int(d))].end()) {
      kind = ChannelKind::Bit;
      aux = it->second;
    }
    switch (d) {
      case Direction::Left: i = 0; j = index; break;
      case Direction::Right: i = 0; j = index; break;  // (N-1)+1 mod N
      case Direction::Down: i = index; j = 0; letter = letter_of(index); break;
      case Direction::Up:
        i = index;
        j = 0;  // (N-1)+1 mod N
        letter = letter_of(index);
        if (zoned) ph = (phase + 1) % 3;
        break;
    }
    return cs.color(i, j, kind, aux, ph, letter);
  };
  for (int side = 0; side < 4; ++side) {
    Direction d = Direction(side);
    int count = (d == Direction::Left || d == Direction::Right) ? N : N;
    std::vector<ColorId> seq;
    for (int idx = 0; idx < count; ++idx) seq.push_back(side_color(d, idx));
    set_boundary_sequence(req, d, seq);
  }
  return req;
}

// Reads the window bits of a solved macro-tile body back off its border
// cells.
inline std::array<std::vector<int>, 4> read_window_bits(const CompiledSet& cs,
                                                        const Patch& body) {
  const MacroLayout& L = cs.layout;
  std::array<std::vector<int>, 4> out;
  auto channel_bit = [&](ColorId c) {
    const ColorInfo& ci = cs.info(c);
    return ci.kind == ChannelKind::Bit ? ci.aux : 0;
  };
  for (int side = 0; side < 4; ++side) {
    for (int pos : L.window[std::size_t(side)]) {
      const Tile* t = nullptr;
      ColorId c = 0;
      switch (Direction(side)) {
        case Direction::Left:
          t = &cs.ts.tiles[std::size_t(body.at(0, pos))];
          c = t->left;
          break;
        case Direction::Right:
          t = &cs.ts.tiles[std::size_t(body.at(L.N - 1, pos))];
          c = t->right;
          break;
        case Direction::Down:
          t = &cs.ts.tiles[std::size_t(body.at(pos, 0))];
          c = t->bottom;
          break;
        case Direction::Up:
          t = &cs.ts.tiles[std::size_t(body.at(pos, L.N - 1))];
          c = t->top;
          break;
      }
      out[std::size_t(side)].push_back(channel_bit(c));
    }
  }
  return out;
}

// Decodes the program text hardwired into the compiled input-row tiles by
// reading the read-only component of their diagram colors. This inspects
// the emitted tiles, not the bundle.
inline std::vector<int> decode_program_bits(const CompiledSet& cs) {
  const MacroLayout& L = cs.layout;
  std::vector<std::pair<int, int>> prog_cols;  // (comp col, order)
  for (int s = 0; s < L.m; ++s)
    if (cs.input_row[std::size_t(s)].program) prog_cols.push_back({s, s});
  std::vector<int> bits;
  for (auto [s, order] : prog_cols) {
    (void)order;
    int x = L.cx0 + s, y = L.cy0;
    // find any emitted tile at that cell and read its top diagram color
    std::optional<int> ro;
    for (const Tile& t : cs.ts.tiles) {
      const ColorInfo& top = cs.info(t.top);
      if (top.kind != ChannelKind::DiagH) continue;
      const ColorInfo& left = cs.info(t.left);
      if (left.i != x || left.j != y) continue;
      ro = cs.dt.h_of(ColorId(top.aux)).ro;
      break;
    }
    if (!ro) throw InputError("no tile found for a program column");
    bits.push_back(*ro);
  }
  return bits;
}

// ---------------------------------------------------------------------------
// Simulation verification
// ---------------------------------------------------------------------------

struct SimulationReport {
  bool constructive_ok = false;        // (a) each rho tile has a macro-tile
  bool soundness_ok = false;           // (b) every macro-tile maps into rho
  bool matching_ok = false;            // (c) adjacency is faithful
  SolveStatus soundness_status = SolveStatus::Unsat;
  std::uint64_t macro_tiles_enumerated = 0;
  std::vector<std::string> failures;
  bool all_ok() const {
    return constructive_ok && soundness_ok && matching_ok;
  }
};

namespace fixpoint_detail {

inline std::vector<int> color_bits(ColorId c, int k_bits) {
  std::vector<int> bits;
  for (int b = 0; b < k_bits; ++b) bits.push_back(int((c >> b) & 1));
  return bits;
}

}  // namespace fixpoint_detail

// Checks that tau (a compiled set) simulates rho with zoom N:
// (a) constructive: every rho tile yields a solver-completable macro-tile
//     with the matching macro-colors;
// (b) soundness: every enumerated valid N-by-N macro-tile (aligned at the
//     canonical offset) decodes to some rho tile, within the node budget;
// (c) matching faithfulness: rho adjacency coincides with macro-color
//     matching on all pairs, spot-checked by joint frame solves.
inline SimulationReport verify_simulation(CompiledSet& tau, const TileSet& rho,
                                          std::uint64_t budget = 2'000'000) {
  const MacroLayout& L = tau.layout;
  const int k = L.k_bits;
  if (L.zones)
    throw InputError("verify_simulation expects a plain (un-zoned) compile");
  if (rho.colors > (ColorId(1) << std::max(k, 1)) && k > 0)
    throw InputError("rho uses more colors than the payload can encode");
  SimulationReport rep;
  rho.validate();

  auto bits_for = [&](const Tile& r) {
    std::array<std::vector<int>, 4> wb;
    for (int side = 0; side < 4; ++side)
      wb[std::size_t(side)] =
          fixpoint_detail::color_bits(r.side(Direction(side)), k);
    return wb;
  };

  // (a) constructive
  std::vector<Patch> canonical;
  rep.constructive_ok = true;
  for (std::size_t r = 0; r < rho.tiles.size(); ++r) {
    SolveRequest req = macro_frame_request(tau, bits_for(rho.tiles[r]));
    req.budget = budget;
    auto res = solve_patch(req);
    if (res.status != SolveStatus::Sat) {
      rep.constructive_ok = false;
      rep.failures.push_back("no macro-tile for rho tile " + std::to_string(r));
      canonical.emplace_back();
    } else {
      canonical.push_back(res.patches[0]);
    }
  }

  // (b) soundness: enumerate canonically aligned macro-tiles
  {
    SolveRequest req = make_request(tau.ts, L.N, L.N);
    req.mode = SolveMode::Enumerate;
    req.budget = budget;
    // pin the alignment: border colors must carry the right coordinates
    std::set<std::array<ColorId, 4>> rho_quads;
    for (const Tile& t : rho.tiles)
      rho_quads.insert({t.left, t.right, t.top, t.bottom});
    auto coord_cells = [&](Direction d) {
      std::vector<BoundaryCell> cells;
      for (int idx = 0; idx < L.N; ++idx) {
        std::vector<ColorId> ok;
        for (ColorId c = 0; c < tau.colors.size(); ++c) {
          const ColorInfo& ci = tau.info(c);
          int want_i = 0, want_j = 0;
          switch (d) {
            case Direction::Left: want_i = 0; want_j = idx; break;
            case Direction::Right: want_i = 0; want_j = idx; break;
            case Direction::Down: want_i = idx; want_j = 0; break;
            case Direction::Up: want_i = idx; want_j = 0; break;
          }
          if (ci.i == want_i && ci.j == want_j) ok.push_back(c);
        }
        cells.push_back(ok);
      }
      return cells;
    };
    for (int side = 0; side < 4; ++side)
      req.boundary[std::size_t(side)] = coord_cells(Direction(side));
    auto res = solve_patch(req);
    rep.soundness_status = res.status;
    rep.macro_tiles_enumerated = res.count;
    rep.soundness_ok = true;
    for (const Patch& body : res.patches) {
      auto wb = read_window_bits(tau, body);
      std::array<ColorId, 4> quad{};
      for (int side = 0; side < 4; ++side) {
        ColorId v = 0;
        for (std::size_t b = 0; b < wb[std::size_t(side)].size(); ++b)
          v |= ColorId(wb[std::size_t(side)][b]) << b;
        quad[std::size_t(side)] = v;
      }
      // quad is (left,right,up,down); rho tiles store (l,r,t,b)
      if (!rho_quads.count({quad[0], quad[1], quad[2], quad[3]})) {
        rep.soundness_ok = false;
        rep.failures.push_back("an enumerated macro-tile maps outside rho");
        break;
      }
    }
    if (res.status == SolveStatus::Unsat && !rho.tiles.empty()) {
      rep.soundness_ok = false;
      rep.failures.push_back("no macro-tiles exist at the canonical offset");
    }
  }

  // (c) adjacency faithfulness on macro-colors of the canonical tiles,
  // plus joint solves on the first few pairs
  rep.matching_ok = rep.constructive_ok;
  if (rep.constructive_ok) {
    std::vector<MacroTile> mts;
    for (const Patch& p : canonical) mts.push_back(make_macro_tile(tau.ts, p));
    int joint_checks = 0;
    for (std::size_t r1 = 0; r1 < rho.tiles.size() && rep.matching_ok; ++r1)
      for (std::size_t r2 = 0; r2 < rho.tiles.size() && rep.matching_ok; ++r2) {
        bool rho_match =
            tiles_match(rho.tiles[r1], rho.tiles[r2], Direction::Right);
        bool colors_match = mts[r1].macro_colors[int(Direction::Right)] ==
                            mts[r2].macro_colors[int(Direction::Left)];
        if (rho_match != colors_match) {
          rep.matching_ok = false;
          rep.failures.push_back("horizontal matching differs for pair " +
                                 std::to_string(r1) + "," + std::to_string(r2));
        }
        bool rho_match_v =
            tiles_match(rho.tiles[r1], rho.tiles[r2], Direction::Up);
        bool colors_match_v = mts[r1].macro_colors[int(Direction::Up)] ==
                              mts[r2].macro_colors[int(Direction::Down)];
        if (rho_match_v != colors_match_v) {
          rep.matching_ok = false;
          rep.failures.push_back("vertical matching differs for pair " +
                                 std::to_string(r1) + "," + std::to_string(r2));
        }
        if (joint_checks < 2 && rho_match) {
          // spot-check: the two canonical bodies really sit side by side
          Patch joint(2 * L.N, L.N);
          for (int y = 0; y < L.N; ++y)
            for (int x = 0; x < L.N; ++x) {
              joint.set(x, y, canonical[r1].at(x, y));
              joint.set(L.N + x, y, canonical[r2].at(x, y));
            }
          if (!validate_patch(tau.ts, joint).empty()) {
            rep.matching_ok = false;
            rep.failures.push_back("joint placement of a matching pair fails");
          }
          ++joint_checks;
        }
      }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Structural equality (macro-tile clone conditions)
// ---------------------------------------------------------------------------

struct DecodedMacroTile {
  Patch body;
  std::pair<int, int> position{0, 0};   // offset of the block, mod N
  std::optional<std::pair<int, int>> father_pos;  // empty on wire roles
  std::vector<int> wire_bits;           // one per wire
  std::vector<std::int64_t> comp_cells; // tile ids over the comp zone
  std::vector<std::int32_t> column_letters;
  int phase = 0;
};

inline DecodedMacroTile decode_macro_tile(const CompiledSet& cs,
                                          const Patch& body) {
  const MacroLayout& L = cs.layout;
  if (body.width != L.N || body.height != L.N)
    throw FormatError("macro-tile body has the wrong size");
  if (!body.fully_assigned())
    throw FormatError("macro-tile body is not fully assigned");
  DecodedMacroTile d;
  d.body = body;
  const Tile& corner = cs.ts.tiles[std::size_t(body.at(0, 0))];
  const ColorInfo& ci = cs.info(corner.left);
  d.position = {ci.i, ci.j};
  d.phase = std::max(ci.phase, 0);
  for (const auto& w : L.wires) {
    auto [x, y] = w.cells.front();
    const Tile& t = cs.ts.tiles[std::size_t(body.at(x, y))];
    auto [in, out] = wire_conduct_sides(L, int(&w - L.wires.data()), 0);
    (void)out;
    const ColorInfo& wi = cs.info(t.side(in));
    d.wire_bits.push_back(wi.kind == ChannelKind::Bit ? wi.aux : 0);
  }
  for (int t = 0; t < L.m; ++t)
    for (int s = 0; s < L.m; ++s)
      d.comp_cells.push_back(body.at(L.cx0 + s, L.cy0 + t));
  if (cs.ts.has_letters()) {
    LetterGrid g = project_letters(cs.ts, body);
    for (int x = 0; x < L.N; ++x) d.column_letters.push_back(g.at(x, 0));
  }
  return d;
}

struct StructuralEqualReport {
  bool conditions_met = false;
  bool bodies_equal = false;
  bool consistent = false;  // conditions met implies bodies equal
  std::vector<std::string> failed_conditions;
};

// The clone conditions: same position in the father, same father position
// in the grandfather (vacuous when both are empty, e.g. on wire roles),
// same wire bits, same computation-zone pattern, and equal responsibility
// letters. When every requested condition holds, the bodies must be
// equal; the report verifies that implication.
inline StructuralEqualReport structural_equal(
    const DecodedMacroTile& a, const DecodedMacroTile& b,
    const std::vector<std::string>& fields = {"position", "father", "wires",
                                              "comp", "letters"}) {
  StructuralEqualReport rep;
  auto want = [&](const char* f) {
    return std::find(fields.begin(), fields.end(), f) != fields.end();
  };
  if (want("position") && a.position != b.position)
    rep.failed_conditions.push_back("position");
  if (want("father")) {
    if (a.father_pos.has_value() != b.father_pos.has_value() ||
        (a.father_pos && *a.father_pos != *b.father_pos))
      rep.failed_conditions.push_back("father");
  }
  if (want("wires") && a.wire_bits != b.wire_bits)
    rep.failed_conditions.push_back("wires");
  if (want("comp") && a.comp_cells != b.comp_cells)
    rep.failed_conditions.push_back("comp");
  if (want("letters") && a.column_letters != b.column_letters)
    rep.failed_conditions.push_back("letters");
  if (a.phase != b.phase) rep.failed_conditions.push_back("phase");
  rep.conditions_met = rep.failed_conditions.empty();
  rep.bodies_equal = a.body == b.body;
  rep.consistent = !rep.conditions_met || rep.bodies_equal;
  return rep;
}

// ---------------------------------------------------------------------------
// Offset recovery: the coordinate layer admits exactly one macro-tile
// alignment on any large enough valid patch.
// ---------------------------------------------------------------------------

inline std::vector<std::pair<int, int>> consistent_offsets(
    const CompiledSet& cs, const Patch& p) {
  const int N = cs.layout.N;
  std::vector<std::pair<int, int>> good;
  for (int oy = 0; oy < N; ++oy)
    for (int ox = 0; ox < N; ++ox) {
      bool ok = true;
      bool any_block = false;
      for (int by = oy; by + N <= p.height && ok; by += N)
        for (int bx = ox; bx + N <= p.width && ok; bx += N) {
          any_block = true;
          // border cells of the block must carry matching coordinates
          for (int u = 0; u < N && ok; ++u) {
            auto check = [&](int x, int y, int want_i, int want_j) {
              const Tile& t = cs.ts.tiles[std::size_t(p.at(x, y))];
              const ColorInfo& ci = cs.info(t.left);
              if (ci.i != want_i || ci.j != want_j) ok = false;
            };
            check(bx + u, by, u, 0);
            check(bx + u, by + N - 1, u, N - 1);
            check(bx, by + u, 0, u);
            check(bx + N - 1, by + u, N - 1, u);
          }
        }
      if (ok && any_block) good.push_back({ox, oy});
    }
  return good;
}

inline std::pair<int, int> recover_offset(const CompiledSet& cs,
                                          const Patch& p) {
  auto good = consistent_offsets(cs, p);
  if (good.size() != 1)
    throw InputError("offset recovery found " + std::to_string(good.size()) +
                     " consistent offsets");
  return good[0];
}

}  // namespace wangkit
