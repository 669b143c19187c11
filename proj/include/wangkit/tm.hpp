#pragma once

#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wangkit/core.hpp"
#include "wangkit/io.hpp"
#include "wangkit/solver.hpp"

namespace wangkit {

enum class Move : int { Left = 0, Right = 1, Stay = 2 };

// Single-tape deterministic machine with an optional read-only input
// layer. Symbol 0 is the blank.
struct TMachine {
  std::string name = "tm";
  int nstates = 0;
  int nsymbols = 0;
  bool uses_ro = false;
  int start = 0;
  int accept = 0;

  struct Rule {
    int next_state;
    int write_sym;
    Move move;
  };
  // key: (state, symbol, robit); robit fixed to 0 when the layer is off
  std::map<std::tuple<int, int, int>, Rule> rules;

  void add_rule(int q, int sym, int ro, Rule r) {
    if (q < 0 || q >= nstates || r.next_state < 0 || r.next_state >= nstates)
      throw InputError("machine '" + name + "': state out of range");
    if (sym < 0 || sym >= nsymbols || r.write_sym < 0 ||
        r.write_sym >= nsymbols)
      throw InputError("machine '" + name + "': symbol out of range");
    if (!uses_ro) ro = 0;
    if (q == accept)
      throw InputError("machine '" + name +
                       "': accept state has outgoing transition");
    auto key = std::make_tuple(q, sym, ro);
    if (!rules.emplace(key, r).second)
      throw InputError("machine '" + name + "': nondeterministic at (" +
                       std::to_string(q) + "," + std::to_string(sym) + "," +
                       std::to_string(ro) + ")");
  }

  const Rule* rule(int q, int sym, int ro) const {
    auto it = rules.find({q, sym, uses_ro ? ro : 0});
    return it == rules.end() ? nullptr : &it->second;
  }

  void validate() const {
    if (nstates <= 0 || nsymbols <= 0)
      throw InputError("machine '" + name + "': empty state or symbol set");
    if (start < 0 || start >= nstates || accept < 0 || accept >= nstates)
      throw InputError("machine '" + name + "': start/accept out of range");
  }
};

enum class RunOutcome { Accept, RejectStuck, StepLimit, SpaceLimit };

inline const char* to_string(RunOutcome o) {
  switch (o) {
    case RunOutcome::Accept: return "accept";
    case RunOutcome::RejectStuck: return "reject";
    case RunOutcome::StepLimit: return "step-limit";
    default: return "space-limit";
  }
}

struct TMConfig {
  std::vector<int> tape;  // window [0, max_cells)
  int head = 0;
  int state = 0;
};

struct RunTrace {
  std::vector<TMConfig> configs;  // configs[t] = configuration after t steps
  RunOutcome outcome = RunOutcome::RejectStuck;
  int steps = 0;
};

// Deterministic simulation on a bounded tape window. Moving off the
// window is a space limit, a missing rule is a stuck rejection.
inline RunTrace run_tm(const TMachine& m, const std::vector<int>& input,
                       const std::vector<int>& ro_layer, int max_steps,
                       int max_cells) {
  m.validate();
  if (int(input.size()) > max_cells)
    throw InputError("input longer than the tape window");
  RunTrace trace;
  TMConfig c;
  c.tape.assign(std::size_t(max_cells), 0);
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i] < 0 || input[i] >= m.nsymbols)
      throw InputError("input symbol out of range");
    c.tape[i] = input[i];
  }
  c.head = 0;
  c.state = m.start;
  auto ro_at = [&](int pos) {
    if (!m.uses_ro) return 0;
    return pos < int(ro_layer.size()) ? ro_layer[std::size_t(pos)] : 0;
  };
  trace.configs.push_back(c);
  for (int step = 0; step < max_steps; ++step) {
    if (c.state == m.accept) {
      trace.outcome = RunOutcome::Accept;
      trace.steps = step;
      return trace;
    }
    const TMachine::Rule* r = m.rule(c.state, c.tape[std::size_t(c.head)],
                                     ro_at(c.head));
    if (!r) {
      trace.outcome = RunOutcome::RejectStuck;
      trace.steps = step;
      return trace;
    }
    c.tape[std::size_t(c.head)] = r->write_sym;
    c.state = r->next_state;
    if (r->move == Move::Left) --c.head;
    if (r->move == Move::Right) ++c.head;
    if (c.head < 0 || c.head >= max_cells) {
      trace.outcome = RunOutcome::SpaceLimit;
      trace.steps = step + 1;
      return trace;
    }
    trace.configs.push_back(c);
  }
  trace.steps = max_steps;
  trace.outcome = c.state == m.accept ? RunOutcome::Accept
                                      : RunOutcome::StepLimit;
  return trace;
}

inline RunTrace run_tm(const TMachine& m, const std::vector<int>& input,
                       int max_steps, int max_cells) {
  return run_tm(m, input, {}, max_steps, max_cells);
}

// Machine text format:
//   tm <name> <nstates> <nsymbols> [ro]
//   start <state>
//   accept <state>
//   t <state> <sym> [<robit>] -> <state'> <sym'> <L|R|S>
inline TMachine read_tm(std::istream& in) {
  TMachine m;
  std::string line;
  int lineno = 0;
  bool header = false, has_start = false, has_accept = false;
  std::vector<std::array<int, 6>> pending;  // q sym ro q' sym' move
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::tokenize(line);
    if (toks.empty()) continue;
    auto want = [&](bool cond, const std::string& msg) {
      if (!cond)
        throw FormatError("line " + std::to_string(lineno) + ": " + msg);
    };
    if (toks[0] == "tm") {
      want(toks.size() == 4 || (toks.size() == 5 && toks[4] == "ro"),
           "expected 'tm <name> <nstates> <nsymbols> [ro]'");
      m.name = toks[1];
      m.nstates = int(detail::parse_int(toks[2], "nstates", lineno));
      m.nsymbols = int(detail::parse_int(toks[3], "nsymbols", lineno));
      m.uses_ro = toks.size() == 5;
      header = true;
    } else if (toks[0] == "start") {
      want(toks.size() == 2, "expected 'start <state>'");
      m.start = int(detail::parse_int(toks[1], "start", lineno));
      has_start = true;
    } else if (toks[0] == "accept") {
      want(toks.size() == 2, "expected 'accept <state>'");
      m.accept = int(detail::parse_int(toks[1], "accept", lineno));
      has_accept = true;
    } else if (toks[0] == "t") {
      bool with_ro = toks.size() == 8;
      want(toks.size() == 7 || with_ro,
           "expected 't <q> <sym> [<ro>] -> <q'> <sym'> <L|R|S>'");
      int base = with_ro ? 4 : 3;
      want(toks[std::size_t(base)] == "->", "expected '->'");
      int q = int(detail::parse_int(toks[1], "state", lineno));
      int sym = int(detail::parse_int(toks[2], "symbol", lineno));
      int ro = with_ro ? int(detail::parse_int(toks[3], "robit", lineno)) : 0;
      int q2 = int(detail::parse_int(toks[std::size_t(base) + 1], "state", lineno));
      int s2 = int(detail::parse_int(toks[std::size_t(base) + 2], "symbol", lineno));
      const std::string& mv = toks[std::size_t(base) + 3];
      want(mv == "L" || mv == "R" || mv == "S", "move must be L, R, or S");
      int move = mv == "L" ? 0 : mv == "R" ? 1 : 2;
      pending.push_back({q, sym, ro, q2, s2, move});
    } else {
      throw FormatError("line " + std::to_string(lineno) +
                        ": unknown directive '" + toks[0] + "'");
    }
  }
  if (!header) throw FormatError("missing 'tm' header");
  if (!has_start || !has_accept)
    throw FormatError("machine needs 'start' and 'accept' lines");
  m.validate();
  for (const auto& p : pending)
    m.add_rule(p[0], p[1], p[2], {p[3], p[4], Move(p[5])});
  return m;
}

inline TMachine read_tm_string(const std::string& s) {
  std::istringstream in(s);
  return read_tm(in);
}

inline void write_tm(std::ostream& out, const TMachine& m) {
  out << "tm " << m.name << ' ' << m.nstates << ' ' << m.nsymbols
      << (m.uses_ro ? " ro" : "") << '\n';
  out << "start " << m.start << '\n';
  out << "accept " << m.accept << '\n';
  for (const auto& [key, r] : m.rules) {
    auto [q, sym, ro] = key;
    out << "t " << q << ' ' << sym;
    if (m.uses_ro) out << ' ' << ro;
    out << " -> " << r.next_state << ' ' << r.write_sym << ' '
        << (r.move == Move::Left ? 'L' : r.move == Move::Right ? 'R' : 'S')
        << '\n';
  }
}

// Space-time-diagram tile encoding. Horizontal edges carry
// (symbol, head state or none, ro bit); vertical edges carry head-movement
// signals. Determinism of the machine makes every tile a function of its
// bottom and left sides, which yields 2x2-determinacy by construction.
struct DiagramTiles {
  TileSet ts;
  TMachine machine;

  struct HColor {
    int sym;
    int head;  // -1 = none, else state
    int ro;
  };
  struct VColor {
    int state;  // -1 = no signal
    bool moving_right = false;
  };

  std::map<std::tuple<int, int, int>, ColorId> h_ids;
  std::map<std::pair<int, bool>, ColorId> v_ids;
  std::vector<HColor> h_info;  // indexed by color id where applicable
  std::vector<VColor> v_info;
  ColorId v_none = 0;

  ColorId h_color(int sym, int head, int ro) const {
    auto it = h_ids.find({sym, head, ro});
    if (it == h_ids.end()) throw InputError("unknown diagram color");
    return it->second;
  }
  bool is_h(ColorId c) const { return c < h_info.size() && h_info[c].sym >= 0; }
  const HColor& h_of(ColorId c) const { return h_info[c]; }
};

inline DiagramTiles diagram_tiles(const TMachine& machine) {
  machine.validate();
  DiagramTiles dt;
  dt.machine = machine;
  TileSet& ts = dt.ts;
  ts.name = machine.name + "-diagram";

  const int ro_max = machine.uses_ro ? 2 : 1;
  // register colors: horizontal first, then vertical
  auto add_h = [&](int sym, int head, int ro) {
    ColorId id = ColorId(dt.h_info.size());
    dt.h_ids[{sym, head, ro}] = id;
    dt.h_info.push_back({sym, head, ro});
    return id;
  };
  for (int sym = 0; sym < machine.nsymbols; ++sym)
    for (int ro = 0; ro < ro_max; ++ro) {
      add_h(sym, -1, ro);
      for (int q = 0; q < machine.nstates; ++q) add_h(sym, q, ro);
    }
  ColorId next = ColorId(dt.h_info.size());
  dt.v_info.assign(next, {-1, false});  // pad so v info indexes line up
  dt.v_none = next++;
  dt.v_info.push_back({-1, false});
  dt.v_ids[{-1, false}] = dt.v_none;
  for (int q = 0; q < machine.nstates; ++q)
    for (bool right : {false, true}) {
      dt.v_ids[{q, right}] = next++;
      dt.v_info.push_back({q, right});
    }
  ts.colors = next;

  auto v_sig = [&](int q, bool right) { return dt.v_ids.at({q, right}); };

  for (int ro = 0; ro < ro_max; ++ro) {
    for (int sym = 0; sym < machine.nsymbols; ++sym) {
      ColorId plain = dt.h_color(sym, -1, ro);
      // headless, no signal
      ts.add_tile({dt.v_none, dt.v_none, plain, plain});
      // head arrives from the left (right-moving signal) or from the right
      for (int q = 0; q < machine.nstates; ++q) {
        ts.add_tile({v_sig(q, true), dt.v_none, dt.h_color(sym, q, ro), plain});
        ts.add_tile({dt.v_none, v_sig(q, false), dt.h_color(sym, q, ro), plain});
      }
      // head present
      for (int q = 0; q < machine.nstates; ++q) {
        ColorId below = dt.h_color(sym, q, ro);
        if (q == machine.accept) {
          ts.add_tile({dt.v_none, dt.v_none, below, below});
          continue;
        }
        const TMachine::Rule* r = machine.rule(q, sym, ro);
        if (!r) continue;  // stuck: no tile
        switch (r->move) {
          case Move::Stay:
            ts.add_tile({dt.v_none, dt.v_none,
                         dt.h_color(r->write_sym, r->next_state, ro), below});
            break;
          case Move::Right:
            ts.add_tile({dt.v_none, v_sig(r->next_state, true),
                         dt.h_color(r->write_sym, -1, ro), below});
            break;
          case Move::Left:
            ts.add_tile({v_sig(r->next_state, false), dt.v_none,
                         dt.h_color(r->write_sym, -1, ro), below});
            break;
        }
      }
    }
  }
  ts.validate();
  return dt;
}

// Frame completion request: an m-by-m bordered patch whose bottom row is
// the initial configuration, whose side walls pass no signals, and whose
// top row demands the head has reached the accept state.
inline SolveRequest make_frame_request(const DiagramTiles& dt,
                                       const std::vector<int>& input,
                                       const std::vector<int>& ro_layer,
                                       int frame) {
  if (int(input.size()) > frame)
    throw InputError("input longer than the frame");
  SolveRequest req = make_request(dt.ts, frame, frame);
  auto ro_at = [&](int x) {
    if (!dt.machine.uses_ro) return 0;
    return x < int(ro_layer.size()) ? ro_layer[std::size_t(x)] : 0;
  };
  std::vector<ColorId> bottom, wallL, wallR;
  std::vector<BoundaryCell> top;
  for (int x = 0; x < frame; ++x) {
    int sym = x < int(input.size()) ? input[std::size_t(x)] : 0;
    int head = x == 0 ? dt.machine.start : -1;
    bottom.push_back(dt.h_color(sym, head, ro_at(x)));
    std::vector<ColorId> ok;
    for (int s = 0; s < dt.machine.nsymbols; ++s) {
      ok.push_back(dt.h_color(s, -1, ro_at(x)));
      ok.push_back(dt.h_color(s, dt.machine.accept, ro_at(x)));
    }
    top.push_back(ok);
  }
  for (int y = 0; y < frame; ++y) {
    wallL.push_back(dt.v_none);
    wallR.push_back(dt.v_none);
  }
  set_boundary_sequence(req, Direction::Down, bottom);
  set_boundary_sequence(req, Direction::Left, wallL);
  set_boundary_sequence(req, Direction::Right, wallR);
  req.boundary[int(Direction::Up)] = top;
  req.mode = SolveMode::First;
  return req;
}

// Decodes one diagram row (the top colors of patch row y) back into a
// machine configuration; used to compare completed frames with run_tm.
inline TMConfig decode_diagram_row(const DiagramTiles& dt, const TileSet& ts,
                                   const Patch& p, int y) {
  TMConfig c;
  c.state = -1;
  c.head = -1;
  for (int x = 0; x < p.width; ++x) {
    ColorId top = ts.tiles[std::size_t(p.at(x, y))].top;
    const auto& h = dt.h_of(top);
    c.tape.push_back(h.sym);
    if (h.head >= 0) {
      c.head = x;
      c.state = h.head;
    }
  }
  return c;
}

struct DeterminacyReport {
  bool ok = true;
  // two distinct 2x2 blocks sharing the same 8-color border, as tile ids
  // (a,b,c,d) = (bottom-left, bottom-right, top-left, top-right)
  std::array<std::uint32_t, 4> block1{}, block2{};
};

// Checks that the 8 border colors of any locally valid 2x2 block determine
// the block. max_roots limits the scan over bottom-left tiles (0 = all).
inline DeterminacyReport check_determinacy(const TileSet& ts,
                                           std::size_t max_roots = 0) {
  DeterminacyReport rep;
  detail::TileIndex index(ts);
  using Border = std::array<ColorId, 8>;
  std::map<Border, std::array<std::uint32_t, 4>> seen;
  std::size_t roots = ts.tiles.size();
  if (max_roots > 0) roots = std::min(roots, max_roots);
  for (std::uint32_t a = 0; a < roots; ++a) {
    const Tile& ta = ts.tiles[a];
    for (std::uint32_t b : index.by_side[int(Direction::Left)][ta.right]) {
      const Tile& tb = ts.tiles[b];
      for (std::uint32_t c : index.by_side[int(Direction::Down)][ta.top]) {
        const Tile& tc = ts.tiles[c];
        for (std::uint32_t d : index.by_side[int(Direction::Down)][tb.top]) {
          const Tile& td = ts.tiles[d];
          if (tc.right != td.left) continue;
          Border key{ta.left,  tc.left,  ta.bottom, tb.bottom,
                     tb.right, td.right, tc.top,    td.top};
          std::array<std::uint32_t, 4> block{a, b, c, d};
          auto [it, fresh] = seen.emplace(key, block);
          if (!fresh && it->second != block) {
            rep.ok = false;
            rep.block1 = it->second;
            rep.block2 = block;
            return rep;
          }
        }
      }
    }
  }
  return rep;
}

inline DeterminacyReport check_determinacy(const DiagramTiles& dt,
                                           std::size_t max_roots = 0) {
  return check_determinacy(dt.ts, max_roots);
}

}  // namespace wangkit
