#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "helpers.hpp"
#include "wangkit/fixpoint.hpp"
#include "wangkit/io.hpp"

using namespace wangkit;
using namespace wangkit::testfix;

namespace {

ProgramBundle accept_bundle() {
  TMachine m = read_tm_string("tm accept3 1 4\nstart 0\naccept 0\n");
  return raw_bundle(m, 1, 2, 0);
}

std::array<std::vector<int>, 4> zero_bits(const MacroLayout& L) {
  std::array<std::vector<int>, 4> wb;
  for (int side = 0; side < 4; ++side)
    wb[std::size_t(side)].assign(std::size_t(L.k_win), 0);
  return wb;
}

}  // namespace

TEST_CASE("skeleton tiles carry coordinates mod N") {
  CHECK(skeleton_tiles(2).tiles.size() == 4);
  TileSet sk = skeleton_tiles(3);
  CHECK(sk.tiles.size() == 9);
  CHECK(sk.tiles == coord_tiles(3).tiles);
  auto r3 = torus_tilings(sk, 3, 3);
  CHECK(r3.exists);
  CHECK_FALSE(torus_tilings(sk, 2, 2).exists);

  // columns repeat with period N in any valid strip of width N+1
  SolveRequest req = make_request(sk, 4, 2);
  req.mode = SolveMode::Enumerate;
  auto res = solve_patch(req);
  REQUIRE(res.status == SolveStatus::Sat);
  for (const Patch& p : res.patches)
    for (int y = 0; y < 2; ++y) CHECK(p.at(0, y) == p.at(3, y));
}

TEST_CASE("layout feasibility and audit") {
  SECTION("demo layout passes the geometric audit") {
    MacroLayout L = layout(144, 1, 56);
    CHECK(L.wires.size() == 4);  // 4*k_win endpoints
    auto audit = audit_layout(L);
    std::string first_violation = audit.violations.empty() ? "" : audit.violations[0];
    INFO(first_violation);
    CHECK(audit.ok());
    // every wire ends just below the input row at its payload column
    for (const auto& w : L.wires) {
      CHECK(w.cells.back() ==
            std::pair<int, int>{L.payload_col(w.payload_index), L.cy0 - 1});
    }
  }
  SECTION("m >= N is a sizing error") {
    CHECK_THROWS_AS(layout(32, 1, 32), SizingError);
  }
  SECTION("payload cells overflowing the input row name the constraint") {
    try {
      layout(400, 8, 40);  // 4*8 payload cells need more than 40 columns
      FAIL("expected a sizing error");
    } catch (const SizingError& e) {
      CHECK(std::string(e.what()).find("input row") != std::string::npos);
    }
  }
  SECTION("wire corners conduct between the two path sides") {
    MacroLayout L = layout(144, 1, 56);
    // the left wire turns at its drop column: entry Left, exit Down
    const WirePath& w = L.wires[std::size_t(1)];  // left group after top
    REQUIRE(w.side == Direction::Left);
    // find the first corner (direction change) along the path
    std::size_t corner = 1;
    while (corner + 1 < w.cells.size() &&
           w.cells[corner + 1].first != w.cells[corner].first) {
      ++corner;
    }
    auto [in, out] = wire_conduct_sides(L, 1, int(corner));
    CHECK(in == Direction::Left);
    CHECK(out == Direction::Down);
  }
}

TEST_CASE("compile determinism and tile count scaling") {
  BundleTemplate tpl;
  tpl.mask = {1, 1, 1, 1};
  ProgramBundle pi = self_referential_program(tpl);
  double max_ratio = 0, min_ratio = 1e18;
  for (int N : {144, 160, 176}) {
    MacroLayout L = layout(N, 1, 56);
    CompiledSet a = compile(pi, L);
    CompiledSet b = compile(pi, L);
    std::ostringstream sa, sb;
    write_tileset(sa, a.ts);
    write_tileset(sb, b.ts);
    CHECK(sa.str() == sb.str());  // byte-identical recompiles
    double ratio = double(a.ts.tiles.size()) / (double(N) * N);
    max_ratio = std::max(max_ratio, ratio);
    min_ratio = std::min(min_ratio, ratio);
  }
  // a single small constant c covers all three sizes
  CHECK(max_ratio <= 1.5 * min_ratio);
  CHECK(max_ratio <= 3.0);
}

TEST_CASE("compiled frames accept exactly the predicate") {
  MacroLayout L = layout(144, 1, 56);
  BundleTemplate tpl;
  tpl.mask = {1, 1, 1, 0};  // payload 3 is free
  ProgramBundle pi = self_referential_program(tpl);
  CompiledSet cs = compile(pi, L);

  auto wb = zero_bits(L);
  SECTION("all-zero payload completes") {
    auto req = macro_frame_request(cs, wb);
    req.budget = 5'000'000;
    CHECK(solve_patch(req).status == SolveStatus::Sat);
  }
  SECTION("violating a must-zero bit is unsatisfiable") {
    int side = -1, bit = -1;
    for (const auto& w : L.wires)
      if (w.payload_index == 0) {
        side = int(w.side);
        bit = w.bit;
      }
    REQUIRE(side >= 0);
    wb[std::size_t(side)][std::size_t(bit)] = 1;
    auto req = macro_frame_request(cs, wb);
    req.budget = 5'000'000;
    CHECK(solve_patch(req).status == SolveStatus::Unsat);
  }
  SECTION("the free payload bit completes either way") {
    int side = -1, bit = -1;
    for (const auto& w : L.wires)
      if (w.payload_index == 3) {
        side = int(w.side);
        bit = w.bit;
      }
    wb[std::size_t(side)][std::size_t(bit)] = 1;
    auto req = macro_frame_request(cs, wb);
    req.budget = 5'000'000;
    CHECK(solve_patch(req).status == SolveStatus::Sat);
  }
}

TEST_CASE("self-referential program") {
  BundleTemplate tpl;
  tpl.mask = {1, 0, 1, 1};
  tpl.payload_alg = 3;
  ProgramBundle pi = self_referential_program(tpl);

  SECTION("rebuilding from the same template is byte-identical") {
    ProgramBundle again = self_referential_program(tpl);
    CHECK(again.pi_bits == pi.pi_bits);
  }
  SECTION("the compiled input row displays exactly the program text") {
    MacroLayout L = layout(144, 1, 56);
    CompiledSet cs = compile(pi, L);
    CHECK(decode_program_bits(cs) == pi.pi_bits);
  }
  SECTION("self-read returns the hardwired bit at the asked column") {
    MacroLayout L = layout(144, 1, 56);
    int P = L.payload_count;
    for (int j = 0; j < P; ++j) {
      std::vector<int> input(60, checker::Blank), ro(60, 0);
      input[0] = checker::Start;
      input[1] = checker::One;  // self-read mode
      for (int p = 0; p < P; ++p) {
        input[std::size_t(2 + 4 * p)] = p < j ? checker::One : checker::Zero;
        input[std::size_t(3 + 4 * p)] = checker::Prog;
        ro[std::size_t(3 + 4 * p)] = pi.pi_bits[std::size_t(p)];
      }
      int good = pi.pi_bits[std::size_t(j)];
      input[std::size_t(2 + 4 * (j + 1))] =
          good ? checker::One : checker::Zero;
      auto tr = run_tm(pi.machine, input, ro, 100, 60);
      CHECK(tr.outcome == RunOutcome::Accept);
      // the machine really navigated to program column j
      bool visited = false;
      for (const auto& c : tr.configs)
        if (c.head == 3 + 4 * j) visited = true;
      CHECK(visited);
      input[std::size_t(2 + 4 * (j + 1))] =
          good ? checker::Zero : checker::One;
      CHECK(run_tm(pi.machine, input, ro, 100, 60).outcome ==
            RunOutcome::RejectStuck);
    }
  }
  SECTION("overflowing the header length field is a sizing error") {
    BundleTemplate big;
    big.mask.assign(5000, 0);
    CHECK_THROWS_AS(self_referential_program(big), SizingError);
  }
}

TEST_CASE("verify_simulation") {
  SECTION("skeleton vs the one-tile shift passes all three checks") {
    CompiledSet sk = skeleton_compiled(3);
    TileSet rho = one_tile();
    auto rep = verify_simulation(sk, rho);
    CHECK(rep.constructive_ok);
    CHECK(rep.soundness_ok);
    CHECK(rep.matching_ok);
    CHECK(rep.macro_tiles_enumerated == 1);
  }
  SECTION("a deleted tile breaks the constructive check") {
    CompiledSet sk = skeleton_compiled(3);
    sk.ts.tiles.erase(sk.ts.tiles.begin() + 4);
    TileSet rho = one_tile();
    auto rep = verify_simulation(sk, rho);
    CHECK_FALSE(rep.constructive_ok);
  }
  SECTION("a compiled set simulates its intended two-tile shift") {
    MacroLayout L = layout(144, 1, 56);
    BundleTemplate tpl;
    tpl.mask = {1, 1, 1, 0};
    ProgramBundle pi = self_referential_program(tpl);
    CompiledSet cs = compile(pi, L);
    int side = -1;
    for (const auto& w : L.wires)
      if (w.payload_index == 3) side = int(w.side);
    TileSet rho;
    rho.colors = 2;
    for (ColorId v : {0u, 1u}) {
      Tile t{0, 0, 0, 0};
      switch (Direction(side)) {
        case Direction::Left: t.left = v; break;
        case Direction::Right: t.right = v; break;
        case Direction::Up: t.top = v; break;
        case Direction::Down: t.bottom = v; break;
      }
      rho.add_tile(t);
    }
    auto rep = verify_simulation(cs, rho, 30'000'000);
    std::string first_failure = rep.failures.empty() ? "" : rep.failures[0];
    INFO(first_failure);
    CHECK(rep.constructive_ok);
    CHECK(rep.soundness_ok);
    CHECK(rep.matching_ok);
    CHECK(rep.macro_tiles_enumerated == 2);
  }
}

TEST_CASE("quasiperiodic upgrade: slots") {
  ProgramBundle b = accept_bundle();
  SECTION("tiny windowless demo, end to end") {
    MacroLayout base = layout(128, 0, 8);
    auto up = quasiperiodic_upgrade(base, b, false);
    CHECK_FALSE(up.layout.slots.empty());
    auto audit = audit_layout(up.layout);
    std::string first_violation = audit.violations.empty() ? "" : audit.violations[0];
    INFO(first_violation);
    CHECK(audit.ok());
    CompiledSet cs = compile(b, up.layout, up.patterns);

    // count vs area: every slot block fits the reserved free zone
    CHECK(int(up.layout.slots.size()) * 16 <=
          (up.layout.free_x1 - up.layout.free_x0) * up.layout.free_h);

    // each slot's frame forces exactly its target interior
    CompContent cc = enumerate_comp_content(b, up.layout);
    for (const SlotSpec& sl : up.layout.slots) {
      const SlotPattern& want = up.patterns[std::size_t(sl.pattern)];
      int matches = 0;
      auto& c00 = cc.cell_tiles[std::size_t(sl.st) * up.layout.m + sl.sx];
      auto& c10 = cc.cell_tiles[std::size_t(sl.st) * up.layout.m + sl.sx + 1];
      auto& c01 = cc.cell_tiles[std::size_t(sl.st + 1) * up.layout.m + sl.sx];
      auto& c11 =
          cc.cell_tiles[std::size_t(sl.st + 1) * up.layout.m + sl.sx + 1];
      for (auto a : c00)
        for (auto b2 : c10)
          for (auto c : c01)
            for (auto d : c11) {
              const Tile& ta = cc.dt.ts.tiles[a];
              const Tile& tb = cc.dt.ts.tiles[b2];
              const Tile& tc = cc.dt.ts.tiles[c];
              const Tile& td = cc.dt.ts.tiles[d];
              if (ta.right != tb.left || ta.top != tc.bottom ||
                  tb.top != td.bottom || tc.right != td.left)
                continue;
              const Tile& wa = cc.dt.ts.tiles[want.cells[0]];
              const Tile& wb2 = cc.dt.ts.tiles[want.cells[1]];
              const Tile& wc = cc.dt.ts.tiles[want.cells[2]];
              const Tile& wd = cc.dt.ts.tiles[want.cells[3]];
              if (ta.left == wa.left && ta.bottom == wa.bottom &&
                  tb.bottom == wb2.bottom && tb.right == wb2.right &&
                  tc.left == wc.left && tc.top == wc.top &&
                  td.right == wd.right && td.top == wd.top)
                ++matches;
            }
      CHECK(matches == 1);  // the border determines the interior
    }

    // a solved macro-tile materializes the slot contents
    auto req = macro_frame_request(cs, zero_bits(up.layout));
    req.budget = 10'000'000;
    auto res = solve_patch(req);
    REQUIRE(res.status == SolveStatus::Sat);
    for (const SlotSpec& sl : up.layout.slots) {
      for (int dy = 0; dy < 2; ++dy)
        for (int dx = 0; dx < 2; ++dx) {
          const Tile& t =
              cs.ts.tiles[std::size_t(res.patches[0].at(sl.x + dx, sl.y + dy))];
          const ColorInfo& ci = cs.info(t.left);
          CHECK(ci.i == cs.layout.cx0 + sl.sx + dx);
          CHECK(ci.j == cs.layout.cy0 + sl.st + dy);
        }
    }
  }
  SECTION("mid-scale demo with wires stays disjoint from everything") {
    MacroLayout base = layout(896, 1, 36);
    auto up = quasiperiodic_upgrade(base, b, false);
    auto audit = audit_layout(up.layout);
    std::string first_violation = audit.violations.empty() ? "" : audit.violations[0];
    INFO(first_violation);
    CHECK(audit.ok());
    CHECK(up.layout.slots.size() > 1000);
    CompiledSet cs = compile(b, up.layout, up.patterns);
    CHECK(cs.ts.tiles.size() > 800'000);
  }
  SECTION("slots overflowing the free zone are a sizing error") {
    MacroLayout base = layout(256, 1, 36);
    CHECK_THROWS_AS(quasiperiodic_upgrade(base, b, false), SizingError);
  }
}

TEST_CASE("quasiperiodic upgrade: three-zone macro-color cycling") {
  ProgramBundle b = accept_bundle();
  MacroLayout L = layout(288, 1, 112, true);
  CHECK(L.k_win == 3);
  auto audit = audit_layout(L);
  CHECK(audit.ok());
  CompiledSet cs = compile(b, L);

  SECTION("ring tiles increment the phase across the top border") {
    int checked = 0;
    for (const Tile& t : cs.ts.tiles) {
      const ColorInfo& left = cs.info(t.left);
      if (left.j != L.N - 1 || left.phase < 0) continue;
      const ColorInfo& top = cs.info(t.top);
      REQUIRE(top.phase >= 0);
      CHECK(top.phase == (left.phase + 1) % 3);
      ++checked;
    }
    CHECK(checked > 0);
  }
  SECTION("frames solve per phase; constant zones are enforced") {
    for (int phase = 0; phase < 3; ++phase) {
      std::array<std::vector<int>, 4> wb;
      for (int side = 0; side < 4; ++side) {
        wb[std::size_t(side)].assign(3, 0);
        for (int t = 0; t < 3; ++t)
          wb[std::size_t(side)][std::size_t(t)] =
              L.zone_role(t, phase) == 2 ? 1 : 0;
      }
      auto req = macro_frame_request(cs, wb, phase);
      req.budget = 30'000'000;
      CHECK(solve_patch(req).status == SolveStatus::Sat);
      int zero_zone = -1;
      for (int t = 0; t < 3; ++t)
        if (L.zone_role(t, phase) == 1) zero_zone = t;
      auto wb2 = wb;
      wb2[0][std::size_t(zero_zone)] = 1;
      auto req2 = macro_frame_request(cs, wb2, phase);
      req2.budget = 30'000'000;
      CHECK(solve_patch(req2).status == SolveStatus::Unsat);
    }
  }
}

TEST_CASE("aperiodicity of compiled sets at small torus sizes") {
  ProgramBundle b = accept_bundle();
  MacroLayout L = layout(48, 0, 8);
  CompiledSet cs = compile(b, L);
  for (int p = 1; p <= 4; ++p)
    for (int q = 1; q <= 4; ++q) {
      auto r = torus_tilings(cs.ts, p, q, 2'000'000);
      INFO("p=" << p << " q=" << q);
      CHECK(r.status != SolveStatus::BudgetExhausted);
      CHECK_FALSE(r.exists);
    }
}

TEST_CASE("offset recovery from the coordinate layer") {
  ProgramBundle b = accept_bundle();
  MacroLayout L = layout(48, 0, 8);
  CompiledSet cs = compile(b, L);
  std::array<std::vector<int>, 4> wb;
  auto req = macro_frame_request(cs, wb);
  req.budget = 10'000'000;
  auto res = solve_patch(req);
  REQUIRE(res.status == SolveStatus::Sat);
  const Patch& tile = res.patches[0];
  int N = L.N;
  Patch grid(3 * N, 3 * N);
  for (int by = 0; by < 3; ++by)
    for (int bx = 0; bx < 3; ++bx)
      for (int y = 0; y < N; ++y)
        for (int x = 0; x < N; ++x)
          grid.set(bx * N + x, by * N + y, tile.at(x, y));
  REQUIRE(validate_patch(cs.ts, grid).empty());
  SECTION("aligned window recovers offset (0,0)") {
    Patch win(2 * N, 2 * N);
    for (int y = 0; y < 2 * N; ++y)
      for (int x = 0; x < 2 * N; ++x) win.set(x, y, grid.at(x, y));
    CHECK(recover_offset(cs, win) == std::pair<int, int>{0, 0});
  }
  SECTION("shifted window recovers the unique matching offset") {
    int sx = 5, sy = 7;
    Patch win(2 * N, 2 * N);
    for (int y = 0; y < 2 * N; ++y)
      for (int x = 0; x < 2 * N; ++x) win.set(x, y, grid.at(x + sx, y + sy));
    auto off = recover_offset(cs, win);
    CHECK(off == std::pair<int, int>{(N - sx) % N, (N - sy) % N});
    CHECK(consistent_offsets(cs, win).size() == 1);
  }
}

TEST_CASE("letters ride the compiled sets and structural equality sees them") {
  TMachine m = read_tm_string("tm accept3 1 4\nstart 0\naccept 0\n");
  ProgramBundle b = raw_bundle(m, 1, 2, 0);
  b.alphabet = {"a", "b"};
  MacroLayout L = layout(48, 0, 8);
  CompiledSet cs = compile(b, L);
  CHECK(cs.ts.has_letters());

  auto solve_with_letters = [&](const std::vector<int>& letters) {
    std::array<std::vector<int>, 4> wb;
    auto req = macro_frame_request(cs, wb, 0, letters);
    req.budget = 10'000'000;
    auto res = solve_patch(req);
    REQUIRE(res.status == SolveStatus::Sat);
    return res.patches[0];
  };
  std::vector<int> all_a(std::size_t(L.N), 0);
  std::vector<int> mixed = all_a;
  mixed[5] = 1;
  Patch pa = solve_with_letters(all_a);
  Patch pm = solve_with_letters(mixed);

  auto ga = project_letters(cs.ts, pa);
  CHECK(ga.columns_constant);
  CHECK(ga.at(5, 3) == 0);
  auto gm = project_letters(cs.ts, pm);
  CHECK(gm.columns_constant);
  CHECK(gm.at(5, 3) == 1);

  DecodedMacroTile da = decode_macro_tile(cs, pa);
  DecodedMacroTile dm = decode_macro_tile(cs, pm);
  SECTION("identical macro-tiles are structurally equal") {
    auto rep = structural_equal(da, da);
    CHECK(rep.conditions_met);
    CHECK(rep.bodies_equal);
    CHECK(rep.consistent);
  }
  SECTION("same fields, different letters: condition fails, bodies differ") {
    auto rep = structural_equal(da, dm);
    CHECK_FALSE(rep.conditions_met);
    CHECK(std::find(rep.failed_conditions.begin(), rep.failed_conditions.end(),
                    "letters") != rep.failed_conditions.end());
    CHECK_FALSE(rep.bodies_equal);
    CHECK(rep.consistent);
    auto rep2 = structural_equal(da, dm, {"position", "wires", "comp"});
    CHECK(rep2.conditions_met);
    CHECK_FALSE(rep2.bodies_equal);
    CHECK_FALSE(rep2.consistent);
  }
}

TEST_CASE("role map matches the emitted tile options") {
  BundleTemplate tpl;
  tpl.mask = {0, 0, 0, 0};
  ProgramBundle pi = self_referential_program(tpl);
  MacroLayout L = layout(144, 1, 56);
  CompiledSet cs = compile(pi, L);
  RoleMap roles = build_role_map(L);
  std::map<std::pair<int, int>, int> per_cell;
  for (const Tile& t : cs.ts.tiles) {
    const ColorInfo& ci = cs.info(t.left);
    per_cell[{ci.i, ci.j}]++;
  }
  int skeleton_cells = 0, wire_cells = 0;
  for (int j = 0; j < L.N; ++j)
    for (int i = 0; i < L.N; ++i) {
      RoleInfo r = roles.at(i, j);
      if (r.role == CellRole::Skeleton || r.role == CellRole::FreeZone) {
        CHECK(per_cell[{i, j}] == 1);
        ++skeleton_cells;
      } else if (r.role == CellRole::Wire || r.role == CellRole::Window) {
        CHECK(per_cell[{i, j}] == 2);  // one tile per conducted bit value
        ++wire_cells;
      }
    }
  CHECK(skeleton_cells > 0);
  CHECK(wire_cells > 0);
}
