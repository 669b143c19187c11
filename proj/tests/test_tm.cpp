#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "wangkit/tm.hpp"

using namespace wangkit;
using namespace wangkit::testfix;

namespace {

std::vector<int> bits_to_input(const std::vector<int>& bits) {
  std::vector<int> syms;
  for (int b : bits) syms.push_back(b + 1);
  return syms;
}

// every input over the machine's nonblank symbols of length <= maxlen,
// plus the empty input
std::vector<std::vector<int>> small_inputs(int nsymbols, int maxlen) {
  std::vector<std::vector<int>> all{{}};
  int base = nsymbols - 1;
  if (base <= 0) return all;
  for (int len = 1; len <= maxlen; ++len) {
    std::vector<int> digits(std::size_t(len), 0);
    for (;;) {
      std::vector<int> in;
      for (int d : digits) in.push_back(d + 1);
      all.push_back(in);
      int i = 0;
      while (i < len && ++digits[std::size_t(i)] == base)
        digits[std::size_t(i++)] = 0;
      if (i == len) break;
    }
  }
  return all;
}

}  // namespace

TEST_CASE("run_tm basics") {
  SECTION("accept-now accepts any input in zero steps") {
    TMachine m = read_tm_string(tm_accept_now);
    auto t = run_tm(m, {1, 1}, 10, 10);
    CHECK(t.outcome == RunOutcome::Accept);
    CHECK(t.steps == 0);
  }
  SECTION("scan-right over three symbols accepts in four steps") {
    TMachine m = read_tm_string(tm_scan_right);
    auto t = run_tm(m, {1, 2, 1}, 10, 10);
    CHECK(t.outcome == RunOutcome::Accept);
    CHECK(t.steps == 4);
  }
  SECTION("zero step budget on a non-accepting start is a step limit") {
    TMachine m = read_tm_string(tm_loop);
    auto t = run_tm(m, {}, 0, 4);
    CHECK(t.outcome == RunOutcome::StepLimit);
  }
  SECTION("walking off the window is a space limit") {
    TMachine m = read_tm_string(tm_walk_left);
    auto t = run_tm(m, {}, 10, 4);
    CHECK(t.outcome == RunOutcome::SpaceLimit);
  }
  SECTION("parity accepts even counts and rejects odd ones") {
    TMachine m = read_tm_string(tm_parity);
    CHECK(run_tm(m, bits_to_input({1, 1}), 10, 10).outcome ==
          RunOutcome::Accept);
    CHECK(run_tm(m, bits_to_input({1, 0, 1}), 10, 10).outcome ==
          RunOutcome::Accept);
    CHECK(run_tm(m, bits_to_input({1}), 10, 10).outcome ==
          RunOutcome::RejectStuck);
  }
  SECTION("read-only layer drives ro-match") {
    TMachine m = read_tm_string(tm_ro_match);
    CHECK(run_tm(m, {1, 2, 1}, {0, 1, 0}, 10, 10).outcome ==
          RunOutcome::Accept);
    CHECK(run_tm(m, {1, 2, 1}, {0, 0, 0}, 10, 10).outcome ==
          RunOutcome::RejectStuck);
  }
}

TEST_CASE("machine format validation") {
  CHECK_THROWS_AS(read_tm_string("tm x 2 2\nstart 0\naccept 1\n"
                                 "t 0 0 -> 0 0 S\nt 0 0 -> 1 0 S\n"),
                  InputError);  // nondeterministic
  CHECK_THROWS_AS(read_tm_string("tm x 2 2\nstart 0\naccept 1\n"
                                 "t 1 0 -> 0 0 S\n"),
                  InputError);  // accept has outgoing rule
  CHECK_THROWS_AS(read_tm_string("tm x 2 2\nstart 0\n"), FormatError);
}

TEST_CASE("diagram frames mirror the simulator") {
  for (const char* text : {tm_accept_now, tm_scan_right, tm_parity, tm_loop}) {
    TMachine m = read_tm_string(text);
    DiagramTiles dt = diagram_tiles(m);
    for (const auto& input : small_inputs(m.nsymbols, 3)) {
      for (int frame = 1; frame <= 6; ++frame) {
        if (int(input.size()) > frame) continue;
        auto trace = run_tm(m, input, frame, frame);
        bool expect = trace.outcome == RunOutcome::Accept;
        auto req = make_frame_request(dt, input, {}, frame);
        auto res = solve_patch(req);
        INFO(m.name << " input-size=" << input.size() << " frame=" << frame);
        CHECK((res.status == SolveStatus::Sat) == expect);
      }
    }
  }
}

TEST_CASE("frames of one step cannot host two-step machines") {
  TMachine m = read_tm_string(tm_scan_right);
  DiagramTiles dt = diagram_tiles(m);
  auto req = make_frame_request(dt, {1}, {}, 1);
  CHECK(solve_patch(req).status == SolveStatus::Unsat);
}

TEST_CASE("completed frame rows decode to the run trace") {
  TMachine m = read_tm_string(tm_scan_right);
  DiagramTiles dt = diagram_tiles(m);
  std::vector<int> input{1, 2, 1};
  int frame = 6;
  auto req = make_frame_request(dt, input, {}, frame);
  auto res = solve_patch(req);
  REQUIRE(res.status == SolveStatus::Sat);
  auto trace = run_tm(m, input, frame, frame);
  REQUIRE(trace.outcome == RunOutcome::Accept);
  const Patch& p = res.patches[0];
  for (std::size_t t = 1; t < trace.configs.size(); ++t) {
    TMConfig got = decode_diagram_row(dt, dt.ts, p, int(t) - 1);
    const TMConfig& want = trace.configs[t];
    for (int x = 0; x < frame; ++x)
      CHECK(got.tape[std::size_t(x)] == want.tape[std::size_t(x)]);
    CHECK(got.head == want.head);
    CHECK(got.state == want.state);
  }
}

TEST_CASE("read-only layer propagates through frames") {
  TMachine m = read_tm_string(tm_ro_match);
  DiagramTiles dt = diagram_tiles(m);
  auto sat = make_frame_request(dt, {1, 2}, {0, 1}, 4);
  CHECK(solve_patch(sat).status == SolveStatus::Sat);
  auto unsat = make_frame_request(dt, {1, 2}, {1, 1}, 4);
  CHECK(solve_patch(unsat).status == SolveStatus::Unsat);
}

TEST_CASE("determinacy holds for deterministic machines") {
  for (const char* text :
       {tm_accept_now, tm_scan_right, tm_parity, tm_ro_match, tm_loop}) {
    TMachine m = read_tm_string(text);
    DiagramTiles dt = diagram_tiles(m);
    INFO(m.name);
    CHECK(check_determinacy(dt).ok);
  }
}

TEST_CASE("an injected duplicate interior breaks determinacy") {
  TMachine m = read_tm_string(tm_scan_right);
  DiagramTiles dt = diagram_tiles(m);
  TileSet broken = dt.ts;
  // clone a headless tile pair with a fresh private color between them so
  // some 2x2 border no longer pins its interior
  ColorId fresh = broken.colors++;
  ColorId plain0 = dt.h_color(0, -1, 0);
  broken.add_tile({dt.v_none, dt.v_none, fresh, plain0});
  broken.add_tile({dt.v_none, dt.v_none, plain0, fresh});
  auto rep = check_determinacy(broken);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("diagram tile set round-trips through the text format") {
  TMachine m = read_tm_string(tm_parity);
  DiagramTiles dt = diagram_tiles(m);
  std::ostringstream out;
  write_tileset(out, dt.ts);
  TileSet again = read_tileset_string(out.str());
  CHECK(again.tiles == dt.ts.tiles);
}
