#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include "wangkit/core.hpp"

namespace wangkit {

enum class SolveStatus { Sat, Unsat, BudgetExhausted };
enum class SolveMode { First, Count, Enumerate };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Sat: return "sat";
    case SolveStatus::Unsat: return "unsat";
    default: return "budget-exhausted";
  }
}

// Per-cell boundary constraint: nullopt = unconstrained, otherwise the side
// color must be one of the listed values. A single fixed color is the
// common case; the set form is needed for acceptance rows of machine
// diagrams.
using BoundaryCell = std::optional<std::vector<ColorId>>;

struct SolveRequest {
  const TileSet* tileset = nullptr;
  int width = 0;
  int height = 0;
  Patch fixed;  // optional; same dimensions, -1 = free
  // boundary[Direction]: constraints on the outward-facing side colors.
  // Left/Right indexed by y (bottom to top), Up/Down indexed by x.
  std::array<std::vector<BoundaryCell>, 4> boundary;
  SolveMode mode = SolveMode::Count;
  std::uint64_t budget = 10'000'000;
  bool torus = false;
  bool most_constrained = false;  // variable-ordering override
  int jobs = 1;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsat;
  std::uint64_t count = 0;
  std::vector<Patch> patches;
  std::uint64_t nodes = 0;
};

inline SolveRequest make_request(const TileSet& ts, int w, int h) {
  SolveRequest r;
  r.tileset = &ts;
  r.width = w;
  r.height = h;
  return r;
}

inline void set_boundary_sequence(SolveRequest& req, Direction side,
                                  const std::vector<ColorId>& colors) {
  std::vector<BoundaryCell> cells;
  cells.reserve(colors.size());
  for (ColorId c : colors) cells.push_back(std::vector<ColorId>{c});
  req.boundary[int(side)] = std::move(cells);
}

namespace detail {

// Side-indexed tile lookup: tiles_with[d][color] lists tiles whose side d
// carries that color, ascending by tile id.
struct TileIndex {
  std::array<std::vector<std::vector<std::uint32_t>>, 4> by_side;

  explicit TileIndex(const TileSet& ts) {
    for (int d = 0; d < 4; ++d) by_side[d].assign(ts.colors, {});
    for (std::uint32_t i = 0; i < ts.tiles.size(); ++i) {
      const Tile& t = ts.tiles[i];
      by_side[int(Direction::Left)][t.left].push_back(i);
      by_side[int(Direction::Right)][t.right].push_back(i);
      by_side[int(Direction::Up)][t.top].push_back(i);
      by_side[int(Direction::Down)][t.bottom].push_back(i);
    }
  }
};

class GridSolver {
 public:
  GridSolver(const SolveRequest& req, const TileIndex& index)
      : req_(req), ts_(*req.tileset), index_(index) {
    ncells_ = std::size_t(req.width) * req.height;
    domains_.resize(ncells_);
    color_stamp_.assign(ts_.colors, 0);
  }

  SolveResult run() {
    SolveResult res;
    if (ts_.tiles.empty()) {
      res.status = SolveStatus::Unsat;
      return res;
    }
    if (!setup()) {
      res.status = SolveStatus::Unsat;
      res.nodes = nodes_;
      return res;
    }
    if (req_.jobs > 1 && req_.mode != SolveMode::First)
      return run_parallel();
    bool exhausted = false;
    search(res, exhausted);
    res.nodes = nodes_;
    if (exhausted)
      res.status = SolveStatus::BudgetExhausted;
    else
      res.status = res.count > 0 ? SolveStatus::Sat : SolveStatus::Unsat;
    return res;
  }

 private:
  struct Dom {
    bool all = true;
    std::vector<std::uint32_t> list;
    std::size_t size(std::size_t total) const { return all ? total : list.size(); }
  };

  const SolveRequest& req_;
  const TileSet& ts_;
  const TileIndex& index_;
  std::size_t ncells_ = 0;
  std::vector<Dom> domains_;
  std::vector<std::uint32_t> color_stamp_;
  std::uint32_t stamp_epoch_ = 0;
  std::uint64_t nodes_ = 0;
  // Undo trail: snapshots of domains taken the first time a cell changes
  // within the current decision level.
  std::vector<std::pair<std::size_t, Dom>> trail_;
  std::vector<std::size_t> trail_marks_;
  std::vector<std::uint32_t> touched_level_;
  std::uint32_t level_ = 0;

  std::size_t cell_index(int x, int y) const {
    return std::size_t(y) * req_.width + x;
  }

  bool neighbor(int x, int y, Direction d, int& nx, int& ny) const {
    nx = x;
    ny = y;
    switch (d) {
      case Direction::Left: nx = x - 1; break;
      case Direction::Right: nx = x + 1; break;
      case Direction::Up: ny = y + 1; break;
      case Direction::Down: ny = y - 1; break;
    }
    if (req_.torus) {
      nx = (nx + req_.width) % req_.width;
      ny = (ny + req_.height) % req_.height;
      return true;
    }
    return nx >= 0 && nx < req_.width && ny >= 0 && ny < req_.height;
  }

  void save(std::size_t cell) {
    if (touched_level_[cell] == level_ + 1) return;
    touched_level_[cell] = level_ + 1;
    trail_.emplace_back(cell, domains_[cell]);
  }

  void push_level() {
    trail_marks_.push_back(trail_.size());
    ++level_;
  }

  void pop_level() {
    std::size_t mark = trail_marks_.back();
    trail_marks_.pop_back();
    while (trail_.size() > mark) {
      auto& [cell, dom] = trail_.back();
      domains_[cell] = std::move(dom);
      touched_level_[cell] = 0;
      trail_.pop_back();
    }
    --level_;
  }

  // Filters dom to tiles whose side d lies in the stamped color set.
  bool filter_by_colors(std::size_t cell, Direction d, std::uint32_t epoch) {
    Dom& dom = domains_[cell];
    if (dom.all) {
      std::vector<std::uint32_t> mat;
      const auto& lists = index_.by_side[int(d)];
      // materialize from the collected color list
      for (ColorId c : color_buffer_) {
        const auto& l = lists[c];
        mat.insert(mat.end(), l.begin(), l.end());
      }
      std::sort(mat.begin(), mat.end());
      save(cell);
      dom.all = false;
      dom.list = std::move(mat);
      return true;
    }
    std::size_t before = dom.list.size();
    std::vector<std::uint32_t> kept;
    kept.reserve(before);
    for (std::uint32_t t : dom.list) {
      ColorId c = ts_.tiles[t].side(d);
      if (color_stamp_[c] == epoch) kept.push_back(t);
    }
    if (kept.size() == before) return false;
    save(cell);
    dom.list = std::move(kept);
    return true;
  }

  std::vector<ColorId> color_buffer_;

  // Recomputes the allowed color set emitted by `from` across direction d
  // and prunes the cell on the other end. Returns false on wipeout.
  bool revise(std::size_t from, int fx, int fy, Direction d,
              std::deque<std::size_t>& queue) {
    int nx, ny;
    if (!neighbor(fx, fy, d, nx, ny)) return true;
    std::size_t to = cell_index(nx, ny);
    const Dom& src = domains_[from];
    if (src.all) return true;  // no information yet
    ++stamp_epoch_;
    color_buffer_.clear();
    for (std::uint32_t t : src.list) {
      ColorId c = ts_.tiles[t].side(d);
      if (color_stamp_[c] != stamp_epoch_) {
        color_stamp_[c] = stamp_epoch_;
        color_buffer_.push_back(c);
      }
    }
    if (to == from) {
      // Self-arc on a 1-wide torus: the tile must agree with itself.
      Dom& dom = domains_[to];
      std::vector<std::uint32_t> kept;
      if (dom.all) {
        save(to);
        dom.all = false;
        dom.list.clear();
        for (std::uint32_t t = 0; t < ts_.tiles.size(); ++t) dom.list.push_back(t);
      }
      for (std::uint32_t t : dom.list)
        if (ts_.tiles[t].side(opposite(d)) == ts_.tiles[t].side(d))
          kept.push_back(t);
      if (kept.size() != dom.list.size()) {
        save(to);
        dom.list = std::move(kept);
        queue.push_back(to);
      }
      return !domains_[to].list.empty();
    }
    if (filter_by_colors(to, opposite(d), stamp_epoch_)) {
      if (!domains_[to].all && domains_[to].list.empty()) return false;
      queue.push_back(to);
    }
    return true;
  }

  bool propagate(std::deque<std::size_t>& queue) {
    while (!queue.empty()) {
      std::size_t cell = queue.front();
      queue.pop_front();
      int x = int(cell % req_.width);
      int y = int(cell / req_.width);
      for (Direction d : {Direction::Left, Direction::Right, Direction::Up,
                          Direction::Down})
        if (!revise(cell, x, y, d, queue)) return false;
    }
    return true;
  }

  bool setup() {
    touched_level_.assign(ncells_, 0);
    std::deque<std::size_t> queue;
    // fixed cells
    if (req_.fixed.width > 0) {
      if (req_.fixed.width != req_.width || req_.fixed.height != req_.height)
        throw InputError("fixed patch dimensions mismatch");
      for (int y = 0; y < req_.height; ++y)
        for (int x = 0; x < req_.width; ++x) {
          std::int64_t v = req_.fixed.at(x, y);
          if (v < 0) continue;
          if (v >= std::int64_t(ts_.tiles.size()))
            throw InputError("fixed cell tile index out of range");
          Dom& dom = domains_[cell_index(x, y)];
          dom.all = false;
          dom.list = {std::uint32_t(v)};
          queue.push_back(cell_index(x, y));
        }
    }
    // boundary constraints
    auto apply_boundary = [&](Direction side, int count,
                              std::function<std::size_t(int)> cell_of,
                              Direction tile_side) -> bool {
      const auto& cells = req_.boundary[int(side)];
      if (cells.empty()) return true;
      if (int(cells.size()) != count)
        throw InputError("boundary constraint length mismatch");
      for (int i = 0; i < count; ++i) {
        if (!cells[std::size_t(i)]) continue;
        std::size_t cell = cell_of(i);
        ++stamp_epoch_;
        color_buffer_.clear();
        for (ColorId c : *cells[std::size_t(i)]) {
          if (c >= ts_.colors)
            throw InputError("boundary color out of range");
          if (color_stamp_[c] != stamp_epoch_) {
            color_stamp_[c] = stamp_epoch_;
            color_buffer_.push_back(c);
          }
        }
        filter_by_colors(cell, tile_side, stamp_epoch_);
        if (!domains_[cell].all && domains_[cell].list.empty()) return false;
        queue.push_back(cell);
      }
      return true;
    };
    if (req_.torus) {
      for (int d = 0; d < 4; ++d)
        if (!req_.boundary[d].empty())
          throw InputError("boundary constraints are meaningless on a torus");
    }
    bool ok = true;
    ok = ok && apply_boundary(
                   Direction::Left, req_.height,
                   [&](int y) { return cell_index(0, y); }, Direction::Left);
    ok = ok && apply_boundary(
                   Direction::Right, req_.height,
                   [&](int y) { return cell_index(req_.width - 1, y); },
                   Direction::Right);
    ok = ok && apply_boundary(
                   Direction::Down, req_.width,
                   [&](int x) { return cell_index(x, 0); }, Direction::Down);
    ok = ok && apply_boundary(
                   Direction::Up, req_.width,
                   [&](int x) { return cell_index(x, req_.height - 1); },
                   Direction::Up);
    if (!ok) return false;
    // On a torus every cell participates in wrap-around arcs; seed the
    // queue with everything so self-arcs get applied even without fixed
    // cells.
    if (req_.torus)
      for (std::size_t c = 0; c < ncells_; ++c) queue.push_back(c);
    return propagate(queue);
  }

  std::optional<std::size_t> pick_cell() const {
    std::optional<std::size_t> best;
    std::size_t best_size = 0;
    for (std::size_t c = 0; c < ncells_; ++c) {
      // Lazy (all-tiles) domains count as unassigned even when the set has
      // a single tile: assignment always goes through a branch+propagate.
      if (!domains_[c].all && domains_[c].list.size() <= 1) continue;
      std::size_t sz = domains_[c].size(ts_.tiles.size());
      if (!req_.most_constrained) return c;
      if (!best || sz < best_size) {
        best = c;
        best_size = sz;
      }
    }
    return best;
  }

  void record_solution(SolveResult& res) {
    if (req_.mode == SolveMode::Count) {
      ++res.count;
      return;
    }
    Patch p(req_.width, req_.height);
    for (std::size_t c = 0; c < ncells_; ++c)
      p.cells[c] = std::int64_t(domains_[c].list[0]);
    res.patches.push_back(std::move(p));
    ++res.count;
  }

  // Returns true when the search below is fully explored (not aborted).
  bool search(SolveResult& res, bool& exhausted) {
    auto cell = pick_cell();
    if (!cell) {
      record_solution(res);
      return true;
    }
    std::vector<std::uint32_t> candidates;
    if (domains_[*cell].all) {
      candidates.resize(ts_.tiles.size());
      for (std::uint32_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
    } else {
      candidates = domains_[*cell].list;
    }
    for (std::uint32_t t : candidates) {
      if (nodes_ >= req_.budget) {
        exhausted = true;
        return false;
      }
      ++nodes_;
      push_level();
      save(*cell);
      domains_[*cell].all = false;
      domains_[*cell].list = {t};
      std::deque<std::size_t> queue{*cell};
      bool ok = propagate(queue);
      if (ok) {
        if (!search(res, exhausted)) {
          pop_level();
          return false;
        }
        if (req_.mode == SolveMode::First && res.count > 0) {
          pop_level();
          return true;
        }
      }
      pop_level();
    }
    return true;
  }

  SolveResult run_parallel() {
    SolveResult res;
    auto cell = pick_cell();
    if (!cell) {
      bool exhausted = false;
      search(res, exhausted);
      res.status = res.count ? SolveStatus::Sat : SolveStatus::Unsat;
      res.nodes = nodes_;
      return res;
    }
    std::vector<std::uint32_t> candidates;
    if (domains_[*cell].all) {
      candidates.resize(ts_.tiles.size());
      for (std::uint32_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
    } else {
      candidates = domains_[*cell].list;
    }
    int jobs = std::max(1, req_.jobs);
    std::vector<SolveResult> worker_res(candidates.size());
    std::vector<char> worker_exhausted(candidates.size(), 0);
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= candidates.size()) break;
        SolveRequest sub = req_;
        sub.jobs = 1;
        if (sub.fixed.width == 0) sub.fixed = Patch(req_.width, req_.height);
        sub.fixed.cells[*cell] = candidates[i];
        GridSolver solver(sub, index_);
        SolveResult r = solver.run();
        worker_res[i] = std::move(r);
        worker_exhausted[i] = worker_res[i].status == SolveStatus::BudgetExhausted;
      }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    bool exhausted = false;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      exhausted = exhausted || worker_exhausted[i];
      res.count += worker_res[i].count;
      res.nodes += worker_res[i].nodes;
      for (auto& p : worker_res[i].patches) res.patches.push_back(std::move(p));
    }
    res.status = exhausted ? SolveStatus::BudgetExhausted
                           : (res.count ? SolveStatus::Sat : SolveStatus::Unsat);
    return res;
  }
};

}  // namespace detail

// Completes, counts, or enumerates valid tilings of a rectangle (or torus)
// under fixed cells and boundary color constraints.
inline SolveResult solve_patch(const SolveRequest& req) {
  if (!req.tileset) throw InputError("solve request lacks a tile set");
  if (req.width <= 0 || req.height <= 0)
    throw InputError("solve dimensions must be positive");
  req.tileset->validate();
  detail::TileIndex index(*req.tileset);
  detail::GridSolver solver(req, index);
  return solver.run();
}

// Exact count of locally consistent k-by-k patches. This counts all
// patches whose adjacent tiles match; it is a superset of the globally
// admissible patterns of the induced shift (deciding global admissibility
// is undecidable in general) and converges to the same entropy.
inline SolveResult count_patterns(const TileSet& ts, int k,
                                  std::uint64_t budget = 10'000'000,
                                  int jobs = 1) {
  SolveRequest req = make_request(ts, k, k);
  req.mode = SolveMode::Count;
  req.budget = budget;
  req.jobs = jobs;
  return solve_patch(req);
}

struct TorusResult {
  bool exists = false;
  std::uint64_t count = 0;
  SolveStatus status = SolveStatus::Unsat;
};

// Valid assignments of the p-by-q torus (wrap-around matching). A hit
// refutes aperiodicity with periods (p,q).
inline TorusResult torus_tilings(const TileSet& ts, int p, int q,
                                 std::uint64_t budget = 10'000'000,
                                 int jobs = 1) {
  TorusResult out;
  // exists: canonicalize by fixing cell (0,0) to each tile in turn
  for (std::uint32_t t = 0; t < ts.tiles.size() && !out.exists; ++t) {
    SolveRequest req = make_request(ts, p, q);
    req.torus = true;
    req.mode = SolveMode::First;
    req.budget = budget;
    req.fixed = Patch(p, q);
    req.fixed.set(0, 0, t);
    SolveResult r = solve_patch(req);
    if (r.status == SolveStatus::BudgetExhausted) {
      out.status = SolveStatus::BudgetExhausted;
      return out;
    }
    if (r.status == SolveStatus::Sat) out.exists = true;
  }
  SolveRequest req = make_request(ts, p, q);
  req.torus = true;
  req.mode = SolveMode::Count;
  req.budget = budget;
  req.jobs = jobs;
  SolveResult r = solve_patch(req);
  out.count = r.count;
  out.status = r.status;
  return out;
}

// Transfer-matrix machinery: states are valid single rows of the given
// width, transitions are vertical compatibility.
struct RowAutomaton {
  int width = 0;
  std::vector<std::vector<std::uint32_t>> rows;
  std::vector<std::vector<std::uint32_t>> above;  // above[i] = rows stackable on row i
};

inline std::optional<RowAutomaton> build_row_automaton(
    const TileSet& ts, int width, std::size_t max_rows = 2'000'00) {
  RowAutomaton a;
  a.width = width;
  std::vector<std::uint32_t> cur;
  detail::TileIndex index(ts);
  // DFS over horizontally consistent rows in lexicographic tile order.
  std::function<bool()> extend = [&]() -> bool {
    if (int(cur.size()) == width) {
      if (a.rows.size() >= max_rows) return false;
      a.rows.push_back(cur);
      return true;
    }
    if (cur.empty()) {
      for (std::uint32_t t = 0; t < ts.tiles.size(); ++t) {
        cur.push_back(t);
        if (!extend()) return false;
        cur.pop_back();
      }
      return true;
    }
    ColorId need = ts.tiles[cur.back()].right;
    for (std::uint32_t t : index.by_side[int(Direction::Left)][need]) {
      cur.push_back(t);
      if (!extend()) return false;
      cur.pop_back();
    }
    return true;
  };
  if (!extend()) return std::nullopt;
  a.above.resize(a.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (std::size_t j = 0; j < a.rows.size(); ++j) {
      bool ok = true;
      for (int c = 0; c < width && ok; ++c)
        ok = ts.tiles[a.rows[i][std::size_t(c)]].top ==
             ts.tiles[a.rows[j][std::size_t(c)]].bottom;
      if (ok) a.above[i].push_back(std::uint32_t(j));
    }
  return a;
}

namespace detail {

// Compressed strip automaton: rows are first quotiented by the colors on
// the strip's outward-facing left/right edges (those colors belong to the
// neighbor context, not the strip interior, so keeping them double-counts
// rows); the surviving rows become weighted edges between bottom-profile
// and top-profile states. Letters and interior tile identity always
// distinguish rows.
struct ProfileAutomaton {
  std::size_t nstates = 0;
  // edges[s] = list of (target state, multiplicity)
  std::vector<std::vector<std::pair<std::uint32_t, double>>> edges;
};

inline std::optional<ProfileAutomaton> build_profile_automaton(
    const TileSet& ts, int width, std::size_t row_budget, bool quotient) {
  TileIndex index(ts);
  // quotient id of a tile with one side ignored: smallest tile id agreeing
  // on the three remaining sides and the letter
  auto quotient_id = [&](std::uint32_t t, bool drop_left, bool drop_right) {
    if (!quotient) return t;
    const Tile& a = ts.tiles[t];
    for (std::uint32_t u = 0; u < t; ++u) {
      const Tile& b = ts.tiles[u];
      if (b.letter != a.letter || b.top != a.top || b.bottom != a.bottom)
        continue;
      if (!drop_left && b.left != a.left) continue;
      if (!drop_right && b.right != a.right) continue;
      return u;
    }
    return t;
  };
  std::vector<std::uint32_t> cur;
  std::set<std::vector<std::uint32_t>> rows;
  bool over = false;
  std::function<void()> extend = [&]() {
    if (over) return;
    if (int(cur.size()) == width) {
      std::vector<std::uint32_t> key = cur;
      key.front() = quotient_id(key.front(), true, width == 1);
      key.back() = quotient_id(key.back(), width == 1, true);
      rows.insert(key);
      if (rows.size() > row_budget) over = true;
      return;
    }
    if (cur.empty()) {
      for (std::uint32_t t = 0; t < ts.tiles.size(); ++t) {
        cur.push_back(t);
        extend();
        cur.pop_back();
      }
      return;
    }
    ColorId need = ts.tiles[cur.back()].right;
    for (std::uint32_t t : index.by_side[int(Direction::Left)][need]) {
      cur.push_back(t);
      extend();
      cur.pop_back();
    }
  };
  extend();
  if (over) return std::nullopt;

  std::map<std::vector<ColorId>, std::uint32_t> profile_ids;
  auto intern = [&](const std::vector<ColorId>& p) {
    auto [it, fresh] = profile_ids.emplace(p, std::uint32_t(profile_ids.size()));
    return it->second;
  };
  std::map<std::pair<std::uint32_t, std::uint32_t>, double> mult;
  for (const auto& row : rows) {
    std::vector<ColorId> bottom(width), top(width);
    for (int i = 0; i < width; ++i) {
      bottom[std::size_t(i)] = ts.tiles[row[std::size_t(i)]].bottom;
      top[std::size_t(i)] = ts.tiles[row[std::size_t(i)]].top;
    }
    mult[{intern(bottom), intern(top)}] += 1.0;
  }
  ProfileAutomaton pa;
  pa.nstates = profile_ids.size();
  pa.edges.resize(pa.nstates);
  for (const auto& [key, m] : mult) pa.edges[key.first].push_back({key.second, m});
  return pa;
}

// Growth of weighted path counts, via normalized power iteration with a
// trailing geometric-mean window (robust against period-2 oscillation).
inline double profile_growth_rate(const ProfileAutomaton& a) {
  std::size_t n = a.nstates;
  if (n == 0) return 0.0;
  std::vector<double> v(n, 1.0), w(n, 0.0);
  double logsum = 0.0;
  std::vector<double> history;
  const int iters = 8192;
  for (int it = 0; it < iters; ++it) {
    std::fill(w.begin(), w.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0.0) continue;
      for (const auto& [j, m] : a.edges[i]) w[j] += m * v[i];
    }
    double s = 0.0;
    for (double x : w) s += x;
    if (s == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / s;
    logsum += std::log(s);
    history.push_back(logsum);
    if (history.size() > 130) {
      double rate = (history.back() - history[history.size() - 129]) / 128.0;
      double prev =
          (history[history.size() - 2] - history[history.size() - 130]) / 128.0;
      if (std::abs(rate - prev) < 1e-13) return std::exp(rate);
    }
  }
  double rate = (history.back() - history[history.size() - 129]) / 128.0;
  return std::exp(rate);
}

}  // namespace detail

struct EntropyBounds {
  double lower = 0.0;
  double upper = 1e9;
  int width_achieved = 0;
  bool exhausted = false;
  std::vector<double> upper_by_width;  // log2(lambda_w)/w
  std::vector<double> lower_by_width;  // log2(lambda_w/lambda_{w-1})
};

// Entropy brackets from strip counts. upper(w) = log2(lambda_w)/w bounds
// the per-cell entropy from above for every w; lower(w) is the per-row
// growth increment between widths, the empirical lower envelope.
inline EntropyBounds transfer_entropy_bounds(const TileSet& ts, int max_width,
                                             std::size_t row_budget = 500'000,
                                             bool boundary_quotient = true) {
  EntropyBounds out;
  double prev_lambda = 1.0;
  for (int w = 1; w <= max_width; ++w) {
    auto a = detail::build_profile_automaton(ts, w, row_budget, boundary_quotient);
    if (!a) {
      out.exhausted = true;
      break;
    }
    double lambda = detail::profile_growth_rate(*a);
    double up = lambda > 0 ? std::log2(lambda) / w : 0.0;
    double lo = (lambda > 0 && prev_lambda > 0)
                    ? std::log2(lambda / prev_lambda)
                    : 0.0;
    up = std::max(0.0, up);
    lo = std::max(0.0, lo);
    out.upper_by_width.push_back(up);
    out.lower_by_width.push_back(lo);
    out.width_achieved = w;
    prev_lambda = lambda;
    if (lambda == 0.0) break;
  }
  if (out.upper_by_width.empty()) return out;
  out.upper = *std::min_element(out.upper_by_width.begin(),
                                out.upper_by_width.end());
  // Early ratios oscillate around the limit; the widest strip gives the
  // settled estimate.
  out.lower = std::min(out.lower_by_width.back(), out.upper);
  return out;
}

}  // namespace wangkit
