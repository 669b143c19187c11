#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wangkit/errors.hpp"
#include "wangkit/zoom.hpp"

namespace wangkit {

using Rat = boost::multiprecision::cpp_rational;

// Parameters of the red/blue coloring: at every level k the bottom-left
// alpha_k-corner of a macro-tile is red and the top-right beta_k-corner is
// blue regardless of the tile's own color; diversification slots occupy a
// fraction sigma_k of the cells and carry fixed colors, half red and half
// blue.
struct RedBlueParams {
  ZoomSchedule schedule = ZoomSchedule::constant(3);
  std::function<BigInt(int)> alpha = [](int) { return BigInt(1); };
  std::function<BigInt(int)> beta = [](int) { return BigInt(1); };
  std::function<Rat(int)> slot_fraction = [](int) { return Rat(0); };

  void validate(int k_max) const {
    for (int k = 1; k <= k_max; ++k) {
      BigInt n = schedule.N(k), a = alpha(k), b = beta(k);
      if (a < 1 || b < 1)
        throw InputError("corner sizes must be at least 1 at every level");
      if (a + b >= n)
        throw InputError("corners must be disjoint: alpha+beta < N");
      Rat s = slot_fraction(k);
      if (s < 0 || s >= 1) throw InputError("slot fraction out of range");
      if (Rat(a * a + b * b) + s * Rat(n * n) > Rat(n * n))
        throw InputError("corners and slots exceed the macro-tile");
    }
  }
};

struct DensityPair {
  Rat red, blue;  // fraction of red ground cells in red/blue level-k tiles
};

// Exact evaluation of the red/blue density recursion. The child-fraction
// coefficients come from the corner sizes and the slot-overhead
// correction (slots pin half their cells to each color).
inline std::vector<DensityPair> density_trajectory(const RedBlueParams& p,
                                                   int k_max) {
  p.validate(k_max);
  std::vector<DensityPair> out;
  DensityPair cur{Rat(1), Rat(0)};  // level 0: a red cell is red
  out.push_back(cur);
  for (int k = 1; k <= k_max; ++k) {
    BigInt n = p.schedule.N(k);
    Rat n2 = Rat(n * n);
    Rat a2 = Rat(p.alpha(k) * p.alpha(k));
    Rat b2 = Rat(p.beta(k) * p.beta(k));
    Rat half_slots = p.slot_fraction(k) * n2 / 2;
    DensityPair next;
    next.red = ((n2 - b2 - half_slots) * cur.red + (b2 + half_slots) * cur.blue) / n2;
    next.blue = ((a2 + half_slots) * cur.red + (n2 - a2 - half_slots) * cur.blue) / n2;
    out.push_back(next);
    cur = next;
  }
  return out;
}

inline DensityPair density_recursion(const RedBlueParams& p, int k) {
  return density_trajectory(p, k).back();
}

// Fully expanded two-color map of a level-k macro-tile (toy schedules
// only; slot corrections are a coefficient-level device and have no
// explicit map). Cell value 1 = red, 0 = blue.
struct ColorMap {
  long side = 0;
  std::vector<std::uint8_t> cells;
  std::uint8_t at(long x, long y) const {
    return cells[std::size_t(y) * std::size_t(side) + std::size_t(x)];
  }
  long long count_red() const {
    long long r = 0;
    for (auto c : cells) r += c;
    return r;
  }
};

inline ColorMap expand_colors(const RedBlueParams& p, int k, bool red) {
  p.validate(k);
  for (int j = 1; j <= k; ++j)
    if (p.slot_fraction(j) != 0)
      throw InputError("explicit expansion requires a slotless toy schedule");
  BigInt lk = p.schedule.L(k);
  if (lk > 4096) throw SizingError("expansion side exceeds the toy limit");
  long side = lk.convert_to<long>();
  // expand level by level; memoize the two maps of the previous level
  ColorMap red_map, blue_map;
  red_map.side = blue_map.side = 1;
  red_map.cells = {1};
  blue_map.cells = {0};
  for (int j = 1; j <= k; ++j) {
    long n = p.schedule.N(j).convert_to<long>();
    long a = p.alpha(j).convert_to<long>();
    long b = p.beta(j).convert_to<long>();
    long sub = red_map.side;
    auto build = [&](bool is_red) {
      ColorMap m;
      m.side = sub * n;
      m.cells.assign(std::size_t(m.side) * std::size_t(m.side), 0);
      for (long cj = 0; cj < n; ++cj)
        for (long ci = 0; ci < n; ++ci) {
          bool child_red;
          if (ci < a && cj < a)
            child_red = true;  // bottom-left corner is always red
          else if (ci >= n - b && cj >= n - b)
            child_red = false;  // top-right corner is always blue
          else
            child_red = is_red;
          const ColorMap& child = child_red ? red_map : blue_map;
          for (long y = 0; y < sub; ++y)
            for (long x = 0; x < sub; ++x)
              m.cells[std::size_t((cj * sub + y)) * std::size_t(m.side) +
                      std::size_t(ci * sub + x)] = child.at(x, y);
        }
      return m;
    };
    ColorMap nr = build(true);
    ColorMap nb = build(false);
    red_map = std::move(nr);
    blue_map = std::move(nb);
  }
  (void)side;
  return red ? red_map : blue_map;
}

// ---------------------------------------------------------------------------
// Beta scheduler: tracks a right recursively enumerable real
// ---------------------------------------------------------------------------

// Budget-indexed stream of rationals converging to the target from the
// right; values are normalized to be non-increasing.
using RERealEnumerator = std::function<Rat(int level)>;

inline RERealEnumerator constant_enumerator(Rat h) {
  return [h](int) { return h; };
}

struct BetaStep {
  int level = 0;
  BigInt beta;
  Rat nu_red, nu_blue;
  Rat approx;  // the h approximation available at this level
};

struct BetaScheduleResult {
  std::vector<BetaStep> steps;
};

// Chooses beta_k within [1, N_k/10] so that the recursion's predicted
// settling value tracks the current approximation of h. The control law
// steers the eventual limit (sum/2 plus the decaying red-blue gap) toward
// the target; with alpha = beta the gap contracts by (1 - 2 alpha^2/N^2)
// per level, which the level predictor uses.
inline BetaScheduleResult beta_schedule(const RERealEnumerator& h_enum,
                                        const ZoomSchedule& schedule,
                                        int k_max,
                                        std::function<BigInt(int)> alpha =
                                            [](int) { return BigInt(1); },
                                        std::function<Rat(int)> slot_fraction =
                                            [](int) { return Rat(0); }) {
  BetaScheduleResult out;
  Rat nu_r(1), nu_b(0);
  Rat approx(1);
  // future contraction of the red-blue gap under the beta = alpha policy
  auto future_gap_factor = [&](int from_level) {
    double d = 1.0;
    for (int j = from_level; j <= k_max + 64; ++j) {
      double n2, a2;
      try {
        BigInt n = schedule.N(j);
        if (n > 10'000'000) break;  // factors are already ~1
        n2 = double(n.convert_to<long long>()) * double(n.convert_to<long long>());
        a2 = double((alpha(j) * alpha(j)).convert_to<long long>());
      } catch (const SizingError&) {
        break;
      }
      d *= 1.0 - 2.0 * a2 / n2;
      if (d < 1e-9) return 0.0;
      if (j > k_max && 2.0 * a2 / n2 < 1e-15) break;
    }
    return d;
  };
  for (int k = 1; k <= k_max; ++k) {
    Rat h = h_enum(k);
    if (h < approx) approx = h;  // right-r.e.: non-increasing stream
    BigInt n = schedule.N(k);
    BigInt beta_max = n / 10;
    if (beta_max < 1) beta_max = 1;
    BigInt a = alpha(k);
    Rat n2 = Rat(n * n);
    Rat sigma = slot_fraction(k);
    double D = future_gap_factor(k + 1);
    double sum = double(nu_r + nu_b);
    double diff = double(nu_r - nu_b);
    double target = double(approx);
    double a_frac = double(Rat(a * a) / n2);
    // solve limit_after(b) = target for the slot-free steering term
    BigInt beta_pick = a;  // default: hold the gap, keep the sum
    if (diff > 1e-18) {
      double numer = sum / 2 + a_frac * diff / 2 + diff * D * (1 - a_frac) / 2 -
                     target;
      double denom = diff * (1 + D) / 2;
      double b_star = numer / denom;
      double beta_real = b_star > 0
                             ? std::sqrt(b_star) * double(n.convert_to<double>())
                             : 1.0;
      BigInt candidates[4] = {BigInt(1), beta_max,
                              BigInt(std::llround(std::floor(beta_real))),
                              BigInt(std::llround(std::ceil(beta_real)))};
      double best_err = 1e300;
      for (BigInt cand : candidates) {
        if (cand < 1) cand = 1;
        if (cand > beta_max) cand = beta_max;
        Rat b2 = Rat(cand * cand) / n2;
        Rat half = sigma / 2;
        double nsum = sum + double(Rat(a * a) / n2 - b2) * diff;
        double ndiff = (1.0 - a_frac - double(b2) - 2 * double(half)) * diff;
        double limit = nsum / 2 + ndiff * D / 2;
        double err = std::abs(limit - target);
        if (err < best_err - 1e-15) {
          best_err = err;
          beta_pick = cand;
        }
      }
    }
    if (beta_pick < 1) beta_pick = 1;
    if (beta_pick > beta_max) beta_pick = beta_max;
    // exact recursion step
    Rat a2 = Rat(a * a);
    Rat b2r = Rat(beta_pick * beta_pick);
    Rat half_slots = sigma * n2 / 2;
    Rat nr = ((n2 - b2r - half_slots) * nu_r + (b2r + half_slots) * nu_b) / n2;
    Rat nb = ((a2 + half_slots) * nu_r + (n2 - a2 - half_slots) * nu_b) / n2;
    nu_r = nr;
    nu_b = nb;
    out.steps.push_back({k, beta_pick, nu_r, nu_b, approx});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Entropy of the doubled shift
// ---------------------------------------------------------------------------

struct DoubledEntropy {
  Rat contribution;  // bits per cell: exactly the red-density limit
};

// Doubling every red tile contributes exactly the red density in bits per
// cell; the hierarchical structure adds nothing because a level-k
// macro-tile is determined by its color and its boundary macro-colors.
inline DoubledEntropy doubled_entropy(const Rat& density) {
  if (density < 0 || density > 1)
    throw InputError("density must lie in [0,1]");
  return {density};
}

// The O(L_k) boundary argument, surfaced as a computed bound: the number
// of distinct level-k expanded maps is 2 (one per color), so the
// per-cell information in the hierarchy vanishes like 1/L_k^2.
inline double doubled_boundary_bound(const RedBlueParams& p, int k) {
  BigInt lk = p.schedule.L(k);
  double cells = double(lk.convert_to<double>());
  return std::log2(2.0) / (cells * cells);
}

}  // namespace wangkit
