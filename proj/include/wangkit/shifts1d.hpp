#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wangkit/errors.hpp"
#include "wangkit/tm.hpp"
#include "wangkit/zoom.hpp"

namespace wangkit {

struct ExtensionError : InputError {
  explicit ExtensionError(const std::string& what) : InputError(what) {}
};

// ---------------------------------------------------------------------------
// One-sided sequence sources. All lemma oracles work on finite prefixes
// ("windows") and certify their answers relative to the window only.
// ---------------------------------------------------------------------------

class SequenceSource {
 public:
  static SequenceSource word(std::string w) {
    SequenceSource s;
    s.kind_ = Kind::Word;
    s.word_ = std::move(w);
    return s;
  }
  static SequenceSource periodic(std::string w) {
    if (w.empty()) throw InputError("periodic word must be nonempty");
    SequenceSource s;
    s.kind_ = Kind::Periodic;
    s.word_ = std::move(w);
    return s;
  }
  static SequenceSource substitution(std::map<char, std::string> rules,
                                     char seed) {
    for (const auto& [c, rhs] : rules) {
      (void)c;
      if (rhs.empty()) throw InputError("substitution must be non-erasing");
    }
    if (!rules.count(seed)) throw InputError("seed has no substitution rule");
    SequenceSource s;
    s.kind_ = Kind::Substitution;
    s.rules_ = std::move(rules);
    s.seed_ = seed;
    return s;
  }
  static SequenceSource thue_morse() {
    return substitution({{'0', "01"}, {'1', "10"}}, '0');
  }
  static SequenceSource callback(std::function<char(std::uint64_t)> f) {
    SequenceSource s;
    s.kind_ = Kind::Callback;
    s.fn_ = std::move(f);
    return s;
  }

  std::string prefix(std::size_t n) const {
    switch (kind_) {
      case Kind::Word:
        if (n > word_.size())
          throw InputError("window exceeds the explicit word length");
        return word_.substr(0, n);
      case Kind::Periodic: {
        std::string out;
        out.reserve(n);
        while (out.size() < n)
          out.append(word_, 0, std::min(word_.size(), n - out.size()));
        return out;
      }
      case Kind::Substitution: {
        std::string cur(1, seed_);
        int guard = 0;
        while (cur.size() < n) {
          std::string next;
          for (char c : cur) {
            auto it = rules_.find(c);
            if (it == rules_.end())
              throw InputError("substitution lacks a rule for a letter");
            next += it->second;
          }
          if (next.size() <= cur.size() && ++guard > 4)
            throw InputError("substitution does not grow");
          cur = std::move(next);
        }
        return cur.substr(0, n);
      }
      case Kind::Callback: {
        std::string out;
        out.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) out.push_back(fn_(i));
        return out;
      }
    }
    throw InputError("invalid sequence source");
  }

 private:
  enum class Kind { Word, Periodic, Substitution, Callback };
  Kind kind_ = Kind::Word;
  std::string word_;
  std::map<char, std::string> rules_;
  char seed_ = '0';
  std::function<char(std::uint64_t)> fn_;
};

// ---------------------------------------------------------------------------
// Quasiperiodicity function
// ---------------------------------------------------------------------------

struct QPEntry {
  bool known = false;  // false = the window cannot certify this n
  long value = 0;      // least w: every length-n factor occurs in every
                       // length-w sub-window
};

struct QPFunction {
  std::vector<QPEntry> phi;  // phi[n-1]
};

namespace shifts_detail {

// Least w such that every window of length w inside [0,W) contains a full
// occurrence from the sorted position list.
inline long window_requirement(const std::vector<long>& pos, long n, long W) {
  long w = pos.front() + n;                  // first window
  w = std::max(w, W - pos.back());           // last window
  for (std::size_t i = 0; i + 1 < pos.size(); ++i)
    w = std::max(w, pos[i + 1] - pos[i] + n - 1);
  return w;
}

}  // namespace shifts_detail

inline QPFunction qp_function(const SequenceSource& src, int n_max,
                              long window) {
  std::string x = src.prefix(std::size_t(window));
  long W = long(x.size());
  QPFunction out;
  for (int n = 1; n <= n_max; ++n) {
    if (n > W) {
      out.phi.push_back({false, 0});
      continue;
    }
    std::map<std::string, std::vector<long>> occ;
    for (long p = 0; p + n <= W; ++p)
      occ[x.substr(std::size_t(p), std::size_t(n))].push_back(p);
    long phi = 0;
    for (const auto& [f, pos] : occ) {
      (void)f;
      phi = std::max(phi, shifts_detail::window_requirement(pos, n, W));
    }
    // certified only when two disjoint sub-windows exist
    out.phi.push_back({phi <= W / 2, phi});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lemma oracles: recurrence with translations divisible by q
// ---------------------------------------------------------------------------

// Finds the smallest nonzero |t*q| at which the factor at [pos, pos+len)
// recurs, searching both directions within the horizon.
inline std::optional<long long> lemma2_find(const SequenceSource& src,
                                            long long pos, long len,
                                            long long q, long long horizon) {
  if (q <= 0) throw InputError("q must be positive");
  std::string x = src.prefix(std::size_t(pos + horizon + len));
  auto eq = [&](long long a, long long b) {
    if (a < 0 || b < 0) return false;
    if (std::size_t(a + len) > x.size() || std::size_t(b + len) > x.size())
      return false;
    return x.compare(std::size_t(a), std::size_t(len), x, std::size_t(b),
                     std::size_t(len)) == 0;
  };
  if (std::size_t(pos + len) > x.size())
    throw InputError("occurrence lies outside the window");
  for (long long t = 1; t * q <= horizon; ++t) {
    if (eq(pos, pos + t * q)) return t * q;
    if (eq(pos, pos - t * q)) return -t * q;
  }
  return std::nullopt;
}

struct Lemma2Bound {
  bool complete = false;  // every occurrence found a recurrence in-window
  long long L = 0;        // max over occurrences of the least |t*q| shift
};

// Empirical L(x,n,q): for every occurrence of every length-n factor in the
// window, the least nonzero shift divisible by q at which the same factor
// recurs; certified relative to the window only.
inline Lemma2Bound lemma2_bound(const SequenceSource& src, int n, long long q,
                                long window) {
  if (q <= 0 || n <= 0) throw InputError("n and q must be positive");
  std::string x = src.prefix(std::size_t(window));
  long W = long(x.size());
  Lemma2Bound out;
  out.complete = true;
  std::map<std::string, std::vector<long>> occ;
  for (long p = 0; p + n <= W; ++p)
    occ[x.substr(std::size_t(p), std::size_t(n))].push_back(p);
  for (const auto& [f, pos] : occ) {
    (void)f;
    std::map<long long, std::vector<long>> by_residue;
    for (long p : pos) by_residue[p % q].push_back(p);
    for (const auto& [r, list] : by_residue) {
      (void)r;
      for (std::size_t i = 0; i < list.size(); ++i) {
        long long best = -1;
        if (i > 0) best = list[i] - list[i - 1];
        if (i + 1 < list.size()) {
          long long d = list[i + 1] - list[i];
          if (best < 0 || d < best) best = d;
        }
        if (best < 0)
          out.complete = false;  // lone occurrence in its residue class
        else
          out.L = std::max(out.L, best);
      }
    }
  }
  return out;
}

struct Lemma3Report {
  bool present = false;          // v occurs in the product window
  long gap = 0;                  // least G: v occurs in every G-window
  bool gap_certified = false;
  long long L = 0;               // lemma2 bound used by the decision rule
  bool decision_present = false; // v found within the first L+|v| letters
  bool decision_matches = false;
};

// The product x (x) y with y periodic generates a minimal shift; checks
// that the factor v recurs with a bounded gap, and exercises the
// decision procedure: compute L via the lemma2 bound, then scan only
// L + |v| letters.
inline Lemma3Report lemma3_check(const SequenceSource& x_src,
                                 const std::string& y_period,
                                 const std::vector<std::pair<char, char>>& v,
                                 long window) {
  if (y_period.empty()) throw InputError("period word must be nonempty");
  if (v.empty()) throw InputError("factor must be nonempty");
  std::string x = x_src.prefix(std::size_t(window));
  long W = long(x.size());
  long n = long(v.size());
  std::vector<long> pos;
  for (long p = 0; p + n <= W; ++p) {
    bool ok = true;
    for (long i = 0; i < n && ok; ++i) {
      if (x[std::size_t(p + i)] != v[std::size_t(i)].first) ok = false;
      if (y_period[std::size_t((p + i) % long(y_period.size()))] !=
          v[std::size_t(i)].second)
        ok = false;
    }
    if (ok) pos.push_back(p);
  }
  Lemma3Report rep;
  rep.present = !pos.empty();
  if (rep.present) {
    rep.gap = shifts_detail::window_requirement(pos, n, W);
    rep.gap_certified = rep.gap <= W / 2;
  }
  rep.L = lemma2_bound(x_src, int(n), long(y_period.size()), window).L;
  long scan = std::min<long>(W - n + 1, long(rep.L) + n);
  for (long p = 0; p < scan && !rep.decision_present; ++p) {
    bool ok = true;
    for (long i = 0; i < n && ok; ++i) {
      if (x[std::size_t(p + i)] != v[std::size_t(i)].first) ok = false;
      if (y_period[std::size_t((p + i) % long(y_period.size()))] !=
          v[std::size_t(i)].second)
        ok = false;
    }
    if (ok) rep.decision_present = true;
  }
  rep.decision_matches = rep.decision_present == rep.present;
  return rep;
}

// ---------------------------------------------------------------------------
// Letter delegation
// ---------------------------------------------------------------------------


// floor division for big integers (C++ division truncates toward zero)
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

struct Delegation {
  BigInt resp_lo, resp_hi;  // responsibility interval [lo, hi), 3*L_k wide
  BigInt chunk_lo;          // assigned chunk start
  long chunk_len = 0;       // l_k
  BigInt offset;            // j mod (3*L_k - l_k)
};

// The level-k macro-tile in column `col` (level-k units) with vertical
// position j inside its father oversees the 3*L_k columns centered on its
// own span and is assigned the l_k-letter chunk at offset j modulo
// (3*L_k - l_k).
inline Delegation delegation(const ZoomSchedule& s, int k, const BigInt& col,
                             const BigInt& j) {
  if (k < 1) throw InputError("delegation level must be >= 1");
  Delegation d;
  BigInt lk = s.L(k);
  d.resp_lo = (col - 1) * lk;
  d.resp_hi = (col + 2) * lk;
  d.chunk_len = chunk_length(s, k);
  BigInt mod = 3 * lk - d.chunk_len;
  if (mod <= 0) throw SizingError("chunk does not fit the responsibility zone");
  d.offset = ((j % mod) + mod) % mod;
  d.chunk_lo = d.resp_lo + d.offset;
  return d;
}

// Input-data fields (iv)-(vi) of one macro-tile.
struct FieldSet {
  std::string chunk;                        // (iv) assigned l_k letters
  std::array<std::string, 3> parent_chunks; // (v) father, left uncle, right uncle
  std::optional<std::pair<BigInt, BigInt>> father_pos;  // (vi), empty on wires
};

struct FieldGrid {
  int level = 1;
  BigInt col0, row0;  // global coordinates of cell (0,0), level-k units
  int ncols = 0, nrows = 0;
  std::vector<FieldSet> cells;
  FieldSet& at(int c, int r) { return cells[std::size_t(r) * ncols + c]; }
  const FieldSet& at(int c, int r) const {
    return cells[std::size_t(r) * ncols + c];
  }
};

// Predicate: does the level-k macro-tile at position (i,j) inside its
// father play a communication-wire (or wire-neighbor) role?
using WireRoleFn = std::function<bool(int level, const BigInt& i, const BigInt& j)>;

// Reads `len` embedded letters starting at the (possibly negative)
// absolute column `lo`; positions outside [0, window) wrap periodically
// so toy grids can sit anywhere.
inline std::string letters_at(const std::string& word, const BigInt& lo,
                              long len) {
  std::string out;
  BigInt W = BigInt(word.size());
  for (long i = 0; i < len; ++i) {
    BigInt p = ((lo + i) % W + W) % W;
    out.push_back(word[std::size_t(p.convert_to<long>())]);
  }
  return out;
}

// Builds the consistent field assignment for a grid of level-k
// macro-tiles over an embedded word: the generator that check_fields
// treats as its oracle.
inline FieldGrid make_fieldsets(const ZoomSchedule& s, int k,
                                const BigInt& col0, const BigInt& row0,
                                int ncols, int nrows, const std::string& word,
                                const WireRoleFn& wire_role = {}) {
  FieldGrid g;
  g.level = k;
  g.col0 = col0;
  g.row0 = row0;
  g.ncols = ncols;
  g.nrows = nrows;
  g.cells.resize(std::size_t(ncols) * nrows);
  BigInt nk1 = s.N(k + 1);
  BigInt nk2 = s.N(k + 2);
  for (int r = 0; r < nrows; ++r)
    for (int c = 0; c < ncols; ++c) {
      BigInt col = col0 + c, row = row0 + r;
      BigInt j = ((row % nk1) + nk1) % nk1;
      Delegation d = delegation(s, k, col, j);
      FieldSet fs;
      fs.chunk = letters_at(word, d.chunk_lo, d.chunk_len);
      BigInt fcol = floor_div(col, nk1);
      BigInt frow = floor_div(row, nk1);
      BigInt jf = ((frow % nk2) + nk2) % nk2;
      for (int u = 0; u < 3; ++u) {
        BigInt ucol = fcol + (u == 0 ? 0 : u == 1 ? -1 : 1);
        Delegation pd = delegation(s, k + 1, ucol, jf);
        fs.parent_chunks[std::size_t(u)] =
            letters_at(word, pd.chunk_lo, pd.chunk_len);
      }
      BigInt i_in_f = ((col % nk1) + nk1) % nk1;
      if (wire_role && wire_role(k, i_in_f, j))
        fs.father_pos = std::nullopt;
      else
        fs.father_pos = std::pair<BigInt, BigInt>{((fcol % nk2) + nk2) % nk2,
                                                  jf};
      g.at(c, r) = fs;
    }
  return g;
}

struct FieldReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Consistency of delegated fields:
//  (a) letters shared between a tile's (iv) and (v) intervals agree,
//  (b) horizontally neighboring tiles agree on the (v)/(vi) data they
//      both carry,
//  (c) the ground level matches the embedded word,
//  (d) field (vi) is empty exactly on wire and wire-neighbor roles.
inline FieldReport check_fields(const ZoomSchedule& s, const FieldGrid& g,
                                const std::string& word,
                                const WireRoleFn& wire_role = {}) {
  FieldReport rep;
  auto viol = [&](int c, int r, const std::string& what) {
    rep.violations.push_back("cell (" + std::to_string(c) + "," +
                             std::to_string(r) + "): " + what);
  };
  BigInt nk1 = s.N(g.level + 1);
  BigInt nk2 = s.N(g.level + 2);
  for (int r = 0; r < g.nrows; ++r)
    for (int c = 0; c < g.ncols; ++c) {
      const FieldSet& fs = g.at(c, r);
      BigInt col = g.col0 + c, row = g.row0 + r;
      BigInt j = ((row % nk1) + nk1) % nk1;
      Delegation d = delegation(s, g.level, col, j);
      if (long(fs.chunk.size()) != d.chunk_len) {
        viol(c, r, "clause a: chunk length mismatch");
        continue;
      }
      BigInt fcol = floor_div(col, nk1);
      BigInt frow = floor_div(row, nk1);
      BigInt jf = ((frow % nk2) + nk2) % nk2;
      // (a) overlaps between (iv) and each (v) interval
      for (int u = 0; u < 3; ++u) {
        BigInt ucol = fcol + (u == 0 ? 0 : u == 1 ? -1 : 1);
        Delegation pd = delegation(s, g.level + 1, ucol, jf);
        if (long(fs.parent_chunks[std::size_t(u)].size()) != pd.chunk_len) {
          viol(c, r, "clause a: parent chunk length mismatch");
          continue;
        }
        BigInt lo = std::max(d.chunk_lo, pd.chunk_lo);
        BigInt hi = std::min(d.chunk_lo + d.chunk_len,
                             pd.chunk_lo + pd.chunk_len);
        for (BigInt p = lo; p < hi; ++p) {
          char mine = fs.chunk[std::size_t((p - d.chunk_lo).convert_to<long>())];
          char theirs = fs.parent_chunks[std::size_t(u)][std::size_t(
              (p - pd.chunk_lo).convert_to<long>())];
          if (mine != theirs)
            viol(c, r, "clause a: overlap mismatch at column " +
                           p.str() + " with parent " + std::to_string(u));
        }
      }
      // (b) neighbor agreement on shared (v)/(vi)
      if (c + 1 < g.ncols) {
        const FieldSet& right = g.at(c + 1, r);
        BigInt rcol = col + 1;
        BigInt rfcol = floor_div(rcol, nk1);
        if (rfcol == fcol) {
          if (fs.parent_chunks != right.parent_chunks)
            viol(c, r, "clause b: siblings disagree on parent chunks");
          if (fs.father_pos && right.father_pos &&
              *fs.father_pos != *right.father_pos)
            viol(c, r, "clause b: siblings disagree on father position");
        } else {
          // boundary between fathers: my right uncle is their father and
          // their left uncle is my father
          if (fs.parent_chunks[2] != right.parent_chunks[0] ||
              fs.parent_chunks[0] != right.parent_chunks[1])
            viol(c, r, "clause b: cousins disagree on shared uncles");
        }
      }
      // (c) ground level matches the embedded word
      if (g.level == 1) {
        std::string expect = letters_at(word, d.chunk_lo, d.chunk_len);
        if (fs.chunk != expect)
          viol(c, r, "clause c: chunk disagrees with the embedded word");
      }
      // (d) field (vi) emptiness mirrors the wire role
      BigInt i_in_f = ((col % nk1) + nk1) % nk1;
      bool is_wire = wire_role && wire_role(g.level, i_in_f, j);
      if (is_wire && fs.father_pos)
        viol(c, r, "clause d: wire cell carries field (vi)");
      if (!is_wire && !fs.father_pos)
        viol(c, r, "clause d: non-wire cell lacks field (vi)");
      if (fs.father_pos) {
        std::pair<BigInt, BigInt> want{((fcol % nk2) + nk2) % nk2, jf};
        if (*fs.father_pos != want)
          viol(c, r, "clause b: field (vi) has the wrong coordinates");
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Separator gadget
// ---------------------------------------------------------------------------

struct EnumPair {
  std::function<std::vector<long long>(std::uint64_t)> s1, s2;  // monotone
};

inline EnumPair toy_pair(std::vector<long long> s1, std::vector<long long> s2) {
  EnumPair p;
  p.s1 = [s1 = std::move(s1)](std::uint64_t budget) {
    std::vector<long long> out(s1.begin(),
                               s1.begin() + std::min<std::size_t>(budget, s1.size()));
    return out;
  };
  p.s2 = [s2 = std::move(s2)](std::uint64_t budget) {
    std::vector<long long> out(s2.begin(),
                               s2.begin() + std::min<std::size_t>(budget, s2.size()));
    return out;
  };
  return p;
}

namespace shifts_detail {

// Systematic enumeration of 2-state machines over {0,1}: index e decodes
// in mixed radix to one action per (state, symbol); action 0 = halt.
inline TMachine decode_machine(long long e) {
  TMachine m;
  m.name = "cat-" + std::to_string(e);
  m.nstates = 3;  // two working states plus the accept state
  m.nsymbols = 2;
  m.start = 0;
  m.accept = 2;
  const int options = 1 + 3 * 2 * 3;  // halt or (state', sym', move)
  for (int slot = 0; slot < 4; ++slot) {
    int a = int(e % options);
    e /= options;
    int q = slot / 2, sym = slot % 2;
    if (a == 0) continue;  // no rule: the machine sticks here
    --a;
    int move = a % 3;
    a /= 3;
    int wsym = a % 2;
    a /= 2;
    int q2 = a % 3;
    m.add_rule(q, sym, 0, {q2, wsym, Move(move)});
  }
  return m;
}

}  // namespace shifts_detail

// The classic recursively inseparable pair, budgeted: S1 = indices of
// catalogued machines that accept their own index with output bit 1 at
// cell 0, S2 = the same with output bit 0. Budget bounds both the number
// of machines examined and the steps of each run.
inline EnumPair diagonal_pair() {
  EnumPair p;
  auto run = [](std::uint64_t budget, int want_bit) {
    std::vector<long long> out;
    long long machines = std::min<std::uint64_t>(budget, 4096);
    int steps = int(std::min<std::uint64_t>(budget, 4096));
    for (long long e = 0; e < machines; ++e) {
      TMachine m = shifts_detail::decode_machine(e);
      std::vector<int> input;
      for (long long v = e; v > 0; v /= 2) input.push_back(int(v % 2));
      if (input.empty()) input.push_back(0);
      RunTrace tr;
      try {
        tr = run_tm(m, input, {}, steps, 64);
      } catch (const InputError&) {
        continue;
      }
      if (tr.outcome == RunOutcome::Accept &&
          tr.configs.back().tape[0] == want_bit)
        out.push_back(e);
    }
    return out;
  };
  p.s1 = [run](std::uint64_t b) { return run(b, 1); };
  p.s2 = [run](std::uint64_t b) { return run(b, 0); };
  return p;
}

struct SeparatorResult {
  bool ok = true;
  long long violated_index = -1;
};

// Checks that the 0/1 prefix separates the two enumerations within the
// budget: indices of S1 must read 1, indices of S2 must read 0; indices
// beyond the prefix are vacuously fine.
inline SeparatorResult separator_check(const std::string& prefix,
                                       const EnumPair& pair,
                                       std::uint64_t budget) {
  SeparatorResult res;
  auto scan = [&](const std::vector<long long>& set, char want) {
    for (long long e : set) {
      if (e < 0 || std::size_t(e) >= prefix.size()) continue;
      if (prefix[std::size_t(e)] != want) {
        res.ok = false;
        res.violated_index = e;
        return;
      }
    }
  };
  scan(pair.s1(budget), '1');
  if (res.ok) scan(pair.s2(budget), '0');
  return res;
}

// ---------------------------------------------------------------------------
// Canonical configuration of an effective shift
// ---------------------------------------------------------------------------

struct ForbiddenWordSource {
  std::string alphabet;
  std::function<std::vector<std::string>(std::uint64_t)> enumerate;  // monotone
};

inline ForbiddenWordSource forbidden_list(std::string alphabet,
                                          std::vector<std::string> words) {
  ForbiddenWordSource f;
  f.alphabet = std::move(alphabet);
  f.enumerate = [words = std::move(words)](std::uint64_t budget) {
    std::vector<std::string> out(
        words.begin(), words.begin() + std::min<std::size_t>(budget, words.size()));
    return out;
  };
  return f;
}

struct CanonicalConfig {
  std::string word;
  bool standard_aligned = true;  // origin anchors every macro-tile level
};

// Deterministic greedy word: extend to the right with the alphabetically
// least admissible symbol, backtracking on dead ends within the budget.
// The result is the lexicographically least word of the given length
// avoiding every enumerated forbidden factor.
inline CanonicalConfig canonical_config(const ForbiddenWordSource& fws,
                                        std::size_t length,
                                        std::uint64_t budget) {
  if (fws.alphabet.empty()) throw InputError("empty alphabet");
  std::string alpha = fws.alphabet;
  std::sort(alpha.begin(), alpha.end());
  std::vector<std::string> forbidden = fws.enumerate(budget);
  auto suffix_clean = [&](const std::string& w) {
    for (const std::string& f : forbidden) {
      if (f.empty()) return false;
      if (f.size() > w.size()) continue;
      if (w.compare(w.size() - f.size(), f.size(), f) == 0) return false;
    }
    return true;
  };
  std::string w;
  std::vector<std::size_t> choice{0};
  std::uint64_t nodes = 0;
  while (w.size() < length) {
    bool advanced = false;
    for (std::size_t& c = choice.back(); c < alpha.size(); ++c) {
      if (++nodes > budget)
        throw ExtensionError("extension budget exhausted");
      w.push_back(alpha[c]);
      if (suffix_clean(w)) {
        advanced = true;
        break;
      }
      w.pop_back();
    }
    if (advanced) {
      choice.push_back(0);
      continue;
    }
    // dead end: backtrack
    choice.pop_back();
    if (w.empty())
      throw ExtensionError("the shift admits no word of this length");
    w.pop_back();
    ++choice.back();
  }
  // final full scan against the enumerated list
  for (const std::string& f : forbidden)
    if (!f.empty() && w.find(f) != std::string::npos)
      throw ExtensionError("internal: forbidden factor survived the scan");
  return {w, true};
}

}  // namespace wangkit
