#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "wangkit/errors.hpp"

namespace wangkit {

using BigInt = boost::multiprecision::cpp_int;

// Zoom-factor schedule N_1, N_2, ... with L_k = N_1 * ... * N_k.
// The paper family is N_k = 3^(C^k); constant and explicit schedules are
// the toy variants used by expansion oracles and the beta scheduler.
struct ZoomSchedule {
  enum class Kind { Paper, Constant, Explicit };
  Kind kind = Kind::Constant;
  int C = 2;
  BigInt constant_n = 3;
  std::vector<BigInt> explicit_n;

  static ZoomSchedule paper(int c) {
    if (c < 2) throw InputError("paper schedule needs C >= 2");
    ZoomSchedule s;
    s.kind = Kind::Paper;
    s.C = c;
    return s;
  }
  static ZoomSchedule constant(BigInt n) {
    if (n < 2) throw InputError("constant schedule needs N >= 2");
    ZoomSchedule s;
    s.kind = Kind::Constant;
    s.constant_n = std::move(n);
    return s;
  }
  static ZoomSchedule explicit_list(std::vector<BigInt> ns) {
    for (const auto& n : ns)
      if (n < 2) throw InputError("zoom factors must be >= 2");
    ZoomSchedule s;
    s.kind = Kind::Explicit;
    s.explicit_n = std::move(ns);
    return s;
  }

  // N_k for k >= 1
  BigInt N(int k) const {
    if (k < 1) throw InputError("zoom level must be >= 1");
    switch (kind) {
      case Kind::Constant:
        return constant_n;
      case Kind::Explicit:
        if (k > int(explicit_n.size()))
          throw SizingError("explicit schedule has no level " +
                            std::to_string(k));
        return explicit_n[std::size_t(k - 1)];
      case Kind::Paper: {
        // 3^(C^k); refuse astronomically long representations
        BigInt e = 1;
        for (int i = 0; i < k; ++i) {
          e *= C;
          if (e > 8'000'000)
            throw SizingError("paper schedule level " + std::to_string(k) +
                              " exceeds representable size");
        }
        BigInt base = 3, result = 1, exp = e;
        while (exp > 0) {
          if (exp % 2 == 1) result *= base;
          base *= base;
          exp /= 2;
        }
        return result;
      }
    }
    throw InputError("invalid schedule");
  }

  // L_k = N_1 ... N_k, with L_0 = 1
  BigInt L(int k) const {
    if (k < 0) throw InputError("zoom level must be >= 0");
    BigInt l = 1;
    for (int i = 1; i <= k; ++i) l *= N(i);
    return l;
  }
};

// floor(log2(x)) for x >= 1
inline long msb_floor_log2(const BigInt& x) {
  if (x < 1) throw InputError("log2 of a value below 1");
  return long(boost::multiprecision::msb(x));
}

// The delegated chunk length l_k = max(1, floor(log2(floor(log2(L_k))))).
// Base 2 with floors, clamped to >= 1.
inline long chunk_length(const ZoomSchedule& s, int k) {
  BigInt lk = s.L(k);
  long log1 = msb_floor_log2(lk);
  if (log1 < 1) return 1;
  long log2v = msb_floor_log2(BigInt(log1));
  return std::max(1L, log2v);
}

}  // namespace wangkit
