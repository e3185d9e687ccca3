#pragma once

// Brute-force counterpart of tests/oracles/classify_oracle.py: every simple
// Euclidean Jordan algebra with rank <= 100 and dim <= 10000, filtered
// directly by the counting constraints.

#include <string>
#include <tuple>
#include <vector>

namespace oracle {

struct Rec {
  std::string family;
  long rank;
  long dim;
};

inline const std::vector<Rec>& table() {
  static const std::vector<Rec> t = [] {
    std::vector<Rec> out;
    for (long r = 1; r <= 100; ++r) {
      const long ds[3] = {r * (r + 1) / 2, r * r, r * (2 * r - 1)};
      const char* names[3] = {"RealSym", "ComplexHerm", "QuatHerm"};
      for (int i = 0; i < 3; ++i)
        if (ds[i] <= 10000) out.push_back({names[i], r, ds[i]});
    }
    out.push_back({"Albert", 3, 27});
    for (long n = 3; n <= 10000; ++n) out.push_back({"SpinFactor", 2, n});
    return out;
  }();
  return t;
}

inline bool passes(const Rec& w, bool exact) {
  for (const Rec& c : table())
    if (c.rank == w.rank * w.rank && (exact ? c.dim == w.dim * w.dim : c.dim >= w.dim * w.dim)) return true;
  return false;
}

inline std::vector<Rec> cells(const std::string& family, long max_rank) {
  std::vector<Rec> out;
  if (family == "SpinFactor") {
    for (long n = 3; n <= 4 * max_rank * max_rank * max_rank * max_rank; ++n) out.push_back({"SpinFactor", 2, n});
    return out;
  }
  for (const Rec& r : table())
    if (r.family == family && (family == "Albert" ? max_rank >= 3 : (r.rank >= 2 && r.rank <= max_rank)))
      out.push_back(r);
  return out;
}

inline std::vector<std::string> survivors(long max_rank, bool exact) {
  std::vector<std::string> out;
  for (const char* f : {"RealSym", "ComplexHerm", "QuatHerm", "SpinFactor", "Albert"}) {
    const auto cs = cells(f, max_rank);
    bool all = !cs.empty();
    for (const Rec& w : cs) all = all && passes(w, exact);
    if (all) out.push_back(f);
  }
  return out;
}

inline std::vector<long> passing_spin_dims(long max_rank, bool exact) {
  std::vector<long> out;
  for (const Rec& w : cells("SpinFactor", max_rank))
    if (passes(w, exact)) out.push_back(w.dim);
  return out;
}

/// One line per family and per cell: "Family: survives" then
/// "  Family r=R d=D: pass". Compared verbatim with the library's traces.
inline std::string trace(long max_rank, bool exact) {
  std::string out;
  for (const char* f : {"RealSym", "ComplexHerm", "QuatHerm", "SpinFactor", "Albert"}) {
    const auto cs = cells(f, max_rank);
    bool all = !cs.empty();
    std::string lines;
    for (const Rec& w : cs) {
      const bool ok = passes(w, exact);
      all = all && ok;
      lines += "  " + w.family + " r=" + std::to_string(w.rank) + " d=" + std::to_string(w.dim) + ": " +
               (ok ? "pass" : "fail") + "\n";
    }
    out += std::string(f) + ": " + (all ? "survives" : "eliminated") + "\n" + lines;
  }
  return out;
}

/// (copies, family, rank, dim, total rank, total dim, matching family).
using NearMiss = std::tuple<long, std::string, long, long, long, long, std::string>;

inline std::vector<NearMiss> near_misses(long max_total_rank = 10) {
  std::vector<NearMiss> out;
  for (const Rec& w : table()) {
    if (w.rank > max_total_rank) continue;
    for (long k = 2; k <= max_total_rank / w.rank; ++k) {
      const long rank = k * w.rank, dim = k * w.dim;
      for (const Rec& c : table())
        if (c.rank == rank * rank && c.dim == dim * dim) {
          out.emplace_back(k, w.family, w.rank, w.dim, rank, dim, c.family);
          break;
        }
    }
  }
  return out;
}

}  // namespace oracle
