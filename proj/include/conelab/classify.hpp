#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conelab/eja.hpp"

namespace conelab {

/// Rank and dimension of one simple Euclidean Jordan algebra.
struct ClassRecord {
  Family family = Family::RealSym;
  std::size_t rank = 0;
  std::size_t dim = 0;

  bool operator==(const ClassRecord&) const = default;
  std::string describe() const;
};

/// Table value. `param` is the rank, except for spin factors where it is the
/// dimension (rank is always 2). Throws PreconditionViolation on invalid
/// combinations: Albert only at rank 3, spin factors only with dim >= 3.
std::size_t dim_of(Family f, std::size_t param);
ClassRecord class_record(Family f, std::size_t param);

/// Every simple algebra of the given rank (spin factors only appear at rank
/// 2, with dims 3..spin_bound).
std::vector<ClassRecord> records_of_rank(std::size_t rank, std::size_t spin_bound);

enum class CountingRule {
  Equal,   ///< local tomography: a simple factor of rank r^2 and dim exactly d^2
  AtLeast  ///< injective composites and classicality: rank r^2, dim >= d^2
};

struct CellTrace {
  ClassRecord w;
  std::size_t required_rank = 0;
  std::size_t required_dim = 0;
  CountingRule rule = CountingRule::Equal;
  std::vector<ClassRecord> candidates;  ///< simple records of the required rank
  bool pass = false;
  std::string reason;  ///< the deciding (in)equalities
};

/// Spin dims above a cutoff all fail for the same reason; they are summarized
/// as one range instead of one cell each.
struct RangeTrace {
  std::size_t first = 0;
  std::size_t last = 0;
  std::string reason;
};

struct FamilyTrace {
  Family family = Family::RealSym;
  bool survives = false;
  std::vector<CellTrace> cells;
  std::optional<RangeTrace> spin_tail;
  std::string note;
};

/// A direct sum of k >= 2 copies of a simple W whose doubled rank and
/// dimension match a simple algebra, so counting alone cannot exclude it.
struct NearMiss {
  std::size_t copies = 0;
  ClassRecord w;
  std::size_t total_rank = 0;
  std::size_t total_dim = 0;
  ClassRecord match;
};

struct Derivation {
  std::string procedure;
  std::size_t max_rank = 0;
  std::size_t num_summands = 1;
  CountingRule rule = CountingRule::Equal;
  std::vector<Family> survivors;
  std::vector<FamilyTrace> families;
  std::vector<NearMiss> near_misses;

  const FamilyTrace& family(Family f) const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

Derivation survivors_local_tomography(std::size_t max_rank);
Derivation survivors_injective_composite(std::size_t max_rank);
Derivation survivors_classicality(std::size_t max_rank, std::size_t num_summands);

/// Near misses with total rank k * rank(W) <= max_total_rank.
std::vector<NearMiss> counting_near_misses(std::size_t max_total_rank = 10);

/// Spin factor dims are enumerated up to 4 * max_rank^4.
std::size_t spin_enumeration_bound(std::size_t max_rank);

}  // namespace conelab
