#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "conelab/cone.hpp"

namespace conelab {

/// Holds and Fails are decided verdicts. Inconclusive means a sampled check
/// found no violation but cannot certify; Unsupported means no constructor or
/// solver exists for the input. Neither of the last two is a disproof.
enum class Status { Holds, Fails, Inconclusive, Unsupported, Skipped };

std::string status_name(Status s);
Status parse_status(const std::string& s);

struct AxiomVerdict {
  std::string axiom;
  Status status = Status::Inconclusive;
  std::optional<Matrix> witness;
  nlohmann::json certificate = nlohmann::json::object();
  nlohmann::json violation = nlohmann::json::object();
  double margin = 0.0;

  bool holds() const { return status == Status::Holds; }
};

// ---------------------------------------------------------------------------
// Self-duality

/// C equals its dual for the inner product <x, y> = x^T G y. Exact for
/// polyhedral cones; sampled for the others (a found violation still fails).
AxiomVerdict check_self_dual(const System& sys, const Matrix& inner, double tol = kSpectralTol,
                             std::uint64_t seed = 0, std::size_t samples = 200);

enum class SearchOutcome { Found, Infeasible, Undecided, SearchSpaceExceeded };
std::string outcome_name(SearchOutcome o);

struct BijectionRecord {
  std::vector<std::size_t> facet_of_ray;  ///< ray i is sent to facet facet_of_ray[i]
  std::string outcome;  ///< see DualitySearch::outcome_counts for the vocabulary
  std::size_t solution_dim = 0;
};

struct DualitySearch {
  SearchOutcome outcome = SearchOutcome::Infeasible;
  std::optional<RMatrix> map;  ///< T with T r_i = mu_i n_sigma(i), mu_i > 0
  std::vector<RVector> rays;
  std::vector<RVector> facets;
  std::vector<BijectionRecord> bijections;  ///< only bijections that reached a solve
  std::size_t total_bijections = 0;         ///< m! for m rays
  std::size_t pruned_by_incidence = 0;
  std::string note;

  nlohmann::json to_json() const;
};

struct SearchOptions {
  std::size_t max_rays = 12;
  /// Skip bijections that cannot preserve ray adjacency (and, for the
  /// symmetric search, the zero pattern of the pairing matrix).
  bool use_incidence = true;
};

/// Looks for a symmetric positive definite G with G C = C*.
DualitySearch search_spd_self_duality(const PolyhedralCone& cone, const SearchOptions& opts = {});
/// Looks for any invertible T with T C = C*.
DualitySearch search_weak_self_duality(const PolyhedralCone& cone, const SearchOptions& opts = {});

/// Re-verifies a search result from its own payload.
bool verify_duality_map(const PolyhedralCone& cone, const RMatrix& t, bool require_spd);

// ---------------------------------------------------------------------------
// Homogeneity

/// Order automorphism sending rho to sigma, both strictly interior.
PositiveMap homogeneity_witness(const System& sys, const Vector& rho, const Vector& sigma, double tol = kSpectralTol);

/// Witnesses on `pairs` random interior pairs, or an exact disproof for
/// non-simplicial polyhedral cones.
AxiomVerdict check_homogeneous(const System& sys, std::uint64_t seed = 0, std::size_t pairs = 10,
                               double tol = kWitnessTol);

/// Dimension of {T : T r_i = lambda_i r_i for all rays}, the Lie algebra of
/// the automorphism group of a polyhedral cone.
std::size_t stabilizer_algebra_dim(const PolyhedralCone& cone);

struct Reversibility {
  double p = 0.0;
  double residual = 0.0;  ///< || Phi_sharp Phi - p id ||
  Matrix sharp;
};

/// Phi_sharp = p Phi^{-1} with the largest p keeping Phi_sharp normalized on the base.
Reversibility probabilistic_inverse(const PositiveMap& phi, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Pure transitivity

AxiomVerdict pure_transitivity_witness(const System& sys, const Vector& w1, const Vector& w2,
                                       double tol = kSpectralTol);

/// System-level verdict on a designated or sampled set of pure pairs.
AxiomVerdict check_pure_transitive(const System& sys, std::uint64_t seed = 0, std::size_t pairs = 10);

struct PurePath {
  Status status = Status::Inconclusive;
  std::vector<Vector> states;  ///< omega_t at t = k / steps, k = 0..steps
  std::vector<Matrix> maps;    ///< Phi_t with Phi_t(omega_0) = omega_t
  std::string obstruction;
  nlohmann::json certificate = nlohmann::json::object();
};

PurePath continuous_pure_transitivity(const System& sys, const Vector& w1, const Vector& w2, std::size_t steps,
                                      double tol = kSpectralTol);

AxiomVerdict check_continuous_pure_transitive(const System& sys, std::uint64_t seed = 0, std::size_t steps = 16);

/// Face profile of a pure state: the largest face dimension of w + sigma over
/// `samples` pure sigma. Normalized order isomorphisms preserve it.
std::size_t face_profile(const System& sys, const Vector& w, std::size_t samples = 200, std::uint64_t seed = 0);

/// Normalized automorphisms of a polyhedral system, as exact matrices, or
/// nullopt when more than `cap` basis assignments would be needed.
std::optional<std::vector<RMatrix>> polyhedral_automorphisms(const PolyhedralCone& cone, const Vector& unit,
                                                             std::size_t cap = 100000);

// ---------------------------------------------------------------------------
// Reducibility and classical effects

/// Holds when the cone splits as a direct sum.
AxiomVerdict check_reducible(const System& sys, std::uint64_t seed = 0);

bool classical_effect_test(const System& sys, const Vector& effect, double tol = 1e-9);

}  // namespace conelab
