#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "conelab/axioms.hpp"
#include "conelab/cone.hpp"

namespace conelab {

// Bipartite elements use product coordinates: x[i * dim_b + j] pairs with the
// product effect e_i (x) f_j, so wA (x) wB is kron(wA, wB).

enum class CompositeModel { MinTensor, MaxTensor, Hilbert, Classical };

std::string model_name(CompositeModel m);
CompositeModel parse_model(const std::string& s);

struct CompositeSystem {
  CompositeModel model = CompositeModel::MinTensor;
  System a;
  System b;
  System joint;  ///< cone on the product coordinates, unit kron(u_A, u_B)

  std::size_t dim() const { return joint.dim(); }
};

/// MinTensor and Classical need polyhedral factors (Classical: simplicial);
/// Hilbert needs two simple complex Hermitian factors.
CompositeSystem make_composite(const System& a, const System& b, CompositeModel model, std::string label = {});

enum class Side { A, B };

Vector product_state(const CompositeSystem& c, const Vector& wa, const Vector& wb, double tol = kSpectralTol);
Vector product_effect(const CompositeSystem& c, const Vector& ea, const Vector& eb, double tol = kSpectralTol);

/// Membership in the joint cone. Max-tensor membership is only certified by
/// sampling, so a nonnegative result there is AcceptedSampled.
enum class JointMembership { Member, AcceptedSampled, Rejected };
std::string membership_name(JointMembership m);
JointMembership joint_membership(const CompositeSystem& c, const Vector& w, double tol = kSpectralTol);

Vector marginal(const CompositeSystem& c, const Vector& w, Side side, double tol = kSpectralTol);

/// The map e -> omega(e (x) .) from A's effect coordinates to B's elements.
struct ConditioningMap {
  Matrix matrix;  ///< dim_b x dim_a
  Vector state;
};

ConditioningMap conditioning_map(const CompositeSystem& c, const Vector& w, double tol = kSpectralTol);

enum class SteerStatus { Steered, Infeasible, Unsupported };
std::string steer_status_name(SteerStatus s);

struct SteerResult {
  SteerStatus status = SteerStatus::Unsupported;
  std::vector<Vector> effects;  ///< the measurement on A when steered
  std::string method;
  std::string reason;
  double residual = 0.0;  ///< max || omega_hat(e_i) - omega_i ||_inf
};

/// Finds a measurement on A producing the given subnormalized ensemble on B.
/// The ensemble must sum to the B marginal within `tol`.
SteerResult steer(const CompositeSystem& c, const Vector& w, const std::vector<Vector>& ensemble,
                  double tol = kWitnessTol);

/// Random decomposition of an interior state into `parts` subnormalized members.
std::vector<Vector> random_ensemble(const System& sys, const Vector& state, std::size_t parts, Rng& rng);

/// Injectivity of the conditioning map plus order isomorphism from A's effect
/// cone onto B's cone, spot-checked by steering random ensembles.
AxiomVerdict steering_order_iso_check(const CompositeSystem& c, const Vector& w, double tol = kWitnessTol,
                                      std::uint64_t seed = 0, std::size_t ensembles = 20);

/// Bipartite state whose conditioning map is the identity (divided by the
/// rank) in trace-form coordinates; composed with the transpose for the
/// Hilbert model, and the uniform correlated state for simplices.
Vector canonical_self_steering_state(const CompositeSystem& c);

/// Whether wA (x) wB is extremal in the joint cone, for pure wA and wB.
bool purity_preservation_check(const CompositeSystem& c, const Vector& wa, const Vector& wb,
                               double tol = kSpectralTol);

nlohmann::json to_json(const SteerResult& r);

}  // namespace conelab
