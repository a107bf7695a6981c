#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "tendon/types.hpp"

namespace tendon {

/// Parameters of the simulated 3-tendon plant. The defaults are calibrated
/// so unloaded tensions span roughly 2-15 N across the explored workspace.
struct PlantConfig {
    /// Piecewise-linear cable extension (mm) -> static tension (N),
    /// monotone non-decreasing; evaluated with end clamping.
    std::vector<std::pair<double, double>> stiffness_curve;
    double hysteresis_width = 0.8;    ///< N, directional offset
    double hysteresis_blend_mm = 1.0; ///< travel distance of direction blending
    double overshoot_gain = 0.20;     ///< N per mm/s of sustained velocity
    double restitution_tau = 1.0;     ///< s, decay of the transient component
    double viscous_coeff = 0.15;      ///< N*s/mm
    double noise_std = 0.05;          ///< N, on raw samples before filtering
    double actuator_rate_limit = 40.0; ///< mm/s
    double actuation_range = 63.0;    ///< mm
    double force_cap = 65.0;          ///< N
    double sample_rate_fast = 20000.0; ///< Hz, raw sampling
    double control_rate = 100.0;      ///< Hz, control loop
    double tip_scale = 1.0;           ///< mm of tip motion per mm of cable
    double coupling_alpha = 1.0 / 3.0; ///< ground-truth cable/tip force ratio
    std::uint64_t rng_seed = 1;

    static PlantConfig defaults();
    void validate() const;  ///< throws std::invalid_argument on violation
    double stiffness(double extension_mm) const;
    int substeps() const { return static_cast<int>(sample_rate_fast / control_rate); }
};

/// Hidden state of the plant. Tensions produced from it are >= 0.
struct PlantState {
    Vec3 cable_pos{Vec3::Zero()};        ///< mm
    Vec3 cable_vel{Vec3::Zero()};        ///< mm/s, last substep
    Vec3 hysteresis_state{Vec3::Zero()}; ///< N, friction memory per cable
    Vec3 transient_tension{Vec3::Zero()};///< N, overshoot component
    Vec3 filter_state{Vec3::Zero()};     ///< N, low-pass output per cable
    std::mt19937_64 rng;
};

/// Advances the plant by one control tick (substeps at the fast rate),
/// returning the decimated filtered tension frame. `ext_tension` is added
/// to the raw internal tension before filtering. dt must equal
/// 1/control_rate.
SensorFrame plant_step(PlantState& state, const PlantConfig& cfg,
                       const ActuatorCommand& cmd, const Vec3& ext_tension,
                       double dt);

/// Tip-plane readout of the cable configuration: tip_scale times the
/// projection of q into the tip plane. Equal cable positions map to (0,0).
Vec2 tip_pose_of(const PlantState& state, const PlantConfig& cfg);

/// Cable tensions induced by a contact force acting on the tip. A force
/// toward a cable's attachment point slackens that cable, so tensions rise
/// in the cables opposing the push; the scaling inverts the tip-force
/// projection for the given coupling constant.
Vec3 cable_tension_of_tip_force(const Vec2& tip_force, double alpha);

/// Curved tube the robot is inserted into; the centreline is an ordered
/// polyline in the tip plane.
struct TubeGeometry {
    std::vector<Vec2> centerline;
    double inner_radius = 13.0;     ///< mm
    double contact_stiffness = 1.0; ///< N/mm

    void validate() const;
};

/// Nearest point on the tube centreline polyline to `p`.
Vec2 nearest_centerline_point(const TubeGeometry& tube, const Vec2& p);

/// Contact force on the tip (N, tip plane) from penalty contact with the
/// tube wall; zero when the tip is within inner_radius of the centreline.
/// Always points from the wall toward the centreline.
Vec2 tube_contact_force(const Vec2& tip, const TubeGeometry& tube);

/// tube_contact_force mapped into external cable tensions with the plant's
/// ground-truth coupling constant.
Vec3 tube_contact(const Vec2& tip, const TubeGeometry& tube, double alpha);

/// Convenience wrapper owning config and state.
class Plant {
  public:
    explicit Plant(PlantConfig cfg);

    /// Re-seats the cables at q0, zeroes the dynamic state and primes the
    /// filter at the static tension so there is no start-up transient.
    void reset(const Vec3& q0);

    SensorFrame step(const ActuatorCommand& cmd, const Vec3& ext_tension = Vec3::Zero());

    const PlantConfig& config() const { return cfg_; }
    const PlantState& state() const { return state_; }
    PlantState& state() { return state_; }
    Vec2 tip_pose() const { return tip_pose_of(state_, cfg_); }

  private:
    PlantConfig cfg_;
    PlantState state_;
};

}  // namespace tendon
