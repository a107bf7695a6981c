#pragma once

#include <optional>
#include <random>

#include "tendon/types.hpp"

namespace tendon {

/// One randomized traversal style, re-rolled every epoch during
/// exploration.
struct MotionStyle {
    double velocity = 6.0;    ///< surface-traversal speed, units/s
    double jerkiness = 2.0;   ///< max heading change rate, rad/s
    double pause_prob = 0.1;  ///< probability per second of starting a pause
    double pause_min = 0.1;   ///< s
    double pause_max = 1.0;   ///< s
    double epoch_length = 20.0;  ///< s between style re-rolls

    void validate() const;
};

/// Uniform ranges the generator draws a fresh style from each epoch.
struct StyleRanges {
    double velocity_min = 2.0, velocity_max = 14.0;
    double jerkiness_min = 0.2, jerkiness_max = 8.0;
    double pause_prob_min = 0.0, pause_prob_max = 0.4;
    double pause_min = 0.1, pause_max = 1.5;
    double epoch_length = 20.0;
};

/// Heading-limited pursuit of random (x, y) targets. A new target is drawn
/// whenever the current one is reached (within 2% of the workspace
/// diameter) or pursuit stalls; the heading snaps to the new target and is
/// then rate-limited by the style's jerkiness. Pauses freeze the position.
class MotionGenerator {
  public:
    struct Bounds {
        double x_min = -12.0, x_max = 12.0;
        double y_min = -12.0, y_max = 12.0;
        double diameter() const;
    };

    /// Fixed style for the whole run.
    MotionGenerator(MotionStyle style, Bounds bounds, std::uint64_t seed);
    /// Style re-rolled from `ranges` every epoch_length seconds.
    MotionGenerator(StyleRanges ranges, Bounds bounds, std::uint64_t seed);

    /// Next waypoint after dt seconds.
    Vec2 tick(double dt);

    const MotionStyle& style() const { return style_; }
    const Vec2& position() const { return pos_; }

  private:
    void roll_style();
    void pick_target(bool snap_heading);

    MotionStyle style_;
    std::optional<StyleRanges> ranges_;
    Bounds bounds_;
    std::mt19937_64 rng_;
    Vec2 pos_{Vec2::Zero()};
    Vec2 target_{Vec2::Zero()};
    double heading_ = 0.0;
    double arrival_radius_;
    double epoch_elapsed_ = 0.0;
    double pause_remaining_ = 0.0;
    double pursuit_elapsed_ = 0.0;
    double pursuit_budget_ = 0.0;
};

}  // namespace tendon
