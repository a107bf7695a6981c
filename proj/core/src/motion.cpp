#include "tendon/motion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tendon {

namespace {
double wrap_angle(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a < -M_PI) a += 2.0 * M_PI;
    return a;
}
}  // namespace

void MotionStyle::validate() const {
    if (velocity <= 0.0) throw std::invalid_argument("velocity <= 0");
    if (jerkiness < 0.0) throw std::invalid_argument("jerkiness < 0");
    if (pause_prob < 0.0 || pause_prob > 1.0)
        throw std::invalid_argument("pause_prob outside [0, 1]");
    if (pause_max < pause_min) throw std::invalid_argument("pause range inverted");
}

double MotionGenerator::Bounds::diameter() const {
    return std::hypot(x_max - x_min, y_max - y_min);
}

MotionGenerator::MotionGenerator(MotionStyle style, Bounds bounds,
                                 std::uint64_t seed)
    : style_(style), bounds_(bounds), rng_(seed),
      arrival_radius_(0.02 * bounds.diameter()) {
    style_.validate();
    pos_ = {0.5 * (bounds_.x_min + bounds_.x_max),
            0.5 * (bounds_.y_min + bounds_.y_max)};
    pick_target(true);
}

MotionGenerator::MotionGenerator(StyleRanges ranges, Bounds bounds,
                                 std::uint64_t seed)
    : ranges_(ranges), bounds_(bounds), rng_(seed),
      arrival_radius_(0.02 * bounds.diameter()) {
    pos_ = {0.5 * (bounds_.x_min + bounds_.x_max),
            0.5 * (bounds_.y_min + bounds_.y_max)};
    roll_style();
    pick_target(true);
}

void MotionGenerator::roll_style() {
    const StyleRanges& r = *ranges_;
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    };
    style_.velocity = uni(r.velocity_min, r.velocity_max);
    style_.jerkiness = uni(r.jerkiness_min, r.jerkiness_max);
    style_.pause_prob = uni(r.pause_prob_min, r.pause_prob_max);
    style_.pause_min = r.pause_min;
    style_.pause_max = r.pause_max;
    style_.epoch_length = r.epoch_length;
    style_.validate();
}

void MotionGenerator::pick_target(bool snap_heading) {
    std::uniform_real_distribution<double> ux(bounds_.x_min, bounds_.x_max);
    std::uniform_real_distribution<double> uy(bounds_.y_min, bounds_.y_max);
    target_ = {ux(rng_), uy(rng_)};
    if (snap_heading)
        heading_ = std::atan2(target_[1] - pos_[1], target_[0] - pos_[0]);
    pursuit_elapsed_ = 0.0;
    // Re-roll when pursuit takes 3x the straight-line time.
    pursuit_budget_ = 3.0 * ((target_ - pos_).norm() / style_.velocity) + 1.0;
}

Vec2 MotionGenerator::tick(double dt) {
    if (ranges_) {
        epoch_elapsed_ += dt;
        if (epoch_elapsed_ >= style_.epoch_length) {
            epoch_elapsed_ = 0.0;
            roll_style();
        }
    }

    if (pause_remaining_ > 0.0) {
        pause_remaining_ -= dt;
        return pos_;
    }
    if (style_.pause_prob > 0.0) {
        const double p_tick =
            style_.pause_prob >= 1.0
                ? 1.0
                : 1.0 - std::pow(1.0 - style_.pause_prob, dt);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        if (u01(rng_) < p_tick) {
            std::uniform_real_distribution<double> up(style_.pause_min,
                                                      style_.pause_max);
            pause_remaining_ = up(rng_);
            return pos_;
        }
    }

    if ((target_ - pos_).norm() < arrival_radius_ ||
        pursuit_elapsed_ > pursuit_budget_)
        pick_target(true);
    pursuit_elapsed_ += dt;

    const double desired =
        std::atan2(target_[1] - pos_[1], target_[0] - pos_[0]);
    const double err = wrap_angle(desired - heading_);
    const double max_turn = style_.jerkiness * dt;
    heading_ = wrap_angle(heading_ + std::clamp(err, -max_turn, max_turn));

    const double step = style_.velocity * dt;
    pos_[0] = std::clamp(pos_[0] + step * std::cos(heading_), bounds_.x_min,
                         bounds_.x_max);
    pos_[1] = std::clamp(pos_[1] + step * std::sin(heading_), bounds_.y_min,
                         bounds_.y_max);
    return pos_;
}

}  // namespace tendon
