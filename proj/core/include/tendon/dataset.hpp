#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tendon/types.hpp"

namespace tendon {

/// Time-ordered command/tension recording at the control rate. Sessions
/// mark restarts (e.g. after a force-cap fault); model windows never
/// straddle a session boundary.
struct Dataset {
    struct Record {
        double t;      ///< s
        Vec3 q;        ///< commanded cable positions, mm
        Vec3 tension;  ///< filtered measured tensions, N
        int session;
    };
    std::vector<Record> records;
    double rate = 100.0;  ///< Hz

    std::size_t size() const { return records.size(); }
};

/// CSV with header `t,q1,q2,q3,T1,T2,T3,session` (s, mm, N).
void write_dataset_csv(const Dataset& d, const std::string& path);
Dataset read_dataset_csv(const std::string& path);

/// Contiguous temporal split: train = first `frac` of the records.
std::pair<Dataset, Dataset> split(const Dataset& d, double frac = 0.8);

/// Start indices s such that records [s, s + window] lie in one session;
/// the window covers [s, s + window) and the target is record s + window.
std::vector<int> window_starts(const Dataset& d, int window);

/// Window matrix for start index s: 3 x window, column 0 = newest command
/// (record s + window - 1), matching the controller's assembly order.
Eigen::Matrix3Xd make_window(const Dataset& d, int start, int window);

}  // namespace tendon
