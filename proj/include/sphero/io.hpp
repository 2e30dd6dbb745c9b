#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "sphero/kinematics.hpp"
#include "sphero/optimal_control.hpp"

namespace sphero::io {

/// Reads `key = value` lines (keys r, rho, h, w, j_ratio; `#` starts a
/// comment). Throws ParseError with the 1-based line number for malformed or
/// unknown entries and ValidationError naming the key when one is missing or
/// out of range.
RobotParams parse_params(std::istream& in);
RobotParams load_params(const std::filesystem::path& path);

/// `%.17g`, enough digits for an exact round trip.
std::string format_double(double v);

/// Parses a real number, optionally scaled by pi: "1.5", "pi", "7pi",
/// "-3pi/2", "0.5pi". Throws std::invalid_argument.
double parse_angle(std::string_view text);

/// Trajectory CSV: header `t,phi1,phi2,R00,...,R22,x1,x2`, R row-major.
void write_trajectory(const Trajectory& traj, std::ostream& out);
void write_trajectory(const Trajectory& traj, const std::filesystem::path& path);

/// Throws SchemaError (with row index, header = 0) on a bad header, a wrong
/// column count, an unparsable field, a non-rotation R or a non-increasing t.
Trajectory read_trajectory(std::istream& in);
Trajectory read_trajectory(const std::filesystem::path& path);

/// Extremal CSV: the trajectory columns followed by gamma1,gamma2,p1,p2.
void write_extremal(const PMPRun& run, std::ostream& out);
void write_extremal(const PMPRun& run, const std::filesystem::path& path);

std::string trajectory_header();
std::string extremal_header();

}  // namespace sphero::io
