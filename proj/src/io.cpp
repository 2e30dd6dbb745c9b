#include "sphero/io.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "sphero/errors.hpp"

namespace sphero::io {

namespace {

constexpr std::array<const char*, 5> kParamKeys = {"r", "rho", "h", "w", "j_ratio"};
constexpr std::size_t kTrajectoryColumns = 14;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Whole-field parse; false on trailing junk or an empty field.
bool to_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) {
    return false;
  }
  const std::string buf(s);
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join_header(const std::vector<std::string>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += cols[i];
  }
  return out;
}

std::vector<std::string> trajectory_columns() {
  std::vector<std::string> cols{"t", "phi1", "phi2"};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      cols.push_back("R" + std::to_string(i) + std::to_string(j));
    }
  }
  cols.emplace_back("x1");
  cols.emplace_back("x2");
  return cols;
}

void write_row_prefix(std::ostream& out, double t, const ShapeState& s, const Rotation& R,
                      const Vec2& x) {
  out << format_double(t) << ',' << format_double(s.phi1) << ',' << format_double(s.phi2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out << ',' << format_double(R(i, j));
    }
  }
  out << ',' << format_double(x.x()) << ',' << format_double(x.y());
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  return f;
}

void check_written(std::ostream& f, const std::filesystem::path& path) {
  f.flush();
  if (!f) {
    throw IoError("write failed: " + path.string());
  }
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

double parse_angle(std::string_view text) {
  std::string_view s = trim(text);
  const auto bad = [&] { return std::invalid_argument("not a number: '" + std::string(text) + "'"); };
  const auto pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) {
    double v = 0.0;
    if (!to_double(s, v)) {
      throw bad();
    }
    return v;
  }
  std::string_view coef = s.substr(0, pi_pos);
  std::string_view rest = s.substr(pi_pos + 2);
  double scale = 1.0;
  if (coef == "-") {
    scale = -1.0;
  } else if (!coef.empty() && coef != "+") {
    if (coef.back() == '*') {
      coef.remove_suffix(1);
    }
    if (!to_double(coef, scale)) {
      throw bad();
    }
  }
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/' || !to_double(rest.substr(1), divisor) || divisor == 0.0) {
      throw bad();
    }
  }
  return scale * std::numbers::pi / divisor;
}

RobotParams parse_params(std::istream& in) {
  std::map<std::string, double> seen;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(lineno) + ": expected key = value", lineno);
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    bool known = false;
    for (const char* k : kParamKeys) {
      known = known || key == k;
    }
    if (!known) {
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'", lineno);
    }
    if (seen.count(key) != 0) {
      throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'", lineno);
    }
    double v = 0.0;
    if (!to_double(value, v)) {
      throw ParseError("line " + std::to_string(lineno) + ": bad number for '" + key + "'", lineno);
    }
    seen[key] = v;
  }
  for (const char* k : kParamKeys) {
    if (seen.count(k) == 0) {
      throw ValidationError(std::string("missing key '") + k + "'", k);
    }
  }
  RobotParams p;
  p.r = seen["r"];
  p.rho = seen["rho"];
  p.h = seen["h"];
  p.w = seen["w"];
  p.j_ratio = seen["j_ratio"];
  p.validate();
  return p;
}

RobotParams load_params(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) {
    throw IoError("cannot open " + path.string());
  }
  return parse_params(f);
}

std::string trajectory_header() { return join_header(trajectory_columns()); }

std::string extremal_header() {
  auto cols = trajectory_columns();
  for (const char* extra : {"gamma1", "gamma2", "p1", "p2"}) {
    cols.emplace_back(extra);
  }
  return join_header(cols);
}

void write_trajectory(const Trajectory& traj, std::ostream& out) {
  out << trajectory_header() << '\n';
  for (const auto& s : traj.samples()) {
    write_row_prefix(out, s.t, s.shape, s.pose.R, s.pose.x);
    out << '\n';
  }
}

void write_trajectory(const Trajectory& traj, const std::filesystem::path& path) {
  std::ofstream f = open_out(path);
  write_trajectory(traj, f);
  check_written(f, path);
}

Trajectory read_trajectory(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw SchemaError("missing header", 0);
  }
  if (trim(line) != trajectory_header()) {
    throw SchemaError("unexpected header: " + line, 0);
  }
  Trajectory traj;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split(trim(line), ',');
    if (fields.size() != kTrajectoryColumns) {
      throw SchemaError("row " + std::to_string(row) + ": expected " +
                            std::to_string(kTrajectoryColumns) + " columns, got " +
                            std::to_string(fields.size()),
                        row);
    }
    std::array<double, kTrajectoryColumns> v{};
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (!to_double(fields[i], v[i])) {
        throw SchemaError("row " + std::to_string(row) + ": bad number in column " +
                              std::to_string(i + 1),
                          row);
      }
    }
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        m(i, j) = v[3 + 3 * i + j];
      }
    }
    TrajectorySample s;
    s.t = v[0];
    s.shape = {v[1], v[2]};
    s.pose.x = Vec2(v[12], v[13]);
    try {
      s.pose.R = Rotation::from_matrix(m);
      traj.append(s);
    } catch (const std::exception& e) {
      throw SchemaError("row " + std::to_string(row) + ": " + e.what(), row);
    }
  }
  return traj;
}

Trajectory read_trajectory(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) {
    throw IoError("cannot open " + path.string());
  }
  return read_trajectory(f);
}

void write_extremal(const PMPRun& run, std::ostream& out) {
  out << extremal_header() << '\n';
  for (const auto& s : run.samples) {
    const PMPState& z = s.state;
    write_row_prefix(out, s.t, z.shape(), s.R, z.x);
    out << ',' << format_double(z.gamma1) << ',' << format_double(z.gamma2) << ','
        << format_double(z.p.x()) << ',' << format_double(z.p.y()) << '\n';
  }
}

void write_extremal(const PMPRun& run, const std::filesystem::path& path) {
  std::ofstream f = open_out(path);
  write_extremal(run, f);
  check_written(f, path);
}

}  // namespace sphero::io
