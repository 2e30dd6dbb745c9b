#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "sphero/errors.hpp"
#include "sphero/io.hpp"

using namespace sphero;

namespace {

constexpr const char* kReferenceFile =
    "# reference robot\n"
    "r = 1\n"
    "rho = 0.3   # wheel radius\n"
    "\n"
    "h=0.75\n"
    "w = 0.8\n"
    "j_ratio = 5\n";

RobotParams parse(const std::string& text) {
  std::istringstream in(text);
  return io::parse_params(in);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sphero_test_" + name);
}

}  // namespace

TEST(Params, ParsesReferenceFile) {
  const RobotParams p = parse(kReferenceFile);
  EXPECT_EQ(p.r, 1.0);
  EXPECT_EQ(p.rho, 0.3);
  EXPECT_EQ(p.h, 0.75);
  EXPECT_EQ(p.w, 0.8);
  EXPECT_EQ(p.j_ratio, 5.0);
  EXPECT_NEAR(p.c(), 0.03125, 1e-16);
}

TEST(Params, MissingKeyNamesIt) {
  try {
    parse("r = 1\nrho = 0.3\nw = 0.8\nj_ratio = 5\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.key(), "h");
  }
}

TEST(Params, NegativeValueRejected) {
  try {
    parse("r = 1\nrho = 0.3\nh = 0.75\nw = -0.8\nj_ratio = 5\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.key(), "w");
  }
}

TEST(Params, MalformedLineReportsLineNumber) {
  try {
    parse("r = 1\n# fine\nrho 0.3\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse("r = 1\nrho = 0.3x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse("r = 1\nradius = 2\n"), ParseError);
  EXPECT_THROW(parse("r = 1\nr = 2\n"), ParseError);
}

TEST(Params, MissingFile) {
  EXPECT_THROW(io::load_params(temp_file("does_not_exist.cfg")), IoError);
}

TEST(Params, LoadFromDisk) {
  const auto path = temp_file("reference.cfg");
  std::ofstream(path) << kReferenceFile;
  EXPECT_EQ(io::load_params(path).w, 0.8);
  std::filesystem::remove(path);
}

TEST(Angle, PiLiterals) {
  constexpr double pi = std::numbers::pi;
  EXPECT_EQ(io::parse_angle("1.5"), 1.5);
  EXPECT_EQ(io::parse_angle("-2e-3"), -2e-3);
  EXPECT_EQ(io::parse_angle("pi"), pi);
  EXPECT_EQ(io::parse_angle("-pi"), -pi);
  EXPECT_EQ(io::parse_angle("7pi"), 7.0 * pi);
  EXPECT_EQ(io::parse_angle("10pi"), 10.0 * pi);
  EXPECT_EQ(io::parse_angle("0.5pi"), 0.5 * pi);
  EXPECT_EQ(io::parse_angle("3pi/2"), 3.0 * pi / 2.0);
  EXPECT_EQ(io::parse_angle("-pi/4"), -pi / 4.0);
  EXPECT_EQ(io::parse_angle("2*pi"), 2.0 * pi);
  for (const char* bad : {"", "x", "7pix", "pi/0", "pi/", "1.2.3", "7 pi 2"}) {
    EXPECT_THROW(io::parse_angle(bad), std::invalid_argument) << bad;
  }
}

TEST(Csv, HeaderOnlyForEmptyTrajectory) {
  std::ostringstream out;
  io::write_trajectory(Trajectory{}, out);
  EXPECT_EQ(out.str(), "t,phi1,phi2,R00,R01,R02,R10,R11,R12,R20,R21,R22,x1,x2\n");
}

TEST(Csv, RoundTripIsBitIdentical) {
  const Control u([](double t) { return WheelRates{std::cos(t), 0.3 + std::sin(3.0 * t)}; });
  const Trajectory tr = integrate(RobotParams{}, Configuration{}, u, 9.99, 0.01);
  ASSERT_EQ(tr.size(), 1000u);
  const auto path = temp_file("roundtrip.csv");
  io::write_trajectory(tr, path);
  const Trajectory back = io::read_trajectory(path);
  std::filesystem::remove(path);
  ASSERT_EQ(back.size(), tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    ASSERT_EQ(back[i].t, tr[i].t);
    ASSERT_EQ(back[i].shape.phi1, tr[i].shape.phi1);
    ASSERT_EQ(back[i].shape.phi2, tr[i].shape.phi2);
    ASSERT_EQ(back[i].pose.R.matrix(), tr[i].pose.R.matrix());
    ASSERT_EQ(back[i].pose.x, tr[i].pose.x);
  }
}

TEST(Csv, MalformedRowReportsIndex) {
  const std::string header = io::trajectory_header() + "\n";
  const std::string good = "0,0,0,1,0,0,0,1,0,0,0,1,0,0\n";
  const auto row_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      io::read_trajectory(in);
    } catch (const SchemaError& e) {
      return e.row();
    }
    return std::size_t{999};
  };
  EXPECT_EQ(row_of(header + good + "1,0,0,1,0,0,0,1,0,0,0,1,0\n"), 2u);
  EXPECT_EQ(row_of(header + good + "1,0,0,1,0,0,0,1,0,0,0,1,0,abc\n"), 2u);
  EXPECT_EQ(row_of(header + "0,0,0,2,0,0,0,1,0,0,0,1,0,0\n"), 1u);
  EXPECT_EQ(row_of(header + good + good), 2u);
  EXPECT_EQ(row_of("t,phi1\n"), 0u);
  EXPECT_EQ(row_of(""), 0u);
}

TEST(Csv, ExtremalColumns) {
  PMPState z;
  z.gamma1 = 1.0;
  z.p = Vec2(0.5, -0.5);
  const PMPRun run = integrate_pmp(RobotParams{}, z, 0.01, 0.005);
  std::ostringstream out;
  io::write_extremal(run, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, io::trajectory_header() + ",gamma1,gamma2,p1,p2");
  std::getline(in, line);
  EXPECT_EQ(line, "0,0,0,1,0,0,0,1,0,0,0,1,0,0,1,0,0.5,-0.5");
}

TEST(Csv, UnwritablePath) {
  EXPECT_THROW(io::write_trajectory(Trajectory{}, "/nonexistent_dir/x.csv"), IoError);
}

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(std::stod(io::format_double(std::numbers::pi)), std::numbers::pi);
}
