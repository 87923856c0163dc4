#include <gtest/gtest.h>

#include <filesystem>

#include "usc/config.hpp"
#include "usc/csv.hpp"
#include "usc/error.hpp"

using namespace usc;
using usc::config::Config;

TEST(Config, DefaultsFromSchema) {
  const auto c = Config::parse("");
  EXPECT_DOUBLE_EQ(c.number("model", "omega_r"), 5.15);
  EXPECT_DOUBLE_EQ(c.number("model", "eps2"), -3.22);
  EXPECT_DOUBLE_EQ(c.number("calibration", "i_b0"), 0.547);
  EXPECT_EQ(c.integer("sweep", "points"), 81);
  EXPECT_EQ(c.text("sweep", "unit"), "ghz");
  EXPECT_FALSE(c.is_set("model", "omega_r"));
}

TEST(Config, ParsesValuesAndComments) {
  const auto c = Config::parse(
      "# header\n[model]\ng1 = 2.5  # inline\n\n[sweep]\nunit = ma\nreference = true\n"
      "transitions = 0-1, 1-2\n");
  EXPECT_DOUBLE_EQ(c.number("model", "g1"), 2.5);
  EXPECT_TRUE(c.is_set("model", "g1"));
  EXPECT_EQ(c.text("sweep", "unit"), "ma");
  EXPECT_TRUE(c.boolean("sweep", "reference"));
  EXPECT_EQ(c.list("sweep", "transitions"), (std::vector<std::string>{"0-1", "1-2"}));
}

TEST(Config, UnknownKeyNamesLine) {
  try {
    Config::parse("[model]\ng1 = 1\ngl = 3.33\n", "typo.conf");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config);
    EXPECT_STREQ(e.what(), "typo.conf:3: unknown key 'gl' in [model]");
  }
}

TEST(Config, Rejections) {
  EXPECT_THROW(Config::parse("[nope]\n"), Error);
  EXPECT_THROW(Config::parse("g1 = 1\n"), Error);
  EXPECT_THROW(Config::parse("[model]\ng1\n"), Error);
  EXPECT_THROW(Config::parse("[model]\ng1 = abc\n"), Error);
  EXPECT_THROW(Config::parse("[model]\nn_cut = 2.5\n"), Error);
  EXPECT_THROW(Config::parse("[model]\ng1 = 1\ng1 = 2\n"), Error);
  EXPECT_THROW(Config::parse("[sweep]\nunit = furlong\n"), Error);
  EXPECT_THROW(Config::parse("[sweep]\nreference = maybe\n"), Error);
  EXPECT_THROW(Config::parse("[model\n"), Error);
}

TEST(Config, OverridesAreValidated) {
  auto c = Config::parse("[model]\ng1 = 1\n");
  c.set("model", "g1", "2");
  EXPECT_DOUBLE_EQ(c.number("model", "g1"), 2.0);
  EXPECT_THROW(c.set("model", "gl", "2"), Error);
  EXPECT_THROW(c.set("model", "g1", "x"), Error);
}

TEST(Config, DigestTracksResolvedValues) {
  const auto a = Config::parse("[model]\ng1 = 3.33\n");
  const auto b = Config::parse("");
  const auto c = Config::parse("[model]\ng1 = 3.3\n");
  EXPECT_EQ(a.digest().size(), 16u);
  EXPECT_EQ(a.resolved(), b.resolved());
  EXPECT_EQ(a.digest(), b.digest());
  EXPECT_NE(a.digest(), c.digest());
}

TEST(Fnv1a, KnownVectors) {
  EXPECT_EQ(config::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(config::fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Csv, NumberFormat) {
  EXPECT_EQ(io::format_number(0.1), "0.1");
  EXPECT_EQ(io::format_number(-0.0), "0");
  EXPECT_EQ(io::format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(io::format_number(201.6), "201.6");
}

TEST(Csv, RoundTripAndErrors) {
  const auto dir = std::filesystem::temp_directory_path();
  io::CsvTable t{{"x", "y"}, {{1.0, 2.5}, {-3.0, 4.0}}};
  const auto path = dir / "usc_test_table.csv";
  io::write_atomic(path, io::to_csv(t, {"note=1"}));
  EXPECT_EQ(io::read_file(path).substr(0, 9), "# note=1\n");
  const auto back = io::read_csv(path);
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(back.column("y"), 1);
  EXPECT_EQ(back.column("z"), -1);

  io::write_atomic(path, "x,y\n1,2\n3\n");
  try {
    io::read_csv(path);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
  std::filesystem::remove(path);
  EXPECT_THROW(io::read_csv(dir / "usc_missing_file.csv"), Error);
}
