#include <gtest/gtest.h>

#include <json.hpp>

#include "lipgraph/config.hpp"
#include "lipgraph/error.hpp"
#include "lipgraph/report.hpp"

using namespace lipgraph;

namespace {

const char* kCantor = R"(
pipeline = "cantor4-adhoc"
preset = "cantor4"
epsilon = 0.21
depth = 3
)";

}  // namespace

TEST(Config, PresetAndDefaults) {
  const RunConfig c = parse_config(kCantor);
  EXPECT_EQ(c.pipeline, Pipeline::Cantor4AdHoc);
  EXPECT_EQ(c.maps.size(), 4u);
  EXPECT_DOUBLE_EQ(c.epsilon, 0.21);
  EXPECT_EQ(c.grid, 1024);
}

TEST(Config, MapsWithRationalRotation) {
  const RunConfig c = parse_config(R"(
pipeline = "rotational"
[[map]]
r = 0.5
theta_pi = [1, 2]
z = [0.0, 1.0]
[[map]]
r = 0.5
z = [0.5, 0.0]
)");
  ASSERT_EQ(c.maps.size(), 2u);
  const Ifs ifs = c.ifs();
  bool rotated = false;
  for (const SimilarityMap& m : ifs.maps()) rotated = rotated || (m.rotation_pi && m.rotation_pi->num == 1);
  EXPECT_TRUE(rotated);
}

TEST(Config, UnknownKeyIsAnInputError) {
  try {
    parse_config("pipeline = \"rotfree\"\npreset = \"cantor4\"\nepslion = 0.3\n");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Input);
    EXPECT_EQ(exit_code_for(e.kind()), kExitInputError);
  }
}

TEST(Config, MalformedTomlIsAnInputError) {
  EXPECT_THROW(parse_config("pipeline = "), Error);
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ErrorKind::Resource), kExitResourceCap);
  EXPECT_EQ(exit_code_for(ErrorKind::Precondition), kExitInputError);
  EXPECT_EQ(exit_code_for(ErrorKind::Hypothesis), kExitCertificateFail);
}

TEST(Run, ReportShapeAndDeterminism) {
  const RunConfig c = parse_config(kCantor);
  const RunOutput a = run(c);
  const RunOutput b = run(c);
  EXPECT_EQ(a.json, b.json);
  EXPECT_EQ(a.svg, b.svg);
  EXPECT_TRUE(a.pass);
  const auto j = nlohmann::json::parse(a.json);
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_EQ(j.at("pipeline"), "cantor4-adhoc");
  EXPECT_TRUE(j.at("pass").get<bool>());
  for (const auto& cert : j.at("certificates")) EXPECT_TRUE(cert.at("pass").get<bool>()) << cert.dump();
  EXPECT_FALSE(j.contains("timings"));
}

TEST(Run, SvgIsClosedDocument) {
  const RunOutput a = run(parse_config(kCantor));
  EXPECT_EQ(a.svg.rfind("<svg", 0) == 0 || a.svg.rfind("<?xml", 0) == 0, true);
  EXPECT_NE(a.svg.find("viewBox=\"0 0 1000 1000\""), std::string::npos);
  EXPECT_NE(a.svg.find("</svg>"), std::string::npos);
}
