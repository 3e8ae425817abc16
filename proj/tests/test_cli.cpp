#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "epsnet/cli.hpp"
#include "epsnet/instance_io.hpp"

using namespace epsnet;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int status;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = dispatch(args, out, err);
  return {status, out.str(), err.str()};
}

Json read_json(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("epsnet_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateThenSolve) {
  ASSERT_EQ(run({"gen", "pat", "--c", "4", "--d", "2", "--out", path("a.json")}).status, 0);
  const Invocation solved = run({"solve", "net", "--inst", path("a.json"), "--eps", "1/128", "--mode", "exact", "--out",
                          path("result.json")});
  ASSERT_EQ(solved.status, 0) << solved.err;
  const Json result = read_json(path("result.json"));
  EXPECT_GE(result["size"].get<std::size_t>(), 6u);
  EXPECT_TRUE(result["optimal"].get<bool>());
  EXPECT_EQ(result["params"]["c"], 4);
}

TEST_F(CliTest, VcOfStoredInstance) {
  ASSERT_EQ(run({"gen", "pat", "--c", "4", "--d", "2", "--out", path("a.json")}).status, 0);
  const Invocation vc = run({"verify", "vc", "--inst", path("a.json"), "--max-d", "4", "--out", path("vc.json")});
  ASSERT_EQ(vc.status, 0);
  EXPECT_EQ(read_json(path("vc.json"))["vc_dimension"], 2);
}

TEST_F(CliTest, IndependenceBoundReport) {
  const Invocation r = run({"verify", "lemma21", "--c", "3", "--d", "2", "--r", "2", "--out", path("l.json")});
  ASSERT_EQ(r.status, 0);
  const Json rep = read_json(path("l.json"));
  EXPECT_TRUE(rep["passed"].get<bool>());
  EXPECT_LE(rep["max_independent"].get<int>(), 6);
}

TEST_F(CliTest, DerivedInstancesAndFalsify) {
  ASSERT_EQ(run({"gen", "pat", "--c", "4", "--d", "2", "--eps", "1/128", "--out", path("a.json")}).status, 0);
  ASSERT_EQ(run({"gen", "dual4", "--inst", path("a.json"), "--out", path("d.json")}).status, 0);
  ASSERT_EQ(run({"gen", "halfspace", "--inst", path("a.json"), "--out", path("h.json")}).status, 0);
  const Invocation h = run({"solve", "net", "--inst", path("h.json"), "--eps", "1/128", "--out", path("hr.json")});
  ASSERT_EQ(h.status, 0) << h.err;
  const Invocation a = run({"solve", "net", "--inst", path("a.json"), "--out", path("ar.json")});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(read_json(path("hr.json"))["size"], read_json(path("ar.json"))["size"]);
  const Invocation f = run({"report", "falsify", "--inst", path("a.json"), "--size", "5", "--samples", "20", "--seed",
                     "3", "--out", path("f.json")});
  ASSERT_EQ(f.status, 0) << f.err;
  EXPECT_EQ(read_json(path("f.json"))["failures"], 20);
}

TEST_F(CliTest, FalsifyFailureStillWritesReport) {
  ASSERT_EQ(run({"gen", "pat", "--c", "4", "--d", "2", "--out", path("a.json")}).status, 0);
  const Invocation f = run({"report", "falsify", "--inst", path("a.json"), "--size", "12", "--samples", "1", "--seed",
                     "3", "--eps", "1/128", "--out", path("f.json")});
  EXPECT_NE(f.status, 0);
  EXPECT_FALSE(read_json(path("f.json"))["passed"].get<bool>());
}

TEST_F(CliTest, RandomInstanceRoundTrip) {
  ASSERT_EQ(run({"gen", "random", "--n", "32", "--r", "2", "--seed", "5", "--out", path("r.json")}).status, 0);
  const InstanceFile inst = load_instance(path("r.json"));
  EXPECT_EQ(instance_to_json(instance_from_json(instance_to_json(inst))), instance_to_json(inst));
  InstanceFile stripped = inst;
  stripped.range_space.reset();
  EXPECT_EQ(resolve_range_space(stripped), *inst.range_space);
  const Invocation s = run({"solve", "net", "--inst", path("r.json"), "--out", path("rr.json")});
  ASSERT_EQ(s.status, 0) << s.err;
}

TEST_F(CliTest, PatRoundTripAndRebuild) {
  const InstanceFile inst = make_pat_instance(3, 2, 2);
  const Json j = instance_to_json(inst);
  const InstanceFile back = instance_from_json(j);
  EXPECT_EQ(instance_to_json(back), j);
  InstanceFile stripped = back;
  stripped.range_space.reset();
  EXPECT_EQ(resolve_range_space(stripped), *inst.range_space);
}

TEST_F(CliTest, SeedIsRequired) {
  const Invocation r = run({"gen", "random", "--n", "32", "--r", "2", "--out", path("r.json")});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("--seed"), std::string::npos);
  EXPECT_NE(run({"verify", "lemma31", "--n", "64", "--r", "2", "--i-size", "32", "--trials", "10"}).status, 0);
}

TEST_F(CliTest, UnknownCommandPrintsUsage) {
  const Invocation r = run({"frobnicate"});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_NE(run({}).status, 0);
  EXPECT_NE(run({"verify", "lemma99"}).status, 0);
}

TEST_F(CliTest, MalformedInstanceNamesTheField) {
  ASSERT_EQ(run({"gen", "pat", "--c", "3", "--d", "1", "--out", path("a.json")}).status, 0);
  Json j = read_json(path("a.json"));
  j["rects"][1]["x_hi"]["den"] = "zero";
  std::ofstream(path("bad.json")) << j.dump();
  const Invocation r = run({"solve", "net", "--inst", path("bad.json"), "--eps", "1/2"});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("rects[1].x_hi"), std::string::npos) << r.err;

  Json v = read_json(path("a.json"));
  v.erase("version");
  std::ofstream(path("nov.json")) << v.dump();
  const Invocation rv = run({"verify", "vc", "--inst", path("nov.json")});
  EXPECT_NE(rv.err.find("version"), std::string::npos) << rv.err;
}
