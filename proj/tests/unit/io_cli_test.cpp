#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "cli.hpp"
#include "nspace/fixtures.hpp"
#include "nspace/io.hpp"

using namespace nspace;
namespace fx = nspace::fixtures;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("nspace_unit_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

cli::CommandResult run(std::vector<std::string> args) { return cli::run_command(args); }

}  // namespace

TEST(Io, RoundTripIsByteIdentical) {
  for (const auto& f : fx::space_corpus()) {
    if (f.space.size() > 32) continue;
    std::string text = io::serialize_document(io::make_document(f.space));
    auto doc = io::parse_document(text);
    EXPECT_EQ(doc.space(), f.space) << f.name;
    EXPECT_EQ(io::serialize_document(doc), text) << f.name;
  }
  for (const auto& m : fx::map_corpus()) {
    std::string text = io::serialize_document(io::make_document(m.map));
    EXPECT_EQ(io::serialize_document(io::parse_document(text)), text) << m.name;
  }
  std::string g = io::serialize_document(io::make_document(FiniteGroup::heisenberg(2)));
  EXPECT_EQ(io::serialize_document(io::parse_document(g)), g);
  std::string F = io::serialize_document(io::make_document(fx::z4_two_step()));
  EXPECT_EQ(io::serialize_document(io::parse_document(F)), F);
  auto pi = fx::rotation(4, 2);
  std::string a = io::serialize_document(io::make_document(pi, 2, 1 << 20));
  auto pd = io::parse_document(a);
  ASSERT_TRUE(pd.map().factor.has_value());
  EXPECT_EQ(io::serialize_document(pd), a);
}

TEST(Io, CubeListsAreCanonicalized) {
  std::string text = R"({"kind": "cubespace", "format_version": 1, "points": ["b", "a"], "max_dim": 1,
    "cubes": {"1": [[1, 0], [0, 0], [1, 1], [0, 1]]}})";
  auto doc = io::parse_document(text);
  std::string canon = io::serialize_document(doc);
  EXPECT_EQ(io::serialize_document(io::parse_document(canon)), canon);
  EXPECT_LT(canon.find("\"a\""), canon.find("\"b\""));
}

TEST(Io, ShortCubeNamesTheCube) {
  std::string text = R"({"kind": "cubespace", "format_version": 1, "points": ["0", "1"], "max_dim": 2,
    "cubes": {"1": [[0, 0]], "2": [[0, 0, 0, 0], [0, 1, 1]]}})";
  try {
    io::parse_document(text);
    FAIL() << "accepted a short cube";
  } catch (const InvalidInput& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("cubes.2[1]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("[0,1,1]"), std::string::npos) << msg;
  }
}

TEST(Io, SyntaxErrorHasALine) {
  try {
    io::parse_document("{\n  \"kind\": \"group\",\n  oops\n}");
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
}

TEST(Io, NonAssociativeGroupNamesATriple) {
  std::string text = R"({"kind": "group", "format_version": 1, "elements": ["e", "a", "b", "c", "d"],
    "table": [[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]})";
  try {
    io::parse_document(text);
    FAIL();
  } catch (const InvalidInput& e) {
    std::string msg = e.what();
    EXPECT_NE(msg.find("associative"), std::string::npos) << msg;
    EXPECT_NE(msg.find('('), std::string::npos) << msg;
  }
}

TEST(Io, ClosureOnRequest) {
  std::string text = R"({"kind": "cubespace", "format_version": 1, "points": ["0", "1"], "max_dim": 2,
    "cubes": {"1": [[0, 1]]}})";
  EXPECT_FALSE(validate_cubespace(io::parse_document(text).space()).ok);  // kept as given
  io::ParseOptions opt;
  opt.close_cubes = true;
  auto doc = io::parse_document(text, opt);
  EXPECT_TRUE(validate_cubespace(doc.space()).ok);
}

TEST(Io, ContentHash) {
  EXPECT_EQ(io::content_hash(""), "cbf29ce484222325");
  EXPECT_EQ(io::content_hash("a").size(), 16u);
  EXPECT_NE(io::content_hash("a"), io::content_hash("b"));
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  ASSERT_EQ(run({"gen", "d_s_cubespace", "A=Z2", "s=1", "--out", dir.str()}).exit_code, cli::kHolds);
  EXPECT_EQ(run({"check", "--property", "fibrant", "-i", dir.file("cubespace.json")}).exit_code, cli::kHolds);

  ASSERT_EQ(run({"gen", "broken_map", "--out", dir.str()}).exit_code, cli::kHolds);
  auto broken = run({"check", "--property", "fibration", "-i", dir.file("map.json"), "--format", "machine-readable"});
  EXPECT_EQ(broken.exit_code, cli::kFails);
  auto report = io::Json::parse(broken.output);
  EXPECT_FALSE(report["witnesses"].empty());

  ASSERT_EQ(run({"gen", "heisenberg_mod", "p=2", "--out", dir.str()}).exit_code, cli::kHolds);
  auto tower = run({"tower", "relative", "-i", dir.file("central_quotient_map.json"), "--max-dim", "3"});
  EXPECT_EQ(tower.exit_code, cli::kHolds);
  EXPECT_NE(tower.output.find("Z2"), std::string::npos);

  std::ofstream(dir.file("bad.json")) << "{ not json";
  EXPECT_EQ(run({"validate", "-i", dir.file("bad.json")}).exit_code, cli::kInvalidInput);
  EXPECT_EQ(run({"validate", "-i", dir.file("missing.json")}).exit_code, cli::kInvalidInput);
  EXPECT_EQ(run({"check", "--property", "no-such", "-i", dir.file("cubespace.json")}).exit_code, cli::kInvalidInput);
  EXPECT_EQ(run({"gen", "no_such_fixture"}).exit_code, cli::kInvalidInput);
  EXPECT_EQ(run({"check", "--property", "fibrant", "-i", dir.file("cubespace.json"), "--max-dim", "4"}).exit_code,
            cli::kInvalidInput);
  EXPECT_EQ(run({"translations", "enumerate", "-i", dir.file("nilspace.json"), "--caps", "search_nodes=3"})
                .exit_code,
            cli::kCapExceeded);
}

TEST(Cli, GenIsDeterministic) {
  auto a = run({"gen", "random_closure", "n=5", "--seed", "42"});
  auto b = run({"gen", "random_closure", "n=5", "--seed", "42"});
  EXPECT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.output, b.output);
  auto c = run({"gen", "random_closure", "n=5", "--seed", "43"});
  EXPECT_NE(a.output, c.output);
}

TEST(Cli, ReportsCarryInputHashes) {
  TempDir dir;
  ASSERT_EQ(run({"gen", "d_s_cubespace", "A=Z3", "s=1", "--out", dir.str()}).exit_code, 0);
  auto r = run({"validate", "-i", dir.file("cubespace.json"), "--format", "machine-readable"});
  ASSERT_EQ(r.exit_code, 0) << r.error;
  auto j = io::Json::parse(r.output);
  ASSERT_EQ(j["inputs"].size(), 1u);
  EXPECT_EQ(j["inputs"][0]["hash"], io::content_hash(io::read_file(dir.file("cubespace.json"))));
}
