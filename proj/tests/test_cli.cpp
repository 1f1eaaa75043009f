#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <equifuse/cli.hpp>

using namespace equifuse;
using nlohmann::json;

namespace
{

struct Result
{
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args)
{
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string &path)
{
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<int, std::string> run_binary(const std::string &args)
{
  std::string cmd = std::string(EQUIFUSE_BINARY) + " " + args + " 2>/dev/null";
  FILE *pipe = popen(cmd.c_str(), "r");
  std::string text;
  std::array<char, 4096> buf;
  while (auto n = fread(buf.data(), 1, buf.size(), pipe))
    text.append(buf.data(), n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), text};
}

std::set<std::array<std::int64_t, 4>> csv_rows(const std::string &csv)
{
  std::set<std::array<std::int64_t, 4>> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "i,j,k,N");
  while (std::getline(in, line)) {
    std::array<std::int64_t, 4> r{};
    std::istringstream ls(line);
    char comma;
    ls >> r[0] >> comma >> r[1] >> comma >> r[2] >> comma >> r[3];
    rows.insert(r);
  }
  return rows;
}

} // namespace

TEST(Cli, TrivialDouble)
{
  auto r = run({"double", "cyclic:1", "--table", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["labels"].size(), 1u);
  EXPECT_EQ(j["constants"], json::parse("[[0,0,0,1]]"));

  auto c = run({"double", "cyclic:1", "--format", "csv"});
  EXPECT_EQ(c.out, "i,j,k,N\n0,0,0,1\n");
}

TEST(Cli, DoubleOfS3)
{
  auto r = run({"double", "sym:3", "--table", "-"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  ASSERT_EQ(j["labels"].size(), 8u);
  for (auto &[k, v] : j["checks"].items())
    EXPECT_TRUE(v.get<bool>()) << k;

  std::map<std::pair<int, int>, std::int64_t> sums;
  for (auto &c : j["constants"])
    sums[{c[0], c[1]}] += c[3].get<std::int64_t>() * j["labels"][c[2].get<int>()]["dim"].get<std::int64_t>();
  for (auto &a : j["labels"])
    for (auto &b : j["labels"])
      EXPECT_EQ((sums[{a["id"], b["id"]}]), a["dim"].get<std::int64_t>() * b["dim"].get<std::int64_t>());

  auto csv = run({"double", "sym:3", "--format", "csv"});
  auto rows = csv_rows(csv.out);
  std::set<std::array<std::int64_t, 4>> from_json;
  for (auto &c : j["constants"])
    from_json.insert({c[0].get<std::int64_t>(), c[1].get<std::int64_t>(), c[2].get<std::int64_t>(),
                      c[3].get<std::int64_t>()});
  EXPECT_EQ(rows, from_json);
}

TEST(Cli, CsvOfZ2Double)
{
  auto r = run({"double", "cyclic:2", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  auto rows = csv_rows(r.out);
  EXPECT_EQ(rows.size(), 16u);
  for (auto &row : rows)
    EXPECT_EQ(row[3], 1);
  EXPECT_EQ(r.out.back(), '\n');
}

TEST(Cli, CsvIsSorted)
{
  auto r = run({"double", "dihedral:4", "--format", "csv"});
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  std::vector<std::array<std::int64_t, 3>> keys;
  while (std::getline(in, line)) {
    std::array<std::int64_t, 3> k{};
    char comma;
    std::istringstream ls(line);
    ls >> k[0] >> comma >> k[1] >> comma >> k[2];
    keys.push_back(k);
  }
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(std::adjacent_find(keys.begin(), keys.end()), keys.end());
}

TEST(Cli, TableToFile)
{
  auto path = (std::filesystem::temp_directory_path() / "equifuse_cli_table.json").string();
  auto r = run({"double", "cyclic:3", "--table", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  auto j = json::parse(read_file(path));
  EXPECT_EQ(j["labels"].size(), 9u);
  std::filesystem::remove(path);
}

TEST(Cli, SubgroupFlag)
{
  auto r = run({"double", "sym:3", "--subgroup", "(0 1 2)"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  // A3 on S3: orbits {e}, {(0 1 2)}, {(0 2 1)}, {transpositions}; 3 + 3 + 3 + 1
  EXPECT_EQ(j["labels"].size(), 10u);

  auto bad = run({"double", "sym:3", "--subgroup", "(0 3)"});
  EXPECT_EQ(bad.code, 2);
}

TEST(Cli, FuseGeneral)
{
  auto r = run({"fuse", "--F", "sym:3", "--G", "sym:3", "--action", "conjugation"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, run({"double", "sym:3"}).out);

  auto t = run({"fuse", "--F", "sym:3", "--G", "trivial", "--action", "trivial", "--format", "csv"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(csv_rows(t.out).size(), 11u);

  auto path = (std::filesystem::temp_directory_path() / "equifuse_cli_action.json").string();
  std::ofstream(path) << R"({"actor": {"degree": 2, "generators": [[1, 0]]},
                             "target": {"degree": 3, "generators": [[1, 2, 0]]},
                             "images": {"0": [0, 2, 1]}})";
  auto inv = run({"fuse", "--F", "cyclic:2", "--G", "cyclic:3", "--action", path, "--format", "csv"});
  std::filesystem::remove(path);
  ASSERT_EQ(inv.code, 0) << inv.err;
  EXPECT_EQ(csv_rows(inv.out), csv_rows(t.out));
}

TEST(Cli, Verify)
{
  auto m = run({"verify", "mackey", "--family", "char:sym:4"});
  ASSERT_EQ(m.code, 0) << m.err;
  for (auto &a : json::parse(m.out)["axioms"])
    EXPECT_EQ(a["failed"], 0);

  EXPECT_EQ(run({"verify", "green", "--family", "double:sym:3"}).code, 0);
  EXPECT_EQ(run({"verify", "coherent", "--family", "double:sym:3"}).code, 0);
  EXPECT_EQ(run({"verify", "sideways", "--family", "char:sym:3"}).code, 2);
}

TEST(Cli, Chartable)
{
  auto r = run({"chartable", "sym:3"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["order"], 6);
  EXPECT_EQ(j["prime"], 223);
  EXPECT_EQ(j["degrees"], json::parse("[1,1,2]"));
  EXPECT_EQ(j["classes"].size(), 3u);
  EXPECT_EQ(j["rows_mod_p"].size(), 3u);

  auto sub = run({"chartable", "sym:4", "--subgroup", "(0 1);(2 3)"});
  ASSERT_EQ(sub.code, 0) << sub.err;
  EXPECT_EQ(json::parse(sub.out)["order"], 4);
}

TEST(Cli, GroupAndScenario)
{
  auto g = json::parse(run({"group", "quaternion8"}).out);
  EXPECT_EQ(g["order"], 8);
  EXPECT_EQ(g["exponent"], 4);
  EXPECT_EQ(g["classes"], 5);

  auto s = run({"scenario", "list"});
  ASSERT_EQ(s.code, 0);
  auto list = json::parse(s.out);
  EXPECT_EQ(list.size(), scenario_catalog().size());
  for (auto &e : list)
    if (e["name"] == "double:sym:3")
      EXPECT_EQ(e["labels"], 8);
}

TEST(Cli, MackeyRhs)
{
  auto r = run({"mackey-rhs", "--family", "char:sym:3", "--H", "1", "--K", "1", "--basis", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["equal"].get<bool>());
  EXPECT_EQ(run({"mackey-rhs", "--family", "char:sym:3", "--H", "99", "--K", "0", "--basis", "0"}).code, 2);
}

TEST(Cli, InputErrors)
{
  auto r = run({"double", "sym:9"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.err)["error"], "UnknownPreset");
  EXPECT_EQ(run({"double", "sym:3", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--prime-override", "11", "double", "sym:3"}).code, 2);
  EXPECT_EQ(run({"--prime-override", "9", "chartable", "cyclic:2"}).code, 2);
  EXPECT_EQ(run({"--jobs", "0", "double", "sym:3"}).code, 2);
  EXPECT_EQ(run({"double", "/nonexistent/group.json"}).code, 2);
}

TEST(Cli, PrimeOverride)
{
  auto r = run({"--prime-override", "229", "double", "sym:3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, run({"double", "sym:3"}).out);
  auto t = json::parse(run({"--prime-override", "229", "chartable", "sym:3"}).out);
  EXPECT_EQ(t["prime"], 229);
  EXPECT_EQ(run({"--prime-override", "13", "chartable", "sym:3"}).code, 2);
}

TEST(Cli, GroupJsonFile)
{
  auto path = (std::filesystem::temp_directory_path() / "equifuse_cli_group.json").string();
  std::ofstream(path) << R"({"degree": 3, "generators": [[1, 0, 2], [1, 2, 0]]})";
  EXPECT_EQ(run({"double", path}).out, run({"double", "sym:3"}).out);
  std::filesystem::remove(path);
}

TEST(Binary, ExitCodesAndDeterminism)
{
  auto [code, first] = run_binary("double sym:3 --table -");
  ASSERT_EQ(code, 0);
  EXPECT_EQ(run_binary("double sym:3 --table -").second, first);
  EXPECT_EQ(run_binary("--jobs 1 double sym:3").second, first);
  EXPECT_EQ(run_binary("--jobs 8 double sym:3").second, first);
  EXPECT_EQ(run_binary("double sym:9").first, 2);
  EXPECT_EQ(run_binary("verify mackey --family char:sym:4").first, 0);
}
