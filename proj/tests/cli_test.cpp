#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "mastct/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mastct::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("mastct_cli_test_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string file(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("check subcommands") {
  auto r = cli({"check", "restrict", "--tree", "((a,b),(c,d));", "--leaves", "a,c,d"});
  CHECK(r.code == 0);
  CHECK(r.out == "(a,(c,d));\n");
  CHECK(cli({"check", "restrict", "--tree", "(a,b);", "--leaves", ""}).out == "empty\n");

  CHECK(cli({"check", "equal", "--tree", "(a,b);", "--other", "(b,a);"}).code == 0);
  auto no = cli({"check", "equal", "--tree", "((a,b),c);", "--other", "(a,b,c);"});
  CHECK(no.code == 1);
  CHECK(no.out == "no\n");
  CHECK(cli({"check", "refines", "--tree", "((a,b),c);", "--other", "(a,b,c);"}).code == 0);
  CHECK(cli({"check", "refines", "--tree", "(a,b,c);", "--other", "((a,b),c);"}).code == 1);

  Scratch s;
  const std::string coll = s.file("c.trees", "((a,b),c,d);\n(a,b,(c,d));\n");
  CHECK(cli({"check", "compatible", "--tree", "((a,b),(c,d));", "--input", coll}).code == 0);
  CHECK(cli({"check", "agreement", "--tree", "((a,b),(c,d));", "--input", coll}).code == 1);
  CHECK(cli({"check", "agreement", "--tree", "(a,b);", "--input", coll}).code == 0);
  const std::string tree_file = s.file("t.tree", "((a,b),c);\n");
  CHECK(cli({"check", "equal", "--tree", tree_file, "--other", "(c,(b,a));"}).code == 0);
}

TEST_CASE("solve subcommands") {
  Scratch s;
  auto pair = cli({"solve", "mct", "--input", s.file("pair.trees", "((((1,2),3),4),5);\n((((5,4),3),2),1);\n")});
  CHECK(pair.code == 0);
  CHECK(pair.out == "size 2\nwitness (1,2);\n");

  auto tri = cli({"solve", "is", "--input", s.file("tri.graph", "3 3\n1 2\n1 3\n2 3\n")});
  CHECK(tri.code == 0);
  CHECK(tri.out == "size 1\nwitness 1\n");

  const std::string star = s.file("star.trees", "(a,b,c);\n((a,b),c);\n");
  CHECK(cli({"solve", "mast", "--input", star}).out == "size 2\nwitness (a,b);\n");
  CHECK(cli({"solve", "mct", "--input", star}).out == "size 3\nwitness ((a,b),c);\n");
  auto fpt_none = cli({"solve", "mast", "--fpt", "0", "--input", star});
  CHECK(fpt_none.code == 1);
  CHECK(fpt_none.out == "none\n");
  CHECK(cli({"solve", "mast", "--fpt", "1", "--input", star}).code == 0);

  auto q_no = cli({"solve", "mast", "--input", s.file("q.trees", "q 3\n(a,b,c);\n((a,b),c);\n")});
  CHECK(q_no.code == 1);
  CHECK(q_no.out == "size 2\nwitness (a,b);\nq 3 no\n");

  auto capped = cli({"solve", "mast", "--cap", "2", "--input", star});
  CHECK(capped.code == 3);
  CHECK(capped.err.find("error: cap exceeded:") == 0);
}

TEST_CASE("usage and format errors") {
  Scratch s;
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"check", "equal", "--tree", "(a,b);"}).code == 2);
  CHECK(cli({"solve", "mast", "--input", s.path("missing.trees")}).code == 2);

  auto bad_tree = cli({"check", "equal", "--tree", "(a,(b));", "--other", "(a,b);"});
  CHECK(bad_tree.code == 2);
  CHECK(bad_tree.err.find("error: malformed input:") == 0);

  auto bad_file = cli({"solve", "mast", "--input", s.file("bad.trees", "(a,b);\n(a,b\n")});
  CHECK(bad_file.code == 2);
  CHECK(bad_file.err.find("line 2") != std::string::npos);

  auto mismatch = cli({"solve", "mast", "--input", s.file("mm.trees", "(a,b);\n(a,c);\n")});
  CHECK(mismatch.code == 2);
  CHECK(mismatch.err.find("error: invalid instance:") == 0);

  auto bad_graph = cli({"solve", "is", "--input", s.file("bad.graph", "3 1\n2 1\n")});
  CHECK(bad_graph.code == 2);

  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("reduce subcommands") {
  Scratch s;
  const std::string graph = s.file("p3.graph", "3 2\n1 2\n2 3\n");
  auto pis = cli({"reduce", "is-pis1", "--k", "3", "--graph", graph});
  REQUIRE(pis.code == 0);
  CHECK(pis.out.rfind("9 ", 0) == 0);

  const std::string inst = s.file("p3.pis", pis.out);
  auto ast = cli({"reduce", "pis1-ast", "--input", inst, "--report", s.path("ast.report")});
  CHECK(ast.code == 0);
  CHECK(ast.out.rfind("q 3 k 3 D 5\n", 0) == 0);
  std::ifstream report(s.path("ast.report"));
  std::stringstream text;
  text << report.rdbuf();
  CHECK(text.str().find("construction=pis1-ast\n") == 0);

  auto padded = cli({"reduce", "pis-pad", "--input", inst});
  CHECK(padded.code == 0);
  auto ct = cli({"reduce", "pis2-ct", "--input", s.file("pad.pis", padded.out)});
  CHECK(ct.code == 0);
  CHECK(ct.out.rfind("q 6 k 3 D ", 0) == 0);
  // Padded parts of four are too small for the k = 3 repair tree.
  CHECK(cli({"reduce", "pis2-ct", "--repair", "--input", s.path("pad.pis")}).code == 2);
  const std::string pis4 = s.file("p4.pis", cli({"reduce", "is-pis1", "--k", "3", "--graph", s.file("p4.graph", "4 1\n1 2\n")}).out);
  const std::string pad4 = s.file("pad4.pis", cli({"reduce", "pis-pad", "--input", pis4}).out);
  auto repair = cli({"reduce", "pis2-ct", "--repair", "--input", pad4});
  CHECK(repair.code == 0);
  CHECK(repair.out.rfind("q 6 k 3 D 5\n", 0) == 0);

  auto small = cli({"reduce", "pis1-ast", "--input", s.file("k2.pis", "6 0\n2 1\n1 2 3\n4 5 6\n")});
  CHECK(small.code == 2);
  CHECK(small.err.find("error: invalid instance:") == 0);
  CHECK(cli({"reduce", "pis2-ct", "--input", inst}).code == 2);
}

TEST_CASE("verify and gen") {
  Scratch s;
  auto edgeless = cli({"verify", "--graph", s.file("e.graph", "3 0\n"), "--k", "3", "--mode", "mast"});
  CHECK(edgeless.code == 0);
  CHECK(edgeless.out.find("equivalent=yes\n") != std::string::npos);
  CHECK(edgeless.out.find("verified 1 equivalent 1\n") != std::string::npos);

  auto sampled = cli({"verify", "--samples", "3", "--seed", "4", "--k", "2", "--mode", "mct"});
  CHECK(sampled.code == 0);
  CHECK(sampled.out.find("verified 3 equivalent 3\n") != std::string::npos);
  CHECK(cli({"verify", "--k", "2", "--mode", "mct"}).code == 2);

  auto g1 = cli({"gen", "graph", "--n", "6", "--m", "5", "--seed", "7"});
  auto g2 = cli({"gen", "graph", "--n", "6", "--m", "5", "--seed", "7"});
  CHECK(g1.code == 0);
  CHECK(g1.out == g2.out);
  CHECK(g1.out.rfind("6 5\n", 0) == 0);
  CHECK(cli({"gen", "graph", "--n", "3", "--m", "4", "--seed", "1"}).code == 2);

  auto t1 = cli({"gen", "trees", "--n", "7", "--k", "3", "--seed", "11"});
  CHECK(t1.code == 0);
  CHECK(t1.out == cli({"gen", "trees", "--n", "7", "--k", "3", "--seed", "11"}).out);
  CHECK(t1.out.rfind("n 7 k 3\n", 0) == 0);
  CHECK(cli({"solve", "mct", "--input", s.file("gen.trees", t1.out)}).code == 0);
}
