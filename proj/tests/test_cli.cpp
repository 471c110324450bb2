#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "cycdec/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
};

std::string demo(const std::string& name) { return std::string(CYCDEC_DEMO_DIR) + "/" + name + ".json"; }

Result run(std::vector<std::string> args) {
  std::ostringstream os;
  const int code = cycdec::cli::run(args, os);
  return {code, os.str()};
}

Result run_quiet(std::vector<std::string> args) {
  args.push_back("--no-elapsed");
  return run(std::move(args));
}

}  // namespace

TEST_CASE("documented transcripts are byte-identical", "[cli]") {
  const auto cover = run_quiet({"compute", "--query", "cover-parity", "--graph", demo("bowtie"), "--set", "F=0,3"});
  CHECK(cover.code == 0);
  CHECK(cover.out ==
        R"({"query":"cover-parity","parity":1,"diagnostics":{"value":"0x1","checks":["even degrees"],"warnings":[]},"seed":1,"k":32})"
        "\n");

  const auto ham = run_quiet({"compare", "--query", "hamdec-parity", "--graph", demo("k5")});
  CHECK(ham.code == 0);
  CHECK(ham.out ==
        R"({"query":"hamdec-parity","match":true,"engine":0,"oracle_count":6,"oracle_parity":0,"seed":1,"k":32})"
        "\n");

  const auto thom =
      run_quiet({"compute", "--query", "thomason", "--graph", demo("k4"), "--edges", "e=0,g1=1,g2=3"});
  CHECK(thom.code == 2);
  CHECK(thom.out == R"({"error":"validation","reason":"not 4-regular: degree check failed"})"
                    "\n");
}

TEST_CASE("compare agrees for every query", "[cli]") {
  const std::vector<std::vector<std::string>> cases{
      {"--query", "hamdec-parity", "--graph", demo("k5")},
      {"--query", "cover-parity", "--graph", demo("bowtie"), "--set", "F=0,3"},
      {"--query", "split-cover", "--graph", demo("bowtie"), "--set", "F1=0", "--set", "F2=3"},
      {"--query", "thomason", "--graph", demo("doubled_c4"), "--edges", "e=0,g1=1,g2=2"},
      {"--query", "thomason", "--graph", demo("k44"), "--edges", "e=0,g1=5,g2=6"},
      {"--query", "pairs-aggregate", "--graph", demo("bowtie"), "--set", "E=0,3", "--set", "G=1,4"},
      {"--query", "qsimple-value", "--graph", demo("bowtie"), "--q", "0:2"},
      {"--query", "qsimple-exists", "--graph", demo("bowtie"), "--h", "2"},
      {"--query", "pathdec-parity", "--graph", demo("star")},
      {"--query", "pathdec-parity", "--graph", demo("k4"), "--alpha-mode", "even"},
      {"--query", "oddpathdec", "--graph", demo("triangle_pendant")},
      {"--query", "oddpathdec", "--graph", demo("triangle_pendant"), "--h", "2"},
  };
  for (const auto& c : cases) {
    std::vector<std::string> args{"compare"};
    args.insert(args.end(), c.begin(), c.end());
    INFO(c[1]);
    const auto r = run_quiet(args);
    CHECK(r.code == 0);
    CHECK(r.out.find(R"("match":true)") != std::string::npos);
    args[0] = "compute";
    CHECK(run_quiet(args).code == 0);
    args[0] = "oracle";
    CHECK(run_quiet(args).code == 0);
  }
}

TEST_CASE("query outputs", "[cli]") {
  CHECK(run_quiet({"compare", "--query", "thomason", "--graph", demo("doubled_c4"), "--edges", "e=0,g1=1,g2=2"}).out ==
        R"({"query":"thomason","match":true,"engine":0,"oracle_count":2,"oracle_parity":0,"seed":1,"k":32})"
        "\n");
  CHECK(run_quiet({"compute", "--query", "thomason", "--graph", demo("k44"), "--edges", "e=0,g1=5,g2=6"}).out ==
        R"({"query":"thomason","parity":0,"diagnostics":{"value":"0x0","samples":["0x0","0x0","0x0"],"checks":["4-regular","bipartite","g1,g2 path","three-point agreement"],"warnings":[]},"seed":1,"k":32})"
        "\n");
  CHECK(run_quiet({"compare", "--query", "qsimple-value", "--graph", demo("bowtie"), "--q", "0:2"}).out ==
        R"({"query":"qsimple-value","match":true,"engine":[[2,"0x1"],[4,"0x1"],[6,"0x1"]],"oracle":[[2,"0x1"],[4,"0x1"],[6,"0x1"]],"seed":1,"k":32})"
        "\n");
  CHECK(run_quiet({"compute", "--query", "qsimple-exists", "--graph", demo("bowtie"), "--q", "0:2", "--h", "1"}).out ==
        R"({"query":"qsimple-exists","answer":"inconclusive","diagnostics":{"coefficient":"0x0"},"seed":1,"k":32})"
        "\n");
  CHECK(run_quiet({"oracle", "--query", "qsimple-exists", "--graph", demo("bowtie"), "--h", "2"}).out ==
        R"({"query":"qsimple-exists","exists":true,"count":1,"enumerated":3,"seed":1,"k":32})"
        "\n");
  CHECK(run_quiet({"compute", "--query", "oddpathdec", "--graph", demo("triangle_pendant")}).out ==
        R"({"query":"oddpathdec","value":[[2,"0x1"],[3,"0x1"],[4,"0x1"]],"seed":1,"k":32})"
        "\n");
  CHECK(run_quiet({"compute", "--query", "hamdec-parity", "--graph", demo("c6")}).out ==
        R"({"query":"hamdec-parity","parity":0,"diagnostics":{"value":"0x0","checks":["regular of degree 2"],"warnings":["even vertex count: the coefficient is not the plain decomposition parity"]},"seed":1,"k":32})"
        "\n");
}

TEST_CASE("text format", "[cli]") {
  const auto r = run_quiet(
      {"oracle", "--query", "cover-parity", "--graph", demo("bowtie"), "--set", "F=0,3", "--format", "text"});
  CHECK(r.code == 0);
  CHECK(r.out == "query: cover-parity\ncount: 1\nparity: 1\nenumerated: 1\nseed: 1\nk: 32\n");
  const auto e = run({"compute", "--query", "cover-parity", "--graph", demo("bowtie"), "--format", "text"});
  CHECK(e.code == 2);
  CHECK(e.out == "error: validation: missing --set F=...\n");
}

TEST_CASE("seed, field size and elapsed time", "[cli]") {
  const auto r = run({"compute", "--query", "hamdec-parity", "--graph", demo("k5"), "--field-bits", "16", "--seed", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find(R"("seed":5,"k":16,"elapsed_ms":)") != std::string::npos);
  const std::vector<std::string> args{"compute", "--query", "qsimple-value", "--graph", demo("bowtie"),
                                      "--q", "0:2", "--seed", "9", "--field-bits", "8"};
  CHECK(run_quiet(args).out == run_quiet(args).out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(run_quiet(threaded).out == run_quiet(args).out);
}

TEST_CASE("exit codes", "[cli]") {
  // even order: the ε^h coefficient misses the single Hamiltonian cycle of C6
  const auto mismatch = run_quiet({"compare", "--query", "hamdec-parity", "--graph", demo("c6")});
  CHECK(mismatch.code == 1);
  CHECK(mismatch.out ==
        R"({"query":"hamdec-parity","match":false,"engine":0,"oracle_count":1,"oracle_parity":1,"seed":1,"k":32})"
        "\n");

  const std::vector<std::pair<std::vector<std::string>, std::string>> invalid{
      {{"compute", "--query", "cover-parity", "--graph", demo("bowtie"), "--set", "F=0,99"},
       "F contains edge 99, outside 0..5"},
      {{"compute", "--query", "cover-parity", "--graph", demo("missing")}, "cannot open graph file"},
      {{"compute", "--query", "pathdec-parity", "--graph", demo("bowtie")}, "even-degree vertices: 0,1,2,3,4"},
      {{"compute", "--query", "split-cover", "--graph", demo("bowtie"), "--set", "F1=0"}, "missing --set F2"},
      {{"compute", "--query", "thomason", "--graph", demo("doubled_c4"), "--edges", "e=0,g1=2,g2=4"},
       "g1 and g2 do not form a path of length 2"},
      {{"compute", "--query", "no-such-query", "--graph", demo("k5")}, "--query"},
      {{"compute", "--query", "cover-parity", "--graph", demo("bowtie"), "--field-bits", "12"}, "--field-bits"},
      {{"nosuch"}, "subcommand"},
  };
  for (const auto& [args, reason] : invalid) {
    INFO(reason);
    const auto r = run(args);
    CHECK(r.code == 2);
    CHECK(r.out.rfind(R"({"error":"validation","reason":)", 0) == 0);
    CHECK(r.out.find(reason) != std::string::npos);
  }
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("compare") != std::string::npos);
}
