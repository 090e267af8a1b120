#include <polyseq/cli.hpp>
#include <polyseq/structure_json.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace polyseq;
namespace fs = std::filesystem;

namespace {

const fs::path kData = POLYSEQ_TEST_DATA;

std::string data(const char* name) { return (kData / name).string(); }

CommandResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "polyseq");
    return run(args);
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("polyseq-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string tmp(const char* name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

void expect_usage_error(const CommandResult& r) {
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_TRUE(r.out.empty()) << r.out;
    EXPECT_FALSE(r.err.empty());
}

}  // namespace

TEST_F(CliTest, CountHom) {
    auto r = cli({"count", "--mode", "hom", "--pattern", data("k2.json"), "--target", data("k3.json")});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(r.out, "6\n");

    auto j = cli({"count", "--mode", "inj", "--pattern", data("k2.json"), "--target", data("k3.json"), "--format", "json"});
    ASSERT_EQ(j.exit_code, 0);
    auto parsed = parse_json_text(j.out);
    EXPECT_EQ(parsed["schemaVersion"], 1);
    EXPECT_EQ(parsed["value"], 6);
}

TEST_F(CliTest, DetectCycleFails) {
    auto csv = tmp("cycle.csv");
    auto r = cli({"detect", "--spec", data("cycle.seq.json"), "--pattern", data("k3.json"), "--csv", csv});
    EXPECT_EQ(r.exit_code, 1);
    auto j = parse_json_text(r.out);
    EXPECT_EQ(j["verdict"], "NotPolynomial");
    EXPECT_EQ(j["schemaVersion"], 1);
    auto text = read_text_file(csv);
    EXPECT_EQ(text.rfind("n,value,phase,match\n", 0), 0u);
}

TEST_F(CliTest, DetectCompleteGraphCsv) {
    auto r = cli({"detect", "--gallery", "lineGraph", "--pattern", data("k2.json"), "--format", "csv"});
    EXPECT_EQ(r.exit_code, 0) << r.err;

    auto k = cli({"detect", "--spec", data("crown.seq.json"), "--formula", "E(x,y)", "--format", "csv"});
    EXPECT_EQ(k.exit_code, 0) << k.err;
    EXPECT_NE(k.out.find("3,12,sample,"), std::string::npos) << k.out;
}

TEST_F(CliTest, InterpretArityMismatch) {
    auto r = cli({"interpret", "--scheme", data("bad_arity.int"), "--in", data("k3.json")});
    expect_usage_error(r);
    EXPECT_NE(r.err.find("'E'"), std::string::npos);
    EXPECT_NE(r.err.find("line 7"), std::string::npos);
}

TEST_F(CliTest, InterpretWritesOutput) {
    auto out = tmp("out.json");
    auto r = cli({"interpret", "--scheme", data("complement.int"), "--in", data("k3.json"), "--out", out});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    auto s = load_structure(out);
    EXPECT_EQ(s.domain_size(), 3u);
    EXPECT_EQ(s.tuple_count(), 0u);

    auto b = cli({"interpret", "--builtin", "line-graph", "--in", data("k3.json")});
    EXPECT_EQ(b.exit_code, 0) << b.err;
}

TEST_F(CliTest, UnknownRelationInScheme) {
    auto path = tmp("bad.int");
    write_text_file(path, "graphical g {\n  source: graph;\n  p: 1;\n  domain(x1): true;\n  edge(x1; y1): F(x1,y1);\n}\n");
    auto r = cli({"interpret", "--scheme", path, "--in", data("k3.json")});
    expect_usage_error(r);
    EXPECT_NE(r.err.find("'F'"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("line 5"), std::string::npos) << r.err;
}

TEST_F(CliTest, StructureRoundTrip) {
    auto r = cli({"structure", "format", "--in", data("t3.json")});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out, read_text_file(data("t3.json")));

    auto built = cli({"structure", "build", "--kind", "tournament", "--n", "3"});
    EXPECT_EQ(built.out, r.out);
}

TEST_F(CliTest, MalformedStructure) {
    auto path = tmp("broken.json");
    write_text_file(path, "{\"signature\": [\n  {\"name\": \"E\" \"arity\": 2}]}");
    auto r = cli({"structure", "show", "--in", path});
    expect_usage_error(r);
    EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, Eval) {
    auto r = cli({"eval", "--formula", "S(x,y)", "--in", data("t3.json")});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_NE(r.out.find("3"), std::string::npos);
    expect_usage_error(cli({"eval", "--formula", "S(x,y", "--in", data("t3.json")}));
}

TEST_F(CliTest, GalleryAndDecompose) {
    auto list = cli({"gallery", "list"});
    EXPECT_EQ(list.exit_code, 0);
    EXPECT_EQ(parse_json_text(list.out)["schemaVersion"], 1);

    auto check = cli({"gallery", "run", "crown", "--check", "--range", "0..4", "--no-detect", "--format", "csv"});
    EXPECT_EQ(check.exit_code, 0) << check.err;
    EXPECT_EQ(check.out.rfind("n,equal,", 0), 0u);

    auto literal = cli({"gallery", "run", "starUnion", "--params", "variant=literal", "--check", "--range", "1..3", "--no-detect"});
    EXPECT_EQ(literal.exit_code, 1);
    EXPECT_FALSE(literal.out.empty());

    auto dec = cli({"decompose", "--spec", data("k1_k2.seq.json")});
    EXPECT_EQ(dec.exit_code, 0) << dec.err;
    auto j = parse_json_text(dec.out);
    EXPECT_EQ(j["parts"].size(), 2u);

    auto crown = cli({"decompose", "--gallery", "crown", "--cap", "2"});
    EXPECT_EQ(crown.exit_code, 1);
}

TEST_F(CliTest, Paley) {
    auto r = cli({"paley", "--pattern", data("k2.json"), "--primes", "5,13,17,29"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    expect_usage_error(cli({"paley", "--pattern", data("k2.json"), "--primes", "5,7"}));
}

TEST_F(CliTest, UsageErrors) {
    expect_usage_error(cli({}));
    expect_usage_error(cli({"frobnicate"}));
    expect_usage_error(cli({"count", "--mode", "sideways", "--pattern", data("k2.json"), "--target", data("k3.json")}));
    expect_usage_error(cli({"count", "--pattern", tmp("missing.json"), "--target", data("k3.json")}));
    expect_usage_error(cli({"detect", "--spec", data("cycle.seq.json")}));
    expect_usage_error(cli({"gallery", "run", "nope"}));
}

TEST_F(CliTest, Deterministic) {
    std::vector<std::string> args{"detect", "--gallery", "crown", "--pattern", data("k3.json")};
    auto a = cli(args), b = cli(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.exit_code, b.exit_code);
}
