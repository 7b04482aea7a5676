#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bihom/report.hpp"
#include "support.hpp"

using namespace bihom;
using namespace bihom::test;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + BIHOM_CLI + std::string(" ") + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (auto n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("bihom_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  std::string write(const std::string& name, const json& j) const {
    write_json(path(name), j);
    return path(name);
  }

  fs::path dir;
};

json report(const Result& r) { return json::parse(r.out); }

}  // namespace

TEST_F(Cli, CorpusIsDeterministicAndPasses) {
  auto a = run("corpus --generate --seed 1 --dim 2 --count 8 --format json --out " + path("a"));
  auto b = run("corpus --generate --seed 1 --dim 2 --count 8 --format json --out " + path("b"));
  ASSERT_EQ(a.code, 0) << a.out;
  ASSERT_EQ(b.code, 0) << b.out;
  auto ja = report(a), jb = report(b);
  ASSERT_EQ(ja["files"].size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(ja["files"][i]["digest"], jb["files"][i]["digest"]);
  EXPECT_EQ(ja["seed"], 1);
  for (const auto& f : ja["files"]) {
    auto r = run("check " + f["file"].get<std::string>() + " --which bihom");
    EXPECT_EQ(r.code, 0) << r.out;
  }
}

TEST_F(Cli, PrimeFieldCorpus) {
  auto r = run("corpus --generate --seed 3 --dim 2 --field Fp --p 5 --count 4 --format json --out " + path("c"));
  ASSERT_EQ(r.code, 0) << r.out;
  auto files = report(r)["files"];
  for (const auto& f : files) {
    auto j = read_json(f["file"].get<std::string>());
    EXPECT_EQ(j["field"], "Fp");
    EXPECT_EQ(j["p"], 5);
  }
}

TEST_F(Cli, CheckMutatedInstanceFails) {
  auto e = generate_corpus(Q, kSeed, 6, 6)[3];
  Rng g(1);
  mutate(e.instance, g);
  auto file = write("m.json", to_json(e.instance));
  auto r = run("check " + file + " --format json");
  EXPECT_EQ(r.code, 1);
  auto j = report(r);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_FALSE(j["axioms"]["violations"].empty());
  EXPECT_EQ(j["axioms"]["violations"][0]["axiom"].get<std::string>().rfind("Def4.", 0), 0u);
}

TEST_F(Cli, MalformedInputs) {
  std::ofstream(path("broken.json")) << "{ not json";
  EXPECT_EQ(run("check " + path("broken.json")).code, 2);
  auto j = to_json(one_dim(1, 1));
  j["parity"] = {2};
  auto r = run("check " + write("parity.json", j));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("parity"), std::string::npos);
  EXPECT_EQ(run("check " + path("missing.json")).code, 2);
  EXPECT_EQ(run("check").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, CheckVariants) {
  auto file = write("h.json", to_json(one_dim(1, 0)));
  EXPECT_EQ(run("check " + file + " --which bihom").code, 0);
  auto r = run("check " + file + " --which superdialgebra");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("Def1.ii.b"), std::string::npos);
  EXPECT_EQ(run("check " + file + " --which regular").code, 0);
  EXPECT_EQ(run("check " + file + " --which multiplicative").code, 0);
  EXPECT_EQ(run("check " + file + " --which bihom-assoc").code, 2);
}

TEST_F(Cli, GradingAndProjection) {
  auto h = DialgebraInstance<RationalField>::zero(Q, SuperSpace({0, 1}));
  h.left(0, 0, 1) = Q.one();
  auto file = write("g.json", to_json(h));
  auto r = run("check " + file + " --which grading --format json");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(report(r)["grading"]["tensors"].size(), 1u);
  EXPECT_EQ(run("check " + file + " --project-graded").code, 0);
}

TEST_F(Cli, MaxViolations) {
  auto z = DialgebraInstance<RationalField>::zero(Q, SuperSpace::even(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) z.left(i, j, (i + j) % 3) = Q.one();
  z.alpha = z.epsilon = scalar_map(Q, 3, 2);
  auto file = write("z.json", to_json(z));
  auto count = [&](const Result& r) {
    std::map<std::string, std::size_t> kept;
    auto j = report(r);
    for (const auto& v : j["axioms"]["violations"]) ++kept[v["axiom"].get<std::string>()];
    std::size_t mx = 0;
    for (auto& [_, c] : kept) mx = std::max(mx, c);
    return mx;
  };
  EXPECT_EQ(count(run("check " + file + " --format json --max-violations 1")), 1u);
  EXPECT_EQ(count(run("check " + file + " --format json", "BIHOM_MAX_VIOLATIONS=2")), 2u);
}

TEST_F(Cli, ReportToFile) {
  auto file = write("h.json", to_json(one_dim(1, 1)));
  auto r = run("check " + file + " --format json --out " + path("rep.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(read_json(path("rep.json"))["status"], "pass");
}

TEST_F(Cli, TwistModes) {
  auto e = generate_corpus(Q, kSeed, 6, 12)[7];
  auto file = write("h.json", to_json(e.instance));
  auto r0 = run("twist " + file + " --power 0 --save " + path("p0.json"));
  ASSERT_EQ(r0.code, 0) << r0.out;
  EXPECT_EQ(read_json(path("p0.json")).dump(), to_json(e.instance).dump());

  const auto n = e.instance.dim();
  auto a = write("a.json", map_to_json(Q, e.endo));
  auto b = write("b.json", map_to_json(Q, e.endo_power(2)));
  auto r1 = run("twist " + file + " --alpha-prime " + a + " --epsilon-prime " + b + " --verify --save " + path("t.json"));
  EXPECT_EQ(r1.code, 0) << r1.out;
  EXPECT_EQ(load_dialgebra(Q, path("t.json")), yau_twist(e.instance, e.endo, e.endo_power(2)));

  auto z = write("z.json", map_to_json(Q, Matrix<RationalField>(Q, n, n)));
  auto r2 = run("twist " + file + " --alpha-prime " + z + " --epsilon-prime " + z + " --save " + path("zt.json"));
  EXPECT_EQ(r2.code, 0);
  auto zt = load_dialgebra(Q, path("zt.json"));
  EXPECT_TRUE(zt.left.is_zero() && zt.right.is_zero());

  auto bad = write("bad.json", map_to_json(Q, scalar_map(Q, n, 2)));
  auto r3 = run("twist " + file + " --alpha-prime " + bad + " --epsilon-prime " + bad);
  if (!e.instance.left.is_zero()) {
    EXPECT_EQ(r3.code, 1);
    EXPECT_NE(r3.out.find("endomorphism"), std::string::npos);
  }
}

TEST_F(Cli, Untwist) {
  for (const auto& e : generate_corpus(Q, kSeed, 6, 20)) {
    if (!check_regular(e.instance) || e.is_base()) continue;
    auto file = write("h.json", to_json(e.instance));
    auto r = run("twist " + file + " --untwist --verify --save " + path("u.json"));
    EXPECT_EQ(r.code, 0) << r.out;
    auto check = run("check " + path("u.json") + " --which superdialgebra");
    EXPECT_EQ(check.code, 0) << check.out;
    return;
  }
  FAIL() << "no regular twisted instance";
}

TEST_F(Cli, Derivations) {
  auto z = write("z.json", to_json(DialgebraInstance<RationalField>::zero(Q, SuperSpace({0, 1, 1}))));
  auto r = run("derivations " + z + " --format json");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(report(r)["dimension"], 5);
  auto e = write("e.json", to_json(one_dim(1, 1)));
  EXPECT_EQ(report(run("derivations " + e + " --format json"))["dimension"], 0);

  auto c = run("corpus --generate --seed 1 --dim 2 --field Fp --p 5 --count 6 --format json --out " + path("c"));
  auto files = report(c)["files"];
  for (const auto& f : files) {
    auto o = run("derivations " + f["file"].get<std::string>() + " --m 1 --parity 1 --oracle");
    EXPECT_EQ(o.code, 0) << o.out;
    EXPECT_NE(o.out.find("oracle: dimension"), std::string::npos);
    EXPECT_NE(o.out.find("agrees"), std::string::npos);
  }
  EXPECT_EQ(run("derivations " + z + " --oracle").code, 2);
}

TEST_F(Cli, DerivationVariantsAndBracket) {
  auto e = generate_corpus(Q, kSeed, 6, 12)[4];
  auto file = write("h.json", to_json(e.instance));
  ASSERT_EQ(run("derivations " + file + " --save " + path("d00.json")).code, 0);
  ASSERT_EQ(run("derivations " + file + " --n 1 --save " + path("d01.json")).code, 0);
  auto b = run("bracket " + file + " " + path("d00.json") + " " + path("d01.json") + " --format json");
  EXPECT_EQ(b.code, 0) << b.out;
  EXPECT_EQ(report(b)["target"]["n"], 1);
  auto q = run("derivations " + file + " --quasi --format json");
  EXPECT_EQ(q.code, 0);
  EXPECT_TRUE(report(q)["result"].contains("pairs"));
  auto g = run("derivations " + file + " --generalized 1 0 0 --format json");
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(report(g)["result"]["params"]["delta"], "0");
  EXPECT_EQ(run("derivations " + file + " --generalized 1 x 0").code, 2);
  EXPECT_EQ(run("derivations " + file + " --sign-convention paper-dialgebra --parity 1").code, 0);
}

TEST_F(Cli, IdealQuotientMorphism) {
  auto e = generate_corpus(Q, kSeed, 6, 12)[7];
  const auto n = e.instance.dim();
  auto file = write("h.json", to_json(e.instance));
  auto empty = write("zero.json", json{{"field", "Q"}, {"dim", n}, {"vectors", json::array()}});
  EXPECT_EQ(run("ideal " + file + " " + empty).code, 0);
  auto q = run("quotient " + file + " " + empty + " --save " + path("q.json"));
  EXPECT_EQ(q.code, 0) << q.out;
  EXPECT_EQ(load_dialgebra(Q, path("q.json")), e.instance);

  auto idm = write("id.json", map_to_json(Q, Matrix<RationalField>::identity(Q, n)));
  auto m = run("morphism " + file + " " + file + " " + idm + " --format json");
  EXPECT_EQ(m.code, 0);
  EXPECT_TRUE(report(m)["kernel"]["basis"].empty());

  auto ker = morphism_check(e.instance, e.instance, e.endo).kernel;
  json vs = json::array();
  for (const auto& v : ker) vs.push_back(vector_to_json<RationalField>(v));
  auto kf = write("ker.json", json{{"field", "Q"}, {"dim", n}, {"vectors", vs}});
  auto kq = run("quotient " + file + " " + kf + " --format json");
  EXPECT_EQ(kq.code, 0) << kq.out;
  EXPECT_EQ(report(kq)["projection_is_morphism"], true);
}

TEST_F(Cli, NonIdealQuotientFails) {
  SuperalgebraInstance<RationalField> d2{Q, SuperSpace::even(2), ProductTensor<RationalField>(Q, 2),
                                         Matrix<RationalField>::identity(Q, 2), Matrix<RationalField>::identity(Q, 2)};
  d2.prod(0, 0, 0) = d2.prod(1, 1, 1) = Q.one();
  auto file = write("d2.json", to_json(from_associative(d2)));
  auto sub = write("s.json", json{{"vectors", {{1, 1}}}});
  EXPECT_EQ(run("ideal " + file + " " + sub).code, 1);
  EXPECT_EQ(run("quotient " + file + " " + sub).code, 1);
  EXPECT_EQ(run("ideal " + file + " " + sub + " --generate").code, 0);
}

TEST_F(Cli, Ad) {
  auto e = generate_corpus(Q, kSeed, 6, 12)[4];
  auto file = write("h.json", to_json(e.base));
  std::string zero;
  for (std::size_t i = 0; i < e.base.dim(); ++i) zero += (i ? ",0" : "0");
  auto r = run("ad " + file + " --r " + zero + " --format json");
  EXPECT_EQ(r.code, 0) << r.out;
  auto j = report(r);
  for (const auto& row : j["map"])
    for (const auto& x : row) EXPECT_EQ(x, "0");
  EXPECT_EQ(run("ad " + file + " --r 1").code, 2);
}

TEST_F(Cli, FromDifferential) {
  for (const auto& [name, d] : differential_instances(Q, 1)) {
    auto file = write(name + ".json", to_json(d));
    auto r = run("from-differential " + file + " --verify --save " + path(name + "-out.json"));
    EXPECT_EQ(r.code, 0) << name << r.out;
    EXPECT_EQ(run("check " + path(name + "-out.json")).code, 0);
  }
}

TEST_F(Cli, ReportsCarryDigestAndSeed) {
  auto file = write("h.json", to_json(one_dim(1, 1)));
  auto a = report(run("check " + file + " --format json --seed 17"));
  auto b = report(run("check " + file + " --format json --seed 17"));
  EXPECT_EQ(a["seed"], 17);
  EXPECT_EQ(a["input_digest"], b["input_digest"]);
  a.erase("elapsed_ms");
  b.erase("elapsed_ms");
  EXPECT_EQ(a, b);
}
