#include <gtest/gtest.h>

#include <filesystem>
#include <regex>
#include <thread>

#include "qbb/cache.hpp"
#include "qbb/config.hpp"
#include "qbb/export.hpp"

using namespace qbb;

namespace {

std::filesystem::path fresh_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("qbb-test-" + tag + "-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST(Config, RoundTrip) {
  const std::string text = R"cfg({
    "datum": {"indices": ["i", "j"], "cartan": [[2, -1], [-1, 0]], "symmetrizer": [1, 1]},
    "form": {"nu": "1", "overrides": {"j,2": "1/(1-q^2)"}},
    "limits": {"max_height": 4, "max_depth": 3},
    "lambdas": ["i=1,j=2"],
    "cache_dir": "/tmp/x"
  })cfg";
  ProjectConfig c = parse_config(text);
  EXPECT_EQ(c.names, (std::vector<std::string>{"i", "j"}));
  EXPECT_EQ(c.max_height, 4);
  EXPECT_EQ(c.max_depth, 3);
  EXPECT_EQ(c.nu_overrides.size(), 1u);
  EXPECT_EQ(c.lambda_list(), (std::vector<DominantWeight>{{1, 2}}));
  ProjectConfig again = parse_config(c.to_json().dump());
  EXPECT_EQ(again, c);
  EXPECT_EQ(again.to_json().dump(), c.to_json().dump());
}

TEST(Config, CannedAndDefaults) {
  ProjectConfig c = parse_config(R"({"datum": {"canned": "D-iso"}})");
  EXPECT_EQ(c.datum().size(), 1u);
  EXPECT_TRUE(c.datum().is_isotropic(0));
  EXPECT_EQ(c.max_height, 6);
  EXPECT_EQ(c.lambda_list().size(), 3u);
  EXPECT_EQ(parse_config(c.to_json().dump()), c);
}

TEST(Config, JsonErrorsCarryLineAndColumn) {
  try {
    parse_config("{\n  \"datum\": {\"canned\": \"D-iso\"},\n  \"limits\": {max_height: 3}\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 3);
    EXPECT_EQ(e.column, 14);
  }
}

TEST(Config, RejectsInvalidInput) {
  EXPECT_THROW(parse_config(R"({"datum": {"indices": ["i"], "cartan": [[1]]}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"datum": {"indices": ["i", "j"], "cartan": [[2, -1], [0, 2]]}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"datum": {"canned": "nope"}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"datum": {"canned": "D-iso"}, "limits": {"max_height": 0}})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"datum": {"canned": "D-iso"}, "form": {"overrides": {"k,1": "1"}}})"), ConfigError);
  EXPECT_THROW(parse_config(R"cfg({"datum": {"canned": "D-iso"}, "form": {"nu": "1/(q"}})cfg"), ConfigError);
  EXPECT_THROW(parse_config(R"([1, 2])"), ConfigError);
  EXPECT_THROW(parse_config(R"({"form": {}})"), ConfigError);
}

TEST(Cache, StoreAndLoad) {
  auto dir = fresh_dir("cache");
  ResultCache cache(dir);
  EXPECT_FALSE(cache.load("k1").has_value());
  cache.store("k1", {"out\n", 1, "FAIL x\n"});
  auto hit = cache.load("k1");
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->output, "out\n");
  EXPECT_EQ(hit->exit_code, 1);
  EXPECT_EQ(hit->diagnostics, "FAIL x\n");
  EXPECT_FALSE(cache.load("k2").has_value());
  std::filesystem::remove_all(dir);
}

TEST(Cache, CorruptOrForeignEntriesMiss) {
  auto dir = fresh_dir("corrupt");
  ResultCache cache(dir);
  cache.store("k", {"x", 0, ""});
  { std::ofstream(cache.path("k")) << "{not json"; }
  EXPECT_FALSE(cache.load("k").has_value());
  { std::ofstream(cache.path("k")) << R"({"version": "other", "key": "k", "output": "x", "exit_code": 0})"; }
  EXPECT_FALSE(cache.load("k").has_value());
  { std::ofstream(cache.path("k")) << R"({"version": "qbb-cache-1", "key": "not-k", "output": "x", "exit_code": 0})"; }
  EXPECT_FALSE(cache.load("k").has_value());
  std::filesystem::remove_all(dir);
}

TEST(Cache, ConcurrentWritersLeaveACompleteEntry) {
  auto dir = fresh_dir("race");
  ResultCache cache(dir);
  const std::string big(200000, 'z');
  std::vector<std::thread> ts;
  for (int t = 0; t < 8; ++t) ts.emplace_back([&] {
    for (int k = 0; k < 20; ++k) cache.store("key", {big, 0, ""});
  });
  std::atomic<bool> torn{false};
  std::thread reader([&] {
    for (int k = 0; k < 200; ++k)
      if (auto hit = cache.load("key"); hit && hit->output != big) torn = true;
  });
  for (auto& t : ts) t.join();
  reader.join();
  EXPECT_FALSE(torn);
  auto hit = cache.load("key");
  ASSERT_TRUE(hit.has_value());
  EXPECT_EQ(hit->output, big);
  int files = 0;
  for (auto& e : std::filesystem::directory_iterator(dir)) {
    (void)e;
    ++files;
  }
  EXPECT_EQ(files, 1);
  std::filesystem::remove_all(dir);
}

TEST(Export, GramOfIsotropicWeightTwo) {
  LusztigForm form(*canned_datum("D-iso"), NuAssignment());
  Json j = gram_json(form, RootVector{2});
  EXPECT_EQ(j["matrix"], Json::parse(R"([["2", "1"], ["1", "1"]])"));
  EXPECT_EQ(j["words"].size(), 2u);
}

TEST(Export, CrystalDotDepthTwoIsotropic) {
  UMinus u(LusztigForm(*canned_datum("D-iso"), NuAssignment()));
  Crystal c{Ambient(u)};
  std::string dot = crystal_dot(c, crystal_graph(c, 2));
  std::regex vertex(R"(^\s*\w+ \[label=)");
  int vertices = 0;
  std::istringstream in(dot);
  for (std::string line; std::getline(in, line);)
    if (std::regex_search(line, vertex)) ++vertices;
  EXPECT_EQ(vertices, 4);
  EXPECT_EQ(dot.rfind("digraph", 0), 0u);
}

TEST(Export, CsvQuoting) {
  EXPECT_EQ(csv_field("abc"), "abc");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Export, GlobalRowsAreCertified) {
  UMinus u(LusztigForm(*canned_datum("D-mix"), NuAssignment()));
  Crystal c{Ambient(u)};
  GlobalBasis gb(c);
  auto rows = global_rows(gb, 3);
  std::size_t total = 0;
  for (auto& a : weights_up_to(u.datum(), 3)) total += c.at(a)->vertices.size();
  EXPECT_EQ(rows.size(), total);
  for (auto& r : rows) EXPECT_TRUE(r.bar_invariant && r.in_aform && r.residue_match && r.cr_ok) << r.word;
  EXPECT_EQ(global_csv(rows), global_csv(global_rows(gb, 3)));
}

TEST(Registry, NamesAreUniqueAndRunnable) {
  std::set<std::string> names;
  for (auto& s : suite_registry()) EXPECT_TRUE(names.insert(s.name).second) << s.name;
  EXPECT_NE(find_suite("serre"), nullptr);
  EXPECT_EQ(find_suite("no-such-suite"), nullptr);
  Workbench w(LusztigForm(*canned_datum("D-iso"), NuAssignment()), {{0}, {1}});
  std::vector<const SuiteSpec*> sel;
  for (auto& s : suite_registry()) sel.push_back(&s);
  auto one = run_suites(w, sel, 2, 1);
  auto many = run_suites(w, sel, 2, 4);
  ASSERT_EQ(one.size(), sel.size());
  for (std::size_t k = 0; k < sel.size(); ++k) {
    EXPECT_EQ(one[k].name, sel[k]->name);
    EXPECT_TRUE(one[k].pass) << one[k].name << ": " << one[k].counterexample;
    EXPECT_EQ(one[k].checks, many[k].checks);
  }
}

TEST(Registry, ExceptionsBecomeFailures) {
  Workbench w(LusztigForm(*canned_datum("D-iso"), NuAssignment()), {});
  SuiteSpec boom{"boom", [](const Workbench&, int) -> SuiteResult { throw std::runtime_error("bad"); }};
  auto r = run_suites(w, {&boom}, 1, 2);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_FALSE(r[0].pass);
  EXPECT_NE(r[0].counterexample.find("bad"), std::string::npos);
}
