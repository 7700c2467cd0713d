#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "stacksolve/dataset.hpp"
#include "test_util.hpp"

using namespace stacksolve;

namespace {

std::vector<BenchmarkItem> sample_items() {
  GenConfig cfg;
  cfg.seed = 21;
  return generate_benchmark(cfg);
}

}  // namespace

TEST(Dataset, RoundTripThreeHundredItems) {
  const auto items = sample_items();
  ASSERT_EQ(items.size(), 300u);
  std::stringstream ss;
  dataset::write_dataset(ss, items);
  const auto back = dataset::read_dataset(ss);
  ASSERT_EQ(back.size(), items.size());
  for (std::size_t i = 0; i < items.size(); ++i) EXPECT_EQ(back[i], items[i]) << items[i].id;
}

TEST(Dataset, FileRoundTripAndRecordFields) {
  const auto items = sample_items();
  const auto path = (std::filesystem::temp_directory_path() / "stacksolve_dataset_test.jsonl").string();
  dataset::write_dataset(items, path);
  EXPECT_EQ(dataset::read_dataset(path), items);
  const auto first_line = testutil::read_text(path).substr(0, testutil::read_text(path).find('\n'));
  const auto j = nlohmann::json::parse(first_line);
  for (const char* key : {"id", "family", "condition", "seed", "rng", "objects", "init", "goal", "nl_text"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["rng"], "mt19937_64/splitmix64");
  std::filesystem::remove(path);
}

TEST(Dataset, FactEncoding) {
  EXPECT_EQ(dataset::fact_to_json(Fact::on("mug", "plate")).dump(), R"(["on","mug","plate"])");
  EXPECT_EQ(dataset::fact_to_json(Fact::on_table("mug")).dump(), R"(["on-table","mug"])");
  EXPECT_EQ(dataset::fact_to_json(Fact::clear("mug")).dump(), R"(["clear","mug"])");
  EXPECT_THROW(dataset::fact_from_json(nlohmann::ordered_json::parse(R"(["on","mug"])")), std::invalid_argument);
}

TEST(Dataset, SchemaErrorsCarryLineNumbers) {
  const auto items = sample_items();
  std::stringstream good;
  dataset::write_dataset(good, {items[0], items[1]});
  auto expect_line = [](const std::string& text, std::size_t line) {
    std::istringstream in(text);
    try {
      dataset::read_dataset(in);
      FAIL() << "expected SchemaError";
    } catch (const SchemaError& e) {
      EXPECT_EQ(e.line(), line) << e.what();
    }
  };
  expect_line(good.str() + "{not json}\n", 3);
  expect_line(good.str() + "\n{\"id\": \"x\"}\n", 4);
  std::string bad_state = good.str();
  const auto pos = bad_state.find("\"on-table\"");
  bad_state.replace(pos, 10, "\"levitate\"");
  expect_line(bad_state, 1);
}

TEST(Dataset, MissingFileIsIoError) {
  EXPECT_THROW(dataset::read_dataset(std::string("/nonexistent/dir/x.jsonl")), IoError);
  EXPECT_THROW(dataset::write_dataset({}, "/nonexistent/dir/x.jsonl"), IoError);
}
