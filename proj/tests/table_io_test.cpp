#include "dualproc/table_io.hpp"

#include <gtest/gtest.h>

#include "dualproc/errors.hpp"
#include "test_util.hpp"

namespace dualproc {
namespace {

TEST(TableIo, FreshTableRoundTripsExactly) {
  const GridWorld w = testing::open_world(4, 5);
  const LookupTable t(w, 0.9, 0.1);
  const LookupTable back = table_from_json_text(table_to_json_text(t));
  EXPECT_TRUE(back == t);
}

TEST(TableIo, TrainedTableRoundTripsExactly) {
  const GridWorld w = testing::open_world(6, 6);
  const LookupTable t = testing::trained_table(w, 30, 99);
  const std::string text = table_to_json_text(t);
  const LookupTable back = table_from_json_text(text);
  EXPECT_TRUE(back == t);
  // serialization is stable byte-for-byte
  EXPECT_EQ(table_to_json_text(back), text);
}

TEST(TableIo, RejectsGarbage) {
  EXPECT_THROW(table_from_json_text("not json"), ConfigError);
  EXPECT_THROW(table_from_json_text("{}"), ConfigError);
  EXPECT_THROW(table_from_json_text(R"({"discount": 0.9})"), ConfigError);
}

TEST(TableIo, RejectsForeignStateKeys) {
  const GridWorld w = testing::open_world(3, 3);
  const LookupTable t(w, 0.9, 0.1);
  std::string text = table_to_json_text(t);
  // smuggle an out-of-range state key into the values map
  const auto pos = text.find("\"values\"");
  ASSERT_NE(pos, std::string::npos);
  text.insert(text.find('{', pos) + 1, "\"99\": 1.0,");
  EXPECT_THROW(table_from_json_text(text), ConfigError);
}

}  // namespace
}  // namespace dualproc
