#include <gtest/gtest.h>

#include <string>

#include "json.hpp"
#include "ptlab/ptlab.h"

using Json = nlohmann::json;

namespace {

Json take(char* s) {
  Json j = Json::parse(s);
  ptlab_string_free(s);
  return j;
}

struct Handle {
  ptlab_instance* p = nullptr;
  ~Handle() { ptlab_instance_free(p); }
};

}  // namespace

TEST(CApi, StatusNames) {
  EXPECT_STREQ(ptlab_status_name(PTLAB_OK), "ok");
  EXPECT_STREQ(ptlab_status_name(PTLAB_VERIFY_FAILED), "verify_failed");
}

TEST(CApi, InvalidDimensionSetsLastError) {
  Handle h;
  EXPECT_EQ(ptlab_instance_sample("mono", 15, "yes", 0, nullptr, &h.p), PTLAB_INVALID_ARGUMENT);
  EXPECT_EQ(h.p, nullptr);
  EXPECT_NE(std::string(ptlab_last_error()).find("perfect square"), std::string::npos);
  EXPECT_EQ(ptlab_instance_sample("nope", 16, "yes", 0, nullptr, &h.p), PTLAB_INVALID_ARGUMENT);
  EXPECT_EQ(ptlab_instance_sample("mono", 16, "maybe", 0, nullptr, &h.p), PTLAB_INVALID_ARGUMENT);
  EXPECT_EQ(ptlab_instance_sample("mono", 144, "yes", 0, "explicit", &h.p), PTLAB_RESOURCE_LIMIT);
  EXPECT_EQ(ptlab_instance_sample(nullptr, 16, "yes", 0, nullptr, &h.p), PTLAB_INVALID_ARGUMENT);
}

TEST(CApi, SampleEvalAndRoundTrip) {
  Handle h;
  ASSERT_EQ(ptlab_instance_sample("mono", 16, "yes", 3, nullptr, &h.p), PTLAB_OK);
  EXPECT_STREQ(ptlab_last_error(), "");
  EXPECT_EQ(ptlab_instance_dimension(h.p), 16u);
  EXPECT_STREQ(ptlab_instance_family(h.p), "mono");
  int v = -1;
  ASSERT_EQ(ptlab_instance_eval_hex(h.p, "ffff", &v), PTLAB_OK);
  EXPECT_EQ(v, 1);
  ASSERT_EQ(ptlab_instance_eval_hex(h.p, "0", &v), PTLAB_OK);
  EXPECT_EQ(v, 0);
  EXPECT_EQ(ptlab_instance_eval_hex(h.p, "xyz", &v), PTLAB_INVALID_ARGUMENT);

  char* js = nullptr;
  ASSERT_EQ(ptlab_instance_to_json(h.p, &js), PTLAB_OK);
  const std::string text = js;
  ptlab_string_free(js);
  Handle back;
  ASSERT_EQ(ptlab_instance_from_json(text.c_str(), &back.p), PTLAB_OK);
  ASSERT_EQ(ptlab_instance_to_json(back.p, &js), PTLAB_OK);
  EXPECT_EQ(text, js);
  ptlab_string_free(js);
  EXPECT_EQ(ptlab_instance_from_json("{", &back.p), PTLAB_INVALID_ARGUMENT);
  EXPECT_EQ(ptlab_instance_load("/nonexistent/x.json", &back.p), PTLAB_IO);
}

TEST(CApi, SignatureMatchesEval) {
  for (const char* family : {"mono", "unate", "onelevel"}) {
    Handle h;
    ASSERT_EQ(ptlab_instance_sample(family, 16, "no", 1, nullptr, &h.p), PTLAB_OK) << family;
    char* pts = nullptr;
    ASSERT_EQ(ptlab_instance_random_points(h.p, 50, 9, 1, &pts), PTLAB_OK);
    for (const auto& hex : take(pts)) {
      char* sig = nullptr;
      ASSERT_EQ(ptlab_instance_signature_json(h.p, hex.get<std::string>().c_str(), &sig), PTLAB_OK);
      const auto j = take(sig);
      EXPECT_EQ(j.at("value"), j.at("eval")) << family << " " << hex;
    }
  }
  Handle m;
  ASSERT_EQ(ptlab_instance_sample("mono", 16, "yes", 1, nullptr, &m.p), PTLAB_OK);
  char* sig = nullptr;
  EXPECT_EQ(ptlab_instance_signature_json(m.p, "ffff", &sig), PTLAB_CONTRACT_VIOLATION);
  EXPECT_EQ(sig, nullptr);
  Handle b;
  ASSERT_EQ(ptlab_instance_sample("bb15", 16, "yes", 1, nullptr, &b.p), PTLAB_OK);
  EXPECT_EQ(ptlab_instance_signature_json(b.p, "00ff", &sig), PTLAB_UNSUPPORTED);
}

TEST(CApi, AttackAndDistance) {
  Handle h;
  ASSERT_EQ(ptlab_instance_sample("bb15", 100, "yes", 0, nullptr, &h.p), PTLAB_OK);
  char* out = nullptr;
  ASSERT_EQ(ptlab_attack(h.p, "bb15", R"({"q": 2000})", &out), PTLAB_OK);
  const auto v = take(out);
  EXPECT_EQ(v.at("decision"), "accept");
  EXPECT_EQ(v.at("attack"), "bb15");
  EXPECT_EQ(ptlab_attack(h.p, "bogus", nullptr, &out), PTLAB_INVALID_ARGUMENT);
  EXPECT_EQ(ptlab_attack(h.p, "bb15", R"({"qq": 1})", &out), PTLAB_INVALID_ARGUMENT);

  Handle small;
  ASSERT_EQ(ptlab_instance_sample("mono", 9, "no", 2, nullptr, &small.p), PTLAB_OK);
  ASSERT_EQ(ptlab_distance_json(small.p, R"({"samples": 1000, "seed": 1})", &out), PTLAB_OK);
  const auto d = take(out);
  EXPECT_TRUE(d.contains("exact_dist_mono"));
}

TEST(CApi, ExperimentRunAndVerify) {
  char* names = nullptr;
  ASSERT_EQ(ptlab_experiment_names(&names), PTLAB_OK);
  EXPECT_NE(std::string(names).find("fi-farness"), std::string::npos);
  ptlab_string_free(names);

  const std::string out = ::testing::TempDir() + "ptlab_capi";
  const std::string ok_cfg = R"({"experiment": "fi-farness", "n": 4, "seeds": 4, "out": ")" + out +
                             R"(", "expect": [{"metric": "lower_bound_is_eighth", "value": 1}]})";
  char* res = nullptr;
  ASSERT_EQ(ptlab_experiment_run(ok_cfg.c_str(), &res), PTLAB_OK);
  const auto run = take(res);
  EXPECT_EQ(run.at("rows").size(), 16u);
  ASSERT_EQ(ptlab_experiment_verify(ok_cfg.c_str(), &res), PTLAB_OK);
  EXPECT_TRUE(take(res).at("ok").get<bool>());

  const std::string bad_cfg = R"({"experiment": "fi-farness", "n": 4, "seeds": 4, "out": ")" + out +
                              R"(", "expect": [{"metric": "lower_bound_is_eighth", "value": 0}]})";
  ASSERT_EQ(ptlab_experiment_verify(bad_cfg.c_str(), &res), PTLAB_VERIFY_FAILED);
  EXPECT_FALSE(take(res).at("ok").get<bool>());
  EXPECT_EQ(ptlab_experiment_run("{}", &res), PTLAB_INVALID_ARGUMENT);
}
