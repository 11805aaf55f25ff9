// cli/experiment-config.cc

// Copyright 2026  The rntm Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "cli/experiment-config.h"

#include "base/json-config.h"
#include "base/rntm-common.h"

namespace rntm {

namespace {

void ReadOptimizer(const ConfigSection &s, OptimizerConfig *o) {
  o->epochs = s.Get("epochs", o->epochs);
  o->batch_size = s.Get("batch_size", o->batch_size);
  o->learning_rate = s.Get("learning_rate", o->learning_rate);
  o->clip_norm = s.Get("clip_norm", o->clip_norm);
  RNTM_REQUIRE(o->epochs >= 1, "config: " << s.Field("epochs") << " must be >= 1");
  RNTM_REQUIRE(o->batch_size >= 1, "config: " << s.Field("batch_size") << " must be >= 1");
  RNTM_REQUIRE(o->learning_rate > 0.0, "config: " << s.Field("learning_rate") << " must be > 0");
}

nlohmann::json OptimizerJson(const OptimizerConfig &o) {
  return {{"epochs", o.epochs},
          {"batch_size", o.batch_size},
          {"learning_rate", o.learning_rate},
          {"clip_norm", o.clip_norm}};
}

}  // namespace

ExperimentConfig ExperimentConfig::FromJson(const nlohmann::json &j) {
  RNTM_REQUIRE(j.is_object(), "config: top level must be a JSON object");
  const ConfigSection root(j, "");
  root.AllowOnly({"seed", "description", "data_dir", "output_dir", "corpus", "model", "asr",
                  "ser", "lid", "decode"});
  ExperimentConfig c;
  c.seed = root.Get<uint64_t>("seed");
  c.description = root.Get("description", c.description);
  c.data_dir = root.Get("data_dir", c.data_dir);
  c.output_dir = root.Get("output_dir", c.output_dir);

  const nlohmann::json empty = nlohmann::json::object();
  auto section = [&](const char *key) {
    if (!j.contains(key)) return ConfigSection(empty, key);
    RNTM_REQUIRE(j.at(key).is_object(), "config: field " << key << " must be an object");
    return ConfigSection(j.at(key), key);
  };

  c.corpus = CorpusConfig::FromConfig(section("corpus"));

  {
    const ConfigSection s = section("model");
    s.AllowOnly({"encoder_layers", "encoder_hidden", "embed_dim", "predictor_hidden",
                 "joint_hidden"});
    c.model.encoder_layers = s.Get("encoder_layers", c.model.encoder_layers);
    c.model.encoder_hidden = s.Get("encoder_hidden", c.model.encoder_hidden);
    c.model.embed_dim = s.Get("embed_dim", c.model.embed_dim);
    c.model.predictor_hidden = s.Get("predictor_hidden", c.model.predictor_hidden);
    c.model.joint_hidden = s.Get("joint_hidden", c.model.joint_hidden);
    c.model.feature_dim = c.corpus.feature_dim;
  }
  {
    const ConfigSection s = section("asr");
    s.AllowOnly({"epochs", "batch_size", "learning_rate", "clip_norm"});
    ReadOptimizer(s, &c.asr.opt);
  }
  {
    const ConfigSection s = section("ser");
    s.AllowOnly({"epochs", "batch_size", "learning_rate", "clip_norm", "patience",
                 "tag_neutral", "freeze"});
    ReadOptimizer(s, &c.ser.opt);
    c.ser.patience = s.Get("patience", c.ser.patience);
    c.ser.tag_neutral = s.Get("tag_neutral", c.ser.tag_neutral);
    c.ser.freeze = s.Get("freeze", c.ser.freeze);
    RNTM_REQUIRE(c.ser.patience >= 1, "config: ser.patience must be >= 1");
  }
  {
    const ConfigSection s = section("lid");
    s.AllowOnly({"epochs", "batch_size", "learning_rate", "clip_norm", "lstm_hidden",
                 "num_heads", "head_dim", "dev_fraction", "patience", "finetune_encoder"});
    ReadOptimizer(s, &c.lid.opt);
    c.lid.lstm_hidden = s.Get("lstm_hidden", c.lid.lstm_hidden);
    c.lid.num_heads = s.Get("num_heads", c.lid.num_heads);
    c.lid.head_dim = s.Get("head_dim", c.lid.head_dim);
    c.lid.dev_fraction = s.Get("dev_fraction", c.lid.dev_fraction);
    c.lid.patience = s.Get("patience", c.lid.patience);
    c.lid.finetune_encoder = s.Get("finetune_encoder", c.lid.finetune_encoder);
    RNTM_REQUIRE(c.lid.dev_fraction > 0.0 && c.lid.dev_fraction < 1.0,
                 "config: lid.dev_fraction must be in (0, 1)");
  }
  {
    const ConfigSection s = section("decode");
    s.AllowOnly({"max_symbols_per_frame", "gate_threshold"});
    c.decode.max_symbols_per_frame = s.Get("max_symbols_per_frame", c.decode.max_symbols_per_frame);
    c.decode.gate_threshold = s.Get("gate_threshold", c.decode.gate_threshold);
    RNTM_REQUIRE(c.decode.max_symbols_per_frame >= 1,
                 "config: decode.max_symbols_per_frame must be >= 1");
    RNTM_REQUIRE(c.decode.gate_threshold >= 0.0 && c.decode.gate_threshold <= 1.0,
                 "config: decode.gate_threshold must be in [0, 1]");
  }
  return c;
}

ExperimentConfig ExperimentConfig::Load(const std::string &path) {
  return FromJson(ReadJsonFile(path));
}

nlohmann::json ExperimentConfig::ToJson() const {
  return {
      {"seed", seed},
      {"description", description},
      {"data_dir", data_dir},
      {"output_dir", output_dir},
      {"corpus", corpus.ToJson()},
      {"model",
       {{"encoder_layers", model.encoder_layers},
        {"encoder_hidden", model.encoder_hidden},
        {"embed_dim", model.embed_dim},
        {"predictor_hidden", model.predictor_hidden},
        {"joint_hidden", model.joint_hidden}}},
      {"asr", OptimizerJson(asr.opt)},
      {"ser", [&] {
         nlohmann::json s = OptimizerJson(ser.opt);
         s["patience"] = ser.patience;
         s["tag_neutral"] = ser.tag_neutral;
         s["freeze"] = ser.freeze;
         return s;
       }()},
      {"lid", [&] {
         nlohmann::json s = OptimizerJson(lid.opt);
         s["lstm_hidden"] = lid.lstm_hidden;
         s["num_heads"] = lid.num_heads;
         s["head_dim"] = lid.head_dim;
         s["dev_fraction"] = lid.dev_fraction;
         s["patience"] = lid.patience;
         s["finetune_encoder"] = lid.finetune_encoder;
         return s;
       }()},
      {"decode",
       {{"max_symbols_per_frame", decode.max_symbols_per_frame},
        {"gate_threshold", decode.gate_threshold}}},
  };
}

std::string ExperimentConfig::Hash() const { return HexU64(Fnv1a64(ToJson().dump())); }

}  // namespace rntm
