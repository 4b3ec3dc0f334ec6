#include "mcvuln/types.hpp"

#include <algorithm>
#include <cctype>

namespace mcvuln {

MemoryModel::MemoryModel(ModelName name, bool st_st, bool st_ld, bool ld_st,
                         bool ld_ld)
    : name_(name) {
  relax_[index(InstructionType::Store)][index(InstructionType::Store)] = st_st;
  relax_[index(InstructionType::Store)][index(InstructionType::Load)] = st_ld;
  relax_[index(InstructionType::Load)][index(InstructionType::Store)] = ld_st;
  relax_[index(InstructionType::Load)][index(InstructionType::Load)] = ld_ld;
}

const MemoryModel& MemoryModel::sc() {
  static const MemoryModel model(ModelName::SC, false, false, false, false);
  return model;
}

const MemoryModel& MemoryModel::tso() {
  static const MemoryModel model(ModelName::TSO, false, true, false, false);
  return model;
}

const MemoryModel& MemoryModel::pso() {
  static const MemoryModel model(ModelName::PSO, true, true, false, false);
  return model;
}

const MemoryModel& MemoryModel::wo() {
  static const MemoryModel model(ModelName::WO, true, true, true, true);
  return model;
}

MemoryModel MemoryModel::custom(bool st_st, bool st_ld, bool ld_st,
                                bool ld_ld) {
  return MemoryModel(ModelName::Custom, st_st, st_ld, ld_st, ld_ld);
}

ModelParams ModelParams::with_uniform_s(double p, double s, int m) {
  ModelParams params;
  params.p = p;
  params.m = m;
  for (auto& row : params.s)
    for (auto& entry : row) entry = s;
  return params;
}

void ModelParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0))
    throw UsageError("store frequency p must lie in [0, 1]");
  for (const auto& row : s)
    for (double entry : row)
      if (!(entry >= 0.0 && entry <= 1.0))
        throw UsageError("swap probabilities must lie in [0, 1]");
  if (m < 0) throw UsageError("program body length m must be >= 0");
}

const MemoryModel& preset_model(ModelName name) {
  switch (name) {
    case ModelName::SC:
      return MemoryModel::sc();
    case ModelName::TSO:
      return MemoryModel::tso();
    case ModelName::PSO:
      return MemoryModel::pso();
    case ModelName::WO:
      return MemoryModel::wo();
    case ModelName::Custom:
      break;
  }
  throw UsageError("no preset for a custom model");
}

ModelName parse_model_name(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "sc") return ModelName::SC;
  if (lower == "tso") return ModelName::TSO;
  if (lower == "pso") return ModelName::PSO;
  if (lower == "wo") return ModelName::WO;
  throw UsageError("unknown memory model '" + std::string(text) +
                   "' (expected one of sc, tso, pso, wo)");
}

const MemoryModel& parse_model(std::string_view text) {
  return preset_model(parse_model_name(text));
}

std::string to_string(ModelName name) {
  switch (name) {
    case ModelName::SC:
      return "sc";
    case ModelName::TSO:
      return "tso";
    case ModelName::PSO:
      return "pso";
    case ModelName::WO:
      return "wo";
    case ModelName::Custom:
      return "custom";
  }
  return "?";
}

}  // namespace mcvuln
