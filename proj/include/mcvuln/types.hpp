#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mcvuln {

// Error taxonomy. The CLI maps UsageError -> exit 1 and
// ResourceGuardError -> exit 2.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ResourceGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedModelError : UsageError {
  using UsageError::UsageError;
};

enum class InstructionType : uint8_t { Load = 0, Store = 1 };

enum class ModelName { SC, TSO, PSO, WO, Custom };

/// A memory consistency model as a relaxation matrix: relaxed(earlier, later)
/// says whether an instruction of type `later` may settle past (swap with) a
/// preceding instruction of type `earlier`.
class MemoryModel {
 public:
  static const MemoryModel& sc();
  static const MemoryModel& tso();
  static const MemoryModel& pso();
  static const MemoryModel& wo();
  static MemoryModel custom(bool st_st, bool st_ld, bool ld_st, bool ld_ld);

  bool relaxed(InstructionType earlier, InstructionType later) const {
    return relax_[index(earlier)][index(later)];
  }

  ModelName name() const { return name_; }

 private:
  MemoryModel(ModelName name, bool st_st, bool st_ld, bool ld_st, bool ld_ld);

  static constexpr int index(InstructionType t) { return static_cast<int>(t); }

  bool relax_[2][2];  // [earlier][later]
  ModelName name_;
};

/// Generation and settling parameters: p is the store frequency of the random
/// body, s holds per-(earlier, later) swap-success probabilities, and m is
/// the non-critical body length. A pair the model disallows never consults s.
struct ModelParams {
  double p = 0.5;
  double s[2][2] = {{0.5, 0.5}, {0.5, 0.5}};  // [earlier][later]
  int m = 64;

  double swap_success(InstructionType earlier, InstructionType later) const {
    return s[static_cast<int>(earlier)][static_cast<int>(later)];
  }

  static ModelParams with_uniform_s(double p, double s, int m);

  void validate() const;  // throws UsageError
};

inline bool allows_swap(const MemoryModel& model, InstructionType earlier,
                        InstructionType later) {
  return model.relaxed(earlier, later);
}

inline double swap_probability(const MemoryModel& model,
                               const ModelParams& params,
                               InstructionType earlier,
                               InstructionType later) {
  return model.relaxed(earlier, later) ? params.swap_success(earlier, later)
                                       : 0.0;
}

const MemoryModel& preset_model(ModelName name);

// Case-insensitive: "sc", "tso", "pso", "wo". Throws UsageError.
ModelName parse_model_name(std::string_view text);
const MemoryModel& parse_model(std::string_view text);

std::string to_string(ModelName name);

}  // namespace mcvuln
