#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "photonstat/channels.hpp"
#include "photonstat/distribution.hpp"
#include "photonstat/moments.hpp"
#include "photonstat/state.hpp"

namespace photonstat::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kParameterError = 2,
  kImpossibleEvent = 3,
  kInsufficientStatistics = 4,
};

inline constexpr std::size_t kMaxOps = 16;

enum class PipelineOpKind { Sub, Add, Att, Amp };

struct PipelineOp {
  PipelineOpKind kind = PipelineOpKind::Sub;
  double value = 0.0;
  std::string text;  // as given on the command line
};

/// Parses "sub:2", "add:1", "att:0.5", "amp:2". `index` is 1-based and only
/// used in error messages.
PipelineOp parse_op(const std::string& text, std::size_t index);

struct MgfGrid {
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 0;
};

MgfGrid parse_mgf_grid(const std::string& text);

/// Family-parameter flags as given; empty means absent.
struct StateFlags {
  std::string family;
  std::optional<std::uint64_t> n;
  std::optional<double> a2;
  std::optional<double> nbar;
  std::optional<double> eta;
  std::optional<std::uint64_t> m;
};

StateSpec make_state(const StateFlags& flags);

struct PipelineRequest {
  StateSpec state;
  std::vector<PipelineOp> ops;
  unsigned moments = 2;
  std::optional<MgfGrid> mgf_grid;
  std::string format = "json";
  double tail_epsilon = kDefaultTailEpsilon;
};

struct AppliedOp {
  PipelineOp op;
  /// Success normalizer for sub/add; 1 for channels.
  double success_norm = 1.0;
};

struct PipelineResult {
  PhotonNumberDistribution dist;
  std::vector<AppliedOp> applied;
};

/// Builds the state and applies the ops left to right. Errors are rethrown
/// with the offending op index in the message.
PipelineResult run_pipeline(const PipelineRequest& request);

/// Tail epsilon from PHOTONSTAT_TAIL_EPS, or the library default.
double default_tail_epsilon();

/// `%.17g`; non-finite values become null in JSON.
std::string format_double(double value);

/// Entry point shared by the binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace photonstat::cli
