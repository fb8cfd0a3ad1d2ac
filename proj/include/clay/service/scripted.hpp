#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "clay/core/config.hpp"
#include "clay/core/ports.hpp"
#include "clay/core/session.hpp"

namespace clay {

// Simulated participants.
//   Converger:    vague prompt, k refine/generate cycles, stage advance,
//                 k2 design cycles.
//   Explorer:     like Converger, but restarts with a new vague prompt after
//                 its first cycle, issues one composition directive before
//                 advancing and adds a user keyword in the design stage.
//   BaselineFree: n free prompts, advancing to the design stage halfway.
enum class PolicyKind { Explorer, Converger, BaselineFree };

std::string_view to_string(PolicyKind k) noexcept;
std::optional<PolicyKind> parse_policy(std::string_view s) noexcept;

struct ScriptPolicy {
  PolicyKind kind = PolicyKind::Converger;
  int k = 2;  // moodboard cycles
  int k2 = 2; // design cycles
  int n = 11; // baseline prompts
};

SessionMode policy_mode(PolicyKind k) noexcept;

// Converger k + k2 + 2, Explorer k + k2 + 4, BaselineFree n.
int expected_interactions(const ScriptPolicy &p);

// Throws a validation Error when the counts cannot be scripted.
void validate(const ScriptPolicy &p);

struct ScriptedRun {
  Session session;
  std::string log; // serialized session log
};

// Drives a fresh engine with a logical clock (2024-01-01T00:00:00Z, 1 s
// steps), so the same policy, seed and backends give the same log. `mode`,
// when given, must match the policy. `style` defaults to a study style
// picked from the seed.
ScriptedRun run_scripted_session(const BackendSet &backends,
                                 const WorkflowConfig &config,
                                 const ScriptPolicy &policy, std::uint64_t seed,
                                 std::optional<SessionMode> mode = std::nullopt,
                                 std::optional<std::string> style = std::nullopt);

} // namespace clay
