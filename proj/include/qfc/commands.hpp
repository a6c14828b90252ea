#ifndef QFC_COMMANDS_HPP
#define QFC_COMMANDS_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "qfc/config.hpp"

namespace qfc {

// Exit codes shared by all commands:
// 0 success, 1 config error, 2 regime failure (validate), 3 numerical failure.
inline constexpr int exit_ok = 0;
inline constexpr int exit_config_error = 1;
inline constexpr int exit_regime_failure = 2;
inline constexpr int exit_numerical_failure = 3;

int cmd_validate(const ScenarioConfig& config, bool lenient, std::ostream& out);

int cmd_simulate(const ScenarioConfig& config, const std::string& out_dir, int decimate,
                 std::ostream& out);

int cmd_sweep(const ScenarioConfig& config, const SweepSpec& sweep, int jobs,
              const std::string& out_path, std::ostream& out);

int cmd_qubit(const ScenarioConfig& config, std::ostream& out);

int cmd_compare_tiers(const ScenarioConfig& config, std::ostream& out);

} // namespace qfc

#endif
