#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fpcert::cli {

// Exit codes shared by all commands.
enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kSolverFailure = 2,
  kInvalidAfterGeneration = 3,
  kInvalidCertificate = 4,
  kCapExceeded = 5,
};

// Each command takes its arguments without the command name.
int cmd_certify(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);
int cmd_check(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);
int cmd_oracle(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace fpcert::cli
