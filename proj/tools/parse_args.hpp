#pragma once

#include "commands.hpp"

#include <CLI11.hpp>

#include <optional>

namespace fpcert::cli {

// Runs CLI11 on args; returns an exit code if the command should stop here.
inline std::optional<int> parse_args(CLI::App& app, std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (CLI::CallForHelp const&) {
    out << app.help();
    return kOk;
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return std::nullopt;
}

}  // namespace fpcert::cli
