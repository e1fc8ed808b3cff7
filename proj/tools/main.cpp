#include "commands.hpp"

#include <iostream>

namespace {

void usage(std::ostream& os) {
  os << "usage: fpcert <certify|check|oracle> [options]\n"
        "       fpcert <command> --help\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    usage(std::cerr);
    return fpcert::cli::kUsage;
  }
  std::string cmd = argv[1];
  std::vector<std::string> args(argv + 2, argv + argc);
  if (cmd == "certify") return fpcert::cli::cmd_certify(args, std::cout, std::cerr);
  if (cmd == "check") return fpcert::cli::cmd_check(args, std::cout, std::cerr);
  if (cmd == "oracle") return fpcert::cli::cmd_oracle(args, std::cout, std::cerr);
  if (cmd == "--help" || cmd == "-h") {
    usage(std::cout);
    return fpcert::cli::kOk;
  }
  usage(std::cerr);
  return fpcert::cli::kUsage;
}
