#include "commands.hpp"
#include "parse_args.hpp"

#include "fpcert/io.hpp"
#include "fpcert/oracle.hpp"

namespace fpcert::cli {

int cmd_oracle(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact optimal values by exhaustive strategy enumeration", "oracle"};
  std::string modelPath, queryText;
  std::uint64_t cap = oracle::kDefaultCap;
  app.add_option("--model", modelPath, "model file")->required();
  app.add_option("--query", queryText, "query, e.g. 'Emin=? [F target] semantics=inf'")->required();
  app.add_option("--cap", cap, "maximum number of strategies to enumerate");
  if (auto rc = parse_args(app, args, out, err)) return *rc;

  Mdp m;
  Query q;
  try {
    m = parse_model(read_file(modelPath));
    q = parse_query(queryText);
    if (!m.has_label(q.target_label)) throw std::invalid_argument("unknown label '" + q.target_label + "'");
  } catch (std::exception const& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  oracle::OracleResult res;
  try {
    res = oracle::optimal_exact(m, q, cap);
  } catch (oracle::CapExceeded const& e) {
    err << "error: " << e.what() << "\n";
    return kCapExceeded;
  }
  for (State s = 0; s < m.num_states(); ++s) out << m.state_name(s) << " = " << res.values[s] << "\n";
  if (res.arg_strategy) {
    out << "strategy";
    for (auto a : *res.arg_strategy) out << " " << a;
    out << "\n";
  }
  return kOk;
}

}  // namespace fpcert::cli
