#include "commands.hpp"
#include "parse_args.hpp"

#include "fpcert/generate.hpp"
#include "fpcert/io.hpp"

#include <fstream>

namespace fpcert::cli {

int cmd_certify(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compute certified lower/upper bounds and write the certificates", "certify"};
  std::string modelPath, queryText, outPath, bound = "both", method = "pi", rounding = "safe", epsilon = "1/1000000", gamma;
  unsigned bits = 53;
  std::uint64_t maxSweeps = 1000000;
  bool witness = false;
  app.add_option("--model", modelPath, "model file")->required();
  app.add_option("--query", queryText, "query, e.g. 'Pmin=? [F target]'")->required();
  app.add_option("--bound", bound, "lower, upper or both")->check(CLI::IsMember({"lower", "upper", "both"}));
  app.add_option("--method", method, "pi (exact policy iteration) or ii (interval iteration)")->check(CLI::IsMember({"pi", "ii"}));
  app.add_option("--epsilon", epsilon, "relative precision for ii");
  app.add_option("--gamma", gamma, "smoothing factor in [0,1) (default 1/20 with safe rounding, 9/10 without)");
  app.add_option("--rounding", rounding, "safe or none")->check(CLI::IsMember({"safe", "none"}));
  app.add_option("--precision-bits", bits, "mantissa bits of safe rounding");
  app.add_option("--max-sweeps", maxSweeps, "sweep cap for ii");
  app.add_flag("--witness", witness, "attach a witness strategy where allowed");
  app.add_option("--out", outPath, "certificate output file")->required();
  if (auto rc = parse_args(app, args, out, err)) return *rc;

  Mdp m;
  Query q;
  SolverConfig cfg;
  try {
    m = parse_model(read_file(modelPath));
    q = parse_query(queryText);
    q.bound = bound == "lower" ? Bound::Lower : bound == "upper" ? Bound::Upper : Bound::Both;
    cfg.method = method == "pi" ? Method::PI : Method::II;
    cfg.rounding = rounding == "safe" ? Rounding::Safe : Rounding::None;
    cfg.epsilon = parse_rat(epsilon);
    cfg.gamma = gamma.empty() ? (cfg.rounding == Rounding::Safe ? Rat(1, 20) : Rat(9, 10)) : parse_rat(gamma);
    cfg.precision_bits = bits;
    cfg.max_sweeps = maxSweeps;
    q.epsilon = cfg.epsilon;
    cfg.validate();
    if (!m.has_label(q.target_label)) throw std::invalid_argument("unknown label '" + q.target_label + "'");
  } catch (std::exception const& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::vector<Certificate> certs;
  try {
    certs = generate_certificates(m, q, cfg, GenerateOptions{witness});
  } catch (SolverError const& e) {
    err << "error: " << e.what() << "\n";
    return e.kind == SolverError::Kind::FloatingPointBreakage ? kInvalidAfterGeneration : kSolverFailure;
  } catch (GenerationError const& e) {
    err << "error: " << e.what() << "\n";
    for (auto const& f : e.verdict.failures) err << f.condition << " " << m.state_name(f.state) << " " << f.lhs << " " << f.rhs << "\n";
    return kInvalidAfterGeneration;
  } catch (std::exception const& e) {
    err << "error: " << e.what() << "\n";
    return kSolverFailure;
  }

  std::ofstream file(outPath);
  for (auto const& c : certs) file << write_certificate(c);
  if (!file) {
    err << "error: cannot write '" << outPath << "'\n";
    return kUsage;
  }
  for (auto const& c : certs)
    for (State s = 0; s < m.num_states(); ++s) out << to_string(c.query.bound) << " " << m.state_name(s) << " = " << c.x[s] << "\n";
  return kOk;
}

}  // namespace fpcert::cli
