#include "commands.hpp"
#include "parse_args.hpp"

#include "fpcert/checker.hpp"
#include "fpcert/io.hpp"

namespace fpcert::cli {

int cmd_check(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Check certificates against a model using exact arithmetic", "check"};
  std::string modelPath, certPath;
  app.add_option("--model", modelPath, "model file")->required();
  app.add_option("--certificate", certPath, "certificate file")->required();
  if (auto rc = parse_args(app, args, out, err)) return *rc;

  Mdp m;
  std::vector<Certificate> certs;
  try {
    m = parse_model(read_file(modelPath));
    certs = parse_certificates(read_file(certPath));
  } catch (std::exception const& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  bool valid = true;
  for (auto const& c : certs) {
    Verdict v;
    try {
      validate_certificate_shape(c, m.num_states());
      v = check_certificate(m, c);
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return kUsage;
    }
    out << to_string(c.query.bound) << " " << write_query(c.query) << ": " << (v.valid ? "valid" : "INVALID") << "\n";
    for (auto const& f : v.failures) err << f.condition << " " << m.state_name(f.state) << " " << f.lhs << " " << f.rhs << "\n";
    if (v.total_failures > v.failures.size())
      err << "# " << v.total_failures - v.failures.size() << " further failures omitted\n";
    valid = valid && v.valid;
  }
  return valid ? kOk : kInvalidCertificate;
}

}  // namespace fpcert::cli
