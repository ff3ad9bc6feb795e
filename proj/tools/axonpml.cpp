// axonpml: converge | simulate | compare | advise
//
// Exit codes: 0 success, 2 invalid input, 3 solver failure, 1 anything else
// (I/O errors).

#include <iostream>

#include "CLI11.hpp"
#include "axonpml/errors.hpp"
#include "axonpml/workflows.hpp"

namespace {

struct Options {
  std::string config;
  std::string out = "out";
  int levels = 0;
  bool quiet = false;
};

void add_common(CLI::App* sub, Options& opt, bool with_levels) {
  sub->add_option("--config", opt.config, "JSON run configuration")->required();
  sub->add_option("--out", opt.out, "output root (results go to <out>/<name>)");
  if (with_levels) {
    sub->add_option("--levels", opt.levels, "number of mesh levels (overrides mesh.levels)")
        ->check(CLI::PositiveNumber);
  }
  sub->add_flag("--quiet", opt.quiet, "log to file only");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axisymmetric axon wave solver with DtN and PML truncation"};
  app.require_subcommand(1);
  Options opt;
  struct Verb {
    const char* name;
    const char* help;
    axonpml::Workflow workflow;
    bool levels;
  };
  const Verb verbs[] = {
      {"converge", "PML convergence study against an exact outgoing mode",
       axonpml::Workflow::Converge, true},
      {"simulate", "axon signal propagation with field and energy output",
       axonpml::Workflow::Simulate, true},
      {"compare", "DtN versus PML truncation on a shared mesh", axonpml::Workflow::Compare, true},
      {"advise", "PML strength recommendation and bound table", axonpml::Workflow::Advise, false},
  };
  std::map<CLI::App*, axonpml::Workflow> workflows;
  for (const Verb& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    add_common(sub, opt, v.levels);
    workflows[sub] = v.workflow;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    axonpml::RunConfig cfg = axonpml::load_config(opt.config);
    const axonpml::Workflow requested = workflows.at(app.get_subcommands().front());
    if (cfg.workflow != requested) {
      throw axonpml::ValidationError("config workflow '" +
                                     std::string(axonpml::to_string(cfg.workflow)) +
                                     "' does not match the verb");
    }
    axonpml::RunContext ctx;
    ctx.out_root = opt.out;
    ctx.quiet = opt.quiet;
    if (opt.levels > 0) ctx.levels = opt.levels;
    axonpml::run_workflow(cfg, ctx);
  } catch (const axonpml::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const axonpml::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
