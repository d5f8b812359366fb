#include <cstdio>
#include <map>
#include <memory>
#include <string>

#include "cmrf/verify.hpp"
#include "commands.hpp"

namespace cmrf::cli {

namespace {

struct VerifyOptions {
  verify::Scale scale = verify::Scale::Quick;
  std::uint64_t seed = 1;
  bool inject_fault = false;
};

int run_verify(const VerifyOptions& o) {
  verify::Options opt;
  opt.scale = o.scale;
  opt.seed = o.seed;
  opt.fault = o.inject_fault ? verify::Fault::WeightRowSum : verify::Fault::None;
  int failed = 0;
  for (const auto& r : verify::run_all(opt)) {
    std::printf("%s %-26s %s (%s)\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.property.c_str(),
                r.detail.c_str());
    failed += !r.passed;
  }
  std::printf("%s: %d failing\n", failed ? "FAILED" : "OK", failed);
  return failed ? kExitVerification : kExitOk;
}

}  // namespace

void register_verify(CLI::App& app, int& status) {
  auto o = std::make_shared<VerifyOptions>();
  auto* cmd = app.add_subcommand("verify", "Run the randomized property suites");
  const std::map<std::string, verify::Scale> scales{{"quick", verify::Scale::Quick}, {"full", verify::Scale::Full}};
  cmd->add_option("--scale", o->scale, "quick or full")->transform(CLI::CheckedTransformer(scales));
  cmd->add_option("--seed", o->seed, "Seed for the random instances")->capture_default_str();
  cmd->add_flag("--inject-fault", o->inject_fault, "Corrupt a weight row to confirm failures are caught");
  cmd->callback([o, &status] { status = run_verify(*o); });
}

}  // namespace cmrf::cli
