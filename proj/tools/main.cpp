#include <exception>
#include <iostream>

#include "cmrf/error.hpp"
#include "commands.hpp"

namespace {

int status_for(cmrf::ErrorKind kind) {
  using cmrf::ErrorKind;
  switch (kind) {
    case ErrorKind::Capacity:
      return cmrf::cli::kExitCapacity;
    case ErrorKind::NumericalFailure:
      return cmrf::cli::kExitNumerical;
    case ErrorKind::InvalidInput:
    case ErrorKind::Parse:
    case ErrorKind::Io:
      break;
  }
  return cmrf::cli::kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Labeling with pairwise costs by contraction-map fixed points"};
  app.require_subcommand(1);
  int status = cmrf::cli::kExitOk;
  cmrf::cli::register_solve(app, status);
  cmrf::cli::register_bench(app, status);
  cmrf::cli::register_restore(app, status);
  cmrf::cli::register_stereo(app, status);
  cmrf::cli::register_synth(app, status);
  cmrf::cli::register_verify(app, status);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cmrf::cli::kExitOk : cmrf::cli::kExitUsage;
  } catch (const cmrf::Error& e) {
    std::cerr << "cmrf: " << cmrf::to_string(e.kind()) << ": " << e.what() << '\n';
    return status_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "cmrf: " << e.what() << '\n';
    return cmrf::cli::kExitUsage;
  }
  return status;
}
