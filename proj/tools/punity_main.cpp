// Command line front end: validate and run JSON task specs.
#include <CLI11.hpp>

#include <cstdio>

#include "punity/runspec.hpp"

int main(int argc, char** argv) {
  CLI::App app{"partition-of-unity entropy toolkit"};
  app.require_subcommand(1);

  punity::cli::RunOptions options;

  CLI::App* run = app.add_subcommand("run", "execute a task spec and write artifacts");
  run->add_option("--spec", options.spec_path, "path to the JSON task spec")->required();
  run->add_option("--out", options.out_dir, "directory for result artifacts");
  run->add_option("--format", options.format, "artifact format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  run->add_flag("--serial", options.serial, "force sequential evaluation (the default)");
  run->add_option("--budget", options.budget, "evaluation budget in word evaluations")
      ->check(CLI::PositiveNumber);

  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "check a task spec without running it");
  validate->add_option("--spec", validate_path, "path to the JSON task spec")->required();

  app.add_subcommand("list-tasks", "print the supported task names");

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("list-tasks")) {
    for (const std::string& t : punity::cli::list_tasks()) std::printf("%s\n", t.c_str());
    return 0;
  }
  if (app.got_subcommand(validate)) {
    const std::vector<std::string> errors = punity::cli::validate_spec(validate_path);
    if (errors.empty()) {
      std::printf("ok\n");
      return 0;
    }
    for (const std::string& e : errors) std::fprintf(stderr, "error: %s\n", e.c_str());
    return 2;
  }
  const punity::cli::RunResult result = punity::cli::run(options);
  for (const std::string& e : result.errors) std::fprintf(stderr, "error: %s\n", e.c_str());
  for (const std::string& a : result.artifacts) std::printf("%s\n", a.c_str());
  return result.exit_code;
}
