// Command-line front end: loads a spec document, runs the requested analysis,
// and emits one report on stdout (or --out). Exit codes: 0 every task passed,
// 2 some task certified a failure or counterexample, 3 some horizon ran out
// without a certificate, 64 the invocation or document was malformed.

#include <qrok/driver.hpp>
#include <qrok/version.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Exact certificates for permutation actions on tensor stages"};
  app.set_version_flag("--version", std::string("qrok ") + qrok::kToolVersion);

  std::string command;
  app.add_option("command", command,
                 "analyze | induce | tower | witness | bratteli | kgroups | report")
      ->required();
  std::string spec_path;
  app.add_option("--spec", spec_path, "spec file path, or builtin:<name>")->required();

  long long horizon = 0, stage_cap = 0, word_len = 0;
  std::string epsilon_text, out_path, format = "json";
  bool timing = false;
  auto* horizon_opt =
      app.add_option("--horizon", horizon, "override the level horizon of every task")
          ->check(CLI::Range(1LL, 100000LL));
  auto* epsilon_opt =
      app.add_option("--epsilon", epsilon_text, "override epsilon, a nonnegative rational p/q");
  auto* cap_opt = app.add_option("--stage-cap", stage_cap,
                                 "override the materialized-dimension ceiling")
                      ->check(CLI::Range(2LL, 1LL << 20));
  auto* wl_opt = app.add_option("--word-len", word_len, "override the word-length bound")
                     ->check(CLI::Range(1LL, 10LL));
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", format, "json (default) or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", timing, "include wall-clock seconds per task (breaks determinism)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  try {
    qrok::DriverOptions opts;
    opts.timing = timing;
    if (*horizon_opt) opts.horizon = horizon;
    if (*cap_opt) opts.stage_cap = stage_cap;
    if (*wl_opt) opts.word_len = word_len;
    if (*epsilon_opt) {
      try {
        opts.epsilon = qrok::rat_parse(epsilon_text);
      } catch (const qrok::InvalidInput& e) {
        throw qrok::SchemaError(std::string("--epsilon: ") + e.what());
      }
    }

    qrok::SpecDocument spec = qrok::load_spec(spec_path);
    qrok::ReportDocument rep = qrok::run_driver(command, spec, opts);
    std::string rendered = format == "text" ? rep.to_text() : rep.to_json();

    if (out_path.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "qrok: cannot open " << out_path << " for writing\n";
        return 64;
      }
      out << rendered;
    }
    return rep.exit_code();
  } catch (const qrok::SchemaError& e) {
    std::cerr << "qrok: " << e.what() << "\n";
    return 64;
  } catch (const qrok::InvalidInput& e) {
    std::cerr << "qrok: " << e.what() << "\n";
    return 64;
  } catch (const qrok::StageMismatch& e) {
    std::cerr << "qrok: " << e.what() << "\n";
    return 64;
  } catch (const qrok::CapExceeded& e) {
    std::cerr << "qrok: " << e.what() << "\n";
    return 64;
  } catch (const qrok::RelationViolation& e) {
    std::cerr << "qrok: " << e.what() << "\n";
    return 64;
  } catch (const qrok::Inconsistency& e) {
    std::cerr << "qrok: internal consistency check failed: " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "qrok: " << e.what() << "\n";
    return 70;
  }
}
