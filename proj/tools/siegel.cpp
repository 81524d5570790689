#include "siegel/errors.hpp"
#include "siegel/tasks.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace siegel;
using namespace siegel::io;

namespace {

enum Exit { kOk = 0, kFailed = 1, kMalformed = 2, kBudget = 3, kDefect = 4 };

Json read_json(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open " + path);
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

void write_json(const Json& j, const std::string& path) {
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const MalformedInput& e) {
    std::cerr << "siegel: malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "siegel: invalid input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::domain_error& e) {
    std::cerr << "siegel: invalid input: " << e.what() << "\n";
    return kMalformed;
  } catch (const Json::exception& e) {
    std::cerr << "siegel: malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const BudgetExceeded& e) {
    std::cerr << "siegel: " << e.what() << "\n";
    return kBudget;
  } catch (const InstanceTooLarge& e) {
    std::cerr << "siegel: " << e.what() << "\n";
    return kBudget;
  } catch (const TheoremViolation& e) {
    std::cerr << "siegel: " << e.what() << "\n";
    return kDefect;
  } catch (const std::exception& e) {
    std::cerr << "siegel: error: " << e.what() << "\n";
    return kFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heights, lattice point counts and small-height avoiding points over Q and Q(i)"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--precision-bits", cfg.precision_bits, "fractional bits of reported bounds")
      ->envname("SIEGEL_PRECISION_BITS")
      ->check(CLI::Range(8u, 4096u));
  app.add_option("--budget", cfg.budget, "enumeration node budget")->envname("SIEGEL_BUDGET");
  app.add_option("--threads", cfg.threads, "worker threads")->envname("SIEGEL_THREADS")->check(CLI::Range(1u, 256u));
  app.add_option("--points-cap", cfg.points_cap, "longest point list written to a report")
      ->envname("SIEGEL_POINTS_CAP");
  app.add_option("--seed", cfg.seed, "generator seed")->envname("SIEGEL_SEED");

  std::string input = "-", output;
  int code = kOk;

  for (const auto& name : task_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " task on a problem file");
    sub->add_option("input", input, "problem file (- for stdin)");
    sub->add_option("-o,--output", output, "report file (default stdout)");
    sub->callback([&, name] {
      code = guarded([&] {
        ProblemFile p = parse_problem(read_json(input));
        const auto t0 = std::chrono::steady_clock::now();
        Json results = run_task(name, p, cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_json(serialize_report(make_report(p, cfg, std::move(results), secs)), output);
        return kOk;
      });
    });
  }

  CorpusSpec spec;
  std::string field = "Q", out_dir = "corpus";
  CLI::App* gen = app.add_subcommand("gen-corpus", "write seeded search instances");
  gen->add_option("--out", out_dir, "output directory");
  gen->add_option("--field", field, "Q or QI")->check(CLI::IsMember({"Q", "QI"}));
  gen->add_option("--n-min", spec.n_min);
  gen->add_option("--n-max", spec.n_max);
  gen->add_option("--w-min", spec.w_min);
  gen->add_option("--w-max", spec.w_max);
  gen->add_option("--count", spec.count);
  gen->add_option("--magnitude", spec.magnitude, "largest absolute entry");
  gen->add_option("--max-avoid", spec.max_avoid, "largest number of avoided subspaces");
  gen->callback([&] {
    code = guarded([&] {
      spec.field = field == "QI" ? FieldDescriptor::gaussian() : FieldDescriptor::rationals();
      auto corpus = gen_corpus(cfg.seed, spec);
      std::filesystem::create_directories(out_dir);
      Json files = Json::array();
      for (std::size_t k = 0; k < corpus.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "instance_%03zu.json", k);
        write_json(serialize_problem(corpus[k]), (std::filesystem::path(out_dir) / name).string());
        files.push_back({{"file", name}, {"digest", input_digest(corpus[k])}});
      }
      write_json({{"seed", cfg.seed}, {"field", field}, {"files", files}}, "-");
      return kOk;
    });
  });

  CLI::App* ver = app.add_subcommand("verify-report", "recheck a certificate at doubled precision");
  ver->add_option("input", input, "report file (- for stdin)");
  ver->callback([&] {
    code = guarded([&] {
      VerifyOutcome v = verify_report(parse_report(read_json(input)), cfg);
      write_json(v.details, "-");
      return v.ok ? kOk : kFailed;
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }
  return code;
}
