#include <cstdint>
#include <iostream>
#include <string>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "slbracket/io.hpp"
#include "slbracket/rng.hpp"

namespace {

slb::Instance load_instance(const std::string& path) {
  if (path == "-") return slb::read_instance(std::cin);
  return slb::read_instance_file(path);
}

std::pair<slb::Mat, slb::Mat> load_pair(const std::string& path) {
  if (path == "-") return slb::read_pair(std::cin);
  return slb::read_pair_file(path);
}

nlohmann::json rows_json(const slb::Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(m.field()->format(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

void print_matrix_comment(const slb::Mat& m) {
  std::string body = m.str();
  std::cout << "# ";
  for (char c : body) {
    std::cout << c;
    if (c == '\n') std::cout << "# ";
  }
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"commutator decompositions on trace hyperplanes of matrix algebras"};
  app.require_subcommand(1);
  int rc = 0;

  // ---- decompose ----
  auto* dec = app.add_subcommand("decompose", "write A as [A1, A2] with both factors in H");
  struct {
    std::string instance;
    long budget = 100000;
    std::uint64_t seed = 0;
    bool json = false;
  } dopt;
  dec->add_option("--instance", dopt.instance, "instance file, '-' for standard input")
      ->required();
  dec->add_option("--budget", dopt.budget, "candidate witness budget");
  dec->add_option("--seed", dopt.seed, "random seed");
  dec->add_flag("--json", dopt.json, "JSON report instead of a pair file");
  dec->callback([&] {
    slb::Instance ins = load_instance(dopt.instance);
    slb::Hyperplane h(ins.b);
    slb::DecomposeOptions opt;
    opt.budget = dopt.budget;
    opt.seed = dopt.seed;
    slb::SolveOutcome out = slb::decompose(ins.a, h, opt);
    if (dopt.json) {
      nlohmann::json j;
      j["status"] = slb::solve_status_name(out.status);
      j["field"] = ins.a.field()->descriptor();
      j["n"] = ins.a.dim();
      j["seed"] = dopt.seed;
      if (out.decomposition) {
        j["strategy"] = slb::strategy_name(out.decomposition->strategy());
        j["attempts"] = out.decomposition->attempts();
        j["a1"] = rows_json(out.decomposition->first());
        j["a2"] = rows_json(out.decomposition->second());
      }
      if (out.obstruction) j["obstruction"] = rows_json(*out.obstruction);
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "# status: " << slb::solve_status_name(out.status) << "\n";
      if (out.decomposition) {
        std::cout << "# strategy: " << slb::strategy_name(out.decomposition->strategy()) << "\n";
        std::cout << "# attempts: " << out.decomposition->attempts() << "\n";
        std::cout << "# seed: " << dopt.seed << "\n";
        slb::write_pair(std::cout, out.decomposition->first(), out.decomposition->second());
      } else if (out.obstruction) {
        std::cout << "# brackets of the hyperplane span only the line through:\n";
        print_matrix_comment(*out.obstruction);
      }
    }
    if (out.status == slb::SolveStatus::not_representable)
      rc = 2;
    else if (out.status == slb::SolveStatus::exhausted)
      rc = 3;
  });

  // ---- verify ----
  auto* ver = app.add_subcommand("verify", "check a pair file against an instance");
  struct {
    std::string instance;
    std::string pair;
  } vopt;
  ver->add_option("--instance", vopt.instance, "instance file, '-' for standard input")
      ->required();
  ver->add_option("--pair", vopt.pair, "pair file with the two factors")->required();
  ver->callback([&] {
    slb::Instance ins = load_instance(vopt.instance);
    auto [a1, a2] = load_pair(vopt.pair);
    slb::VerifyResult res =
        slb::verify_decomposition(ins.a, slb::Hyperplane(ins.b), a1, a2);
    if (res.ok) {
      std::cout << "verified\n";
    } else {
      std::cout << "failed: " << res.failure << "\n";
      rc = 2;
    }
  });

  // ---- sweep ----
  auto* sw = app.add_subcommand("sweep", "decompose many seeded random instances");
  struct {
    std::string field;
    int n = 3;
    long count = 100;
    std::uint64_t seed = 0;
    long budget = 100000;
    bool force_identity = false;
    bool json = false;
  } sopt;
  sw->add_option("--field", sopt.field, "field descriptor, e.g. 'gf 5' or 'q'")->required();
  sw->add_option("--n", sopt.n, "matrix dimension")->required();
  sw->add_option("--count", sopt.count, "number of instances")->required();
  sw->add_option("--seed", sopt.seed, "root seed");
  sw->add_option("--budget", sopt.budget, "per-instance witness budget");
  sw->add_flag("--force-identity-in-h", sopt.force_identity, "draw trace-zero normals only");
  sw->add_flag("--json", sopt.json, "JSON report");
  sw->callback([&] {
    slb::SweepConfig cfg;
    cfg.field = slb::FieldSpec::parse(sopt.field);
    cfg.n = sopt.n;
    cfg.count = sopt.count;
    cfg.seed = sopt.seed;
    cfg.budget = sopt.budget;
    cfg.force_identity_in_h = sopt.force_identity;
    slb::SweepReport rep = slb::sweep(cfg);
    if (sopt.json) {
      std::cout << slb::sweep_report_to_json(rep) << "\n";
    } else {
      std::cout << "instances: " << cfg.count << "\nsuccesses: " << rep.successes << "\n";
      for (const auto& [name, cnt] : rep.strategy_histogram)
        std::cout << "  " << name << ": " << cnt << "\n";
      std::cout << "failures: " << rep.failures.size() << "\nelapsed_ms: " << rep.elapsed_ms
                << "\n";
      for (const auto& fl : rep.failures)
        std::cout << "  instance " << fl.index << ": " << slb::solve_status_name(fl.status)
                  << "\n";
    }
    bool any_nr = false;
    for (const auto& fl : rep.failures)
      if (fl.status == slb::SolveStatus::not_representable) any_nr = true;
    if (!rep.failures.empty()) rc = any_nr ? 2 : 3;
  });

  // ---- oracle ----
  auto* orc = app.add_subcommand("oracle", "brute-force reference decomposition");
  struct {
    std::string instance;
    bool exhaustive = false;
    long budget = 100000;
    std::uint64_t seed = 0;
  } oopt;
  orc->add_option("--instance", oopt.instance, "instance file, '-' for standard input")
      ->required();
  orc->add_flag("--exhaustive", oopt.exhaustive, "sweep the whole hyperplane");
  orc->add_option("--budget", oopt.budget, "samples to draw in sampled mode");
  orc->add_option("--seed", oopt.seed, "random seed for sampled mode");
  orc->callback([&] {
    slb::Instance ins = load_instance(oopt.instance);
    slb::Hyperplane h(ins.b);
    auto mode = oopt.exhaustive ? slb::OracleMode::exhaustive : slb::OracleMode::sampled;
    auto got = slb::oracle_decompose(ins.a, h, mode, oopt.budget, oopt.seed);
    if (got) {
      std::cout << "# status: decomposed\n";
      slb::write_pair(std::cout, got->first, got->second);
    } else if (oopt.exhaustive) {
      std::cout << "# status: not_representable\n";
      rc = 2;
    } else {
      std::cout << "# status: exhausted\n";
      rc = 3;
    }
  });

  // ---- analyze-n2 ----
  auto* an = app.add_subcommand("analyze-n2", "exact structure of the brackets for n = 2");
  struct {
    std::string field;
    std::string normal;
  } aopt;
  an->add_option("--field", aopt.field, "field descriptor")->required();
  an->add_option("--B", aopt.normal, "matrix file with the hyperplane normal")->required();
  an->callback([&] {
    slb::Field f = slb::FieldSpec::parse(aopt.field);
    slb::Mat b = slb::read_matrix_file(aopt.normal);
    if (!f->same_field(*b.field()))
      throw slb::error("--field disagrees with the field of the normal file");
    slb::N2Report rep = slb::analyze_n2(slb::Hyperplane(b));
    if (!rep.identity_in_hyperplane) {
      std::cout << "identity in hyperplane: no\n"
                << "brackets: all trace-zero matrices\n";
      return;
    }
    std::cout << "identity in hyperplane: yes\n"
              << "brackets: the line through the generator\n"
              << "generator:\n"
              << rep.generator->str() << "\n";
  });

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "seeded random instance on standard output");
  struct {
    std::string field;
    int n = 3;
    std::uint64_t seed = 0;
  } gopt;
  gen->add_option("--field", gopt.field, "field descriptor")->required();
  gen->add_option("--n", gopt.n, "matrix dimension")->required();
  gen->add_option("--seed", gopt.seed, "random seed")->required();
  gen->callback([&] {
    slb::Field f = slb::FieldSpec::parse(gopt.field);
    if (gopt.n < 2 || gopt.n > 16) throw slb::error("dimension out of range for gen");
    slb::Rng rng(gopt.seed);
    slb::Mat a = rng.nonzero_trace_zero_matrix(f, gopt.n);
    slb::Mat b = rng.nonzero_matrix(f, gopt.n);
    std::cout << "# seeded instance: trace-zero target, then the hyperplane normal\n";
    slb::write_instance(std::cout, a, b);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const slb::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const slb::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
