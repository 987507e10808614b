// teamlogic command line front end. Talks to the core exclusively through the
// C API in teamlogic.h.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "teamlogic/teamlogic.h"

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Arguments may be inline text or a path to a file holding it.
std::string read_arg(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { tl_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

[[noreturn]] void die(const std::string& context) {
  std::cerr << "error: " << context;
  const char* detail = tl_last_error();
  if (detail && *detail) std::cerr << ": " << detail;
  std::cerr << "\n";
  std::exit(kExitError);
}

// "k=v,k=v" from --caps or TEAMLOGIC_CAPS into the options JSON.
std::string build_opts(const std::string& caps_spec, const std::string& oracle, int bound,
                       int jobs) {
  std::ostringstream caps;
  std::string spec = caps_spec;
  if (spec.empty()) {
    const char* env = std::getenv("TEAMLOGIC_CAPS");
    if (env) spec = env;
  }
  caps << "{";
  bool first = true;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    if (!first) caps << ",";
    caps << "\"" << item.substr(0, eq) << "\":" << item.substr(eq + 1);
    first = false;
  }
  caps << "}";
  std::ostringstream out;
  out << "{\"caps\":" << caps.str();
  if (!oracle.empty()) out << ",\"oracle\":\"" << oracle << "\"";
  if (bound > 0) out << ",\"bound\":" << bound;
  if (jobs > 1) out << ",\"jobs\":" << jobs;
  out << "}";
  return out.str();
}

int cmd_check(const std::string& formula_arg, const std::string& team_path,
              const std::string& kripke_path, bool json_out) {
  tl_formula* f = nullptr;
  if (tl_formula_parse(read_arg(formula_arg).c_str(), &f) != TL_OK) die("parsing formula");
  int verdict = 0;
  if (!team_path.empty()) {
    tl_team* t = nullptr;
    if (tl_team_parse(read_file(team_path).c_str(), &t) != TL_OK) die("parsing team");
    if (tl_check_team(f, t, &verdict) != TL_OK) die("checking team");
    tl_team_free(t);
  } else if (!kripke_path.empty()) {
    tl_kripke* m = nullptr;
    if (tl_kripke_parse(read_file(kripke_path).c_str(), &m) != TL_OK) die("parsing model");
    if (tl_check_kripke(f, m, &verdict) != TL_OK) die("checking model");
    tl_kripke_free(m);
  } else {
    std::cerr << "error: check needs --team or --kripke\n";
    return kExitError;
  }
  tl_formula_free(f);
  if (json_out)
    std::cout << "{\"verdict\":" << (verdict ? "true" : "false") << "}\n";
  else
    std::cout << (verdict ? "satisfied" : "violated") << "\n";
  return verdict ? kExitTrue : kExitFalse;
}

int cmd_decide(const std::string& mode, const std::vector<std::string>& premise_args,
               const std::string& conclusion_arg, const std::string& logic,
               const std::string& oracle, int bound, int jobs, const std::string& caps,
               bool json_out) {
  std::vector<std::string> texts;
  for (const auto& p : premise_args) texts.push_back(read_arg(p));
  std::vector<const char*> prem;
  for (const auto& t : texts) prem.push_back(t.c_str());
  std::string conclusion = read_arg(conclusion_arg);
  std::string opts = build_opts(caps, oracle, bound, jobs);
  OwnedString report;
  if (tl_decide(mode.c_str(), prem.data(), prem.size(), conclusion.c_str(), logic.c_str(),
                opts.c_str(), &report.s) != TL_OK)
    die("decide");
  std::string rep = report.str();
  bool verdict = rep.find("\"verdict\":true") != std::string::npos;
  if (json_out)
    std::cout << rep << "\n";
  else
    std::cout << mode << ": " << (verdict ? "true" : "false") << "\n";
  return verdict ? kExitTrue : kExitFalse;
}

int cmd_reduce(const std::string& name, const std::string& input_arg,
               const std::string& out_dir) {
  OwnedString out;
  if (tl_reduce(name.c_str(), read_arg(input_arg).c_str(), &out.s) != TL_OK) die("reduce");
  std::string bundle = out.str();
  if (out_dir.empty()) {
    std::cout << bundle << "\n";
    return kExitTrue;
  }
  std::filesystem::create_directories(out_dir);
  // Split the bundle into sigma.txt / psi.txt / varmap.json without pulling a
  // JSON library into the CLI: re-ask the library for a pretty split.
  // The bundle is small; a light manual scan is enough.
  auto extract_array = [&](const std::string& key) {
    std::vector<std::string> items;
    auto pos = bundle.find("\"" + key + "\":[");
    if (pos == std::string::npos) return items;
    pos += key.size() + 4;
    while (pos < bundle.size() && bundle[pos] != ']') {
      if (bundle[pos] == '"') {
        std::string item;
        ++pos;
        while (pos < bundle.size() && bundle[pos] != '"') {
          if (bundle[pos] == '\\') ++pos;
          item += bundle[pos++];
        }
        ++pos;
        items.push_back(item);
      } else {
        ++pos;
      }
    }
    return items;
  };
  auto extract_string = [&](const std::string& key) {
    auto pos = bundle.find("\"" + key + "\":\"");
    if (pos == std::string::npos) return std::string();
    pos += key.size() + 4;
    std::string itemtext;
    while (pos < bundle.size() && bundle[pos] != '"') {
      if (bundle[pos] == '\\') ++pos;
      itemtext += bundle[pos++];
    }
    return itemtext;
  };
  auto extract_object = [&](const std::string& key) {
    auto pos = bundle.find("\"" + key + "\":{");
    if (pos == std::string::npos) return std::string("{}");
    pos += key.size() + 3;
    int depth = 0;
    std::string obj;
    do {
      if (bundle[pos] == '{') ++depth;
      if (bundle[pos] == '}') --depth;
      obj += bundle[pos++];
    } while (depth > 0 && pos < bundle.size());
    return obj;
  };
  std::string sigma;
  for (const auto& s : extract_array("sigma")) sigma += s + "\n";
  write_file(out_dir + "/sigma.txt", sigma);
  write_file(out_dir + "/psi.txt", extract_string("psi") + "\n");
  write_file(out_dir + "/varmap.json", extract_object("varmap") + "\n");
  std::cout << "wrote " << out_dir << "/{sigma.txt, psi.txt, varmap.json}\n";
  return kExitTrue;
}

int cmd_gen(const std::string& kind, const std::string& shape, unsigned long long seed, int n,
            int fns, int arity, const std::string& fragment, int size, int var_count,
            const std::string& out_path) {
  OwnedString out;
  if (kind == "adqbf") {
    if (tl_adqbf_generate(shape.c_str(), seed, n, fns, arity, &out.s) != TL_OK) die("gen adqbf");
  } else if (kind == "formula") {
    if (tl_formula_generate(fragment.c_str(), seed, size, var_count, &out.s) != TL_OK)
      die("gen formula");
  } else {
    std::cerr << "error: unknown generator kind " << kind << "\n";
    return kExitError;
  }
  if (out_path.empty())
    std::cout << out.str() << "\n";
  else
    write_file(out_path, out.str() + "\n");
  return kExitTrue;
}

int cmd_bench(const std::string& suite, const std::string& out_path, int cases) {
  std::ostringstream csv;
  int disagreements = 0;
  csv << "instance,verdict,millis,witness_tuples,teams,tableau_depth,disagreements\n";
  auto millis_since = [](std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };
  auto pick_counter = [](const std::string& rep, const std::string& key) -> long long {
    auto pos = rep.find("\"" + key + "\":");
    if (pos == std::string::npos) return 0;
    return std::atoll(rep.c_str() + pos + key.size() + 3);
  };
  if (suite == "oracle-agreement") {
    for (int i = 0; i < cases; ++i) {
      OwnedString p1, p2, concl;
      if (tl_formula_generate("PDL", 1000 + i * 3, 6, 3, &p1.s) != TL_OK) die("gen");
      if (tl_formula_generate("PDL", 1001 + i * 3, 6, 3, &p2.s) != TL_OK) die("gen");
      if (tl_formula_generate("PDL", 1002 + i * 3, 6, 3, &concl.s) != TL_OK) die("gen");
      std::string a = p1.str(), b = p2.str(), c = concl.str();
      const char* prem[2] = {a.c_str(), b.c_str()};
      auto t0 = std::chrono::steady_clock::now();
      OwnedString rep1, rep2;
      if (tl_decide("entail", prem, 2, c.c_str(), "", "{}", &rep1.s) != TL_OK) die("decide");
      if (tl_decide("entail", prem, 2, c.c_str(), "", "{\"oracle\":\"brute\"}", &rep2.s) != TL_OK)
        die("decide brute");
      bool v1 = rep1.str().find("\"verdict\":true") != std::string::npos;
      bool v2 = rep2.str().find("\"verdict\":true") != std::string::npos;
      if (v1 != v2) ++disagreements;
      csv << "pdl-entail-" << i << "," << (v1 ? "true" : "false") << "," << millis_since(t0)
          << "," << pick_counter(rep1.str(), "witness_tuples") << ","
          << pick_counter(rep2.str(), "teams") << ","
          << pick_counter(rep1.str(), "tableau_depth") << "," << (v1 != v2 ? 1 : 0) << "\n";
    }
  } else if (suite == "reductions") {
    for (int i = 0; i < cases; ++i) {
      OwnedString inst;
      if (tl_adqbf_generate("pi2", 500 + i, 2, 2, 1, &inst.s) != TL_OK) die("gen adqbf");
      tl_adqbf* a = nullptr;
      if (tl_adqbf_parse(inst.str().c_str(), &a) != TL_OK) die("parse adqbf");
      int truth = 0;
      auto t0 = std::chrono::steady_clock::now();
      if (tl_adqbf_eval(a, &truth) != TL_OK) die("eval adqbf");
      tl_adqbf_free(a);
      OwnedString red;
      if (tl_reduce("pi2-to-pdl", inst.str().c_str(), &red.s) != TL_OK) die("reduce");
      csv << "pi2-" << i << "," << (truth ? "true" : "false") << "," << millis_since(t0)
          << ",0,0,0,0\n";
    }
  } else {
    std::cerr << "error: unknown bench suite " << suite << "\n";
    return kExitError;
  }
  std::string text = csv.str();
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  if (disagreements) {
    std::cerr << "bench found " << disagreements << " disagreements\n";
    return kExitFalse;
  }
  return kExitTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"teamlogic: team-semantics workbench for modal and propositional "
               "dependence logics"};
  app.require_subcommand(1);

  // check
  std::string formula_arg, team_path, kripke_path;
  bool json_out = false;
  auto* check = app.add_subcommand("check", "evaluate a formula on a team or Kripke model");
  check->add_option("formula", formula_arg, "formula text or file")->required();
  check->add_option("--team", team_path, "team JSON file");
  check->add_option("--kripke", kripke_path, "Kripke model JSON file");
  check->add_flag("--json", json_out, "machine-readable output");

  // decide
  std::string mode, conclusion_arg, logic, oracle, caps;
  std::vector<std::string> premise_args;
  int bound = 0, jobs = 1;
  auto* decide = app.add_subcommand("decide", "sat / valid / entail");
  decide->add_option("mode", mode, "sat | valid | entail")->required();
  decide->add_option("-p,--premise", premise_args, "premise formulas (entail)");
  decide->add_option("-c,--conclusion", conclusion_arg, "conclusion formula");
  decide->add_option("formula", conclusion_arg, "formula (same as --conclusion)");
  decide->add_option("--logic", logic, "fragment override (auto-detected by default)");
  decide->add_option("--oracle", oracle, "'brute' forces the exhaustive oracle");
  decide->add_option("--bound", bound, "world bound for bounded searches");
  decide->add_option("--jobs", jobs, "parallelism for decider outer loops");
  decide->add_option("--caps", caps, "resource caps, e.g. max_joint_vars=4,max_worlds=4");
  decide->add_flag("--json", json_out, "machine-readable run report");

  // reduce
  std::string red_name, red_input, out_dir;
  auto* reduce = app.add_subcommand("reduce", "run a named reduction");
  reduce->add_option("name", red_name,
                     "prenex | qpdl-to-mdl | pi2-to-pdl | pi2-to-qplind | "
                     "sigma1-to-qplinc | inc-to-ind")
      ->required();
  reduce->add_option("input", red_input, "input file or inline text")->required();
  reduce->add_option("--out-dir", out_dir, "write sigma.txt, psi.txt, varmap.json here");

  // gen
  std::string gen_kind, gen_shape = "pi2", gen_fragment = "PDL", gen_out;
  unsigned long long gen_seed = 0;
  int gen_n = 2, gen_fns = 2, gen_arity = 1, gen_size = 8, gen_vars = 3;
  auto* gen = app.add_subcommand("gen", "seeded instance generators");
  gen->add_option("kind", gen_kind, "adqbf | formula")->required();
  gen->add_option("--shape", gen_shape, "sigma1 | pi2");
  gen->add_option("--seed", gen_seed, "seed");
  gen->add_option("--n", gen_n, "universal variables");
  gen->add_option("--fns", gen_fns, "function symbols");
  gen->add_option("--arity", gen_arity, "max constraint arity");
  gen->add_option("--fragment", gen_fragment, "fragment tag for formulas");
  gen->add_option("--size", gen_size, "formula node budget");
  gen->add_option("--vars", gen_vars, "variable pool size");
  gen->add_option("--out", gen_out, "output file");

  // bench
  std::string bench_suite, bench_out;
  int bench_cases = 25;
  auto* bench = app.add_subcommand("bench", "timing tables over seeded suites");
  bench->add_option("suite", bench_suite, "oracle-agreement | reductions")->required();
  bench->add_option("--out", bench_out, "CSV output file");
  bench->add_option("--cases", bench_cases, "number of instances");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(formula_arg, team_path, kripke_path, json_out);
    if (decide->parsed()) {
      if (conclusion_arg.empty()) {
        std::cerr << "error: decide needs a formula\n";
        return kExitError;
      }
      return cmd_decide(mode, premise_args, conclusion_arg, logic, oracle, bound, jobs, caps,
                        json_out);
    }
    if (reduce->parsed()) return cmd_reduce(red_name, red_input, out_dir);
    if (gen->parsed())
      return cmd_gen(gen_kind, gen_shape, gen_seed, gen_n, gen_fns, gen_arity, gen_fragment,
                     gen_size, gen_vars, gen_out);
    if (bench->parsed()) return cmd_bench(bench_suite, bench_out, bench_cases);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
