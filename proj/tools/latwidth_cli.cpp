// latwidth: command-line front end.
//
// Exit codes: 0 success, 1 usage or malformed input, 2 budget refusal,
// 3 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "latwidth/latwidth.hpp"

namespace {

using namespace latwidth;
using nlohmann::json;

enum ExitCode { ok = 0, usage = 1, budget = 2, verification = 3 };

std::uint64_t env_budget(const char *name, std::uint64_t fallback) {
  if (const char *v = std::getenv(name)) return std::stoull(v);
  return fallback;
}

IntVector parse_vector(const std::string &s) {
  IntVector out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t pos = 0;
    out.push_back(std::stoll(item, &pos));
    if (pos != item.size()) throw std::invalid_argument("malformed vector entry '" + item + "'");
  }
  if (out.empty()) throw std::invalid_argument("empty vector");
  return out;
}

json read_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

void write_output(const json &j, const std::string &path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("cannot write " + path);
}

using AnyLattice = std::variant<CyclicLattice, GeneralLattice>;

json lattice_to_json(const AnyLattice &m) {
  if (auto *c = std::get_if<CyclicLattice>(&m)) return to_json(*c);
  const auto &g = std::get<GeneralLattice>(m);
  json basis = json::array();
  for (std::size_t i = 0; i < g.basis().rows(); ++i) {
    IntVector row(g.basis().cols());
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = g.basis()(i, j);
    basis.push_back(row);
  }
  return {{"dim", g.dim()}, {"denominator", std::to_string(g.denominator())}, {"basis", basis}};
}

AnyLattice lattice_from_json(const json &j) {
  if (j.contains("modulus")) return cyclic_lattice_from_json(j);
  auto rows = j.at("basis").get<std::vector<IntVector>>();
  IntMatrix b(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_same_dim(rows[i].size(), rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) b(i, k) = rows[i][k];
  }
  const auto &den = j.at("denominator");
  std::int64_t v = den.is_string() ? std::stoll(den.get<std::string>()) : den.get<std::int64_t>();
  return GeneralLattice(v, std::move(b));
}

AnyLattice to_any(const GeneralLattice &g) {
  if (auto c = to_cyclic(g, env_budget("LATWIDTH_ENUM_BUDGET", default_enumeration_budget))) return *c;
  return g;
}

// Input selection shared by check / width / convert.
struct LatticeInput {
  bool lattice_flag = false;
  std::int64_t p = 0;
  std::string y;
  std::string lattice_file;
  std::string simplex_file;

  void add_to(CLI::App *cmd) {
    cmd->add_flag("--lattice", lattice_flag, "Input is a cyclic lattice given by -p and -y");
    cmd->add_option("-p,--modulus", p, "Modulus of the cyclic lattice");
    cmd->add_option("-y,--generator", y, "Generator, comma-separated integers");
    cmd->add_option("--lattice-file", lattice_file, "Lattice JSON file");
    cmd->add_option("--simplex", simplex_file, "Simplex JSON file");
  }

  bool has_simplex() const { return !simplex_file.empty(); }

  AnyLattice lattice() const {
    if (!lattice_file.empty()) return lattice_from_json(read_json_file(lattice_file));
    if (p == 0 || y.empty()) throw CLI::ValidationError("input", "give -p and -y, --lattice-file, or --simplex");
    return CyclicLattice(p, parse_vector(y));
  }

  Simplex simplex() const { return simplex_from_json(read_json_file(simplex_file)); }
};

int run_check(const LatticeInput &in) {
  const auto enum_budget = env_budget("LATWIDTH_ENUM_BUDGET", default_enumeration_budget);
  json out;
  if (in.has_simplex()) {
    Simplex s = in.simplex();
    auto [m, t] = lattice_from_simplex(s);
    auto cert = is_free_general(m, enum_budget);
    out = to_json(cert);
    out["index"] = m.index().str();
  } else {
    auto lattice = in.lattice();
    FreenessCertificate cert = std::visit(
        [&](const auto &m) -> FreenessCertificate {
          if constexpr (std::is_same_v<std::decay_t<decltype(m)>, CyclicLattice>)
            return is_free_cyclic(m);
          else
            return is_free_general(m, enum_budget);
        },
        lattice);
    out = to_json(cert);
  }
  std::cout << out.dump(2) << '\n';
  return ok;
}

int run_width(const LatticeInput &in, unsigned threads, std::int64_t brute) {
  WidthOptions opts{env_budget("LATWIDTH_LEVEL_BUDGET", WidthOptions{}.level_budget), threads};
  json out;
  if (in.has_simplex()) {
    Simplex s = in.simplex();
    auto cert = width_of_simplex(s, opts);
    out = to_json(cert);
    if (brute > 0) {
      auto b = width_brute_force(s, brute);
      out["brute_force"] = {{"bound", std::to_string(brute)}, {"width", std::to_string(b.width)}, {"u", b.covector}};
    }
  } else {
    auto lattice = in.lattice();
    out = std::visit([&](const auto &m) { return to_json(width_of_lattice(m, opts)); }, lattice);
  }
  std::cout << out.dump(2) << '\n';
  return ok;
}

int run_convert(const LatticeInput &in, const std::string &output) {
  if (in.has_simplex()) {
    auto [m, t] = lattice_from_simplex(in.simplex());
    write_output(lattice_to_json(to_any(m)), output);
  } else {
    auto lattice = in.lattice();
    auto [s, t] = std::visit([](const auto &m) { return simplex_from_lattice(m); }, lattice);
    write_output(to_json(s), output);
  }
  return ok;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Lattice width and lattice-freeness of integral simplices"};
  app.require_subcommand(1);
  unsigned threads = default_thread_count();
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

  LatticeInput check_in, width_in, convert_in;
  auto *check = app.add_subcommand("check", "Test lattice-freeness");
  check_in.add_to(check);

  auto *width = app.add_subcommand("width", "Compute the lattice width with a certificate");
  width_in.add_to(width);
  std::int64_t brute = 0;
  width->add_option("--brute", brute, "Also run the box brute force with this bound (simplex input)");

  auto *convert = app.add_subcommand("convert", "Convert between simplex and lattice files");
  convert_in.add_to(convert);
  std::string convert_out;
  convert->add_option("-o,--output", convert_out, "Output file (default stdout)");

  auto *census = app.add_subcommand("census", "Exhaustive census over the lines of (Z/pZ)^d");
  int census_d = 0;
  std::int64_t census_p = 0, census_k = 1;
  std::string checkpoint;
  census->add_option("-d", census_d, "Dimension")->required();
  census->add_option("-p", census_p, "Prime")->required();
  census->add_option("-k", census_k, "Width threshold")->default_val(1);
  census->add_option("--checkpoint", checkpoint, "Checkpoint file for resumable runs");

  auto *bounds = app.add_subcommand("bounds", "Evaluate the existence condition exactly");
  int bounds_d = 0;
  std::string bounds_p, beta_text;
  std::int64_t bounds_k = 0;
  bounds->add_option("-d", bounds_d, "Dimension")->required();
  bounds->add_option("-p", bounds_p, "Prime (decimal)");
  bounds->add_option("-k", bounds_k, "Width");
  bounds->add_option("--beta", beta_text, "Target ratio, e.g. 3/10; plans p and k");

  auto *search = app.add_subcommand("search", "Search for wide lattice-free cyclic lattices");
  int search_d = 0;
  std::int64_t search_p = 0, search_p_max = 0, k_min = 2;
  std::string catalog;
  bool random_mode = false, stop_at_first = false;
  std::uint64_t sample_budget = 0, seed = 0;
  search->add_option("-d", search_d, "Dimension")->required();
  search->add_option("-p", search_p, "Prime");
  search->add_option("--p-max", search_p_max, "Scan every prime up to this value");
  search->add_option("--k-min", k_min, "Minimum width to report")->default_val(2);
  search->add_option("--catalog", catalog, "JSONL catalog to append records to");
  search->add_flag("--random", random_mode, "Sample lines instead of scanning all");
  search->add_option("--budget", sample_budget, "Number of samples in random mode");
  auto *seed_opt = search->add_option("--seed", seed, "Seed for random mode");
  search->add_flag("--stop-at-first", stop_at_first, "With --p-max: stop at the first prime with a hit");

  auto *verify = app.add_subcommand("catalog-verify", "Recompute every certificate in a catalog");
  std::string verify_path;
  verify->add_option("path", verify_path, "Catalog file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e) == 0 ? ok : usage;
  }

  try {
    const auto line_budget = env_budget("LATWIDTH_LINE_BUDGET", default_line_budget);
    if (check->parsed()) return run_check(check_in);
    if (width->parsed()) return run_width(width_in, threads, brute);
    if (convert->parsed()) return run_convert(convert_in, convert_out);

    if (census->parsed()) {
      CensusOptions opts{threads, line_budget, std::nullopt};
      if (!checkpoint.empty()) opts.checkpoint = checkpoint;
      auto r = existence_census(census_d, census_p, census_k, opts);
      json out = to_json(r);
      out["f_bound_holds"] = r.f_bound_holds();
      out["g_bound_holds"] = r.g_bound_holds();
      std::cout << out.dump(2) << '\n';
      return ok;
    }

    if (bounds->parsed()) {
      if (!beta_text.empty()) {
        auto slash = beta_text.find('/');
        Rational beta = slash == std::string::npos
                            ? Rational(BigInt(beta_text))
                            : make_rational(BigInt(beta_text.substr(0, slash)), BigInt(beta_text.substr(slash + 1)));
        std::cout << to_json(plan(bounds_d, beta)).dump(2) << '\n';
        return ok;
      }
      if (bounds_p.empty() || bounds_k == 0) throw CLI::ValidationError("bounds", "give -p and -k, or --beta");
      std::cout << to_json(eval_condition(bounds_d, BigInt(bounds_p), bounds_k)).dump(2) << '\n';
      return ok;
    }

    if (search->parsed()) {
      std::vector<SearchRecord> records;
      json scanned = json::array();
      if (random_mode) {
        if (seed_opt->count() == 0) throw CLI::ValidationError("--seed", "random mode needs an explicit --seed");
        if (search_p == 0) throw CLI::ValidationError("-p", "random mode needs -p");
        records = search_random(search_d, search_p, sample_budget, seed, k_min);
        scanned.push_back(std::to_string(search_p));
      } else {
        std::int64_t lo = search_p_max ? 2 : search_p, hi = search_p_max ? search_p_max : search_p;
        if (lo == 0) throw CLI::ValidationError("-p", "give -p or --p-max");
        for (std::int64_t p = lo; p <= hi; ++p) {
          if (!is_prime(p)) continue;
          auto found = search_exhaustive(search_d, p, k_min, {threads, line_budget});
          scanned.push_back(std::to_string(p));
          std::move(found.begin(), found.end(), std::back_inserter(records));
          if (stop_at_first && !records.empty()) break;
        }
      }
      json found = json::array();
      for (auto &r : records) {
        if (!catalog.empty()) catalog_append(catalog, r);
        found.push_back(to_json(r));
      }
      std::cout << json{{"primes_scanned", scanned}, {"records", found}}.dump(2) << '\n';
      return ok;
    }

    if (verify->parsed()) {
      auto report = catalog_verify(verify_path);
      json issues = json::array();
      for (const auto &i : report.issues) issues.push_back({{"line", i.line}, {"message", i.message}});
      std::cout << json{{"records", report.records}, {"verified", report.verified}, {"ok", report.ok()},
                        {"issues", issues}}
                       .dump(2)
                << '\n';
      return report.ok() ? ok : verification;
    }
  } catch (const BudgetExceeded &e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return budget;
  } catch (const VerificationFailure &e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return verification;
  } catch (const CLI::ValidationError &e) {
    std::cerr << "usage: " << e.what() << '\n';
    return usage;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}
