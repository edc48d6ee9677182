#pragma once

// Command-line front end. Everything is reachable through run_cli so the
// commands can be driven from tests without spawning processes. Needs
// CLI11.hpp and nlohmann/json on the include path.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lgcluster/serialize.hpp"

namespace lgcluster::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kComputation = 3 };

inline constexpr const char* kPrimeEnv = "LGCLUSTER_PRIME";

enum class Format { Text, Json, Dot };

struct CliConfig {
  std::optional<Surface> surface;
  std::optional<std::vector<std::size_t>> sequence;  // 0-based; nullopt when -q was not given
  bool modp = false;
  std::size_t trials = 20;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t rng_seed = 0;
  Format format = Format::Text;
  RepetitionPolicy policy = RepetitionPolicy::Reject;
  std::string cache_dir;
  std::size_t jobs = 1;
  bool timing = true;

  CheckMode mode() const {
    if (!modp) return ExactMode{};
    return ModpMode{.prime = prime, .trials = trials, .rng_seed = rng_seed};
  }
};

class UsageError : public Error {
 public:
  using Error::Error;
};

// "1,3,2" -> {0,2,1}. Empty text is the empty sequence.
inline std::vector<std::size_t> parse_sequence(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) throw UsageError("empty entry in sequence \"" + text + "\"");
    if (item.find_first_not_of("0123456789") != std::string::npos) {
      throw UsageError("sequence entries must be positive integers, got \"" + item + "\"");
    }
    const unsigned long v = std::stoul(item);
    if (v == 0) throw UsageError("sequence indices are 1-based, got 0");
    out.push_back(v - 1);
  }
  return out;
}

inline std::string sequence_text(const std::vector<std::size_t>& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? "," : "") + std::to_string(seq[i] + 1);
  return s;
}

// Runs fn(0..n-1) on at most `jobs` threads. The first exception thrown by any
// task is rethrown after all workers finish.
inline void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// ---------------------------------------------------------------- rendering

inline std::string directions_text(const LGSeed& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + s.direction(i).to_string();
  return out;
}

inline std::string quiver_text(const Quiver& q) {
  std::string out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (q.arrows(i, j) == 0) continue;
      if (!out.empty()) out += ", ";
      out += std::to_string(i + 1) + "->" + std::to_string(j + 1);
      if (q.arrows(i, j) != 1) out += " x" + std::to_string(q.arrows(i, j));
    }
  }
  return out.empty() ? "(no arrows)" : out;
}

inline std::string seed_text(const SeedRecord& r) {
  const BMatrix B = b_from_seed(r.seed);
  std::string out;
  out += "surface: " + std::string(surface_name(r.surface)) + "\n";
  out += "sequence: " + (r.sequence.empty() ? std::string("(initial)") : sequence_text(r.sequence)) + "\n";
  out += "potential: " + r.seed.potential().to_string() + "\n";
  out += "directions: " + directions_text(r.seed) + "\n";
  out += "B: " + B.to_string() + "\n";
  out += "quiver: " + quiver_text(quiver_from_b(B)) + "\n";
  return out;
}

inline std::string dot_name(const SeedRecord& r) {
  std::string name(surface_name(r.surface));
  for (auto i : r.sequence) name += "_" + std::to_string(i + 1);
  return name;
}

inline std::string mode_text(const CheckMode& mode) {
  if (const auto* m = std::get_if<ModpMode>(&mode)) {
    return "modp(p=" + std::to_string(m->prime) + ",trials=" + std::to_string(m->trials) +
           ",rng_seed=" + std::to_string(m->rng_seed) + ")";
  }
  return "exact";
}

inline std::string report_text(const VerificationReport& r, bool timing) {
  std::string line = r.passed ? "PASS " : "FAIL ";
  line += r.check;
  if (r.surface) line += " " + std::string(surface_name(*r.surface));
  line += " [" + sequence_text(r.sequence) + "]";
  if (r.direction) line += " dir=" + std::to_string(*r.direction + 1);
  line += " " + mode_text(r.mode);
  if (timing) line += " " + std::to_string(r.millis) + "ms";
  if (!r.passed) line += "\n  witness: " + r.witness;
  return line;
}

// ------------------------------------------------------------------- caching

inline std::filesystem::path cache_path(const std::string& dir, Surface x, const std::vector<std::size_t>& seq) {
  std::string name(surface_name(x));
  name += seq.empty() ? "_initial" : "_" + sequence_text(seq);
  std::replace(name.begin(), name.end(), ',', '-');
  return std::filesystem::path(dir) / (name + ".json");
}

// Cache entries are seed JSON. A missing, unreadable or mismatching entry is
// ignored and recomputed.
inline std::optional<SeedRecord> cache_load(const std::string& dir, Surface x, const std::vector<std::size_t>& seq) {
  if (dir.empty()) return std::nullopt;
  std::ifstream in(cache_path(dir, x, seq));
  if (!in) return std::nullopt;
  try {
    SeedRecord r = seed_from_json(Json::parse(in));
    if (r.surface != x || r.sequence != seq) return std::nullopt;
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline void cache_store(const std::string& dir, const SeedRecord& r) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  const auto path = cache_path(dir, r.surface, r.sequence);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << seed_to_json(r.surface, r.sequence, r.seed).dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

inline SeedRecord mutated_seed(const CliConfig& cfg) {
  const Surface x = *cfg.surface;
  const auto seq = cfg.sequence.value_or(std::vector<std::size_t>{});
  if (auto hit = cache_load(cfg.cache_dir, x, seq)) return *hit;
  SeedRecord r{x, seq, iterate(initial_seed(x), seq, cfg.policy)};
  cache_store(cfg.cache_dir, r);
  return r;
}

// ------------------------------------------------------------------ commands

inline int cmd_seeds_list(const CliConfig& cfg, std::ostream& out) {
  if (cfg.format == Format::Json) {
    Json all = Json::array();
    for (Surface x : kAllSurfaces) all.push_back(seed_to_json(x, {}, initial_seed(x)));
    out << all.dump(2) << "\n";
    return kOk;
  }
  bool first = true;
  for (Surface x : kAllSurfaces) {
    const SeedRecord r{x, {}, initial_seed(x)};
    if (cfg.format == Format::Dot) {
      out << to_dot(quiver_from_b(b_from_seed(r.seed)), dot_name(r));
    } else {
      if (!first) out << "\n";
      out << seed_text(r);
    }
    first = false;
  }
  return kOk;
}

inline int cmd_mutate(const CliConfig& cfg, std::ostream& out) {
  if (!cfg.surface) throw UsageError("mutate needs --surface");
  const SeedRecord r = mutated_seed(cfg);
  switch (cfg.format) {
    case Format::Json: out << seed_to_json(r.surface, r.sequence, r.seed).dump() << "\n"; break;
    case Format::Dot: out << to_dot(quiver_from_b(b_from_seed(r.seed)), dot_name(r)); break;
    case Format::Text: out << seed_text(r); break;
  }
  return kOk;
}

// Test vectors for the compatibility check: the box [-radius, radius]^2.
inline std::vector<Vec2> box_vectors(Exponent radius) {
  std::vector<Vec2> vs;
  for (Exponent a = -radius; a <= radius; ++a) {
    for (Exponent b = -radius; b <= radius; ++b) vs.push_back({a, b});
  }
  return vs;
}

struct VerifyPlan {
  std::string which;  // initial | compat | bmat | main | all
  Exponent box = 2;
};

inline std::vector<VerificationReport> run_verify(const CliConfig& cfg, const VerifyPlan& plan) {
  std::vector<Surface> surfaces;
  if (cfg.surface) surfaces.push_back(*cfg.surface);
  else surfaces.assign(kAllSurfaces.begin(), kAllSurfaces.end());
  const CheckMode mode = cfg.mode();
  auto wants = [&](std::string_view w) { return plan.which == w || plan.which == "all"; };

  // Tasks are collected first and then run on the pool; each task writes its
  // own slot so the output order never depends on scheduling.
  std::vector<std::function<std::vector<VerificationReport>()>> tasks;
  for (Surface x : surfaces) {
    if (cfg.sequence) validate_sequence(initial_seed(x).size(), *cfg.sequence, cfg.policy);
    if (wants("initial")) tasks.emplace_back([x] { return std::vector{check_initial_identity(x)}; });
    if (wants("bmat") || wants("compat")) {
      tasks.emplace_back([=, &cfg, &plan] {
        CliConfig local = cfg;
        local.surface = x;
        const SeedRecord r = mutated_seed(local);
        std::vector<VerificationReport> rs;
        for (std::size_t i = 0; i < r.seed.size(); ++i) {
          if (wants("bmat")) rs.push_back(check_b_compat(r.seed, i));
          if (wants("compat")) rs.push_back(check_phi_compat(r.seed, i, box_vectors(plan.box), mode));
        }
        for (auto& rep : rs) {
          rep.surface = x;
          rep.sequence = r.sequence;
        }
        return rs;
      });
    }
    if (wants("main")) {
      if (cfg.sequence) {
        tasks.emplace_back([=, &cfg] { return std::vector{verify_main(x, *cfg.sequence, mode, cfg.policy)}; });
      } else {
        // Every repetition-free sequence, one task per first index.
        const std::size_t n = initial_seed(x).size();
        tasks.emplace_back([=] { return std::vector{verify_main(x, {}, mode)}; });
        for (std::size_t i = 0; i < n; ++i) {
          tasks.emplace_back([=] { return verify_main_subtree(x, {i}, n, mode); });
        }
      }
    }
  }
  std::vector<std::vector<VerificationReport>> results(tasks.size());
  parallel_for(tasks.size(), cfg.jobs, [&](std::size_t t) { results[t] = tasks[t](); });

  std::vector<VerificationReport> all;
  for (auto& rs : results) all.insert(all.end(), rs.begin(), rs.end());
  auto rank = [](const std::string& check) {
    static const std::vector<std::string> order{"initial", "bmat", "compat", "main"};
    return std::find(order.begin(), order.end(), check) - order.begin();
  };
  std::stable_sort(all.begin(), all.end(), [&](const VerificationReport& a, const VerificationReport& b) {
    if (a.surface != b.surface) return a.surface < b.surface;
    if (rank(a.check) != rank(b.check)) return rank(a.check) < rank(b.check);
    if (a.sequence != b.sequence) return a.sequence < b.sequence;
    return a.direction < b.direction;
  });
  return all;
}

inline int cmd_verify(const CliConfig& cfg, const VerifyPlan& plan, std::ostream& out) {
  const auto reports = run_verify(cfg, plan);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  if (cfg.format == Format::Json) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r, cfg.timing));
    out << arr.dump(2) << "\n";
  } else {
    std::size_t failed = 0;
    for (const auto& r : reports) {
      out << report_text(r, cfg.timing) << "\n";
      failed += r.passed ? 0 : 1;
    }
    out << (ok ? "all " + std::to_string(reports.size()) + " checks passed"
               : std::to_string(failed) + " of " + std::to_string(reports.size()) + " checks failed")
        << "\n";
  }
  return ok ? kOk : kVerifyFailed;
}

inline int cmd_markov(const CliConfig& cfg, std::size_t depth, std::ostream& out) {
  const MarkovSearch found = markov_bfs(standard_bmatrix(Surface::CP2), depth);
  if (cfg.format == Format::Json) {
    Json arr = Json::array();
    for (const auto& t : found.triples) arr.push_back({t.a, t.b, t.c});
    out << Json{{"depth", depth}, {"triples", arr}, {"rejected", found.rejected.size()}}.dump() << "\n";
  } else {
    for (const auto& t : found.triples) out << t.to_string() << "\n";
    if (!found.rejected.empty()) out << found.rejected.size() << " matrices without a Markov triple\n";
  }
  return found.rejected.empty() ? kOk : kVerifyFailed;
}

// export: seed (json/text), bmatrix (json/text), quiver (dot/json/text),
// rep (F-polynomial and g-vector of the initial representation; json/text).
inline int cmd_export(const CliConfig& cfg, const std::string& what, const std::string& path, std::ostream& out) {
  if (!cfg.surface) throw UsageError("export needs --surface");
  std::ostringstream body;
  if (what == "rep") {
    if (cfg.sequence && !cfg.sequence->empty()) throw UsageError("rep export only exists for the initial seed");
    const VirtualCharData d = virtual_char_data(*cfg.surface);
    if (cfg.format == Format::Json) {
      body << rep_data_to_json(d).dump() << "\n";
    } else {
      body << "F: " << d.f_poly.to_string("u") << "\ng:";
      for (auto v : d.g) body << " " << v;
      body << "\n";
    }
  } else {
    const SeedRecord r = mutated_seed(cfg);
    const BMatrix B = b_from_seed(r.seed);
    if (what == "seed") {
      if (cfg.format == Format::Dot) throw UsageError("seed export supports text and json");
      body << (cfg.format == Format::Json ? seed_to_json(r.surface, r.sequence, r.seed).dump() + "\n" : seed_text(r));
    } else if (what == "bmatrix") {
      if (cfg.format == Format::Dot) throw UsageError("bmatrix export supports text and json");
      body << (cfg.format == Format::Json ? to_json(B).dump() : B.to_string()) << "\n";
    } else if (what == "quiver") {
      const Quiver q = quiver_from_b(B);
      if (cfg.format == Format::Text) body << quiver_text(q) << "\n";
      else if (cfg.format == Format::Json) body << to_json(q).dump() << "\n";
      else body << to_dot(q, dot_name(r));
    } else {
      throw UsageError("unknown export kind \"" + what + "\"");
    }
  }
  if (path.empty() || path == "-") {
    out << body.str();
  } else {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << body.str();
  }
  return kOk;
}

// --------------------------------------------------------------------- entry

inline std::uint64_t prime_from_env() {
  const char* text = std::getenv(kPrimeEnv);
  if (text == nullptr || *text == '\0') return kDefaultPrime;
  const std::string s(text);
  if (s.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(std::string(kPrimeEnv) + " is not a decimal integer: " + s);
  }
  return std::stoull(s);
}

// args excludes the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mutation of LG seeds and cluster characters of del Pezzo quivers", "lgcluster"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string surface_text, seq_text, mode_text_arg = "exact", format_text = "text";
  bool json_flag = false, allow_repeats = false, no_timing = false;
  std::optional<std::uint64_t> prime_flag;
  std::size_t depth = 3;
  VerifyPlan plan;
  std::string export_what = "seed", export_path;

  std::vector<CLI::Option*> seq_options;
  auto add_common = [&](CLI::App* sub, bool seq_opts, bool mode_opts) {
    sub->add_option("-s,--surface", surface_text, "CP2, CP1xCP1, Bl1CP2, Bl2CP2 or Bl3CP2");
    if (seq_opts) {
      seq_options.push_back(sub->add_option("-q,--sequence", seq_text, "comma-separated 1-based mutation indices"));
      sub->add_flag("--allow-repeats", allow_repeats, "permit an index to occur more than once");
      sub->add_option("--cache-dir", cfg.cache_dir, "directory for cached seeds");
    }
    if (mode_opts) {
      sub->add_option("--mode", mode_text_arg, "exact or modp")->check(CLI::IsMember({"exact", "modp"}));
      sub->add_option("--trials", cfg.trials, "random points per modp check")->check(CLI::PositiveNumber);
      sub->add_option("--prime", prime_flag, std::string("modp prime (default 2^61-1 or $") + kPrimeEnv + ")");
      sub->add_option("--rng-seed", cfg.rng_seed, "seed for modp sampling");
      sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
      sub->add_flag("--no-timing", no_timing, "omit timings (reproducible output)");
    }
    sub->add_option("--format", format_text, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_flag("--json", json_flag, "same as --format json");
  };

  auto* seeds = app.add_subcommand("seeds", "initial seeds");
  auto* seeds_list = seeds->add_subcommand("list", "print the five initial seeds");
  seeds->require_subcommand(1);
  add_common(seeds_list, false, false);

  auto* mutate = app.add_subcommand("mutate", "iterate seed mutations");
  add_common(mutate, true, false);

  auto* verify = app.add_subcommand("verify", "run verification checks");
  verify->add_option("which", plan.which, "initial, compat, bmat, main or all")
      ->required()
      ->check(CLI::IsMember({"initial", "compat", "bmat", "main", "all"}));
  verify->add_option("--box", plan.box, "compat test vectors range over [-box,box]^2")->check(CLI::NonNegativeNumber);
  add_common(verify, true, true);

  auto* markov = app.add_subcommand("markov", "Markov triples from CP2 B-matrix mutations");
  markov->add_option("--depth", depth, "BFS depth")->check(CLI::NonNegativeNumber);
  markov->add_option("--format", format_text, "text or json")->check(CLI::IsMember({"text", "json"}));
  markov->add_flag("--json", json_flag, "same as --format json");

  auto* exporter = app.add_subcommand("export", "write a seed, B-matrix, quiver or representation");
  exporter->add_option("what", export_what, "seed, bmatrix, quiver or rep")
      ->check(CLI::IsMember({"seed", "bmatrix", "quiver", "rep"}));
  exporter->add_option("-o,--output", export_path, "output file (default stdout)");
  add_common(exporter, true, false);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (!surface_text.empty()) {
      cfg.surface = parse_surface(surface_text);
      if (!cfg.surface) throw UsageError("unknown surface \"" + surface_text + "\"");
    }
    if (std::any_of(seq_options.begin(), seq_options.end(), [](const CLI::Option* o) { return o->count() > 0; })) {
      cfg.sequence = parse_sequence(seq_text);
    }
    if (cfg.sequence && cfg.surface) validate_sequence(initial_seed(*cfg.surface).size(), *cfg.sequence,
                                                       allow_repeats ? RepetitionPolicy::Allow
                                                                     : RepetitionPolicy::Reject);
    cfg.policy = allow_repeats ? RepetitionPolicy::Allow : RepetitionPolicy::Reject;
    cfg.format = json_flag ? Format::Json : format_text == "json" ? Format::Json
                                        : format_text == "dot"  ? Format::Dot
                                                                : Format::Text;
    cfg.modp = mode_text_arg == "modp";
    cfg.prime = prime_flag ? *prime_flag : prime_from_env();
    if (cfg.prime <= 2 || cfg.prime >= (std::uint64_t{1} << 63) || !is_prime_u64(cfg.prime)) {
      throw UsageError("--prime must be an odd prime below 2^63, got " + std::to_string(cfg.prime));
    }
    cfg.timing = !no_timing;

    if (seeds_list->parsed()) return cmd_seeds_list(cfg, out);
    if (mutate->parsed()) return cmd_mutate(cfg, out);
    if (verify->parsed()) {
      if (cfg.format == Format::Dot) throw UsageError("verify supports text and json output");
      return cmd_verify(cfg, plan, out);
    }
    if (markov->parsed()) return cmd_markov(cfg, depth, out);
    if (exporter->parsed()) return cmd_export(cfg, export_what, export_path, out);
    throw UsageError("no command given");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const RepetitionRejected& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IndexOutOfRange& e) {
    err << "error: mutation index " << e.index() + 1 << " exceeds the number of directions\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "computation error: " << e.what() << "\n";
    return kComputation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kComputation;
  }
}

inline int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(std::move(args), std::cout, std::cerr);
}

}  // namespace lgcluster::cli
