#pragma once

// Command-line front end: `run_cli` parses argv and writes to the given streams.
//
// Exit status: 0 success, 1 malformed or unreadable input, 2 invalid invocation.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "schulze/schulze.hpp"

namespace schulze::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 1;
inline constexpr int kExitBadConfig = 2;

/// Raised for well-formed command lines that still cannot run (e.g. unknown candidate).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InputKind { profile, graph, matrices };

struct Input {
  InputKind kind;
  std::optional<PreferenceProfile> profile;
  std::optional<ComparisonGraph> graph;
  std::vector<IntMatrix> matrices;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline InputKind sniff(std::string_view text) {
  const auto lines = detail::content_lines(text);
  if (!lines.empty()) {
    const auto first = lines.front().second;
    if (first.starts_with("wmg")) return InputKind::graph;
    if (first.starts_with("mat")) return InputKind::matrices;
  }
  return InputKind::profile;
}

inline Input load(const std::string& path) {
  const std::string text = read_file(path);
  Input input{sniff(text), std::nullopt, std::nullopt, {}};
  switch (input.kind) {
    case InputKind::profile: input.profile = parse_profile(text); break;
    case InputKind::graph: input.graph = parse_graph(text); break;
    case InputKind::matrices: input.matrices = parse_matrices(text); break;
  }
  return input;
}

/// Comparison graph from a profile or graph file.
inline ComparisonGraph load_graph(const std::string& path, Strength strength) {
  auto input = load(path);
  if (input.kind == InputKind::graph) return std::move(*input.graph);
  if (input.kind == InputKind::profile) {
    return strength == Strength::margin ? build_wmg_naive(*input.profile)
                                        : build_comparison_graph(*input.profile, strength);
  }
  throw ConfigError("expected a ballot or graph file, got matrices: " + path);
}

inline void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << content;
}

inline void print_candidates(const std::vector<Candidate>& set, const std::vector<std::string>& names,
                             const std::string& format, std::ostream& out) {
  if (format == "csv") {
    for (std::size_t k = 0; k < set.size(); ++k) out << (k ? "," : "") << names[set[k]];
    out << '\n';
    return;
  }
  for (auto c : set) out << names[c] << '\n';
}

inline std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (auto part : detail::split(text, ',')) {
    auto token = detail::trim(part);
    if (!token.empty()) out.push_back(detail::parse_integer<std::size_t>(token, 0));
  }
  return out;
}

template <typename Fn>
double seconds(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schulze method: majority graphs, winners, reductions and benchmarks", "schulze"};
  app.require_subcommand(1);

  const std::vector<std::string> strengths{"margin", "winning-votes", "losing-votes", "ratio"};
  std::string input;
  std::vector<std::string> inputs;
  std::string output;
  std::string algo;
  std::string strength_name = "margin";
  std::string format = "text";
  std::string kind;
  std::uint64_t seed = 1;
  std::size_t m = 10;
  std::int64_t n = 25;
  double tie_prob = 0.0;

  auto add_strength = [&](CLI::App* sub) {
    sub->add_option("--strength", strength_name, "Link strength for profile input")
        ->check(CLI::IsMember(strengths));
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv"}));
  };

  // tally
  auto* tally = app.add_subcommand("tally", "Profile -> comparison graph (or pairwise tally matrix)");
  tally->add_option("-i,--input", input, "Ballot file")->required();
  std::string tally_algo = "naive";
  tally->add_option("--algo", tally_algo, "Tally algorithm")->check(CLI::IsMember({"naive", "fast"}));
  std::size_t block_size = 0;
  tally->add_option("--block-size", block_size, "Bucket size for --algo fast (0 = default)");
  bool tally_matrix = false;
  tally->add_flag("--matrix", tally_matrix, "Print M(u, v) instead of the graph");
  add_strength(tally);
  add_format(tally);

  // winners
  auto* winners = app.add_subcommand("winners", "Schulze winners of a profile or graph");
  winners->add_option("-i,--input", input, "Ballot or graph file")->required();
  std::string winners_algo = "dscc";
  winners->add_option("--algo", winners_algo, "Winner algorithm")
      ->check(CLI::IsMember({"baseline", "dscc", "dscc-edge"}));
  bool only_one = false;
  bool all = false;
  auto* one_flag = winners->add_flag("--one", only_one, "Report a single winner");
  winners->add_flag("--all", all, "Report every winner (default)")->excludes(one_flag);
  add_strength(winners);
  add_format(winners);

  // verify
  auto* verify = app.add_subcommand("verify", "Is a candidate a Schulze winner?");
  verify->add_option("-i,--input", input, "Ballot or graph file")->required();
  std::string candidate_name;
  verify->add_option("-c,--candidate,candidate", candidate_name, "Candidate name")->required();
  add_strength(verify);

  // rank
  auto* rank = app.add_subcommand("rank", "Full Schulze weak order");
  rank->add_option("-i,--input", input, "Ballot or graph file")->required();
  add_strength(rank);
  add_format(rank);

  // gen
  auto* gen = app.add_subcommand("gen", "Random profile or comparison graph");
  std::string what = "profile";
  gen->add_option("what", what, "profile | graph")->check(CLI::IsMember({"profile", "graph"}));
  gen->add_option("--m", m, "Candidates")->check(CLI::PositiveNumber);
  gen->add_option("--n", n, "Voters (profile) or weight bound (graph)")->check(CLI::NonNegativeNumber);
  gen->add_option("--tie-prob", tie_prob, "Probability of merging adjacent candidates into a tie")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", seed, "RNG seed");
  std::string weights = "margin";
  gen->add_option("--weights", weights, "Graph weights: antisymmetric margin-like or arbitrary")
      ->check(CLI::IsMember({"margin", "arbitrary"}));
  gen->add_option("-o,--output", output, "Output file (default stdout)");

  // reduce
  auto* reduce = app.add_subcommand("reduce", "Matrix pair -> reduction profile");
  reduce->add_option("-i,--input", inputs, "Matrix file(s): one file with two matrices, or two files")
      ->required()
      ->expected(1, 2);
  kind = "wmg";
  reduce->add_option("--kind", kind, "wmg: Dominance Product; winner: Dominating Pairs")
      ->check(CLI::IsMember({"wmg", "winner"}));
  reduce->add_option("-o,--output", output, "Profile output file (default stdout)");
  std::string roles_path;
  reduce->add_option("--roles", roles_path, "Roles sidecar path (default <output>.roles.json)");

  // bench
  auto* bench = app.add_subcommand("bench", "Timing sweeps, CSV rows m,algo,seconds");
  std::string bench_what = "winners";
  bench->add_option("what", bench_what, "winners | wmg")->check(CLI::IsMember({"winners", "wmg"}));
  std::string sizes_text = "250,500,1000";
  bench->add_option("--sizes", sizes_text, "Comma-separated candidate counts");
  std::string bench_algos;
  bench->add_option("--algo", bench_algos,
                    "Comma-separated algorithms (winners: dscc,dscc-edge,one,baseline; wmg: naive,fast)");
  std::string block_sizes_text;
  bench->add_option("--block-sizes", block_sizes_text, "wmg: bucket sizes to sweep for fast (default: tuned)");
  bench->add_option("--n", n, "Weight bound (winners) or voters (wmg)")->check(CLI::NonNegativeNumber);
  bench->add_option("--tie-prob", tie_prob, "wmg: tie probability")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--seed", seed, "RNG seed");
  std::size_t trials = 1;
  bench->add_option("--trials", trials, "Repetitions per row (minimum time reported)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    const Strength strength = parse_strength(strength_name);

    if (*tally) {
      auto loaded = load(input);
      if (loaded.kind != InputKind::profile) throw ConfigError("tally needs a ballot file");
      const auto& profile = *loaded.profile;
      std::optional<std::size_t> block;
      if (block_size > 0) block.emplace(block_size);
      const IntMatrix counts =
          tally_algo == "fast" ? pairwise_tallies_dominance(profile, block) : pairwise_tallies(profile);
      if (tally_matrix) {
        for (std::size_t u = 0; u < counts.rows(); ++u) {
          for (std::size_t v = 0; v < counts.cols(); ++v) out << (v ? (format == "csv" ? "," : " ") : "") << counts(u, v);
          out << '\n';
        }
        return kExitOk;
      }
      const auto graph = strength == Strength::margin
                             ? margins_from_tallies(profile.candidates(), counts)
                             : comparison_graph_from_tallies(profile.candidates(), counts, strength);
      if (format == "csv") {
        for (std::size_t u = 0; u < graph.size(); ++u) {
          for (std::size_t v = 0; v < graph.size(); ++v) out << (v ? "," : "") << graph(u, v);
          out << '\n';
        }
      } else {
        out << format_graph(graph);
      }
      return kExitOk;
    }

    if (*winners) {
      const auto graph = load_graph(input, strength);
      std::vector<Candidate> set;
      WinnerOptions options;
      options.engine = winners_algo == "dscc-edge" ? SccEngine::per_edge : SccEngine::batch;
      if (only_one) {
        set = {winners_algo == "baseline" ? baseline_winners(graph).front() : find_winner(graph, options)};
      } else {
        set = winners_algo == "baseline" ? baseline_winners(graph) : find_all_winners(graph, options);
      }
      print_candidates(set, graph.candidates(), format, out);
      return kExitOk;
    }

    if (*verify) {
      const auto graph = load_graph(input, strength);
      const auto c = graph.index_of(candidate_name);
      if (!c) throw ConfigError("unknown candidate '" + candidate_name + "'");
      out << (verify_winner(graph, *c) ? "yes" : "no") << '\n';
      return kExitOk;
    }

    if (*rank) {
      const auto graph = load_graph(input, strength);
      const auto order = schulze_ranking(apbp(graph));
      for (std::size_t g = 0; g < order.groups.size(); ++g) {
        for (std::size_t k = 0; k < order.groups[g].size(); ++k) {
          const auto& name = graph.candidates()[order.groups[g][k]];
          if (format == "csv") {
            out << g + 1 << ',' << name << '\n';
          } else {
            out << (k ? " = " : (g ? " > " : "")) << name;
          }
        }
      }
      if (format != "csv") out << '\n';
      return kExitOk;
    }

    if (*gen) {
      std::string content;
      if (what == "profile") {
        if (n < 1) throw ConfigError("--n must be >= 1 for profiles");
        content = format_profile(random_profile(m, static_cast<std::size_t>(n), tie_prob, seed));
      } else {
        content = format_graph(weights == "margin" ? random_margin_graph(m, n, seed)
                                                   : random_weight_graph(m, -n, n, seed));
      }
      write_output(output, content, out);
      return kExitOk;
    }

    if (*reduce) {
      std::vector<IntMatrix> mats;
      for (const auto& path : inputs) {
        auto loaded = load(path);
        if (loaded.kind != InputKind::matrices) throw ConfigError("reduce needs matrix files: " + path);
        for (auto& mat : loaded.matrices) mats.push_back(std::move(mat));
      }
      if (mats.size() != 2) throw ConfigError("reduce needs exactly two matrices");
      DominanceInstance instance;
      try {
        instance = DominanceInstance(mats[0], mats[1]);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      const auto reduction = kind == "wmg" ? dominance_to_wmg_instance(instance)
                                           : dominating_pairs_to_schulze_instance(instance);
      nlohmann::ordered_json roles;
      roles["kind"] = kind;
      roles["r"] = reduction.r;
      roles["encoded_r"] = reduction.encoded_dimension();
      roles["padded"] = reduction.padded;
      auto& table = roles["roles"];
      table = nlohmann::ordered_json::object();
      for (Candidate c = 0; c < reduction.profile.num_candidates(); ++c) {
        const auto& name = reduction.profile.candidates()[c];
        table[name] = c;
      }
      write_output(output, format_profile(reduction.profile), out);
      const std::string sidecar = !roles_path.empty() ? roles_path : (output.empty() ? "" : output + ".roles.json");
      if (!sidecar.empty()) write_output(sidecar, roles.dump(2) + "\n", out);
      return kExitOk;
    }

    if (*bench) {
      const auto sizes = parse_size_list(sizes_text);
      out << "m,algo,seconds\n";
      if (bench_what == "winners") {
        const std::vector<std::string> algos =
            bench_algos.empty() ? std::vector<std::string>{"dscc", "dscc-edge", "one", "baseline"}
                                : [&] {
                                    std::vector<std::string> v;
                                    for (auto p : detail::split(bench_algos, ',')) v.emplace_back(detail::trim(p));
                                    return v;
                                  }();
        for (auto size : sizes) {
          const auto graph = random_margin_graph(size, n, seed);
          for (const auto& a : algos) {
            double best = 1e300;
            for (std::size_t t = 0; t < trials; ++t) {
              double s = 0;
              if (a == "dscc") {
                s = seconds([&] { find_all_winners(graph); });
              } else if (a == "dscc-edge") {
                s = seconds([&] { find_all_winners(graph, {.engine = SccEngine::per_edge}); });
              } else if (a == "one") {
                s = seconds([&] { find_winner(graph); });
              } else if (a == "baseline") {
                s = seconds([&] { baseline_winners(graph); });
              } else {
                throw ConfigError("unknown bench algorithm '" + a + "'");
              }
              best = std::min(best, s);
            }
            out << size << ',' << a << ',' << best << '\n';
          }
        }
      } else {
        const auto block_sizes = parse_size_list(block_sizes_text);
        for (auto size : sizes) {
          const auto voters = static_cast<std::size_t>(std::max<std::int64_t>(n, 1));
          const auto profile = random_profile(size, voters, tie_prob, seed);
          auto time = [&](auto&& fn) {
            double best = 1e300;
            for (std::size_t t = 0; t < trials; ++t) best = std::min(best, seconds(fn));
            return best;
          };
          out << size << ",naive," << time([&] { build_wmg_naive(profile); }) << '\n';
          if (block_sizes.empty()) {
            out << size << ",fast," << time([&] { build_wmg_fast(profile); }) << '\n';
          }
          for (auto s : block_sizes) {
            if (s == 0) throw ConfigError("block sizes must be >= 1");
            out << size << ",fast-s" << s << ',' << time([&] { build_wmg_fast(profile, s); }) << '\n';
          }
        }
      }
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadConfig;
  }
  return kExitOk;
}

}  // namespace schulze::cli
