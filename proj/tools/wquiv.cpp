// Command-line front end. Every subcommand loads its inputs, makes the
// corresponding library call and prints a JSON report on stdout.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "wquiv/analysis.hpp"
#include "wquiv/corpus.hpp"
#include "wquiv/error.hpp"
#include "wquiv/io.hpp"
#include "wquiv/potential.hpp"
#include "wquiv/session.hpp"
#include "wquiv/tame.hpp"

namespace fs = std::filesystem;
using namespace wquiv;

namespace {

Json report(const char* command) { return Json{{"schema_version", kSchemaVersion}, {"command", command}}; }

void emit(const Json& j, const std::string& output = {}) {
  if (output.empty()) {
    std::cout << dump(j);
    return;
  }
  std::ofstream out(output);
  if (!out) throw Error("io", "cannot write " + output);
  out << dump(j);
}

std::vector<int> parse_sequence(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size() && !text.empty()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error("parse", "bad vertex '" + item + "' in sequence '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

QuiverFile load_with_potential(const std::string& path) {
  auto f = load_quiver_file(path);
  if (!f.potential) f.potential = Series{};
  if (!f.quiver.has_unit_multiplicities()) {
    throw Error("bundled_arrows", path + ": potentials need unit multiplicities (give parallel arrows separately)");
  }
  return f;
}

std::vector<std::pair<std::string, WeightedQuiver>> load_catalog(const std::string& dir, int max_vertices) {
  std::vector<std::pair<std::string, WeightedQuiver>> out;
  if (dir.empty()) {
    const auto catalog = small_quiver_catalog(max_vertices);
    for (std::size_t i = 0; i < catalog.size(); ++i) out.emplace_back("catalog-" + std::to_string(i), catalog[i]);
    return out;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) out.emplace_back(f.stem().string(), load_quiver(f));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted quiver mutation engine"};
  app.require_subcommand(1);

  std::string file;
  std::string file_b;
  std::string output;
  std::string sequence;
  std::string catalog_dir;
  std::string group_spec = "trivial";
  std::string policy = "trivial";
  std::string host = "127.0.0.1";
  bool lenient = false;
  int depth = 3;
  int max_len = 8;
  int max_vertices = 4;
  int vertex = 0;
  int n = 4;
  int port = 8080;
  int bound = 64;
  int max_parallel = 2;
  int steps = -1;
  std::size_t degree = 0;
  std::size_t count = 10;
  std::uint64_t seed = 0;

  auto* mutate_cmd = app.add_subcommand("mutate", "Mutate along a vertex sequence");
  mutate_cmd->add_option("file", file, "Quiver file")->required();
  mutate_cmd->add_option("--at", sequence, "Comma-separated vertices, applied left to right")->required();
  mutate_cmd->add_flag("--lenient", lenient, "Only require the mutation vertex to be free of 2-cycles");
  mutate_cmd->add_option("-o,--output", output, "Write the resulting quiver file here instead of the report");

  auto* nondeg_cmd = app.add_subcommand("check-nondeg", "Search mutation sequences for a surviving 2-cycle");
  nondeg_cmd->add_option("file", file)->required();
  nondeg_cmd->add_option("--depth", depth)->check(CLI::NonNegativeNumber);
  nondeg_cmd->add_option("--seed", seed, "Accepted for interface stability; the search is exhaustive");

  auto* frame_cmd = app.add_subcommand("frame", "Add a frozen source i' -> i for every vertex");
  frame_cmd->add_option("file", file)->required();
  frame_cmd->add_option("-o,--output", output);

  auto* cvec_cmd = app.add_subcommand("c-vectors", "c-vectors of a framed quiver");
  cvec_cmd->add_option("file", file)->required();

  auto* sc_cmd = app.add_subcommand("sign-coherence-experiment", "Frame and exhaustively mutate a catalog");
  sc_cmd->add_option("--catalog", catalog_dir, "Directory of quiver files (default: built-in catalog)");
  sc_cmd->add_option("--max-len", max_len)->check(CLI::NonNegativeNumber);
  sc_cmd->add_option("--max-vertices", max_vertices, "Built-in catalog size")->check(CLI::Range(1, 4));

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide gauge equivalence of two weight systems");
  equiv_cmd->add_option("file_a", file)->required();
  equiv_cmd->add_option("file_b", file_b)->required();
  equiv_cmd->add_option("--bound", bound, "Centralizer search bound for free groups");

  auto* tame_cmd = app.add_subcommand("classify-tame", "Gauge-trivial / C_n(t) member / unknown");
  tame_cmd->add_option("file", file)->required();

  auto* canon_cmd = app.add_subcommand("canonicalize", "Mutate a C_n(t) member to an unoriented n-cycle");
  canon_cmd->add_option("file", file)->required();

  auto* split_cmd = app.add_subcommand("qp-split", "Split a potential into trivial and reduced parts");
  split_cmd->add_option("file", file)->required();
  split_cmd->add_option("--degree", degree, "Truncation degree (default 2*deg+2)");

  auto* qpm_cmd = app.add_subcommand("qp-mutate", "Mutate a weighted quiver with potential");
  qpm_cmd->add_option("file", file)->required();
  qpm_cmd->add_option("--at", vertex)->required();
  qpm_cmd->add_option("--degree", degree, "Truncation degree (default 2*deg+2)");
  qpm_cmd->add_option("-o,--output", output, "Write the mutated quiver with potential here");

  auto* gen_cmd = app.add_subcommand("gen-corpus", "Write a seeded corpus of quiver files");
  gen_cmd->add_option("--policy", policy, "trivial|gauge|oriented-cycle-trivial|cn-reverse|free-random|catalog");
  gen_cmd->add_option("--count", count);
  gen_cmd->add_option("--n", n, "Vertices per quiver (catalog: maximum)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--group", group_spec, "trivial, cyclic:m, free-abelian:r or free:r");
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--max-parallel", max_parallel);
  gen_cmd->add_option("--steps", steps, "cn-reverse: reverse mutations per member (default random in [0, n-3])");
  gen_cmd->add_option("--out", output, "Output directory")->required();

  auto* serve_cmd = app.add_subcommand("serve", "Serve the session protocol over HTTP");
  serve_cmd->add_option("file", file)->required();
  serve_cmd->add_option("--port", port);
  serve_cmd->add_option("--host", host);
  serve_cmd->add_flag("--lenient", lenient);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mutate_cmd) {
      const auto q = load_quiver(file);
      const auto ks = parse_sequence(sequence);
      const auto result = mutate_sequence(q, ks, MutationOptions{lenient});
      Json log = Json::array();
      for (const auto& r : result.records) log.push_back({{"vertex", r.vertex}, {"cancelled", cancelled_to_json(r.cancelled)}});
      const WeightedQuiver& last = result.records.empty() ? q : result.records.back().result;
      if (!output.empty() && result.ok()) save_quiver(last, output);
      Json j = report("mutate");
      j["quiver"] = quiver_to_json(last);
      j["log"] = log;
      if (result.failure) {
        j["failure"] = error_to_json(result.failure->code, result.failure->reason);
        j["failure"]["index"] = result.failure->index;
      }
      emit(j);
      return result.ok() ? 0 : 1;
    }
    if (*nondeg_cmd) {
      Json j = report("check-nondeg");
      j["result"] = nondegeneracy_to_json(check_nondegenerate(load_quiver(file), depth));
      emit(j);
      return 0;
    }
    if (*frame_cmd) {
      const auto framed = frame(load_quiver(file));
      if (!output.empty()) {
        save_quiver(framed, output);
      } else {
        std::cout << serialize_quiver(framed);
      }
      return 0;
    }
    if (*cvec_cmd) {
      Json j = report("c-vectors");
      j["c_vectors"] = c_vectors_to_json(c_vectors(load_quiver(file)));
      emit(j);
      return 0;
    }
    if (*sc_cmd) {
      Json cases = Json::array();
      std::size_t failed = 0;
      const auto catalog = load_catalog(catalog_dir, max_vertices);
      for (const auto& [name, q] : catalog) {
        const auto c = sign_coherence_case(q, max_len, name);
        if (!c.passed()) ++failed;
        cases.push_back(sign_coherence_to_json(c));
      }
      Json j = report("sign-coherence-experiment");
      j["max_length"] = max_len;
      j["total"] = catalog.size();
      j["failed"] = failed;
      j["passed"] = failed == 0;
      j["cases"] = cases;
      emit(j);
      return failed == 0 ? 0 : 1;
    }
    if (*equiv_cmd) {
      Json j = report("equiv");
      j["result"] = equivalence_to_json(are_equivalent(load_quiver(file), load_quiver(file_b), bound));
      emit(j);
      return 0;
    }
    if (*tame_cmd) {
      Json j = report("classify-tame");
      j["result"] = tame_verdict_to_json(classify_tame(load_quiver(file)));
      emit(j);
      return 0;
    }
    if (*canon_cmd) {
      Json j = report("canonicalize");
      j["result"] = canonicalization_to_json(canonicalize_to_cycle(load_quiver(file)));
      emit(j);
      return 0;
    }
    if (*split_cmd) {
      const auto f = load_with_potential(file);
      const std::size_t truncation = degree == 0 ? std::max<std::size_t>(default_truncation(*f.potential), 8) : degree;
      Json j = report("qp-split");
      j["result"] = split_to_json(split(f.quiver, *f.potential, truncation));
      emit(j);
      return 0;
    }
    if (*qpm_cmd) {
      const auto f = load_with_potential(file);
      const std::size_t truncation = degree == 0 ? std::max<std::size_t>(default_truncation(*f.potential), 8) : degree;
      const auto m = qp_mutate({f.quiver, *f.potential}, vertex, truncation);
      if (!output.empty()) save_quiver_file({m.result.quiver, m.result.potential}, output);
      Json j = report("qp-mutate");
      j["premutation"] = quiver_to_json(m.premutation.premutation.quiver, true);
      j["premutation"]["potential"] = potential_to_json(m.premutation.potential);
      j["split"] = split_to_json(m.split);
      j["matches_weighted_mutation"] = m.matches_weighted_mutation;
      emit(j);
      return 0;
    }
    if (*gen_cmd) {
      CorpusSpec spec;
      spec.count = count;
      spec.n = n;
      spec.group = parse_group_spec(group_spec);
      spec.policy = parse_policy(policy);
      spec.seed = seed;
      spec.max_parallel = max_parallel;
      if (steps >= 0) spec.reverse_steps = steps;
      fs::create_directories(output);
      Json names = Json::array();
      for (const auto& e : generate_corpus(spec)) {
        save_quiver(e.quiver, fs::path(output) / (e.name + ".json"));
        Json item{{"name", e.name}};
        if (!e.sequence.empty()) item["sequence"] = e.sequence;
        names.push_back(std::move(item));
      }
      Json j = report("gen-corpus");
      j["policy"] = policy_name(spec.policy);
      j["seed"] = seed;
      j["entries"] = names;
      emit(j);
      return 0;
    }
    if (*serve_cmd) {
      Session session(load_quiver(file), SessionConfig{lenient});
      SessionServer server(session);
      const int bound_port = server.bind(host, port);
      std::cerr << "serving on http://" << host << ":" << bound_port << "\n";
      server.listen();
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << dump(error_to_json(e.code(), e.what(), e.witness()));
    return 2;
  }
  return 0;
}
