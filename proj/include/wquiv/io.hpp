#pragma once

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "wquiv/analysis.hpp"
#include "wquiv/equivalence.hpp"
#include "wquiv/mutation.hpp"
#include "wquiv/potential.hpp"
#include "wquiv/quiver.hpp"
#include "wquiv/tame.hpp"

namespace wquiv {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// The contents of a quiver file: a quiver and an optional potential whose
// terms refer to arrow ids.
struct QuiverFile {
  WeightedQuiver quiver;
  std::optional<Series> potential;
};

Json group_to_json(const GroupKind& kind);
// "trivial", "cyclic:5", "free-abelian:3", "free:2".
GroupKind parse_group_spec(std::string_view text);
GroupKind group_from_json(const Json& j);

// Canonical form: vertices by id, arrows by (src, dst, formatted weight) with
// parallel arrows of equal weight merged into one entry with a "count".
// With `with_ids`, arrows are listed by id instead and keep their ids.
Json quiver_to_json(const WeightedQuiver& q, bool with_ids = false);
// Arrows without "id" are numbered after the largest explicit id, in order.
WeightedQuiver quiver_from_json(const Json& j);

Json potential_to_json(const Series& s);
Series potential_from_json(const Json& j);

// Files with a potential are written with arrow ids, others canonically.
Json quiver_file_to_json(const QuiverFile& f);
QuiverFile quiver_file_from_json(const Json& j);

// Errors carry the line and column for syntax errors and the field path
// (e.g. "arrows[2].weight") for schema errors.
QuiverFile parse_quiver_file(std::string_view text);
QuiverFile load_quiver_file(const std::filesystem::path& path);
WeightedQuiver load_quiver(const std::filesystem::path& path);

// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);
std::string serialize_quiver(const WeightedQuiver& q);
void save_quiver(const WeightedQuiver& q, const std::filesystem::path& path);
void save_quiver_file(const QuiverFile& f, const std::filesystem::path& path);

// Report fragments shared by the CLI, the session server and the bindings.
Json count_to_json(const Count& c);
Json error_to_json(const std::string& code, const std::string& message, const std::string& witness = {});
Json gauge_to_json(const GaugeFunction& g);
GaugeFunction gauge_from_json(const GroupKind& kind, const Json& j);
Json walk_to_json(const WalkCycle& c);
Json two_cycles_to_json(const WeightedQuiver& q);
Json cancelled_to_json(const std::vector<CancelledPair>& cancelled);
Json c_vectors_to_json(const CVectorMatrix& m);
Json nondegeneracy_to_json(const NondegeneracyVerdict& v);
Json sign_coherence_to_json(const SignCoherenceCase& c);
Json equivalence_to_json(const EquivalenceResult& r);
Json membership_to_json(const CnMembership& m);
Json tame_verdict_to_json(const TameVerdict& v);
Json canonicalization_to_json(const Canonicalization& c);
Json split_to_json(const SplitResult& s);
Json automorphism_to_json(const GradedAutomorphism& phi);

}  // namespace wquiv
