#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voltlab/constructions.hpp"

namespace voltlab::laws {

/// SplitMix64 (Steele/Lea/Flood): a fixed, well-known 64-bit generator
/// so seeds mean the same instance stream on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Unbiased draw from [0, n) by rejection sampling.
  std::uint64_t below(std::uint64_t n);
  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

 private:
  std::uint64_t state_;
};

/// Z1..Z6 plus Z2xZ2 and Z2xZ3.
std::vector<FiniteGroup> default_palette();

struct GeneratorConfig {
  int max_vertices = 6;
  int max_edges = 8;
  int weight_link = 3;
  int weight_loop = 2;
  int weight_semiedge = 1;
  std::vector<FiniteGroup> group_palette = default_palette();
};

/// Seeded sampler for graphs, voltage graphs and labeled graphs. Same
/// seed and config, same stream. Semiedge voltages are drawn from the
/// involutions of the group so every output validates.
class InstanceGenerator {
 public:
  InstanceGenerator(std::uint64_t seed, GeneratorConfig config);

  const GeneratorConfig& config() const { return cfg_; }

  Graph graph();
  VoltageGraph voltage_graph();
  LabeledGraph labeled_graph();

 private:
  const FiniteGroup& pick_group();
  std::pair<int, std::vector<EdgeSpec>> structure();

  SplitMix64 rng_;
  GeneratorConfig cfg_;
};

/// Seeded structural defects for mutation testing; each bypasses the
/// validating constructors through the unchecked factories or swaps a
/// construction for a deliberately wrong one.
enum class Mutation {
  None,
  FlipVoltage,          // one non-semiedge voltage changed, reverse left alone
  BreakLambda,          // one link dart made a fixed point of the involution
  NonHomomorphism,      // a non-hom map injected into the naturality sweep
  WrongPullbackFilter,  // pullback keeps exactly the mismatching dart pairs
  DropCounitComponent,  // counit's hom component replaced by the trivial hom
};

const char* to_string(Mutation m);
std::optional<Mutation> mutation_from_string(const std::string& name);

struct CheckConfig {
  std::uint64_t seed = 42;
  int iterations = 40;
  GeneratorConfig gen;
  EnumCaps enum_caps;
  Mutation mutation = Mutation::None;
};

struct LawReport {
  std::string law;
  std::uint64_t seed = 0;
  std::string instance;        // sizes, palette, coverage counters
  bool pass = false;
  std::string counterexample;  // empty when passing; replayable otherwise
  double millis = 0.0;
};

/// Sampled cospans, pointwise pullback, and for every commuting outer
/// square an exhaustive mediator count of exactly one.
LawReport check_pullback_universality(const CheckConfig& config);

/// Naturality of the quotient: ell(h) . q == q . k_ring(h) for every
/// hom between palette groups.
LawReport check_naturality_q(const CheckConfig& config);

/// Counit universality: every morphism L(lg) -> vg factors uniquely
/// through the counit, the factorization matches, and hom-set
/// cardinalities agree.
LawReport check_counit_universal(const CheckConfig& config);

/// The lift-by-pullback is the derived graph: iso_j validates, is
/// bijective, and an independent isomorphism search concurs; size laws
/// hold.
LawReport check_derived_iso(const CheckConfig& config);

/// Product laws: explicit reindexing isos for k_ring/ell over product
/// groups, and derived(product) vs product(derived).
LawReport check_product_laws(const CheckConfig& config);

/// Covering laws: the counit and the derived projection are coverings;
/// q is a fibration; the two fibration routes agree.
LawReport check_covering(const CheckConfig& config);

/// All checks, alphabetical by law name, sharing the config seed.
std::vector<LawReport> run_all(const CheckConfig& config);

std::string report_text(const std::vector<LawReport>& reports);

/// One JSON object per line with keys counterexample, instance, law,
/// millis, seed, verdict. millis is 0 unless include_timing is set, so
/// the default output is byte-stable across runs.
std::string report_json(const std::vector<LawReport>& reports,
                        bool include_timing = false);

}  // namespace voltlab::laws
