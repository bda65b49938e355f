#pragma once

// Seeded random instance generators.  Output depends only on the config.

#include <cstdint>
#include <string>
#include <variant>

#include "levelplan/core.hpp"
#include "levelplan/oracles.hpp"

namespace levelplan::gen {

enum class Kind { Betweenness, ProperTLevel, ProperCL, LevelConnectedCL };
enum class Bias { None, ForceSat, ForceUnsat };

struct GeneratorConfig {
  std::uint64_t seed = 1;
  Kind kind = Kind::Betweenness;
  int n = 3;           // betweenness elements
  int m = 1;           // betweenness triples
  int k = 3;           // levels
  int width = 3;       // maximum vertices per level
  int depth = 2;       // maximum cluster nesting below the root
  double edge_density = 0.5;
  Bias bias = Bias::None;
};

Kind parse_kind(const std::string& s);
Bias parse_bias(const std::string& s);
std::string to_string(Kind k);
std::string to_string(Bias b);

/// Small deterministic generator; identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  /// Uniform in [0, n).
  std::size_t below(std::size_t n);
  bool chance(double p);
  template <class It>
  void shuffle(It first, It last) {
    for (auto n = last - first; n > 1; --n) std::swap(first[n - 1], first[static_cast<long>(below(static_cast<std::size_t>(n)))]);
  }

 private:
  std::uint64_t state_;
};

/// Independent per-trial seed derived from a run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

BetweennessInstance betweenness(const GeneratorConfig& c);
TLevelInstance proper_tlevel(const GeneratorConfig& c);
CLInstance proper_cl(const GeneratorConfig& c);
CLInstance level_connected_cl(const GeneratorConfig& c);

using Instance = std::variant<BetweennessInstance, TLevelInstance, CLInstance>;
Instance generate(const GeneratorConfig& c);

}  // namespace levelplan::gen
