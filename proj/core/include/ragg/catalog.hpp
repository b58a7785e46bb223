#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ragg/aggregators.hpp"
#include "ragg/info_structure.hpp"

namespace ragg {

/// Two independent uniform bits, Y = XOR. Labels "0"/"1".
InfoStructure xor_structure();

/// Both experts see one uniform bit b, Y = b.
InfoStructure same_bit_structure();

/// Y = sigma_1 + sigma_2 - 2 on labels {1, 2}, P = {0.3, 0.2, 0.2, 0.3}.
InfoStructure example_2x2();

/// Shamir (n, k) threshold scheme over F_p with k uniform in [n] and
/// announced, secret a_0 in {-1, +1} = Y. Expert i's label is "k:P(i)".
/// Throws kNotPrime, kInvalidInput (p <= n) or kCapExceeded (more than
/// 10^6 states).
InfoStructure secret_sharing(int n, int p);

enum class Sign { kPlus, kMinus };

struct TightParameters {
  double p = 0.0;
  double x = 0.0;
};

/// p = 1 - sqrt7/4, x = sqrt14 - 2 sqrt2 (prior-free);
/// p = (2 + sqrt7)/12, x = sqrt(2 + 4 sqrt7)/3 (known prior). Minus flips x.
TightParameters tight_parameters(Setting setting, Sign sign);

/// Two-expert structure with labels "1"/"-1" and
/// Y = {(1-(1-2p)x)/(2p), x, x, (-1-(1-2p)x)/(2p)},
/// P = {p, 1/2-p, 1/2-p, p} over (1,1), (1,-1), (-1,1), (-1,-1).
InfoStructure tight_structure(Setting setting, Sign sign);

/// Posterior mean of a coin's bias under a uniform prior: (h+1)/(h+t+2).
double coin_posterior(int heads, int tails);

/// Rejection-samples a structure passing check_projective. Each attempt
/// draws a latent L in {0..k-1} (k = alphabet_size) with a Dirichlet(1)
/// prior, outcome values uniform in [-1, 1] per latent, and one noisy copy
/// of L per expert (flip probability uniform in [0.02, 0.48]), then mixes
/// in a Dirichlet(1) perturbation over states of weight uniform in
/// [0, 0.05]. Deterministic per seed; kAttemptsExhausted on failure.
InfoStructure random_projective_structure(int n, int alphabet_size, std::uint64_t seed,
                                          int max_attempts = 10000);

struct CatalogEntry {
  std::string name;
  std::string description;
  InfoStructure structure;
  /// Named reference quantities; keys are documented in catalog.cpp.
  std::map<std::string, double> expected;
};

/// Every fixed instance, at default parameters.
std::vector<CatalogEntry> catalog_entries();

}  // namespace ragg
