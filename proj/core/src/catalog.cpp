#include "ragg/catalog.hpp"

#include <cmath>
#include <string>

#include "ragg/error.hpp"
#include "ragg/guarantees.hpp"
#include "ragg/rng.hpp"
#include "ragg/substitutes.hpp"

namespace ragg {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

State make_state(double prob, std::vector<std::string> signals, double y) {
  return State{prob, std::move(signals), y};
}

}  // namespace

InfoStructure xor_structure() {
  std::vector<State> states;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      states.push_back(make_state(0.25, {std::to_string(a), std::to_string(b)}, a ^ b));
    }
  }
  return InfoStructure(2, std::move(states));
}

InfoStructure same_bit_structure() {
  return InfoStructure(2, {make_state(0.5, {"0", "0"}, 0.0), make_state(0.5, {"1", "1"}, 1.0)});
}

InfoStructure example_2x2() {
  return InfoStructure(2, {make_state(0.3, {"1", "1"}, 0.0), make_state(0.2, {"1", "2"}, 1.0),
                           make_state(0.2, {"2", "1"}, 1.0), make_state(0.3, {"2", "2"}, 2.0)});
}

InfoStructure secret_sharing(int n, int p) {
  if (n < 1) throw Error(ErrorCode::kInvalidInput, "secret sharing needs n >= 1");
  if (!is_prime(p)) throw Error(ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  if (p <= n) {
    throw Error(ErrorCode::kInvalidInput, "field size p must exceed n (p = " +
                                              std::to_string(p) + ", n = " + std::to_string(n) + ")");
  }
  constexpr double kStateCap = 1e6;
  double total = 0.0;
  for (int k = 1; k <= n; ++k) total += 2.0 * std::pow(static_cast<double>(p), k - 1);
  if (total > kStateCap) {
    throw Error(ErrorCode::kCapExceeded, "secret sharing would need " +
                                             std::to_string(static_cast<long long>(total)) +
                                             " states (cap 1e6)");
  }

  std::vector<State> states;
  states.reserve(static_cast<std::size_t>(total));
  for (int k = 1; k <= n; ++k) {
    const double prob = (1.0 / n) * 0.5 * std::pow(1.0 / p, k - 1);
    for (int secret : {-1, 1}) {
      // coefficients a_1..a_{k-1} enumerated as base-p digits, a_1 most significant
      std::vector<int> coeffs(static_cast<std::size_t>(k), 0);
      coeffs[0] = ((secret % p) + p) % p;
      while (true) {
        std::vector<std::string> signals;
        signals.reserve(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) {
          long long share = 0;
          for (int c = k - 1; c >= 0; --c) share = (share * i + coeffs[static_cast<std::size_t>(c)]) % p;
          signals.push_back(std::to_string(k) + ":" + std::to_string(share));
        }
        states.push_back(make_state(prob, std::move(signals), secret));

        int pos = k - 1;
        while (pos >= 1 && coeffs[static_cast<std::size_t>(pos)] == p - 1) {
          coeffs[static_cast<std::size_t>(pos)] = 0;
          --pos;
        }
        if (pos < 1) break;
        ++coeffs[static_cast<std::size_t>(pos)];
      }
    }
  }
  return InfoStructure(n, std::move(states), ValidationOptions{.renormalize = true});
}

TightParameters tight_parameters(Setting setting, Sign sign) {
  const double s7 = std::sqrt(7.0);
  TightParameters t;
  if (setting == Setting::kPriorFree) {
    t.p = 1.0 - s7 / 4.0;
    t.x = std::sqrt(14.0) - 2.0 * std::sqrt(2.0);
  } else {
    t.p = (2.0 + s7) / 12.0;
    t.x = std::sqrt(2.0 + 4.0 * s7) / 3.0;
  }
  if (sign == Sign::kMinus) t.x = -t.x;
  return t;
}

InfoStructure tight_structure(Setting setting, Sign sign) {
  const TightParameters t = tight_parameters(setting, sign);
  const double spill = (1.0 - 2.0 * t.p) * t.x;
  return InfoStructure(2, {make_state(t.p, {"1", "1"}, (1.0 - spill) / (2.0 * t.p)),
                           make_state(0.5 - t.p, {"1", "-1"}, t.x),
                           make_state(0.5 - t.p, {"-1", "1"}, t.x),
                           make_state(t.p, {"-1", "-1"}, (-1.0 - spill) / (2.0 * t.p))},
                       ValidationOptions{.renormalize = true});
}

double coin_posterior(int heads, int tails) {
  if (heads < 0 || tails < 0) {
    throw Error(ErrorCode::kInvalidInput, "coin counts must be nonnegative");
  }
  return (heads + 1.0) / (heads + tails + 2.0);
}

InfoStructure random_projective_structure(int n, int alphabet_size, std::uint64_t seed,
                                          int max_attempts) {
  if (n < 1 || n > 12) throw Error(ErrorCode::kInvalidInput, "n must be in [1, 12]");
  if (alphabet_size < 2) throw Error(ErrorCode::kInvalidInput, "alphabet_size must be >= 2");
  const double n_states_d = std::pow(static_cast<double>(alphabet_size), n + 1);
  if (n_states_d > 1e5) {
    throw Error(ErrorCode::kCapExceeded, "alphabet_size^(n+1) exceeds 1e5 states");
  }
  const auto k = static_cast<std::size_t>(alphabet_size);
  const auto n_states = static_cast<std::size_t>(n_states_d);

  Xoshiro256 gen(seed);
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < k; ++c) labels.push_back(std::to_string(c));

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<double> latent_prior(k);
    double prior_total = 0.0;
    for (double& w : latent_prior) prior_total += (w = gen.exponential());
    std::vector<double> latent_y(k);
    for (double& y : latent_y) y = 2.0 * gen.uniform() - 1.0;
    std::vector<double> flip(static_cast<std::size_t>(n));
    for (double& e : flip) e = 0.02 + 0.46 * gen.uniform();
    const double mix = 0.05 * gen.uniform();
    std::vector<double> noise(n_states);
    double noise_total = 0.0;
    for (double& w : noise) noise_total += (w = gen.exponential());

    // State order: latent outermost, then signal tuples with expert 1 most
    // significant.
    std::vector<State> states;
    states.reserve(n_states);
    std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
    std::size_t idx = 0;
    double total = 0.0;
    for (std::size_t latent = 0; latent < k; ++latent) {
      std::fill(digits.begin(), digits.end(), 0);
      for (std::size_t tuple = 0; tuple < n_states / k; ++tuple, ++idx) {
        double prob = latent_prior[latent] / prior_total;
        std::vector<std::string> signals;
        signals.reserve(digits.size());
        for (std::size_t i = 0; i < digits.size(); ++i) {
          prob *= digits[i] == latent ? 1.0 - flip[i] : flip[i] / static_cast<double>(k - 1);
          signals.push_back(labels[digits[i]]);
        }
        prob = (1.0 - mix) * prob + mix * noise[idx] / noise_total;
        total += prob;
        states.push_back(State{prob, std::move(signals), latent_y[latent]});
        for (std::size_t i = digits.size(); i-- > 0;) {
          if (++digits[i] < k) break;
          digits[i] = 0;
        }
      }
    }
    for (State& s : states) s.prob /= total;

    InfoStructure candidate(n, std::move(states), ValidationOptions{.renormalize = true});
    if (check_projective(candidate).satisfied) return candidate;
  }
  throw Error(ErrorCode::kAttemptsExhausted,
              "no projective structure found in " + std::to_string(max_attempts) + " attempts");
}

// Expected-quantity keys:
//   v_<subset>           v(Y_A) for the named subset, e.g. v_1, v_12, v_empty
//   weak / projective    1 if the condition holds, else 0
//   pred_<cell>          Y_{B->A} value on the named state
//   pred_error           E[(Y_B - Y_{B->A})^2] for A = {1}, B = {2}
//   outcome_error_a      E[(Y - Y_A)^2] for A = {1}
//   tabular_ratio        ratio of optimal_tabular_aggregator
//   average_ratio        ratio of the plain average
//   all_zero_prob        probability that every forecast is 0
std::vector<CatalogEntry> catalog_entries() {
  const double s7 = std::sqrt(7.0);
  std::vector<CatalogEntry> out;
  out.push_back({"xor", "two independent bits, Y = XOR", xor_structure(),
                 {{"v_1", 0.0}, {"v_2", 0.0}, {"v_12", 0.25}, {"weak", 0.0}, {"projective", 0.0}}});
  out.push_back({"same-bit", "both experts see the outcome bit", same_bit_structure(),
                 {{"v_1", 0.25}, {"v_12", 0.25}, {"weak", 1.0}, {"projective", 1.0}}});
  out.push_back({"example-2x2", "projective substitutes example", example_2x2(),
                 {{"pred_sigma1_1", 0.88},
                  {"pred_sigma1_2", 1.12},
                  {"pred_error", 0.3456},
                  {"outcome_error_a", 0.24},
                  {"projective", 1.0}}});
  out.push_back({"secret-sharing-3-5", "Shamir threshold scheme, n = 3, p = 5", secret_sharing(3, 5),
                 {{"v_empty", 0.0},
                  {"v_1", 1.0 / 3.0},
                  {"v_12", 2.0 / 3.0},
                  {"v_123", 1.0},
                  {"all_zero_prob", 2.0 / 3.0},
                  {"weak", 1.0},
                  {"projective", 0.0}}});
  out.push_back({"secret-sharing-2-3", "Shamir threshold scheme, n = 2, p = 3", secret_sharing(2, 3),
                 {{"weak", 1.0}, {"projective", 0.0}}});
  const double pf = (3.0 + s7) / 8.0;
  const double kp = (7.0 * s7 - 17.0) / 2.0;
  out.push_back({"tight-prior-free-plus", "two-expert tight instance, prior-free, x > 0",
                 tight_structure(Setting::kPriorFree, Sign::kPlus),
                 {{"tabular_ratio", pf}, {"average_ratio", pf}, {"projective", 1.0}}});
  out.push_back({"tight-prior-free-minus", "two-expert tight instance, prior-free, x < 0",
                 tight_structure(Setting::kPriorFree, Sign::kMinus),
                 {{"tabular_ratio", pf}, {"average_ratio", pf}, {"projective", 1.0}}});
  out.push_back({"tight-known-prior-plus", "two-expert tight instance, known prior, x > 0",
                 tight_structure(Setting::kKnownPrior, Sign::kPlus),
                 {{"tabular_ratio", kp}, {"projective", 1.0}}});
  out.push_back({"tight-known-prior-minus", "two-expert tight instance, known prior, x < 0",
                 tight_structure(Setting::kKnownPrior, Sign::kMinus),
                 {{"tabular_ratio", kp}, {"projective", 1.0}}});
  return out;
}

}  // namespace ragg
