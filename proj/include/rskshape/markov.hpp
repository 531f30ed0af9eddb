#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rskshape/rng.hpp"

namespace rsk::markov {

inline constexpr double kRowSumTol = 1e-9;    // rejection threshold on input
inline constexpr double kMatrixFlagTol = 1e-10;  // matrix-identity class flags

// Row-stochastic transition matrix over a 1..m alphabet. Construction
// validates: entries nonnegative, each row sums to 1 within kRowSumTol.
class TransitionMatrix {
 public:
  TransitionMatrix(int m, std::vector<double> entries);

  // All rows equal to pi (iid letters).
  static TransitionMatrix iid(const std::vector<double>& pi);

  // Circulant chain: P(i,j) = a[(i-j) mod m], so the first column is a
  // itself and each row is the cyclic right-shift of the previous one.
  static TransitionMatrix cyclic(const std::vector<double>& a);

  // (1-delta) I + delta P0, 0 < delta <= 1.
  static TransitionMatrix lazy(const TransitionMatrix& p0, double delta);

  int size() const { return m_; }
  double operator()(int i, int j) const { return p_[static_cast<std::size_t>(i) * m_ + j]; }
  const std::vector<double>& entries() const { return p_; }
  const double* row(int i) const { return p_.data() + static_cast<std::size_t>(i) * m_; }

 private:
  int m_ = 0;
  std::vector<double> p_;
};

struct ChainClass {
  bool irreducible = false;
  bool aperiodic = false;
  bool doubly_stochastic = false;
  bool cyclic = false;
  bool reversible = false;
};

// Irreducibility/aperiodicity are decided combinatorially on the support
// digraph (strong connectivity; gcd of BFS level slacks). The matrix-identity
// flags use kMatrixFlagTol. For reducible chains aperiodic/reversible are
// reported false.
ChainClass classify(const TransitionMatrix& p);

// Solves pi P = pi, sum(pi) = 1 by a dense solve. Throws std::runtime_error
// when the system is singular or the residual exceeds 1e-10 (reducibility).
std::vector<double> stationary(const TransitionMatrix& p);

struct Word {
  int alphabet = 0;
  std::vector<std::uint8_t> letters;  // values 1..alphabet

  long long length() const { return static_cast<long long>(letters.size()); }
};

struct Start {
  bool from_stationary = true;
  int state0 = 0;  // 0-based, used when !from_stationary

  static Start stationary() { return {true, 0}; }
  static Start state(int k) { return {false, k}; }
};

// X0 is drawn per start mode, then n transitions produce the word
// (X1, ..., Xn). Fully determined by (p, start, n, seed, stream).
Word sample_word(const TransitionMatrix& p, Start start, long long n,
                 std::uint64_t seed, std::uint64_t stream = 0);
Word sample_word(const TransitionMatrix& p, Start start, long long n,
                 RandomStream& rs);

// Chain spec document:
//   {"kind":"explicit","m":3,"entries":[[...],[...],[...]]}
//   {"kind":"cyclic","a":[...]}
//   {"kind":"iid","pi":[...]}
//   {"kind":"lazy","p0":{...chain spec...},"delta":0.3}
TransitionMatrix chain_from_json(const nlohmann::json& spec);
nlohmann::json chain_to_json(const TransitionMatrix& p);

}  // namespace rsk::markov
