#include "rskshape/markov.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "rskshape/linalg.hpp"

namespace rsk::markov {

namespace {

void validate_probability_vector(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  double sum = 0.0;
  for (double x : v) {
    if (!(x >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative entry");
    sum += x;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument(std::string(what) + ": does not sum to 1");
}

}  // namespace

TransitionMatrix::TransitionMatrix(int m, std::vector<double> entries)
    : m_(m), p_(std::move(entries)) {
  if (m_ < 2) throw std::invalid_argument("TransitionMatrix: need m >= 2");
  if (p_.size() != static_cast<std::size_t>(m_) * m_)
    throw std::invalid_argument("TransitionMatrix: wrong entry count");
  for (int i = 0; i < m_; ++i) {
    double sum = 0.0;
    for (int j = 0; j < m_; ++j) {
      const double v = (*this)(i, j);
      if (v < 0.0 || v > 1.0 + 1e-12)
        throw std::invalid_argument("TransitionMatrix: entry outside [0,1]");
      sum += v;
    }
    if (std::fabs(sum - 1.0) > kRowSumTol)
      throw std::invalid_argument("TransitionMatrix: row does not sum to 1");
  }
}

TransitionMatrix TransitionMatrix::iid(const std::vector<double>& pi) {
  validate_probability_vector(pi, "iid");
  const int m = static_cast<int>(pi.size());
  std::vector<double> e(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) e[static_cast<std::size_t>(i) * m + j] = pi[j];
  return TransitionMatrix(m, std::move(e));
}

TransitionMatrix TransitionMatrix::cyclic(const std::vector<double>& a) {
  validate_probability_vector(a, "cyclic");
  const int m = static_cast<int>(a.size());
  std::vector<double> e(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      e[static_cast<std::size_t>(i) * m + j] = a[((i - j) % m + m) % m];
  return TransitionMatrix(m, std::move(e));
}

TransitionMatrix TransitionMatrix::lazy(const TransitionMatrix& p0, double delta) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("lazy: need 0 < delta <= 1");
  const int m = p0.size();
  std::vector<double> e(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      e[static_cast<std::size_t>(i) * m + j] =
          delta * p0(i, j) + (i == j ? 1.0 - delta : 0.0);
  return TransitionMatrix(m, std::move(e));
}

namespace {

std::vector<int> bfs_depths(const TransitionMatrix& p, bool reverse) {
  const int m = p.size();
  std::vector<int> depth(m, -1);
  std::queue<int> q;
  depth[0] = 0;
  q.push(0);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v = 0; v < m; ++v) {
      const double w = reverse ? p(v, u) : p(u, v);
      if (w > 0.0 && depth[v] < 0) {
        depth[v] = depth[u] + 1;
        q.push(v);
      }
    }
  }
  return depth;
}

bool strongly_connected(const TransitionMatrix& p) {
  for (int d : bfs_depths(p, false))
    if (d < 0) return false;
  for (int d : bfs_depths(p, true))
    if (d < 0) return false;
  return true;
}

// Period of a strongly connected support digraph: gcd over all edges (u,v)
// of depth(u) + 1 - depth(v), with BFS depths from an arbitrary root.
int graph_period(const TransitionMatrix& p) {
  const int m = p.size();
  const std::vector<int> depth = bfs_depths(p, false);
  int g = 0;
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      if (p(u, v) > 0.0) g = std::gcd(g, std::abs(depth[u] + 1 - depth[v]));
  return g == 0 ? 1 : g;
}

}  // namespace

ChainClass classify(const TransitionMatrix& p) {
  const int m = p.size();
  ChainClass c;
  c.irreducible = strongly_connected(p);
  c.aperiodic = c.irreducible && graph_period(p) == 1;

  c.doubly_stochastic = true;
  for (int j = 0; j < m; ++j) {
    double col = 0.0;
    for (int i = 0; i < m; ++i) col += p(i, j);
    if (std::fabs(col - 1.0) > kMatrixFlagTol) c.doubly_stochastic = false;
  }

  c.cyclic = true;
  for (int i = 0; i < m && c.cyclic; ++i)
    for (int j = 0; j < m; ++j)
      if (std::fabs(p(i, j) - p((i + 1) % m, (j + 1) % m)) > kMatrixFlagTol) {
        c.cyclic = false;
        break;
      }

  c.reversible = false;
  if (c.irreducible) {
    const std::vector<double> pi = stationary(p);
    c.reversible = true;
    for (int i = 0; i < m && c.reversible; ++i)
      for (int j = 0; j < m; ++j)
        if (std::fabs(pi[i] * p(i, j) - pi[j] * p(j, i)) > kMatrixFlagTol) {
          c.reversible = false;
          break;
        }
  }
  return c;
}

std::vector<double> stationary(const TransitionMatrix& p) {
  const int m = p.size();
  // (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  linalg::Mat a(m, m);
  std::vector<double> b(m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = p(j, i) - (i == j ? 1.0 : 0.0);
  for (int j = 0; j < m; ++j) a(m - 1, j) = 1.0;
  b[m - 1] = 1.0;

  std::vector<double> pi;
  try {
    pi = linalg::lu_solve(linalg::lu_factor(a), std::move(b));
  } catch (const std::runtime_error&) {
    throw std::runtime_error("stationary: singular system (chain is reducible)");
  }
  double resid = 0.0;
  for (int j = 0; j < m; ++j) {
    double acc = -pi[j];
    for (int i = 0; i < m; ++i) acc += pi[i] * p(i, j);
    resid = std::max(resid, std::fabs(acc));
  }
  double sum = 0.0;
  for (double x : pi) sum += x;
  if (resid > 1e-10 || std::fabs(sum - 1.0) > 1e-12)
    throw std::runtime_error("stationary: residual too large (chain is reducible)");
  for (double x : pi)
    if (x < 0.0) throw std::runtime_error("stationary: negative component (chain is reducible)");
  return pi;
}

namespace {

int sample_index(const double* cumulative, int m, double u) {
  for (int j = 0; j < m - 1; ++j)
    if (u <= cumulative[j]) return j;
  return m - 1;
}

}  // namespace

Word sample_word(const TransitionMatrix& p, Start start, long long n, RandomStream& rs) {
  const int m = p.size();
  if (n < 0) throw std::invalid_argument("sample_word: n < 0");
  std::vector<double> cum(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      acc += p(i, j);
      cum[static_cast<std::size_t>(i) * m + j] = acc;
    }
  }

  int x;
  if (start.from_stationary) {
    const std::vector<double> pi = stationary(p);
    std::vector<double> pc(m);
    double acc = 0.0;
    for (int j = 0; j < m; ++j) {
      acc += pi[j];
      pc[j] = acc;
    }
    x = sample_index(pc.data(), m, rs.uniform());
  } else {
    if (start.state0 < 0 || start.state0 >= m)
      throw std::invalid_argument("sample_word: start state out of range");
    x = start.state0;
  }

  Word w;
  w.alphabet = m;
  w.letters.resize(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k) {
    x = sample_index(cum.data() + static_cast<std::size_t>(x) * m, m, rs.uniform());
    w.letters[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(x + 1);
  }
  return w;
}

Word sample_word(const TransitionMatrix& p, Start start, long long n,
                 std::uint64_t seed, std::uint64_t stream) {
  RandomStream rs(seed, stream);
  return sample_word(p, start, n, rs);
}

TransitionMatrix chain_from_json(const nlohmann::json& spec) {
  const std::string kind = spec.value("kind", "explicit");
  if (kind == "explicit") {
    const auto& rows = spec.at("entries");
    const int m = spec.contains("m") ? spec.at("m").get<int>()
                                     : static_cast<int>(rows.size());
    std::vector<double> e;
    e.reserve(static_cast<std::size_t>(m) * m);
    if (static_cast<int>(rows.size()) != m)
      throw std::invalid_argument("chain spec: entries row count != m");
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != m)
        throw std::invalid_argument("chain spec: entries column count != m");
      for (const auto& v : row) e.push_back(v.get<double>());
    }
    return TransitionMatrix(m, std::move(e));
  }
  if (kind == "cyclic") return TransitionMatrix::cyclic(spec.at("a").get<std::vector<double>>());
  if (kind == "iid") return TransitionMatrix::iid(spec.at("pi").get<std::vector<double>>());
  if (kind == "lazy")
    return TransitionMatrix::lazy(chain_from_json(spec.at("p0")),
                                  spec.at("delta").get<double>());
  throw std::invalid_argument("chain spec: unknown kind '" + kind + "'");
}

nlohmann::json chain_to_json(const TransitionMatrix& p) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < p.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < p.size(); ++j) row.push_back(p(i, j));
    rows.push_back(std::move(row));
  }
  return {{"kind", "explicit"}, {"m", p.size()}, {"entries", std::move(rows)}};
}

}  // namespace rsk::markov
