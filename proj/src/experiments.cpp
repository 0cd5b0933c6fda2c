#include "hyperword/experiments.hpp"

#include "hyperword/spd.hpp"
#include "hyperword/tessellation.hpp"
#include "hyperword/words.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <iomanip>
#include <sstream>
#include <thread>

namespace hyperword {

std::string ExperimentReport::to_csv() const {
  std::ostringstream out;
  out << std::setprecision(17);
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

json ExperimentReport::to_json() const {
  json rs = json::array();
  for (const auto& row : rows) {
    json r = json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) r[columns[i]] = row[i];
    rs.push_back(r);
  }
  return {{"name", name}, {"params", params}, {"columns", columns}, {"rows", rs},
          {"summary", summary},   {"passed", passed}, {"failures", failures}};
}

namespace {

void check(ExperimentReport& r, bool ok, const std::string& what) {
  if (!ok) {
    r.passed = false;
    r.failures.push_back(what);
  }
}

bool all_finite(const ExperimentReport& r) {
  for (const auto& row : r.rows)
    for (double x : row)
      if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

ExperimentReport experiment_d2(std::int64_t n_max) {
  if (n_max < 4) throw std::invalid_argument("experiment d2 needs n_max >= 4");
  ExperimentReport r;
  r.name = "d2";
  r.params = {{"n_max", n_max}};
  r.columns = {"n", "word", "geometric", "ratio", "log_growth"};

  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= std::min<std::int64_t>(12, n_max); ++n) ns.push_back(n);
  for (std::int64_t p = 10; p <= n_max; p *= 10)
    for (std::int64_t m : {1, 2, 5})
      if (m * p > 12 && m * p <= n_max) ns.push_back(m * p);
  if (ns.back() != n_max) ns.push_back(n_max);

  const PslElement id(ExactMatrix::identity(2));
  double prev_ratio = 0;
  bool monotone_tail = true;
  for (std::int64_t n : ns) {
    PslElement g(u_power(n));
    double word = static_cast<double>(n);
    if (n <= 12) {
      auto bfs = bfs_word_length(g, sigma2(), 16);
      check(r, bfs && *bfs == n, "BFS length of u^" + std::to_string(n) + " differs from n");
      if (bfs) word = *bfs;
    }
    double geo = geometric_distance(id, g);
    double ratio = word / geo;
    double growth = geo / std::acosh(1.0 + static_cast<double>(n) * static_cast<double>(n) / 8.0);
    if (n >= 4 && ratio <= prev_ratio) monotone_tail = false;
    prev_ratio = ratio;
    r.rows.push_back({static_cast<double>(n), word, geo, ratio, growth});
  }
  check(r, all_finite(r), "non-finite value");
  r.summary = {{"ratio_first", r.rows.front()[3]},
               {"ratio_last", r.rows.back()[3]},
               {"ratio_increasing_from_n4", monotone_tail}};
  check(r, monotone_tail, "ratio is not increasing");
  return r;
}

ExperimentReport experiment_d3(int trials, int gen_len, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("experiment d3 needs trials >= 1");
  ExperimentReport r;
  r.name = "d3";
  r.params = {{"trials", trials}, {"gen_len", gen_len}, {"seed", seed}};
  r.columns = {"trial", "log_norm", "length", "geometric", "length_ratio", "geometric_ratio"};

  const GeneratorSet& s3 = sigma(3);
  std::mt19937_64 rng(seed);
  std::vector<ExactMatrix> gammas;
  for (int t = 0; t < trials; ++t) gammas.push_back(random_product(s3, gen_len, rng));

  struct Outcome {
    bool skipped = false, exact = true;
    std::vector<double> row;
  };
  auto run = [&](std::size_t t) {
    Outcome o;
    const ExactMatrix& g = gammas[t];
    if (PslElement(g).is_identity()) {
      o.skipped = true;
      return o;
    }
    Word w;
    try {
      w = short_word(g);
    } catch (const std::logic_error&) {
      o.exact = false;
      return o;
    }
    o.exact = PslElement(evaluate(w, s3)) == PslElement(g);
    double log_norm = log_operator_norm(g);
    double len = static_cast<double>(w.length());
    double geo = geometric_distance(PslElement(ExactMatrix::identity(3)), PslElement(g));
    o.row = {static_cast<double>(t), log_norm, len, geo, len / std::max(std::log(2.0), log_norm), geo / len};
    return o;
  };

  // Trials are keyed by index, so the report does not depend on scheduling.
  std::vector<Outcome> outcomes(gammas.size());
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::future<void>> jobs;
  for (std::size_t k = 0; k < workers; ++k)
    jobs.push_back(std::async(std::launch::async, [&, k] {
      for (std::size_t t = k; t < gammas.size(); t += workers) outcomes[t] = run(t);
    }));
  for (auto& j : jobs) j.get();

  int skipped = 0, inexact = 0;
  double k_hat = 0, c1_hat = 0;
  for (const auto& o : outcomes) {
    if (o.skipped) {
      ++skipped;
      continue;
    }
    if (!o.exact) {
      ++inexact;
      continue;
    }
    r.rows.push_back(o.row);
    k_hat = std::max(k_hat, o.row[4]);
    c1_hat = std::max(c1_hat, o.row[5]);
  }
  check(r, inexact == 0, std::to_string(inexact) + " words did not evaluate to their target");
  check(r, !r.rows.empty(), "every trial was skipped");
  check(r, all_finite(r), "non-finite value");
  r.summary = {{"K_hat", k_hat}, {"C1_hat", c1_hat}, {"skipped", skipped}, {"inexact", inexact}};
  return r;
}

ExperimentReport experiment_lattice(int k_max) {
  if (k_max < 1) throw std::invalid_argument("experiment lattice needs k_max >= 1");
  ExperimentReport r;
  r.name = "lattice";
  r.params = {{"k_max", k_max}};
  r.columns = {"k", "l", "word", "geometric", "ratio"};

  // Word lengths by BFS on the Cayley graph of Z² restricted to the box.
  const int side = 2 * k_max + 1;
  std::vector<int> dist(static_cast<std::size_t>(side) * side, -1);
  auto at = [&](int k, int l) -> int& { return dist[static_cast<std::size_t>(k + k_max) * side + (l + k_max)]; };
  std::deque<std::pair<int, int>> queue{{0, 0}};
  at(0, 0) = 0;
  const int moves[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (!queue.empty()) {
    auto [k, l] = queue.front();
    queue.pop_front();
    for (const auto& m : moves) {
      int nk = k + m[0], nl = l + m[1];
      if (std::abs(nk) > k_max || std::abs(nl) > k_max || at(nk, nl) >= 0) continue;
      at(nk, nl) = at(k, l) + 1;
      queue.push_back({nk, nl});
    }
  }

  double lo = 2, hi = 0;
  bool exact_bounds = true;
  for (int k = -k_max; k <= k_max; ++k)
    for (int l = -k_max; l <= k_max; ++l) {
      if (k == 0 && l == 0) continue;
      const long long w = at(k, l);
      const long long sq = 1LL * k * k + 1LL * l * l;
      // 1 <= w/√sq <= √2 checked in integers: sq <= w² <= 2 sq.
      exact_bounds = exact_bounds && sq <= w * w && w * w <= 2 * sq;
      double geo = std::sqrt(static_cast<double>(sq));
      double ratio = static_cast<double>(w) / geo;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      r.rows.push_back({static_cast<double>(k), static_cast<double>(l), static_cast<double>(w), geo, ratio});
    }
  check(r, exact_bounds, "ratio outside [1, sqrt 2]");
  r.summary = {{"ratio_min", lo}, {"ratio_max", hi}, {"within_bounds", exact_bounds}};
  return r;
}

}  // namespace hyperword
