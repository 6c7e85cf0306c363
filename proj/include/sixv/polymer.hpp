#pragma once

#include "sixv/parallel.hpp"
#include "sixv/perm.hpp"
#include "sixv/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixv {

/*
  Monte Carlo degenerations of the model: the Beta and Gamma directed
  polymers on the grid with vertical and diagonal edges.  This layer is the
  only one that uses floating point; the statements it checks are
  distributional and verified statistically.
*/

struct BetaParams {
  std::vector<double> sigma; // sigma[i] for column i >= 0
  std::vector<double> rho;   // rho[j-1] for row j >= 1

  double sigma_at(long i) const {
    if (i < 0 || i >= static_cast<long>(sigma.size()))
      throw std::invalid_argument("sigma index out of range");
    return sigma[static_cast<std::size_t>(i)];
  }
  double rho_at(long j) const {
    if (j < 1 || j > static_cast<long>(rho.size()))
      throw std::invalid_argument("rho index out of range");
    return rho[static_cast<std::size_t>(j - 1)];
  }
  void validate(long max_col, long max_row) const {
    for (long i = 0; i <= max_col; ++i)
      for (long j = 1; j <= max_row; ++j)
        if (!(0 < rho_at(j) && rho_at(j) < sigma_at(i)))
          throw std::invalid_argument("Beta parameters need 0 < rho_j < sigma_i");
  }
};

/*
  The disorder field is a pure function of (seed, i, j): queries with one seed
  and overlapping index ranges reuse bit-identical values, which is the
  coupling the joint-law statements require.
*/
inline double beta_disorder(std::uint64_t seed, long i, long j, const BetaParams& par) {
  Prng rng(derive_seed(seed, 0xbe7a, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
  double s = par.sigma_at(i), r = par.rho_at(j);
  return rng.next_beta(s - r, r);
}

inline double gamma_disorder(std::uint64_t seed, long i, long j, double kappa) {
  Prng rng(derive_seed(seed, 0x6a44a, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j)));
  return rng.next_gamma(kappa);
}

/*
  Delayed Beta polymer partition function on paths from (l,d) to (r,u) with
  steps (0,1) and (1,1); a vertical edge into (i,j) weighs eta_{i,j}, a
  diagonal edge weighs 1 - eta_{i,j}, and only edges weakly after the first
  vertical edge contribute.  The dynamic program keeps the still-all-diagonal
  mass in a separate layer whose edge weights are excluded.
*/
inline double beta_partition(long l, long d, long r, long u, const BetaParams& par,
                             std::uint64_t seed) {
  if (l > r || r - l > u - d) throw std::invalid_argument("need l <= r and r - l <= u - d");
  par.validate(r, u);
  std::size_t w = static_cast<std::size_t>(r - l + 1);
  std::vector<double> started(w, 0.0), pure(w, 0.0);
  pure[0] = 1.0;
  for (long j = d + 1; j <= u; ++j) {
    std::vector<double> nstarted(w, 0.0), npure(w, 0.0);
    for (long i = l; i <= r; ++i) {
      std::size_t c = static_cast<std::size_t>(i - l);
      double mass = started[c], virgin = pure[c];
      if (mass == 0.0 && virgin == 0.0) continue;
      double eta_up = beta_disorder(seed, i, j, par);
      nstarted[c] += (mass + virgin) * eta_up; // a vertical edge always counts
      if (i + 1 <= r) {
        double eta_diag = beta_disorder(seed, i + 1, j, par);
        nstarted[c + 1] += mass * (1.0 - eta_diag);
        npure[c + 1] += virgin; // diagonal before the first vertical: weight skipped
      }
    }
    started.swap(nstarted);
    pure.swap(npure);
  }
  return started[w - 1] + pure[w - 1];
}

// Gamma polymer: vertical weights Gamma(kappa), diagonal weights 1.
inline double gamma_partition(long l, long d, long r, long u, double kappa, std::uint64_t seed) {
  if (l > r || r - l > u - d) throw std::invalid_argument("need l <= r and r - l <= u - d");
  if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
  std::size_t w = static_cast<std::size_t>(r - l + 1);
  std::vector<double> z(w, 0.0);
  z[0] = 1.0;
  for (long j = d + 1; j <= u; ++j) {
    std::vector<double> nz(w, 0.0);
    for (long i = l; i <= r; ++i) {
      std::size_t c = static_cast<std::size_t>(i - l);
      if (z[c] == 0.0) continue;
      nz[c] += z[c] * gamma_disorder(seed, i, j, kappa);
      if (i + 1 <= r) nz[c + 1] += z[c];
    }
    z.swap(nz);
  }
  return z[w - 1];
}

// ---------------------------------------------------------------------------
// Intersection matrices and left-aligned cut tuples

using Matrix = std::vector<std::vector<double>>;

// IM_{i,j} = min(u_i,u_j) - max(d_i,d_j); clipped variant takes max(.,0).
inline Matrix intersection_matrix(const std::vector<double>& d, const std::vector<double>& u,
                                  bool clipped) {
  if (d.size() != u.size()) throw std::invalid_argument("d and u have different lengths");
  std::size_t m = d.size();
  Matrix im(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      double v = std::min(u[i], u[j]) - std::max(d[i], d[j]);
      im[i][j] = clipped ? std::max(v, 0.0) : v;
    }
  return im;
}

// Integer cut data C_i = (1, d_i+1, u_i, r_i); left-aligned when the top-right
// corners (r_i, u_i) sit on a common up-left path.
struct LeftAlignedCuts {
  std::vector<long> d, u, r;

  std::size_t size() const { return d.size(); }
};

inline bool is_left_aligned(const LeftAlignedCuts& c) {
  if (c.d.size() != c.u.size() || c.d.size() != c.r.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c.d[i] < 0 || c.u[i] < c.d[i] || c.r[i] < 0) return false;
    if (c.r[i] > c.u[i] - c.d[i]) return false; // Z(0,d,r,u) needs r <= u - d
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c.r[i] < c.r[j] && c.u[i] < c.u[j]) return false;
  }
  return true;
}

/*
  Row bijection realizing equal clipped intersection matrices, as integer
  intervals A_i = [d_i+1, u_i].  Positions are matched atom by atom of the
  Venn diagram of the intervals (order-preserving inside each atom); equality
  of all atom cardinalities is exactly the solvability condition, and for
  intervals it is equivalent to IM+ equality.
*/
inline std::optional<Perm> left_aligned_check(const LeftAlignedCuts& a, const LeftAlignedCuts& b) {
  if (!is_left_aligned(a) || !is_left_aligned(b)) throw std::invalid_argument("tuple not left-aligned");
  if (a.size() != b.size()) return std::nullopt;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.r[i] != b.r[i]) return std::nullopt;
  long w = 1;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max({w, a.u[i], b.u[i]});
  auto signature = [&](const LeftAlignedCuts& c, long k) {
    std::uint64_t sig = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c.d[i] + 1 <= k && k <= c.u[i]) sig |= 1ULL << i;
    return sig;
  };
  std::map<std::uint64_t, std::vector<long>> atoms_a, atoms_b;
  for (long k = 1; k <= w; ++k) {
    atoms_a[signature(a, k)].push_back(k);
    atoms_b[signature(b, k)].push_back(k);
  }
  if (atoms_a.size() != atoms_b.size()) return std::nullopt;
  std::vector<int> img(static_cast<std::size_t>(w), 0);
  for (const auto& [sig, ka] : atoms_a) {
    auto it = atoms_b.find(sig);
    if (it == atoms_b.end() || it->second.size() != ka.size()) return std::nullopt;
    for (std::size_t t = 0; t < ka.size(); ++t)
      img[static_cast<std::size_t>(ka[t] - 1)] = static_cast<int>(it->second[t]);
  }
  return Perm(std::move(img));
}

// ---------------------------------------------------------------------------
// Two-sample statistics

inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i; // consume ties on both sides before
    while (j < b.size() && b[j] == v) ++j; // comparing the empirical CDFs
    d = std::max(d, std::abs(static_cast<double>(i) / static_cast<double>(a.size()) -
                             static_cast<double>(j) / static_cast<double>(b.size())));
  }
  return d;
}

// asymptotic two-sided p-value of the two-sample KS statistic
inline double ks_pvalue(double d, std::size_t n1, std::size_t n2) {
  double ne = static_cast<double>(n1) * static_cast<double>(n2) /
              (static_cast<double>(n1) + static_cast<double>(n2));
  double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

/*
  Energy-distance two-sample test on vectors, with a permutation p-value.
  Runs on a subsample; the pooled pairwise distances are computed once and the
  permutations only reindex them.
*/
struct EnergyTest {
  double statistic = 0.0;
  double p_value = 1.0;
};

inline EnergyTest energy_distance_test(const std::vector<std::vector<double>>& xs,
                                       const std::vector<std::vector<double>>& ys,
                                       std::size_t subsample, int permutations,
                                       std::uint64_t seed) {
  Prng rng(derive_seed(seed, 0xe6e4da));
  auto pick = [&](const std::vector<std::vector<double>>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) idx[i] = i;
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[rng.next_below(i)]);
    idx.resize(std::min(subsample, v.size()));
    std::vector<std::vector<double>> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(v[i]);
    return out;
  };
  std::vector<std::vector<double>> pool = pick(xs);
  std::size_t nx = pool.size();
  for (auto& v : pick(ys)) pool.push_back(v);
  std::size_t total = pool.size(), ny = total - nx;
  std::vector<double> dist(total * total, 0.0);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = i + 1; j < total; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < pool[i].size(); ++c) {
        double t = pool[i][c] - pool[j][c];
        s += t * t;
      }
      dist[i * total + j] = dist[j * total + i] = std::sqrt(s);
    }
  auto energy = [&](const std::vector<std::size_t>& labels) {
    double dxy = 0.0, dxx = 0.0, dyy = 0.0;
    for (std::size_t i = 0; i < total; ++i)
      for (std::size_t j = i + 1; j < total; ++j) {
        double v = dist[i * total + j];
        if (labels[i] != labels[j])
          dxy += v;
        else if (labels[i] == 0)
          dxx += v;
        else
          dyy += v;
      }
    double fx = static_cast<double>(nx), fy = static_cast<double>(ny);
    return 2.0 * dxy / (fx * fy) - 2.0 * dxx / (fx * fx) - 2.0 * dyy / (fy * fy);
  };
  std::vector<std::size_t> labels(total, 1);
  for (std::size_t i = 0; i < nx; ++i) labels[i] = 0;
  EnergyTest out;
  out.statistic = energy(labels);
  int at_least = 1; // observed statistic counts toward the tail
  std::vector<std::size_t> shuffled = labels;
  for (int b = 0; b < permutations; ++b) {
    for (std::size_t i = total; i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
    if (energy(shuffled) >= out.statistic) ++at_least;
  }
  out.p_value = static_cast<double>(at_least) / static_cast<double>(permutations + 1);
  return out;
}

// ---------------------------------------------------------------------------
// Shift-invariance of the Beta polymer

struct ShiftTestSpec {
  LeftAlignedCuts cuts_a, cuts_b;
  BetaParams params;
  std::optional<Perm> row_map; // phi_V; derived from the cut data when absent
  bool permute_rho = true;     // negative controls keep rho unpermuted
};

struct CoordinateStat {
  double ks = 0.0;
  double p_value = 1.0;
};

struct ShiftTestReport {
  std::vector<CoordinateStat> coords;
  EnergyTest energy;
  std::size_t samples = 0;
  double significance = 0.01;
  bool rejected = false;

  double bonferroni_level() const {
    return coords.empty() ? significance : significance / static_cast<double>(coords.size());
  }
};

inline std::vector<std::vector<double>> sample_beta_vectors(const LeftAlignedCuts& cuts,
                                                            const BetaParams& par,
                                                            std::size_t samples, std::uint64_t seed,
                                                            std::uint64_t stream,
                                                            unsigned workers = 1) {
  std::vector<std::vector<double>> out(samples);
  parallel_for(samples, workers, [&](std::size_t k) {
    std::uint64_t s = derive_seed(seed, stream, k);
    std::vector<double> v;
    v.reserve(cuts.size());
    for (std::size_t i = 0; i < cuts.size(); ++i)
      v.push_back(beta_partition(0, cuts.d[i], cuts.r[i], cuts.u[i], par, s));
    out[k] = std::move(v);
  });
  return out;
}

inline ShiftTestReport shift_invariance_test(const ShiftTestSpec& spec, std::size_t samples,
                                             std::uint64_t seed, unsigned workers = 1,
                                             double significance = 0.01) {
  Perm phi;
  if (spec.row_map) {
    phi = *spec.row_map;
  } else {
    auto found = left_aligned_check(spec.cuts_a, spec.cuts_b);
    if (!found) throw std::invalid_argument("intersection matrices differ; no row bijection exists");
    phi = *found;
  }
  BetaParams rhs = spec.params;
  if (spec.permute_rho) {
    Perm inv = phi.inverse();
    long rows = static_cast<long>(spec.params.rho.size());
    for (long j = 1; j <= rows; ++j) {
      long src = j <= inv.n() ? inv(static_cast<int>(j)) : j;
      rhs.rho[static_cast<std::size_t>(j - 1)] = spec.params.rho_at(src);
    }
  }
  auto xs = sample_beta_vectors(spec.cuts_a, spec.params, samples, seed, 1, workers);
  auto ys = sample_beta_vectors(spec.cuts_b, rhs, samples, seed, 2, workers);
  ShiftTestReport rep;
  rep.samples = samples;
  rep.significance = significance;
  for (std::size_t c = 0; c < spec.cuts_a.size(); ++c) {
    std::vector<double> a(samples), b(samples);
    for (std::size_t k = 0; k < samples; ++k) {
      a[k] = xs[k][c];
      b[k] = ys[k][c];
    }
    double d = ks_statistic(a, b);
    rep.coords.push_back({d, ks_pvalue(d, samples, samples)});
  }
  rep.energy = energy_distance_test(xs, ys, 700, 199, derive_seed(seed, 3));
  double level = rep.bonferroni_level();
  for (const auto& c : rep.coords)
    if (c.p_value < level) rep.rejected = true;
  if (rep.energy.p_value < significance) rep.rejected = true;
  return rep;
}

/*
  Beta-to-Gamma degeneration: with rho = 1/eps and sigma = 1/eps + kappa the
  rescaled partition function Z_B / eps^{#vertical} approaches the Gamma
  polymer law as eps -> 0.  Returns the KS distances for the requested eps
  values; they should decrease.
*/
inline std::vector<double> gamma_degeneration_distances(long l, long d, long r, long u,
                                                        double kappa,
                                                        const std::vector<double>& eps_values,
                                                        std::size_t samples, std::uint64_t seed,
                                                        unsigned workers = 1) {
  std::vector<double> gamma_samples(samples);
  parallel_for(samples, workers, [&](std::size_t k) {
    gamma_samples[k] = gamma_partition(l, d, r, u, kappa, derive_seed(seed, 0x6a44a0, k));
  });
  long verticals = (u - d) - (r - l);
  std::vector<double> out;
  for (std::size_t e = 0; e < eps_values.size(); ++e) {
    double eps = eps_values[e];
    BetaParams par;
    par.sigma.assign(static_cast<std::size_t>(r + 1), 1.0 / eps + kappa);
    par.rho.assign(static_cast<std::size_t>(u), 1.0 / eps);
    std::vector<double> beta_samples(samples);
    parallel_for(samples, workers, [&](std::size_t k) {
      double z = beta_partition(l, d, r, u, par, derive_seed(seed, e + 1, k));
      beta_samples[k] = z / std::pow(eps, static_cast<double>(verticals));
    });
    out.push_back(ks_statistic(beta_samples, gamma_samples));
  }
  return out;
}

} // namespace sixv
