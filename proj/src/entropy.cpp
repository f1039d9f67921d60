#include "punity/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "punity/join_kernel.hpp"
#include "punity/sum.hpp"

namespace punity {

double static_metric_entropy(const ShiftMeasure& mu, const PartitionOfUnity& p) {
  if (mu.system() != p.system())
    throw std::invalid_argument("static_metric_entropy: measure and partition on different systems");
  const int d = p.depth();
  std::vector<double> wt = mu.word_weights(d);
  NeumaierSum h;
  for (int i = 0; i < p.size(); ++i) {
    const std::vector<double>& vals = p.member(i).values();
    double mass = 0.0, eta_int = 0.0;
    for (size_t w = 0; w < vals.size(); ++w) {
      mass += wt[w] * vals[w];
      eta_int += wt[w] * xlogx(vals[w]);
    }
    h.add(-xlogx(mass));
    h.add(eta_int);
  }
  return h.value();
}

double conditional_static_entropy(const ShiftMeasure& mu, const PartitionOfUnity& phi,
                                  const PartitionOfUnity& psi) {
  if (mu.system() != phi.system() || mu.system() != psi.system())
    throw std::invalid_argument("conditional_static_entropy: mismatched systems");
  const int d = std::max(phi.depth(), psi.depth());
  PartitionOfUnity f = phi.depth() == d ? phi : refine_partition(phi, d);
  PartitionOfUnity g = psi.depth() == d ? psi : refine_partition(psi, d);
  std::vector<double> wt = mu.word_weights(d);
  const int W = static_cast<int>(wt.size());
  NeumaierSum total;
  for (int j = 0; j < g.size(); ++j) {
    const std::vector<double>& pv = g.member(j).values();
    double mass = 0.0;
    for (int w = 0; w < W; ++w) mass += wt[w] * pv[w];
    if (mass == 0.0) continue;
    NeumaierSum h;
    for (int i = 0; i < f.size(); ++i) {
      const std::vector<double>& fv = f.member(i).values();
      double cmass = 0.0, eta_int = 0.0;
      for (int w = 0; w < W; ++w) {
        const double t = wt[w] * pv[w];
        if (t == 0.0) continue;
        cmass += t * fv[w];
        eta_int += t * xlogx(fv[w]);
      }
      h.add(-xlogx(cmass / mass));
      h.add(eta_int / mass);
    }
    total.add(mass * h.value());
  }
  return total.value();
}

double static_topological_entropy(const PartitionOfUnity& p) {
  NeumaierSum s;
  for (int i = 0; i < p.size(); ++i) s.add(p.member(i).max_value());
  return s.value();
}

namespace {

// Members indexed by their own depth-k words taking value hi on the matching
// window and lo > 0 elsewhere (cylinder indicators smoothed uniformly).  Join
// member values then depend on the window match count only, which admits a
// boundary-state dynamic program instead of enumerating word supports.
struct UniformProfile {
  double lo = 0.0, hi = 0.0;
  std::vector<int32_t> word_of_member;
};

std::optional<UniformProfile> detect_uniform_profile(const PartitionOfUnity& p) {
  const WordSet& words = p.system()->words(p.depth());
  const int W = words.count();
  if (p.size() != W || W < 2) return std::nullopt;
  UniformProfile prof;
  prof.word_of_member.assign(p.size(), -1);
  std::vector<char> hit(W, 0);
  for (int i = 0; i < p.size(); ++i) {
    const std::vector<double>& v = p.member(i).values();
    // the off-diagonal value is whichever appears at least twice
    double lo = (W >= 3 && v[0] == v[1]) || (W >= 3 && v[0] == v[2]) ? v[0] : v[1];
    if (W == 2) lo = std::min(v[0], v[1]);
    int on = -1;
    for (int w = 0; w < W; ++w) {
      if (v[w] == lo) continue;
      if (on >= 0) return std::nullopt;
      on = w;
    }
    if (on < 0 || v[on] < lo) return std::nullopt;
    if (i == 0) {
      prof.lo = lo;
      prof.hi = v[on];
    } else if (lo != prof.lo || v[on] != prof.hi) {
      return std::nullopt;
    }
    if (hit[on]) return std::nullopt;
    hit[on] = 1;
    prof.word_of_member[i] = on;
  }
  return prof;
}

// Transition structure shared by every horizon of the profile DP.  States are
// the admissible (k-1)-words for k >= 2, or the symbols themselves for k = 1,
// where the first step draws from the stationary vector instead.
struct ProfileGraph {
  int state_count = 0;
  bool symbol_states = false;  // k == 1
  struct Edge {
    int from, to;
    int32_t window;
    int last_sym, sym;  // transition weight is P(last_sym, sym)
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> state_words;  // k >= 2 only, for initial weights
};

ProfileGraph build_profile_graph(const SystemPtr& sys, int k) {
  ProfileGraph g;
  const int a = sys->alphabet_size();
  if (k == 1) {
    g.symbol_states = true;
    g.state_count = a;
    for (int z = 0; z < a; ++z)
      for (int s = 0; s < a; ++s)
        if (sys->allowed(z, s)) g.edges.push_back({z, s, static_cast<int32_t>(s), z, s});
    return g;
  }
  const WordSet& states = sys->words(k - 1);
  const WordSet& windows = sys->words(k);
  g.state_count = states.count();
  std::vector<int> buf(k);
  for (int u = 0; u < states.count(); ++u) {
    std::span<const int> sw = states.word(u);
    g.state_words.emplace_back(sw.begin(), sw.end());
    const int last = sw[k - 2];
    for (int s = 0; s < a; ++s) {
      if (!sys->allowed(last, s)) continue;
      for (int t = 0; t < k - 1; ++t) buf[t] = sw[t];
      buf[k - 1] = s;
      int32_t win = windows.index_of(std::span<const int>(buf.data(), k));
      int to = states.index_of(std::span<const int>(buf.data() + 1, k - 1));
      g.edges.push_back({u, to, win, last, s});
    }
  }
  return g;
}

std::vector<SubadditiveTrace> profile_metric_traces(const std::vector<ShiftMeasure>& mus,
                                                    const PartitionOfUnity& p,
                                                    const UniformProfile& prof, int horizon,
                                                    EvalBudget* budget) {
  const SystemPtr sys = p.system();
  const int k = p.depth();
  const int M = static_cast<int>(mus.size());
  const int m = p.size();
  ProfileGraph graph = build_profile_graph(sys, k);
  const int S = graph.state_count;
  const double rho = prof.hi / prof.lo;
  const double log_rho = std::log(rho);
  const double log_lo = std::log(prof.lo);

  // per-edge transition weight for each measure
  std::vector<std::vector<double>> ew(graph.edges.size(), std::vector<double>(M));
  for (size_t e = 0; e < graph.edges.size(); ++e)
    for (int q = 0; q < M; ++q)
      ew[e][q] = mus[q].transition(graph.edges[e].last_sym, graph.edges[e].sym);

  std::vector<std::vector<double>> values(M);
  for (int n = 1; n <= horizon; ++n) {
    const double lon = std::pow(prof.lo, n);
    // cells[level]: S1, S2 per (state, measure), interleaved
    const size_t cells = static_cast<size_t>(S) * M * 2;
    std::vector<std::vector<double>> frame(n + 1, std::vector<double>(cells));
    std::vector<double>& init = frame[0];
    std::fill(init.begin(), init.end(), 0.0);
    if (!graph.symbol_states) {
      // boundary states seeded with their cylinder mass; for symbol states the
      // first transfer draws from the stationary vector instead
      for (int u = 0; u < S; ++u)
        for (int q = 0; q < M; ++q)
          init[(static_cast<size_t>(u) * M + q) * 2] = mus[q].cylinder_weight(graph.state_words[u]);
    }
    std::vector<NeumaierSum> acc(M);
    // depth-first over member choices with one DP frame per level
    std::vector<int> stack_member(n, 0);
    const auto transfer = [&](int level, int member) {
      const int32_t w = prof.word_of_member[member];
      std::vector<double>& child = frame[level + 1];
      std::fill(child.begin(), child.end(), 0.0);
      if (budget) budget->charge(static_cast<long long>(graph.edges.size()));
      if (graph.symbol_states && level == 0) {
        // first symbol drawn from the stationary vector
        for (int s = 0; s < S; ++s) {
          const bool match = (s == w);
          for (int q = 0; q < M; ++q) {
            const double t = mus[q].stationary()[s];
            size_t c = (static_cast<size_t>(s) * M + q) * 2;
            if (match) {
              child[c] += t * rho;
              child[c + 1] += t * rho;  // count contribution of the match
            } else {
              child[c] += t;
            }
          }
        }
        return;
      }
      const std::vector<double>& parent = frame[level];
      for (size_t e = 0; e < graph.edges.size(); ++e) {
        const ProfileGraph::Edge& ed = graph.edges[e];
        const bool match = (ed.window == w);
        const size_t pc = (static_cast<size_t>(ed.from) * M) * 2;
        const size_t cc = (static_cast<size_t>(ed.to) * M) * 2;
        for (int q = 0; q < M; ++q) {
          const double s1 = parent[pc + 2 * q];
          const double s2 = parent[pc + 2 * q + 1];
          const double t = ew[e][q];
          if (match) {
            child[cc + 2 * q] += s1 * t * rho;
            child[cc + 2 * q + 1] += (s2 + s1) * t * rho;
          } else {
            child[cc + 2 * q] += s1 * t;
            child[cc + 2 * q + 1] += s2 * t;
          }
        }
      }
    };
    const auto leaf = [&]() {
      const std::vector<double>& top = frame[n];
      for (int q = 0; q < M; ++q) {
        double s1 = 0.0, s2 = 0.0;
        for (int u = 0; u < S; ++u) {
          s1 += top[(static_cast<size_t>(u) * M + q) * 2];
          s2 += top[(static_cast<size_t>(u) * M + q) * 2 + 1];
        }
        const double mass = lon * s1;
        const double eta_int = lon * (n * log_lo * s1 + log_rho * s2);
        acc[q].add(-xlogx(mass));
        acc[q].add(eta_int);
      }
    };
    // iterative DFS over the m^n member tuples
    int level = 0;
    stack_member[0] = 0;
    while (level >= 0) {
      if (stack_member[level] == m) {
        --level;
        if (level >= 0) ++stack_member[level];
        continue;
      }
      transfer(level, stack_member[level]);
      if (level + 1 == n) {
        leaf();
        ++stack_member[level];
      } else {
        ++level;
        stack_member[level] = 0;
      }
    }
    for (int q = 0; q < M; ++q) values[q].push_back(acc[q].value());
  }
  std::vector<SubadditiveTrace> out;
  out.reserve(M);
  for (int q = 0; q < M; ++q) out.emplace_back(std::move(values[q]));
  return out;
}

std::vector<SubadditiveTrace> general_metric_traces(const std::vector<ShiftMeasure>& mus,
                                                    const PartitionOfUnity& p, int horizon,
                                                    EvalBudget* budget) {
  const int M = static_cast<int>(mus.size());
  std::vector<std::vector<double>> values(M);
  for (int n = 1; n <= horizon; ++n) {
    const int D = p.depth() + n - 1;
    JoinEnumerator je(p, n, D, /*with_logs=*/true, budget);
    std::vector<std::vector<double>> wt(M);
    for (int q = 0; q < M; ++q) wt[q] = mus[q].word_weights(D);
    std::vector<NeumaierSum> acc(M);
    je.for_each([&](std::span<const int>, const JoinFrame& leaf) {
      const size_t sz = leaf.idx.size();
      for (int q = 0; q < M; ++q) {
        const std::vector<double>& w = wt[q];
        double mass = 0.0, eta_int = 0.0;
        for (size_t e = 0; e < sz; ++e) {
          const double t = w[leaf.idx[e]] * leaf.val[e];
          mass += t;
          eta_int += t * leaf.logv[e];
        }
        acc[q].add(-xlogx(mass));
        acc[q].add(eta_int);
      }
    });
    for (int q = 0; q < M; ++q) values[q].push_back(acc[q].value());
  }
  std::vector<SubadditiveTrace> out;
  out.reserve(M);
  for (int q = 0; q < M; ++q) out.emplace_back(std::move(values[q]));
  return out;
}

struct LogSumExp {
  double peak = -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  void add(double x) {
    if (x <= peak) {
      acc += std::exp(x - peak);
    } else {
      acc = acc * std::exp(peak - x) + 1.0;
      peak = x;
    }
  }
  double value() const { return peak + std::log(acc); }
};

}  // namespace

namespace detail {

std::vector<SubadditiveTrace> metric_entropy_traces_general(const std::vector<ShiftMeasure>& mus,
                                                            const PartitionOfUnity& p, int horizon,
                                                            EvalBudget* budget) {
  return general_metric_traces(mus, p, horizon, budget);
}

}  // namespace detail

std::vector<SubadditiveTrace> metric_entropy_traces(const std::vector<ShiftMeasure>& mus,
                                                    const PartitionOfUnity& p, int horizon,
                                                    EvalBudget* budget) {
  if (mus.empty()) throw std::invalid_argument("metric_entropy_traces: no measures");
  for (const ShiftMeasure& mu : mus)
    if (mu.system() != p.system())
      throw std::invalid_argument("metric_entropy_traces: measure on a different system");
  if (horizon < 1) throw std::invalid_argument("metric_entropy_traces: horizon must be >= 1");
  if (std::optional<UniformProfile> prof = detect_uniform_profile(p);
      prof && prof->lo > 0.0 && horizon * std::log(prof->hi / prof->lo) < 600.0) {
    return profile_metric_traces(mus, p, *prof, horizon, budget);
  }
  return general_metric_traces(mus, p, horizon, budget);
}

SubadditiveTrace metric_entropy_trace(const ShiftMeasure& mu, const PartitionOfUnity& p,
                                      int horizon, EvalBudget* budget) {
  return std::move(metric_entropy_traces({mu}, p, horizon, budget)[0]);
}

LimitEstimate local_metric_entropy(const ShiftMeasure& mu, const PartitionOfUnity& p, int horizon,
                                   EvalBudget* budget) {
  return fekete(metric_entropy_trace(mu, p, horizon, budget));
}

SubadditiveTrace topological_entropy_trace(const PartitionOfUnity& p, int horizon,
                                           EvalBudget* budget) {
  if (horizon < 1) throw std::invalid_argument("topological_entropy_trace: horizon must be >= 1");
  std::vector<double> values;
  for (int n = 1; n <= horizon; ++n) {
    JoinEnumerator je(p, n, p.depth() + n - 1, /*with_logs=*/false, budget);
    NeumaierSum sum;
    je.for_each([&](std::span<const int>, const JoinFrame& leaf) {
      double best = 0.0;
      for (double v : leaf.val) best = std::max(best, v);
      sum.add(best);
    });
    values.push_back(std::log(sum.value()));
  }
  return SubadditiveTrace(std::move(values));
}

LimitEstimate local_topological_entropy(const PartitionOfUnity& p, int horizon,
                                        EvalBudget* budget) {
  return fekete(topological_entropy_trace(p, horizon, budget));
}

SubadditiveTrace pressure_trace(const Potential& g, const PartitionOfUnity& p, int horizon,
                                EvalBudget* budget) {
  if (g.system() != p.system())
    throw std::invalid_argument("pressure_trace: potential and partition on different systems");
  if (horizon < 1) throw std::invalid_argument("pressure_trace: horizon must be >= 1");
  std::vector<double> values;
  for (int n = 1; n <= horizon; ++n) {
    const int D = std::max(p.depth(), g.depth()) + n - 1;
    const WordSet& words = p.system()->words(D);
    const WordSet& gw = p.system()->words(g.depth());
    std::vector<double> birkhoff(words.count(), 0.0);
    for (int j = 0; j < n; ++j) {
      std::vector<int32_t> map = words.window_map(gw, j);
      for (int w = 0; w < words.count(); ++w) birkhoff[w] += g.value_by_index(map[w]);
    }
    JoinEnumerator je(p, n, D, /*with_logs=*/true, budget);
    LogSumExp lse;
    je.for_each([&](std::span<const int>, const JoinFrame& leaf) {
      double best = -std::numeric_limits<double>::infinity();
      for (size_t e = 0; e < leaf.idx.size(); ++e)
        best = std::max(best, leaf.logv[e] + birkhoff[leaf.idx[e]]);
      lse.add(best);
    });
    values.push_back(lse.value());
  }
  return SubadditiveTrace(std::move(values));
}

LimitEstimate topological_pressure(const Potential& g, const PartitionOfUnity& p, int horizon,
                                   EvalBudget* budget) {
  return fekete(pressure_trace(g, p, horizon, budget));
}

LimitEstimate metric_pressure(const ShiftMeasure& mu, const Potential& g,
                              const PartitionOfUnity& p, int horizon, EvalBudget* budget) {
  LimitEstimate est = local_metric_entropy(mu, p, horizon, budget);
  const double shift = mu.integrate(g);
  est.inf_ratio += shift;
  est.last_ratio += shift;
  est.last_difference += shift;
  return est;
}

SystemPtr product_system(const SystemPtr& x, const SystemPtr& y) {
  const int ax = x->alphabet_size(), ay = y->alphabet_size();
  std::vector<std::pair<int, int>> forbidden;
  for (int a = 0; a < ax; ++a)
    for (int b = 0; b < ay; ++b)
      for (int a2 = 0; a2 < ax; ++a2)
        for (int b2 = 0; b2 < ay; ++b2)
          if (!x->allowed(a, a2) || !y->allowed(b, b2))
            forbidden.emplace_back(a * ay + b, a2 * ay + b2);
  return SubshiftSystem::forbidden_pairs(ax * ay, forbidden);
}

ShiftMeasure product_measure(const ShiftMeasure& mu_x, const ShiftMeasure& mu_y,
                             const SystemPtr& product) {
  const int ax = mu_x.system()->alphabet_size(), ay = mu_y.system()->alphabet_size();
  if (product->alphabet_size() != ax * ay)
    throw std::invalid_argument("product_measure: product system alphabet mismatch");
  const int n = ax * ay;
  std::vector<std::vector<double>> P(n, std::vector<double>(n));
  std::vector<double> pi(n);
  for (int a = 0; a < ax; ++a)
    for (int b = 0; b < ay; ++b) {
      pi[a * ay + b] = mu_x.stationary()[a] * mu_y.stationary()[b];
      for (int a2 = 0; a2 < ax; ++a2)
        for (int b2 = 0; b2 < ay; ++b2)
          P[a * ay + b][a2 * ay + b2] = mu_x.transition(a, a2) * mu_y.transition(b, b2);
    }
  return ShiftMeasure::markov(product, P, pi);
}

PartitionOfUnity product_partition(const PartitionOfUnity& px, const PartitionOfUnity& py,
                                   const SystemPtr& product) {
  const int ay = py.system()->alphabet_size();
  const int d = std::max(px.depth(), py.depth());
  PartitionOfUnity fx = px.depth() == d ? px : refine_partition(px, d);
  PartitionOfUnity fy = py.depth() == d ? py : refine_partition(py, d);
  const WordSet& words = product->words(d);
  std::vector<int> xw(d), yw(d);
  std::vector<LocallyConstantFunction> members;
  members.reserve(static_cast<size_t>(fx.size()) * fy.size());
  for (int i = 0; i < fx.size(); ++i)
    for (int j = 0; j < fy.size(); ++j) {
      std::vector<double> vals(words.count());
      for (int w = 0; w < words.count(); ++w) {
        std::span<const int> pw = words.word(w);
        for (int t = 0; t < d; ++t) {
          xw[t] = pw[t] / ay;
          yw[t] = pw[t] % ay;
        }
        vals[w] = fx.member(i).value_on(xw) * fy.member(j).value_on(yw);
      }
      members.emplace_back(product, d, std::move(vals));
    }
  return PartitionOfUnity(std::move(members));
}

ProductCheckReport product_entropy_check(const ShiftMeasure& mu_x, const PartitionOfUnity& px,
                                         const ShiftMeasure& mu_y, const PartitionOfUnity& py,
                                         int horizon, EvalBudget* budget) {
  SystemPtr prod = product_system(mu_x.system(), mu_y.system());
  ShiftMeasure mu = product_measure(mu_x, mu_y, prod);
  PartitionOfUnity pp = product_partition(px, py, prod);
  ProductCheckReport rep;
  rep.left = metric_entropy_trace(mu_x, px, horizon, budget).values();
  rep.right = metric_entropy_trace(mu_y, py, horizon, budget).values();
  rep.product = metric_entropy_trace(mu, pp, horizon, budget).values();
  rep.lower_ok.resize(horizon);
  rep.upper_ok.resize(horizon);
  rep.pass = true;
  for (int n = 0; n < horizon; ++n) {
    const double lo = std::max(rep.left[n], rep.right[n]);
    rep.lower_ok[n] = lo <= rep.product[n] + kSubadditivityTol;
    rep.upper_ok[n] = rep.product[n] <= rep.left[n] + rep.right[n] + kSubadditivityTol;
    if (!rep.lower_ok[n] || !rep.upper_ok[n]) rep.pass = false;
  }
  return rep;
}

}  // namespace punity
