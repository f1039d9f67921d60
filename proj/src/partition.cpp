#include "punity/partition.hpp"

#include <algorithm>
#include <cmath>

namespace punity {

PartitionReport validate_members(const std::vector<LocallyConstantFunction>& members) {
  if (members.empty()) throw std::invalid_argument("partition needs at least one member");
  const SystemPtr& sys = members.front().system();
  int depth = 1;
  for (const auto& m : members) {
    if (m.system() != sys) throw std::invalid_argument("partition members on different systems");
    depth = std::max(depth, m.depth());
  }
  const WordSet& ws = sys->words(depth);
  PartitionReport rep;
  rep.residuals.assign(ws.count(), -1.0);
  std::vector<std::vector<double>> refined;
  refined.reserve(members.size());
  for (const auto& m : members) refined.push_back(m.refine_to_depth(depth).values());
  for (int w = 0; w < ws.count(); ++w) {
    double s = 0.0;
    for (const auto& vals : refined) s += vals[w];
    rep.residuals[w] = std::abs(s - 1.0);
    rep.max_residual = std::max(rep.max_residual, rep.residuals[w]);
  }
  rep.pass = rep.max_residual <= kPartitionSumTol;
  return rep;
}

PartitionOfUnity::PartitionOfUnity(std::vector<LocallyConstantFunction> members) {
  PartitionReport rep = validate_members(members);
  if (!rep.pass)
    throw std::invalid_argument("partition members do not sum to one (max residual " +
                                std::to_string(rep.max_residual) + ")");
  system_ = members.front().system();
  depth_ = 1;
  for (const auto& m : members) depth_ = std::max(depth_, m.depth());
  members_.reserve(members.size());
  for (auto& m : members) members_.push_back(m.refine_to_depth(depth_));
  indicator_ = true;
  positive_ = true;
  for (const auto& m : members_)
    for (double v : m.values()) {
      if (v < 0.0 || v > 1.0)
        throw std::invalid_argument("partition member value outside [0,1]");
      if (v != 0.0 && v != 1.0) indicator_ = false;
      if (v == 0.0) positive_ = false;
    }
}

PartitionOfUnity PartitionOfUnity::shift_pullback() const {
  std::vector<LocallyConstantFunction> shifted;
  shifted.reserve(members_.size());
  for (const auto& m : members_) shifted.push_back(m.shift_pullback());
  return PartitionOfUnity(std::move(shifted));
}

PartitionOfUnity make_cylinder_partition(SystemPtr system, int depth) {
  const WordSet& ws = system->words(depth);
  std::vector<LocallyConstantFunction> members;
  members.reserve(ws.count());
  for (int i = 0; i < ws.count(); ++i) {
    std::vector<double> vals(ws.count(), 0.0);
    vals[i] = 1.0;
    members.emplace_back(system, depth, std::move(vals));
  }
  return PartitionOfUnity(std::move(members));
}

PartitionOfUnity make_smoothed_partition(SystemPtr system, int depth, double lambda) {
  if (lambda < 0.0 || lambda >= 1.0)
    throw std::invalid_argument("smoothing parameter must lie in [0,1)");
  const WordSet& ws = system->words(depth);
  const double floor = lambda / ws.count();
  std::vector<LocallyConstantFunction> members;
  members.reserve(ws.count());
  for (int i = 0; i < ws.count(); ++i) {
    std::vector<double> vals(ws.count(), floor);
    vals[i] += 1.0 - lambda;
    members.emplace_back(system, depth, std::move(vals));
  }
  return PartitionOfUnity(std::move(members));
}

PartitionOfUnity refine_partition(const PartitionOfUnity& p, int depth) {
  std::vector<LocallyConstantFunction> members;
  members.reserve(p.size());
  for (int i = 0; i < p.size(); ++i) members.push_back(p.member(i).refine_to_depth(depth));
  return PartitionOfUnity(std::move(members));
}

PartitionOfUnity scale_copies(const PartitionOfUnity& p, int k) {
  if (k < 1) throw std::invalid_argument("copy count must be >= 1");
  std::vector<LocallyConstantFunction> members;
  members.reserve(static_cast<size_t>(k) * p.size());
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < p.size(); ++i) {
      std::vector<double> vals = p.member(i).values();
      for (double& v : vals) v /= k;
      members.emplace_back(p.system(), p.depth(), std::move(vals));
    }
  return PartitionOfUnity(std::move(members));
}

namespace {

// Product members of two refined member lists, dropping identically zero
// products.  Work is |a| * |b| * word_count value multiplies.
std::vector<LocallyConstantFunction> product_members(const SystemPtr& sys, int depth,
                                                     const std::vector<std::vector<double>>& a,
                                                     const std::vector<std::vector<double>>& b,
                                                     EvalBudget* budget) {
  const int W = static_cast<int>(a.front().size());
  std::vector<LocallyConstantFunction> out;
  for (const auto& av : a)
    for (const auto& bv : b) {
      if (budget) budget->charge(W);
      std::vector<double> prod(W);
      bool live = false;
      for (int w = 0; w < W; ++w) {
        prod[w] = av[w] * bv[w];
        if (prod[w] != 0.0) live = true;
      }
      if (live) out.emplace_back(sys, depth, std::move(prod));
    }
  return out;
}

std::vector<std::vector<double>> refined_values(const PartitionOfUnity& p, int depth) {
  std::vector<std::vector<double>> out;
  out.reserve(p.size());
  for (int i = 0; i < p.size(); ++i) out.push_back(p.member(i).refine_to_depth(depth).values());
  return out;
}

}  // namespace

PartitionOfUnity join(const PartitionOfUnity& a, const PartitionOfUnity& b) {
  if (a.system() != b.system()) throw std::invalid_argument("join: partitions on different systems");
  const int depth = std::max(a.depth(), b.depth());
  auto members =
      product_members(a.system(), depth, refined_values(a, depth), refined_values(b, depth), nullptr);
  return PartitionOfUnity(std::move(members));
}

PartitionOfUnity iterate_join(const PartitionOfUnity& p, int n, EvalBudget* budget) {
  if (n < 1) throw std::invalid_argument("iterate_join: n must be >= 1");
  if (n == 1) return p;
  const int depth = p.depth() + n - 1;
  const WordSet& ws = p.system()->words(depth);
  if (!p.is_indicator() && budget) {
    double est = std::pow(static_cast<double>(p.size()), n) * ws.count();
    if (est > static_cast<double>(budget->limit()))
      throw budget_exceeded_error("iterate_join: estimated cost " + std::to_string(est) +
                                  " exceeds budget " + std::to_string(budget->limit()));
  }
  // Fold one shifted copy at a time; pruning keeps indicator folds linear.
  std::vector<std::vector<double>> acc = refined_values(p, depth);
  PartitionOfUnity shifted = p;
  for (int j = 1; j < n; ++j) {
    shifted = shifted.shift_pullback();
    std::vector<LocallyConstantFunction> next =
        product_members(p.system(), depth, acc, refined_values(shifted, depth), budget);
    acc.clear();
    acc.reserve(next.size());
    for (auto& m : next) acc.push_back(m.values());
  }
  std::vector<LocallyConstantFunction> members;
  members.reserve(acc.size());
  for (auto& v : acc) members.emplace_back(p.system(), depth, std::move(v));
  return PartitionOfUnity(std::move(members));
}

double diameter(const PartitionOfUnity& p) {
  const WordSet& ws = p.system()->words(p.depth());
  double best = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    const auto& vals = p.member(i).values();
    int first = -1;
    int lcp = p.depth();
    for (int w = 0; w < ws.count(); ++w) {
      if (vals[w] == 0.0) continue;
      if (first < 0) {
        first = w;
        continue;
      }
      auto u = ws.word(first);
      auto v = ws.word(w);
      int c = 0;
      while (c < lcp && u[c] == v[c]) ++c;
      lcp = std::min(lcp, c);
    }
    if (first < 0) throw std::logic_error("diameter: member with empty support");
    best = std::max(best, std::ldexp(1.0, -lcp));
  }
  return best;
}

}  // namespace punity
