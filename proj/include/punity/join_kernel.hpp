// join_kernel.hpp -- depth-first enumeration of iterated-join members without
// materializing them.  A member of the n-fold join is a product of one window
// factor per level; the kernel walks member tuples and hands each visitor the
// sparse support of the product over the refined word set.  Zero branches are
// pruned as soon as a partial product vanishes, so indicator partitions cost
// time linear in the admissible words rather than in the full member count.
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "punity/budget.hpp"
#include "punity/partition.hpp"

namespace punity {

// Sparse support of a (partial) product, sorted by refined word index.
struct JoinFrame {
  std::vector<int32_t> idx;
  std::vector<double> val;
  std::vector<double> logv;  // log of val, carried only when requested

  void clear() {
    idx.clear();
    val.clear();
    logv.clear();
  }
};

class JoinEnumerator {
 public:
  // refined_depth must be at least p.depth() + horizon - 1; a larger depth is
  // allowed (used when a potential or a second partition needs finer words).
  JoinEnumerator(const PartitionOfUnity& p, int horizon, int refined_depth, bool with_logs,
                 EvalBudget* budget)
      : p_(&p), n_(horizon), with_logs_(with_logs), budget_(budget) {
    if (horizon < 1) throw std::invalid_argument("JoinEnumerator: horizon must be >= 1");
    if (refined_depth < p.depth() + horizon - 1)
      throw std::invalid_argument("JoinEnumerator: refined depth too small for horizon");
    const WordSet& words = p.system()->words(refined_depth);
    W_ = words.count();
    m_ = p.size();
    const WordSet& base = p.system()->words(p.depth());
    factors_.resize(n_);
    if (with_logs_) log_factors_.resize(n_);
    for (int j = 0; j < n_; ++j) {
      std::vector<int32_t> map = words.window_map(base, j);
      factors_[j].resize(m_);
      if (with_logs_) log_factors_[j].resize(m_);
      for (int i = 0; i < m_; ++i) {
        std::vector<double>& col = factors_[j][i];
        col.resize(W_);
        for (int w = 0; w < W_; ++w) col[w] = p.member(i).value_by_index(map[w]);
        if (with_logs_) {
          std::vector<double>& lcol = log_factors_[j][i];
          lcol.resize(W_);
          for (int w = 0; w < W_; ++w) lcol[w] = col[w] > 0.0 ? std::log(col[w]) : 0.0;
        }
      }
    }
  }

  int word_count() const { return W_; }
  int horizon() const { return n_; }
  int member_count() const { return m_; }

  // visit(std::span<const int> tuple, const JoinFrame& leaf); tuple holds the
  // member index chosen at each level.
  template <class Visitor>
  void for_each(Visitor&& visit) const {
    JoinFrame root;
    root.idx.resize(W_);
    for (int w = 0; w < W_; ++w) root.idx[w] = w;
    root.val.assign(W_, 1.0);
    if (with_logs_) root.logv.assign(W_, 0.0);
    run(root, visit);
  }

  // Same walk but starting from a restricted support (values 1 there); used
  // for suprema over the support of a conditioning member.
  template <class Visitor>
  void for_each_from(std::span<const int32_t> init_support, Visitor&& visit) const {
    JoinFrame root;
    root.idx.assign(init_support.begin(), init_support.end());
    root.val.assign(root.idx.size(), 1.0);
    if (with_logs_) root.logv.assign(root.idx.size(), 0.0);
    run(root, visit);
  }

 private:
  template <class Visitor>
  void run(const JoinFrame& root, Visitor& visit) const {
    std::vector<JoinFrame> frames(n_);
    for (JoinFrame& f : frames) {
      f.idx.reserve(W_);
      f.val.reserve(W_);
      if (with_logs_) f.logv.reserve(W_);
    }
    std::vector<int> tuple;
    tuple.reserve(n_);
    dfs(0, root, tuple, frames, visit);
  }

  template <class Visitor>
  void dfs(int level, const JoinFrame& frame, std::vector<int>& tuple,
           std::vector<JoinFrame>& frames, Visitor& visit) const {
    if (level == n_) {
      visit(std::span<const int>(tuple), frame);
      return;
    }
    const size_t sz = frame.idx.size();
    for (int i = 0; i < m_; ++i) {
      if (budget_) budget_->charge(static_cast<long long>(sz));
      JoinFrame& child = frames[level];
      child.clear();
      const std::vector<double>& col = factors_[level][i];
      if (with_logs_) {
        const std::vector<double>& lcol = log_factors_[level][i];
        for (size_t e = 0; e < sz; ++e) {
          const int32_t w = frame.idx[e];
          const double v = frame.val[e] * col[w];
          if (v > 0.0) {
            child.idx.push_back(w);
            child.val.push_back(v);
            child.logv.push_back(frame.logv[e] + lcol[w]);
          }
        }
      } else {
        for (size_t e = 0; e < sz; ++e) {
          const int32_t w = frame.idx[e];
          const double v = frame.val[e] * col[w];
          if (v > 0.0) {
            child.idx.push_back(w);
            child.val.push_back(v);
          }
        }
      }
      if (child.idx.empty()) continue;
      tuple.push_back(i);
      dfs(level + 1, child, tuple, frames, visit);
      tuple.pop_back();
    }
  }

  const PartitionOfUnity* p_;
  int n_;
  int W_ = 0;
  int m_ = 0;
  bool with_logs_;
  EvalBudget* budget_;
  // factors_[level][member][refined word] = member value on that window
  std::vector<std::vector<std::vector<double>>> factors_;
  std::vector<std::vector<std::vector<double>>> log_factors_;
};

}  // namespace punity
