#include "punity/subshift.hpp"

#include <algorithm>
#include <cmath>

namespace punity {

double word_distance(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("word_distance: words must have equal length");
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return std::ldexp(1.0, -static_cast<int>(i));
  return std::ldexp(1.0, -static_cast<int>(a.size()));
}

double word_distance(const Word& a, const Word& b) {
  return word_distance(std::span<const int>(a.symbols), std::span<const int>(b.symbols));
}

WordSet::WordSet(int depth, std::vector<int32_t> flat)
    : depth_(depth), count_(static_cast<int>(flat.size()) / depth), flat_(std::move(flat)) {}

int WordSet::index_of(std::span<const int> w) const {
  if (static_cast<int>(w.size()) != depth_) return -1;
  int lo = 0, hi = count_;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    auto m = word(mid);
    int cmp = 0;
    for (int i = 0; i < depth_; ++i) {
      if (m[i] != w[i]) {
        cmp = m[i] < w[i] ? -1 : 1;
        break;
      }
    }
    if (cmp == 0) return mid;
    if (cmp < 0)
      lo = mid + 1;
    else
      hi = mid;
  }
  return -1;
}

std::vector<int32_t> WordSet::window_map(const WordSet& sub, int offset) const {
  if (offset < 0 || offset + sub.depth() > depth_)
    throw std::invalid_argument("window_map: window exceeds word depth");
  std::vector<int32_t> out(count_);
  std::vector<int> buf(sub.depth());
  for (int i = 0; i < count_; ++i) {
    auto w = word(i);
    for (int j = 0; j < sub.depth(); ++j) buf[j] = w[offset + j];
    int idx = sub.index_of(buf);
    if (idx < 0) throw std::logic_error("window_map: inadmissible window of admissible word");
    out[i] = idx;
  }
  return out;
}

SubshiftSystem::SubshiftSystem(int alphabet_size, std::vector<uint8_t> allow)
    : alphabet_(alphabet_size), allow_(std::move(allow)) {
  if (alphabet_ < 1) throw std::invalid_argument("alphabet size must be positive");
  full_ = std::all_of(allow_.begin(), allow_.end(), [](uint8_t v) { return v != 0; });
  // Strong connectivity: every symbol reaches every other along allowed pairs.
  for (int s = 0; s < alphabet_; ++s) {
    std::vector<uint8_t> seen(alphabet_, 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int t = 0; t < alphabet_; ++t)
        if (allowed(v, t) && !seen[t]) {
          seen[t] = 1;
          stack.push_back(t);
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw std::invalid_argument("transition relation is not irreducible");
  }
}

std::shared_ptr<const SubshiftSystem> SubshiftSystem::full_shift(int alphabet_size) {
  if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be positive");
  std::vector<uint8_t> allow(static_cast<size_t>(alphabet_size) * alphabet_size, 1);
  return std::shared_ptr<const SubshiftSystem>(new SubshiftSystem(alphabet_size, std::move(allow)));
}

std::shared_ptr<const SubshiftSystem> SubshiftSystem::forbidden_pairs(
    int alphabet_size, const std::vector<std::pair<int, int>>& forbidden) {
  if (alphabet_size < 1) throw std::invalid_argument("alphabet size must be positive");
  std::vector<uint8_t> allow(static_cast<size_t>(alphabet_size) * alphabet_size, 1);
  for (auto [i, j] : forbidden) {
    if (i < 0 || i >= alphabet_size || j < 0 || j >= alphabet_size)
      throw std::invalid_argument("forbidden pair out of alphabet range");
    allow[static_cast<size_t>(i) * alphabet_size + j] = 0;
  }
  return std::shared_ptr<const SubshiftSystem>(new SubshiftSystem(alphabet_size, std::move(allow)));
}

std::shared_ptr<const SubshiftSystem> SubshiftSystem::golden_mean() {
  return forbidden_pairs(2, {{1, 1}});
}

bool SubshiftSystem::admissible(std::span<const int> w) const {
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= alphabet_) return false;
    if (i + 1 < w.size() && !allowed(w[i], w[i + 1])) return false;
  }
  return !w.empty();
}

const WordSet& SubshiftSystem::words(int depth) const {
  if (depth < 1) throw std::invalid_argument("word depth must be >= 1");
  std::lock_guard<std::mutex> lock(cache_mu_);
  auto it = cache_.find(depth);
  if (it != cache_.end()) return *it->second;

  // Depth-first extension in symbol order yields lexicographic output.
  std::vector<int32_t> flat;
  std::vector<int> w;
  w.reserve(depth);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == depth) {
      flat.insert(flat.end(), w.begin(), w.end());
      return;
    }
    for (int s = 0; s < alphabet_; ++s) {
      if (pos > 0 && !allowed(w[pos - 1], s)) continue;
      w.push_back(s);
      self(self, pos + 1);
      w.pop_back();
    }
  };
  rec(rec, 0);
  auto ws = std::make_unique<WordSet>(depth, std::move(flat));
  const WordSet& ref = *ws;
  cache_.emplace(depth, std::move(ws));
  return ref;
}

LocallyConstantFunction::LocallyConstantFunction(SystemPtr system, int depth,
                                                std::vector<double> values)
    : system_(std::move(system)), depth_(depth), values_(std::move(values)) {
  if (!system_) throw std::invalid_argument("null system");
  const WordSet& ws = system_->words(depth_);
  if (static_cast<int>(values_.size()) != ws.count())
    throw std::invalid_argument("value table size does not match admissible word count");
}

LocallyConstantFunction LocallyConstantFunction::constant(SystemPtr system, double c) {
  std::vector<double> vals(system->words(1).count(), c);
  return LocallyConstantFunction(std::move(system), 1, std::move(vals));
}

LocallyConstantFunction LocallyConstantFunction::cylinder_indicator(SystemPtr system,
                                                                    const Word& w) {
  const WordSet& ws = system->words(w.length());
  int idx = ws.index_of(w.symbols);
  if (idx < 0) throw std::invalid_argument("cylinder_indicator: word not admissible");
  std::vector<double> vals(ws.count(), 0.0);
  vals[idx] = 1.0;
  return LocallyConstantFunction(std::move(system), w.length(), std::move(vals));
}

double LocallyConstantFunction::value_on(std::span<const int> w) const {
  if (static_cast<int>(w.size()) < depth_)
    throw std::invalid_argument("word shorter than function depth");
  int idx = system_->words(depth_).index_of(w.subspan(0, depth_));
  if (idx < 0) throw std::invalid_argument("value_on: inadmissible word");
  return values_[idx];
}

double LocallyConstantFunction::min_value() const {
  return *std::min_element(values_.begin(), values_.end());
}

double LocallyConstantFunction::max_value() const {
  return *std::max_element(values_.begin(), values_.end());
}

LocallyConstantFunction LocallyConstantFunction::refine_to_depth(int target) const {
  if (target < depth_) throw std::invalid_argument("refine_to_depth: target shallower than depth");
  if (target == depth_) return *this;
  const WordSet& fine = system_->words(target);
  std::vector<int32_t> map = fine.window_map(system_->words(depth_), 0);
  std::vector<double> vals(fine.count());
  for (int i = 0; i < fine.count(); ++i) vals[i] = values_[map[i]];
  return LocallyConstantFunction(system_, target, std::move(vals));
}

LocallyConstantFunction LocallyConstantFunction::shift_pullback() const {
  const WordSet& fine = system_->words(depth_ + 1);
  std::vector<int32_t> map = fine.window_map(system_->words(depth_), 1);
  std::vector<double> vals(fine.count());
  for (int i = 0; i < fine.count(); ++i) vals[i] = values_[map[i]];
  return LocallyConstantFunction(system_, depth_ + 1, std::move(vals));
}

}  // namespace punity
